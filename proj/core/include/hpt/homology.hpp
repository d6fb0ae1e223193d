#pragma once

#include <map>
#include <vector>

#include "hpt/bpl.hpp"
#include "hpt/complex.hpp"

namespace hpt {

/// U * M * V = S with U, V unimodular and S diagonal, the nonzero diagonal
/// entries positive and each dividing the next.
struct SmithNormalForm {
  Matrix u;
  Matrix s;
  Matrix v;
  std::vector<mpz_class> invariant_factors;  // the nonzero diagonal of s
};

/// Integer matrices only (InvalidInput otherwise). Pivots on the entry of
/// smallest absolute value.
SmithNormalForm smith_normal_form(const Matrix& m);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, by divisibility

  bool operator==(const HomologyGroup&) const = default;
};

/// Only the nonzero groups are recorded.
struct HomologyResult {
  std::map<int, HomologyGroup> groups;

  bool operator==(const HomologyResult&) const = default;
  bool acyclic() const { return groups.empty(); }
};

/// Over Z via Smith normal form; over a field from ranks (no torsion).
HomologyResult homology(const ChainComplex& a);

/// Cone_n = X_{n-1} + Y_n (X summand first) with d(x, y) = (-dx, phi x + dy).
/// `phi` must be a chain map (InvalidInput otherwise).
ChainComplex mapping_cone(const GradedMap& phi, const ChainComplex& x, const ChainComplex& y);

struct EquivalenceReport {
  HomologyResult source;
  HomologyResult target;
};

/// Checks H(A_delta) = H(B_delta') and that the cone of f^ is acyclic.
/// Throws EquivalenceViolation otherwise.
EquivalenceReport verify_equivalence(const PerturbedSdr& p);

}  // namespace hpt
