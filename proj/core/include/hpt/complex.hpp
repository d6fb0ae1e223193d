#pragma once

#include <optional>
#include <vector>

#include "hpt/graded.hpp"

namespace hpt {

/// Bounded chain complex. The constructor checks that d has degree -1, is an
/// endomorphism and squares to zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(GradedModule module, GradedMap d);

  /// The module with zero differential.
  static ChainComplex with_zero_differential(const GradedModule& module);
  static ChainComplex point(const Ring& ring);

  const GradedModule& module() const { return module_; }
  const GradedMap& d() const { return d_; }
  const Ring& ring() const { return module_.ring(); }

  bool operator==(const ChainComplex& other) const { return module_ == other.module_ && d_ == other.d_; }

 private:
  GradedModule module_;
  GradedMap d_;
};

/// A (x) B with d (x) 1 + 1 (x) d.
ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b);

/// Certified solution of the Maurer-Cartan equation on `complex`. Only
/// `check_maurer_cartan` creates these.
class Perturbation {
 public:
  const ChainComplex& complex() const { return complex_; }
  const GradedMap& delta() const { return delta_; }

 private:
  friend Perturbation check_maurer_cartan(const GradedMap& delta, const ChainComplex& a);
  Perturbation(ChainComplex complex, GradedMap delta) : complex_(std::move(complex)), delta_(std::move(delta)) {}

  ChainComplex complex_;
  GradedMap delta_;
};

/// D f = d_tgt f - (-1)^|f| f d_src.
GradedMap hom_differential(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt);

/// Certifies D delta + delta^2 = 0; throws MaurerCartanViolation naming the
/// first nonzero block otherwise.
Perturbation check_maurer_cartan(const GradedMap& delta, const ChainComplex& a);

/// The perturbed complex: same module, differential d + delta.
ChainComplex perturb_complex(const Perturbation& p);

/// The zero perturbation of `a`.
Perturbation zero_perturbation(const ChainComplex& a);

struct DegreeWindow {
  int lo = 0;
  int hi = 0;
};

/// Degrees in which maps `from -> to` can be nonzero.
DegreeWindow hom_support(const GradedModule& from, const GradedModule& to);

/// Coordinates on the space of graded maps `from -> to` of a fixed degree n.
/// Basis: source degree k ascending, then the entries of the (k, k+n) block
/// in row-major order.
class HomBasis {
 public:
  HomBasis(GradedModule from, GradedModule to) : from_(std::move(from)), to_(std::move(to)) {}

  std::size_t rank(int n) const;
  std::vector<Scalar> flatten(const GradedMap& f) const;
  GradedMap unflatten(int n, const std::vector<Scalar>& coords) const;
  GradedMap basis_map(int n, std::size_t index) const;

  const GradedModule& from() const { return from_; }
  const GradedModule& to() const { return to_; }

 private:
  GradedModule from_;
  GradedModule to_;
};

/// Hom(from, to) as a chain complex with differential D. `window`, when
/// given, must contain every degree in which the Hom module is nonzero
/// (otherwise WindowTooSmall).
ChainComplex hom_complex(const ChainComplex& from, const ChainComplex& to,
                         std::optional<DegreeWindow> window = std::nullopt);

/// The operator f -> delta f on Hom(from, to.module) of the given degree.
GradedMap post_composition(const GradedMap& delta, const GradedModule& from, const GradedModule& to);
/// The operator f -> (-1)^(|delta||f|) f delta on Hom(from.module, to).
GradedMap pre_composition(const GradedMap& delta, const GradedModule& from, const GradedModule& to);

struct UniversalPropertyReport {
  DegreeWindow covariant;      // Hom(B, A_delta) vs Hom(B, A) perturbed by delta_*
  DegreeWindow contravariant;  // Hom(A_delta, B) vs Hom(A, B) perturbed by -delta^*
};

/// Compares, degree by degree, the Hom-complex of the perturbed complex with
/// the perturbed Hom-complex, in both variances. Throws
/// UniversalPropertyViolation with the offending degree on mismatch.
UniversalPropertyReport check_universal_property(const ChainComplex& b, const Perturbation& p);

}  // namespace hpt
