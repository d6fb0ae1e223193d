#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hpt/bpl.hpp"
#include "hpt/dg_calculus.hpp"
#include "hpt/sdr.hpp"

namespace hpt {

struct GeneratorLimits {
  int min_degree = 0;
  int max_degree = 3;
  int max_entry = 2;             // random entries lie in [-max_entry, max_entry]
  int resample_attempts = 64;    // per strength level for admissible perturbations
};

struct Filtration {
  GradedMap frame;      // columns: the adapted basis
  GradedMap frame_inv;
  std::map<int, std::vector<int>> weights;  // per degree, per column
};

/// Deterministic random instances. Every output is a function of the seed
/// and the sequence of calls.
///
/// Complexes are direct sums of Z, Z --1--> Z and Z --m--> Z pieces seen
/// through a random unipotent change of basis. SDRs onto a given target B
/// adjoin contractible pairs x -> dx to B with the canonical projection,
/// inclusion and contraction, then conjugate everything by a random
/// unipotent automorphism of the source. Perturbations are
/// psi^-1 d psi - d for random unipotent psi.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, Ring ring = Ring::integers(), GeneratorLimits limits = {});

  const Ring& ring() const { return ring_; }
  std::mt19937_64& engine() { return engine_; }

  int uniform(int lo, int hi);
  GradedModule random_module(std::size_t total_rank);
  GradedMap random_map(const GradedModule& source, const GradedModule& target, int degree);
  /// Product of `ops` random elementary matrices per degree, with its inverse.
  NonDgIso random_unipotent(const GradedModule& module, int ops);

  ChainComplex random_complex(std::size_t max_rank);
  Sdr random_sdr_onto(const ChainComplex& target, std::size_t pairs);
  Sdr random_sdr(std::size_t max_rank);
  /// Composable SDRs A -> C_1 -> ... -> B, top first, with total rank of A
  /// at most max_rank.
  std::vector<Sdr> random_stack(std::size_t max_rank, std::size_t stages);
  /// random_stack with two stages.
  std::pair<Sdr, Sdr> random_stacked(std::size_t max_rank);

  /// psi^-1 d psi - d with psi built from `ops` elementary operations.
  Perturbation random_perturbation(const ChainComplex& a, int ops);
  /// Random weights on a basis adapted to a stack of SDRs A -> C_1 -> ... -> B:
  /// each stage splits its source as g(target) + h(Y) + Y with Y = im(dh),
  /// the pair (hy, y) sharing a weight, and B carries weights that do not
  /// decrease with degree. Every d, h and g of the stack preserves the weight.
  Filtration random_filtration(const std::vector<Sdr>& stack);
  /// psi^-1 d psi - d on `a` with psi unipotent and strictly lowering the
  /// filtration's weight. Then delta h is nilpotent for every h of the stack,
  /// and so is the induced delta' on each later stage.
  Perturbation filtered_perturbation(const ChainComplex& a, const Filtration& filtration);
  Perturbation filtered_perturbation(const Sdr& s) { return filtered_perturbation(s.source(), random_filtration({s})); }
  /// A perturbation of s.source() with delta h nilpotent. Tries
  /// `resample_attempts` times per strength, halving the number of
  /// elementary operations in psi each round down to 1, then falls back to
  /// filtered_perturbation. ResampleCapExceeded if that fails too.
  Perturbation admissible_perturbation(const Sdr& s);
  /// Whether delta h is nilpotent.
  static bool admissible(const Sdr& s, const Perturbation& delta);

 private:
  std::mt19937_64 engine_;
  Ring ring_;
  GeneratorLimits limits_;
};

/// Per-trial seed derived from a suite seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace hpt
