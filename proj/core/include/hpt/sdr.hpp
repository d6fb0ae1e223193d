#pragma once

#include <string>
#include <vector>

#include "hpt/complex.hpp"
#include "hpt/matrix.hpp"

namespace hpt {

/// One failed SDR relation with the first degree where it fails and the
/// offending block of (lhs - rhs).
struct SdrRelationFailure {
  std::string relation;
  int degree = 0;
  Matrix witness;
};

/// Checks the seven relations
///   Df = 0, Dg = 0, Dh = 1 - gf, fg = 1, fh = 0, hg = 0, hh = 0
/// and returns every failure (empty when the data form an SDR).
std::vector<SdrRelationFailure> sdr_failures(const ChainComplex& a, const ChainComplex& b, const GradedMap& f,
                                             const GradedMap& g, const GradedMap& h);

/// Strong deformation retraction (f, g, h) of `source` onto `target`:
/// f: A -> B, g: B -> A chain maps and h: A -> A of degree +1. Only
/// `validate_sdr` constructs one.
class Sdr {
 public:
  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  const GradedMap& f() const { return f_; }
  const GradedMap& g() const { return g_; }
  const GradedMap& h() const { return h_; }

  bool operator==(const Sdr& other) const {
    return source_ == other.source_ && target_ == other.target_ && f_ == other.f_ && g_ == other.g_ &&
           h_ == other.h_;
  }

 private:
  friend Sdr validate_sdr(ChainComplex, ChainComplex, GradedMap, GradedMap, GradedMap);
  Sdr(ChainComplex a, ChainComplex b, GradedMap f, GradedMap g, GradedMap h)
      : source_(std::move(a)), target_(std::move(b)), f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {}

  ChainComplex source_;
  ChainComplex target_;
  GradedMap f_;
  GradedMap g_;
  GradedMap h_;
};

/// Throws SdrViolation listing every failing relation by name.
Sdr validate_sdr(ChainComplex a, ChainComplex b, GradedMap f, GradedMap g, GradedMap h);

/// (1, 1, 0) on `a`.
Sdr identity_sdr(const ChainComplex& a);

/// A -> C followed by C -> B: (f' f, g g', h + g h' f).
Sdr compose_sdr(const Sdr& first, const Sdr& second);

/// (f^l (x) f^r, g^l (x) g^r, h^l (x) 1 + g^l f^l (x) h^r) between tensor
/// complexes. Not symmetric in its arguments.
Sdr tensor_sdr(const Sdr& left, const Sdr& right);

/// Square in the SDR double category: chain maps u: top.source ->
/// bottom.source and v: top.target -> bottom.target commuting with f, g, h.
class SdrSquare {
 public:
  const Sdr& top() const { return top_; }
  const Sdr& bottom() const { return bottom_; }
  const GradedMap& u() const { return u_; }
  const GradedMap& v() const { return v_; }

  bool operator==(const SdrSquare& o) const {
    return top_ == o.top_ && bottom_ == o.bottom_ && u_ == o.u_ && v_ == o.v_;
  }

 private:
  friend SdrSquare validate_square(Sdr, Sdr, GradedMap, GradedMap);
  SdrSquare(Sdr top, Sdr bottom, GradedMap u, GradedMap v)
      : top_(std::move(top)), bottom_(std::move(bottom)), u_(std::move(u)), v_(std::move(v)) {}

  Sdr top_;
  Sdr bottom_;
  GradedMap u_;
  GradedMap v_;
};

/// Throws NaturalityViolation naming the failing generator (or "u"/"v" when
/// a side is not a chain map).
SdrSquare validate_square(Sdr top, Sdr bottom, GradedMap u, GradedMap v);

SdrSquare identity_square(const Sdr& s);

/// `first` then `second`; requires first.bottom == second.top.
SdrSquare compose_squares_h(const SdrSquare& first, const SdrSquare& second);

/// Stacks `upper` on `lower`; requires upper.v == lower.u.
SdrSquare compose_squares_v(const SdrSquare& upper, const SdrSquare& lower);

/// Given a perturbation delta' of the target, perturbs the source by
/// g delta' f and returns the same (f, g, h) between A_{g delta' f} and
/// B_{delta'}. Throws CompatibilityViolation if one of
///   delta' f = f delta, delta g = g delta', delta h = -h delta
/// fails.
Sdr push_along(const Sdr& s, const Perturbation& delta_prime);

}  // namespace hpt
