#pragma once

#include <string>
#include <vector>

#include "hpt/complex.hpp"

namespace hpt {

/// Degree-0 graded isomorphism that need not commute with differentials.
/// The inverse is carried explicitly and checked on construction.
class NonDgIso {
 public:
  NonDgIso(GradedMap alpha, GradedMap alpha_inv);

  static NonDgIso identity(const GradedModule& module);

  const GradedMap& map() const { return alpha_; }
  const GradedMap& inverse_map() const { return alpha_inv_; }
  NonDgIso inverse() const { return NonDgIso(alpha_inv_, alpha_); }

  const GradedModule& source() const { return alpha_.source(); }
  const GradedModule& target() const { return alpha_.target(); }

 private:
  GradedMap alpha_;
  GradedMap alpha_inv_;
};

NonDgIso compose(const NonDgIso& second, const NonDgIso& first);

/// alpha^-1 D alpha, an endomorphism of `a` of degree -1. It always satisfies
/// the Maurer-Cartan equation on `a`.
GradedMap left_log_derivative(const NonDgIso& alpha, const ChainComplex& a, const ChainComplex& a2);
/// D alpha alpha^-1, an endomorphism of `a2`; D(D_r alpha) = (D_r alpha)^2.
GradedMap right_log_derivative(const NonDgIso& alpha, const ChainComplex& a, const ChainComplex& a2);

/// alpha f alpha^-1 for an endomorphism f of alpha's source.
GradedMap conjugate(const NonDgIso& alpha, const GradedMap& f);
/// alpha_to f alpha_from^-1 for f between the sources of the two isos.
GradedMap conjugate(const NonDgIso& alpha_to, const GradedMap& f, const NonDgIso& alpha_from);

/// One object of a diagram: F a, G a, and alpha_a : F a -> G a.
struct DiagramObject {
  std::string name;
  ChainComplex source;
  ChainComplex target;
  NonDgIso alpha;
};

/// A generating morphism F(gen): F from -> F to.
struct DiagramArrow {
  std::string name;
  std::string from;
  std::string to;
  GradedMap map;
};

/// [D_l alpha_to, F gen] for one arrow (the two-sided graded commutator).
GradedMap transfer_obstruction(const std::vector<DiagramObject>& objects, const DiagramArrow& arrow);

/// Conjugates every generator along the alphas, provided each obstruction
/// vanishes; throws CommutatorObstruction naming the first failing arrow.
std::vector<GradedMap> transfer_functor(const std::vector<DiagramObject>& objects,
                                        const std::vector<DiagramArrow>& arrows);

}  // namespace hpt
