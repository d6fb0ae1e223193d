#pragma once

#include <map>

#include "hpt/dg_calculus.hpp"
#include "hpt/sdr.hpp"

namespace hpt {

/// Per-degree nilpotency index of a degree-0 endomorphism: the smallest N
/// with op^N = 0 on that degree.
struct NilpotencyCertificate {
  GradedMap op;
  std::map<int, int> index;
};

struct NeumannInverse {
  GradedMap inverse;  // (1 + x)^-1 = sum_{k < N} (-x)^k
  NilpotencyCertificate certificate;
};

/// Inverts 1 + x for a nilpotent degree-0 endomorphism x. Throws
/// NotNilpotent (with the degree) if x^(rank+1) != 0 somewhere.
NeumannInverse neumann_inverse(const GradedMap& x);

/// Intermediate maps of the lemma's construction, all as endomorphisms of
/// the source module unless noted.
struct LemmaData {
  GradedMap alpha;                // 1 + delta h
  GradedMap alpha_inv;            // (1 + delta h)^-1
  GradedMap one_plus_h_delta_inv; // (1 + h delta)^-1 = 1 - h alpha^-1 delta
  GradedMap beta;                 // 1 + h alpha^-1 delta g f
  GradedMap beta_inv;             // 1 - h alpha^-1 delta g f
  GradedMap delta_one;            // alpha^-1 delta g f
  GradedMap delta_two;            // g f alpha^-1 delta g f
  GradedMap theta;                // alpha beta^-1 = 1 + delta h - h^ delta g f
  GradedMap theta_inv;            // beta alpha^-1
  GradedMap f_hat;                // f alpha^-1                     (A -> B)
  GradedMap g_hat;                // (1 + h delta)^-1 g             (B -> A)
  GradedMap h_hat;                // h alpha^-1
  GradedMap h_hat_dual;           // (1 + h delta)^-1 h
  GradedMap delta_prime;          // f^ delta g                     (on B)
  GradedMap delta_prime_dual;     // f delta g^                     (on B)
  NilpotencyCertificate certificate;
};

/// Computes every ingredient without validating the outcome.
LemmaData lemma_data(const Sdr& s, const Perturbation& delta);

struct PerturbedSdr {
  Sdr original;
  Perturbation delta;
  Sdr result;               // A_delta -> B_{delta'}
  Perturbation delta_prime; // on the original target
  NonDgIso transfer;        // 1 + delta h - h^ delta g f, with inverse
  NilpotencyCertificate certificate;  // for delta h
};

/// The perturbation lemma:
///   f^ = f (1 + delta h)^-1,  g^ = (1 + h delta)^-1 g,
///   h^ = h (1 + delta h)^-1 = (1 + h delta)^-1 h,
///   delta' = f^ delta g = f delta g^.
/// Both expressions for h^ and for delta' are computed and must agree; the
/// result is validated against d + delta and d + delta'.
PerturbedSdr perturb_sdr(const Sdr& s, const Perturbation& delta);

/// The non-dg-isomorphism 1 + delta h - h^ delta g f : A -> A_delta. Also
/// checks that its left logarithmic derivative factors through f and g.
NonDgIso transfer_iso(const Sdr& s, const Perturbation& delta);

/// The filler square: the unperturbed (f, g, h) pushed along delta' (between
/// A_{g delta' f} and B_{delta'}) mapped by (theta, 1) onto the result.
SdrSquare filler_square(const PerturbedSdr& p);

/// Result of running the construction in the opposite order (the beta step
/// first). Used to cross-check perturb_sdr; never called by it.
struct DualOrderRun {
  Sdr result;
  GradedMap composite;      // (1 + g f delta h^)^-1 (1 + h delta) = 1 + h delta - g f delta h^
  GradedMap composite_inv;
};

DualOrderRun dual_order_perturb(const Sdr& s, const Perturbation& delta);

struct RouteComparison {
  Sdr first_route;
  Sdr second_route;
};

/// Perturbing A -> C and then C_{delta'} -> B_{delta''} agrees with
/// perturbing the composite A -> B. Throws FunctorialityViolation naming the
/// components that differ; NotNilpotent errors name the route.
RouteComparison check_vertical_functoriality(const Sdr& top, const Sdr& bottom, const Perturbation& delta);

/// Perturbing by delta and then by epsilon - delta agrees with perturbing by
/// epsilon; also checks (1 + (epsilon - delta) h_1)(1 + delta h) = 1 + epsilon h.
RouteComparison check_iteration(const Sdr& s, const Perturbation& delta, const Perturbation& epsilon);

/// (L (x) R) perturbed by dL (x) 1 + 1 (x) dR equals L_dL (x) R_dR.
RouteComparison check_tensor_functoriality(const Sdr& left, const Sdr& right, const Perturbation& dl,
                                           const Perturbation& dr);

/// 1_C (x) F perturbed by 1 (x) delta equals 1_C (x) F_delta.
RouteComparison check_tensor_inner_case(const ChainComplex& c, const Sdr& f, const Perturbation& delta);

/// 1_C (x) F perturbed by delta (x) 1 equals 1_{C_delta} (x) F; also checks
/// that the alpha map is 1 (x) 1 + delta (x) h.
RouteComparison check_tensor_outer_case(const Perturbation& delta_c, const Sdr& f);

/// delta (x) 1 + 1 (x) delta' on the tensor complex, certified.
Perturbation tensor_perturbation(const Perturbation& left, const Perturbation& right);

}  // namespace hpt
