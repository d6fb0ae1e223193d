#include "hpt/checks.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "hpt/bpl.hpp"
#include "hpt/error.hpp"
#include "hpt/generator.hpp"
#include "hpt/homology.hpp"
#include "hpt/io.hpp"

namespace hpt {

namespace {

using Json = nlohmann::json;
using Observations = std::map<std::string, std::size_t>;
using Trial = std::function<void(InstanceGenerator&, std::size_t, Json&, Observations&)>;

struct Theorem {
  const char* name;
  const char* suite;
  Trial run;
};

void expect(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

// Redraws allowed when a trial prefers a nonzero perturbation.
constexpr int kNonzeroAttempts = 8;

GradedMap one(const GradedModule& m) { return GradedMap::identity(m); }

int random_degree(InstanceGenerator& gen) { return gen.uniform(-1, 1); }

std::size_t random_rank(InstanceGenerator& gen, std::size_t max_rank) {
  return static_cast<std::size_t>(gen.uniform(1, static_cast<int>(std::max<std::size_t>(max_rank, 1))));
}

/// sum_{k <= N} (-x)^k for N past the nilpotency bound, computed without
/// the library's Neumann routine.
GradedMap power_series_inverse(const GradedMap& x) {
  const GradedMap id = one(x.source());
  GradedMap sum = id;
  GradedMap term = id;
  const std::size_t bound = x.source().total_rank() + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    term = -(term * x);
    sum += term;
  }
  expect((term * x).is_zero(), ErrorKind::NotNilpotent, "power series did not terminate");
  return sum;
}

bool nilpotent(const GradedMap& x) {
  try {
    neumann_inverse(x);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotNilpotent) return false;
    throw;
  }
}

/// Resamples admissible perturbations of `s` until `ok` accepts one; after
/// the cap, draws from a filtration adapted to `stack`, which satisfies every
/// route's nilpotency by construction.
template <typename Pred>
Perturbation admissible_where(InstanceGenerator& gen, const Sdr& s, const std::vector<Sdr>& stack, Pred ok) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Perturbation delta = gen.admissible_perturbation(s);
    if (ok(delta)) return delta;
  }
  Perturbation delta = gen.filtered_perturbation(s.source(), gen.random_filtration(stack));
  if (!ok(delta)) throw Error(ErrorKind::ResampleCapExceeded, "no perturbation admissible on every route");
  return delta;
}

NonDgIso random_iso(InstanceGenerator& gen, const GradedModule& m) {
  return gen.random_unipotent(m, gen.uniform(1, 2 * static_cast<int>(m.total_rank())));
}

/// The same module as `a` with a differently conjugated differential.
ChainComplex twin(InstanceGenerator& gen, const ChainComplex& a) {
  const NonDgIso p = random_iso(gen, a.module());
  return ChainComplex(a.module(), p.map() * a.d() * p.inverse_map());
}

// --- identities ------------------------------------------------------------

void composition_associative(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const GradedModule a = gen.random_module(random_rank(gen, max_rank));
  const GradedMap f = gen.random_map(a, a, random_degree(gen));
  const GradedMap g = gen.random_map(a, a, random_degree(gen));
  const GradedMap h = gen.random_map(a, a, random_degree(gen));
  inst = {{"module", io::to_json(a)}, {"f", io::to_json(f)}, {"g", io::to_json(g)}, {"h", io::to_json(h)}};
  expect((h * g) * f == h * (g * f), ErrorKind::InvalidInput, "composition is not associative");
  expect(one(a) * f == f && f * one(a) == f, ErrorKind::InvalidInput, "identity is not a unit");
}

void graded_leibniz(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const GradedModule a = gen.random_module(random_rank(gen, max_rank));
  const GradedMap delta = gen.random_map(a, a, random_degree(gen));
  const GradedMap f = gen.random_map(a, a, random_degree(gen));
  const GradedMap g = gen.random_map(a, a, random_degree(gen));
  inst = {{"module", io::to_json(a)}, {"delta", io::to_json(delta)}, {"f", io::to_json(f)}, {"g", io::to_json(g)}};
  const Scalar sign = koszul_sign(delta.degree(), f.degree());
  expect(bracket(delta, f * g) == bracket(delta, f) * g + sign * (f * bracket(delta, g)), ErrorKind::InvalidInput,
         "[delta, fg] != [delta, f] g + (-1)^(|delta||f|) f [delta, g]");
}

void graded_jacobi(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const GradedModule a = gen.random_module(random_rank(gen, max_rank));
  const GradedMap delta = gen.random_map(a, a, random_degree(gen));
  const GradedMap f = gen.random_map(a, a, random_degree(gen));
  const GradedMap g = gen.random_map(a, a, random_degree(gen));
  inst = {{"module", io::to_json(a)}, {"delta", io::to_json(delta)}, {"f", io::to_json(f)}, {"g", io::to_json(g)}};
  const Scalar sign = koszul_sign(delta.degree(), f.degree());
  expect(bracket(delta, bracket(f, g)) == bracket(bracket(delta, f), g) + sign * bracket(f, bracket(delta, g)),
         ErrorKind::InvalidInput, "[delta, [f, g]] != [[delta, f], g] + (-1)^(|delta||f|) [f, [delta, g]]");
}

void hom_differential_product(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const ChainComplex b = gen.random_complex(max_rank);
  const ChainComplex c = gen.random_complex(max_rank);
  const GradedMap f = gen.random_map(b.module(), c.module(), random_degree(gen));
  const GradedMap g = gen.random_map(a.module(), b.module(), random_degree(gen));
  inst = {{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"c", io::to_json(c)}, {"f", io::to_json(f)},
          {"g", io::to_json(g)}};
  const Scalar sign = koszul_sign(1, f.degree());
  expect(hom_differential(f * g, a, c) == hom_differential(f, b, c) * g + sign * (f * hom_differential(g, a, b)),
         ErrorKind::InvalidInput, "D(fg) != Df g + (-1)^|f| f Dg");
  expect(hom_differential(hom_differential(f, b, c), b, c).is_zero(), ErrorKind::InvalidInput, "D D f != 0");
}

void inverse_rule(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const ChainComplex a2 = twin(gen, a);
  const NonDgIso alpha = random_iso(gen, a.module());
  inst = {{"source", io::to_json(a)}, {"target", io::to_json(a2)}, {"iso", io::to_json(alpha)}};
  const GradedMap& inv = alpha.inverse_map();
  expect(hom_differential(inv, a2, a) == -(inv * hom_differential(alpha.map(), a, a2) * inv), ErrorKind::InvalidInput,
         "D(alpha^-1) != -alpha^-1 D(alpha) alpha^-1");
}

void left_log_maurer_cartan(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const ChainComplex a2 = twin(gen, a);
  const NonDgIso alpha = random_iso(gen, a.module());
  inst = {{"source", io::to_json(a)}, {"target", io::to_json(a2)}, {"iso", io::to_json(alpha)}};
  const GradedMap log = left_log_derivative(alpha, a, a2);
  expect(hom_differential(log, a, a) == -(log * log), ErrorKind::MaurerCartanViolation,
         "D(D_l alpha) != -(D_l alpha)^2");
  check_maurer_cartan(log, a);
}

void right_log_maurer_cartan(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const ChainComplex a2 = twin(gen, a);
  const NonDgIso alpha = random_iso(gen, a.module());
  inst = {{"source", io::to_json(a)}, {"target", io::to_json(a2)}, {"iso", io::to_json(alpha)}};
  const GradedMap log = right_log_derivative(alpha, a, a2);
  expect(hom_differential(log, a2, a2) == log * log, ErrorKind::MaurerCartanViolation,
         "D(D_r alpha) != (D_r alpha)^2");
  expect(log == conjugate(alpha, left_log_derivative(alpha, a, a2)), ErrorKind::InvalidInput,
         "D_r alpha != c_alpha(D_l alpha)");
}

void conjugation_derivation(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const NonDgIso alpha = random_iso(gen, a.module());
  const GradedMap f = gen.random_map(a.module(), a.module(), random_degree(gen));
  inst = {{"complex", io::to_json(a)}, {"iso", io::to_json(alpha)}, {"f", io::to_json(f)}};
  const GradedMap log = right_log_derivative(alpha, a, a);
  const GradedMap cf = conjugate(alpha, f);
  expect(hom_differential(cf, a, a) - conjugate(alpha, hom_differential(f, a, a)) == bracket(log, cf),
         ErrorKind::InvalidInput, "D(c_alpha f) - c_alpha(D f) != [D_r alpha, c_alpha f]");
}

void tensor_interchange(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const std::size_t r = std::max<std::size_t>(1, max_rank / 2);
  const GradedModule a = gen.random_module(random_rank(gen, r));
  const GradedModule b = gen.random_module(random_rank(gen, r));
  const GradedMap f = gen.random_map(a, a, random_degree(gen));
  const GradedMap f2 = gen.random_map(a, a, random_degree(gen));
  const GradedMap g = gen.random_map(b, b, random_degree(gen));
  const GradedMap g2 = gen.random_map(b, b, random_degree(gen));
  inst = {{"a", io::to_json(a)},   {"b", io::to_json(b)},   {"f", io::to_json(f)},
          {"f2", io::to_json(f2)}, {"g", io::to_json(g)},   {"g2", io::to_json(g2)}};
  const Scalar sign = koszul_sign(g2.degree(), f.degree());
  expect(tensor_map(f2, g2) * tensor_map(f, g) == sign * tensor_map(f2 * f, g2 * g), ErrorKind::InvalidInput,
         "(f' (x) g')(f (x) g) != (-1)^(|g'||f|) f'f (x) g'g");
  expect(f.degree() != f2.degree() || tensor_map(f + f2, g) == tensor_map(f, g) + tensor_map(f2, g),
         ErrorKind::InvalidInput, "tensor_map is not additive on the left");
}

void relative_perturbation(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const int ops = static_cast<int>(a.module().total_rank());
  const Perturbation delta = gen.random_perturbation(a, ops);
  const Perturbation epsilon = gen.random_perturbation(a, ops);
  inst = {{"complex", io::to_json(a)}, {"delta", io::to_json(delta.delta())}, {"epsilon", io::to_json(epsilon.delta())}};
  const ChainComplex a_delta = perturb_complex(delta);
  const Perturbation rest = check_maurer_cartan(epsilon.delta() - delta.delta(), a_delta);
  expect(perturb_complex(rest) == perturb_complex(epsilon), ErrorKind::MaurerCartanViolation,
         "(A_delta)_(epsilon - delta) != A_epsilon");
}

void universal_property(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations& obs) {
  const std::size_t r = std::max<std::size_t>(1, std::min<std::size_t>(max_rank, 12) / 2);
  for (int attempt = 0;; ++attempt) {
    const ChainComplex a = gen.random_complex(r);
    const ChainComplex b = gen.random_complex(r);
    const Perturbation delta = gen.random_perturbation(a, static_cast<int>(a.module().total_rank()));
    if (delta.delta().is_zero() && attempt < kNonzeroAttempts) continue;
    inst = {{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"delta", io::to_json(delta.delta())}};
    check_universal_property(b, delta);
    if (!delta.delta().is_zero()) ++obs["nonzero_delta"];
    return;
  }
}

// --- sdr -------------------------------------------------------------------

void sdr_axioms(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const Sdr s = gen.random_sdr(max_rank);
  inst = {{"sdr", io::to_json(s)}};
  const auto failures = sdr_failures(s.source(), s.target(), s.f(), s.g(), s.h());
  expect(failures.empty(), ErrorKind::SdrViolation,
         failures.empty() ? std::string() : "relation " + failures.front().relation + " fails");
  expect(compose_sdr(identity_sdr(s.source()), s) == s && compose_sdr(s, identity_sdr(s.target())) == s,
         ErrorKind::SdrViolation, "identity SDRs are not units for composition");
}

void compose_associative(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex b = gen.random_complex(std::max<std::size_t>(1, max_rank / 4));
  const auto pairs = [&] { return static_cast<std::size_t>(gen.uniform(0, std::max(1, static_cast<int>(max_rank / 6)))); };
  const Sdr s3 = gen.random_sdr_onto(b, pairs());
  const Sdr s2 = gen.random_sdr_onto(s3.source(), pairs());
  const Sdr s1 = gen.random_sdr_onto(s2.source(), pairs());
  inst = {{"first", io::to_json(s1)}, {"second", io::to_json(s2)}, {"third", io::to_json(s3)}};
  expect(compose_sdr(compose_sdr(s1, s2), s3) == compose_sdr(s1, compose_sdr(s2, s3)), ErrorKind::SdrViolation,
         "SDR composition is not associative");
}

void tensor_two_step(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const std::size_t r = std::max<std::size_t>(2, max_rank / 2);
  const Sdr left = gen.random_sdr(r);
  const Sdr right = gen.random_sdr(r);
  inst = {{"left", io::to_json(left)}, {"right", io::to_json(right)}};
  const Sdr first = tensor_sdr(left, identity_sdr(right.source()));
  const Sdr second = tensor_sdr(identity_sdr(left.target()), right);
  expect(tensor_sdr(left, right) == compose_sdr(first, second), ErrorKind::SdrViolation,
         "L (x) R differs from (1 (x) R) after (L (x) 1)");
}

SdrSquare scalar_square(const Sdr& s, const Scalar& lambda) {
  return validate_square(s, s, lambda * one(s.source().module()), lambda * one(s.target().module()));
}

void square_interchange(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const auto [upper, lower] = gen.random_stacked(max_rank);
  const Scalar lambda = gen.uniform(-3, 3);
  inst = {{"upper", io::to_json(upper)}, {"lower", io::to_json(lower)}, {"lambda", io::to_json(lambda)}};
  const Sdr id_c = identity_sdr(upper.target());
  const SdrSquare a = validate_square(upper, id_c, upper.f(), one(upper.target().module()));
  const SdrSquare b = scalar_square(id_c, lambda);
  const SdrSquare c = identity_square(lower);
  const SdrSquare d = scalar_square(lower, lambda);
  const SdrSquare rows_first = compose_squares_v(compose_squares_h(a, b), compose_squares_h(c, d));
  const SdrSquare columns_first = compose_squares_h(compose_squares_v(a, c), compose_squares_v(b, d));
  expect(rows_first == columns_first, ErrorKind::NaturalityViolation, "interchange law fails");
}

void push_along_trial(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const Sdr s = gen.random_sdr(max_rank);
  const Perturbation dp =
      gen.random_perturbation(s.target(), static_cast<int>(std::max<std::size_t>(1, s.target().module().total_rank())));
  inst = {{"sdr", io::to_json(s)}, {"delta_prime", io::to_json(dp.delta())}};
  const Sdr pushed = push_along(s, dp);
  expect(sdr_failures(pushed.source(), pushed.target(), pushed.f(), pushed.g(), pushed.h()).empty(),
         ErrorKind::SdrViolation, "pushed SDR fails its relations");
  expect(pushed.source().d() == s.source().d() + s.g() * dp.delta() * s.f(), ErrorKind::CompatibilityViolation,
         "pushed source differential is not d + g delta' f");
}

// --- bpl -------------------------------------------------------------------

struct Drawn {
  Sdr s;
  Perturbation delta;
};

/// An SDR with an admissible perturbation, preferring a nonzero one: SDRs
/// whose degrees all have rank one only admit delta = 0 from the generator.
Drawn draw(InstanceGenerator& gen, std::size_t max_rank, Json& inst) {
  for (int attempt = 0;; ++attempt) {
    Sdr s = gen.random_sdr(max_rank);
    Perturbation delta = gen.admissible_perturbation(s);
    if (delta.delta().is_zero() && attempt < kNonzeroAttempts) continue;
    inst = {{"sdr", io::to_json(s)}, {"delta", io::to_json(delta.delta())}};
    return {std::move(s), std::move(delta)};
  }
}

void perturbation_lemma(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations& obs) {
  const auto [s, delta] = draw(gen, max_rank, inst);
  const PerturbedSdr p = perturb_sdr(s, delta);
  const GradedMap& d = delta.delta();
  const GradedMap &f = s.f(), &g = s.g(), &h = s.h();
  const GradedMap alpha_inv = power_series_inverse(d * h);
  const GradedMap beta_bar_inv = power_series_inverse(h * d);
  const Sdr& r = p.result;
  expect(r.f() == f * alpha_inv, ErrorKind::SdrViolation, "f^ != f (1 + delta h)^-1");
  expect(r.g() == beta_bar_inv * g, ErrorKind::SdrViolation, "g^ != (1 + h delta)^-1 g");
  expect(r.h() == h * alpha_inv && r.h() == beta_bar_inv * h, ErrorKind::SdrViolation,
         "h (1 + delta h)^-1 != (1 + h delta)^-1 h");
  expect(r.f() * d * g == f * d * r.g(), ErrorKind::SdrViolation, "f^ delta g != f delta g^");
  expect(p.delta_prime.delta() == r.f() * d * g, ErrorKind::SdrViolation, "delta' != f^ delta g");
  check_maurer_cartan(p.delta_prime.delta(), s.target());
  expect(r.source() == perturb_complex(delta) && r.target() == perturb_complex(p.delta_prime),
         ErrorKind::SdrViolation, "result is not between the perturbed complexes");
  expect(sdr_failures(r.source(), r.target(), r.f(), r.g(), r.h()).empty(), ErrorKind::SdrViolation,
         "result fails an SDR relation");
  expect(beta_bar_inv == one(h.source()) - h * alpha_inv * d, ErrorKind::NotInvertible,
         "(1 + h delta)^-1 != 1 - h (1 + delta h)^-1 delta");

  const LemmaData data = lemma_data(s, delta);
  const GradedMap id = one(s.source().module());
  expect(data.alpha * g == g && data.alpha * h == h, ErrorKind::InvalidInput, "alpha g != g or alpha h != h");
  expect(f * data.beta == f && h * data.beta == h && data.beta * h == h, ErrorKind::InvalidInput,
         "f beta, h beta, beta h are not f, h, h");
  expect(data.beta * data.beta_inv == id && data.beta_inv * data.beta == id, ErrorKind::NotInvertible,
         "beta^-1 != 1 - h alpha^-1 delta g f");
  expect(data.delta_two == g * f * alpha_inv * d * g * f && data.delta_two == g * (f * data.delta_two * g) * f,
         ErrorKind::InvalidInput, "delta_2 does not factor through f and g");
  if (!d.is_zero()) ++obs["nonzero_delta"];
}

void remark_identities(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations& obs) {
  const auto [s, delta] = draw(gen, max_rank, inst);
  const PerturbedSdr p = perturb_sdr(s, delta);
  const GradedMap& d = delta.delta();
  const GradedMap &f = s.f(), &g = s.g(), &h = s.h();
  const GradedMap id = one(s.source().module());
  const GradedMap alpha = id + d * h;
  const GradedMap alpha_inv = power_series_inverse(d * h);
  const GradedMap h_hat = h * alpha_inv;
  const GradedMap beta_inv = id - h * alpha_inv * d * g * f;
  expect(alpha * beta_inv == id + d * h - h_hat * d * g * f, ErrorKind::InvalidInput,
         "alpha beta^-1 != 1 + delta h - h^ delta g f");
  expect(p.transfer.map() == alpha * beta_inv, ErrorKind::InvalidInput, "transfer map is not alpha beta^-1");

  const DualOrderRun dual = dual_order_perturb(s, delta);
  expect(dual.composite == id + h * d - g * f * d * h_hat, ErrorKind::InvalidInput,
         "dual composite != 1 + h delta - g f delta h^");
  const GradedMap four_fold = alpha * beta_inv * dual.composite;
  const ChainComplex a_delta = perturb_complex(delta);
  const GradedMap bracket_term = a_delta.d() * h + h * a_delta.d();
  expect(four_fold == bracket_term + p.result.g() * p.result.f(), ErrorKind::InvalidInput,
         "four-fold composite != [d + delta, h] + g^ f^");
  expect(dual.result == p.result, ErrorKind::FunctorialityViolation, "dual-order run gives a different SDR");
  if (!(four_fold == id)) ++obs["four_fold_composite_not_identity"];
  if (!(dual.composite == p.transfer.map())) ++obs["dual_composite_differs_from_transfer"];
}

void filler_trial(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const auto [s, delta] = draw(gen, max_rank, inst);
  const PerturbedSdr p = perturb_sdr(s, delta);
  filler_square(p);
  transfer_iso(s, delta);
}

// --- functoriality ---------------------------------------------------------

void vertical_functoriality(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  std::optional<std::pair<Sdr, Sdr>> stack;
  std::optional<Perturbation> delta;
  for (int attempt = 0; attempt < kNonzeroAttempts && (!delta || delta->delta().is_zero()); ++attempt) {
    stack = gen.random_stacked(max_rank);
    const auto& [top, bottom] = *stack;
    const Sdr composite = compose_sdr(top, bottom);
    delta = admissible_where(gen, top, {top, bottom}, [&](const Perturbation& dl) {
      if (!InstanceGenerator::admissible(composite, dl)) return false;
      return nilpotent(perturb_sdr(top, dl).delta_prime.delta() * bottom.h());
    });
  }
  const auto& [top, bottom] = *stack;
  inst = {{"top", io::to_json(top)}, {"bottom", io::to_json(bottom)}, {"delta", io::to_json(delta->delta())}};
  check_vertical_functoriality(top, bottom, *delta);
  // the target perturbations agree as well
  const PerturbedSdr upper = perturb_sdr(top, *delta);
  const PerturbedSdr lower = perturb_sdr(bottom, upper.delta_prime);
  expect(lower.delta_prime.delta() == perturb_sdr(compose_sdr(top, bottom), *delta).delta_prime.delta(),
         ErrorKind::FunctorialityViolation, "delta'' differs between the routes");
}

void iteration(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations& obs) {
  std::optional<Sdr> s;
  std::optional<Perturbation> delta;
  std::optional<Perturbation> epsilon;
  for (int round = 0; round < kNonzeroAttempts && (!epsilon || (delta->delta().is_zero() && epsilon->delta().is_zero()));
       ++round) {
    s = gen.random_sdr(max_rank);
    epsilon.reset();
    for (int attempt = 0; attempt < 64 && !epsilon; ++attempt) {
      delta = gen.admissible_perturbation(*s);
      const Perturbation e = gen.admissible_perturbation(*s);
      if (nilpotent((e.delta() - delta->delta()) * perturb_sdr(*s, *delta).result.h())) epsilon = e;
    }
    if (!epsilon) {
      // both from one filtration, so epsilon - delta lowers it too
      ++obs["filtered_pair"];
      const Filtration filtration = gen.random_filtration({*s});
      delta = gen.filtered_perturbation(s->source(), filtration);
      epsilon = gen.filtered_perturbation(s->source(), filtration);
    }
  }
  inst = {{"sdr", io::to_json(*s)}, {"delta", io::to_json(delta->delta())}, {"epsilon", io::to_json(epsilon->delta())}};
  check_iteration(*s, *delta, *epsilon);
  const PerturbedSdr first = perturb_sdr(*s, *delta);
  const Perturbation rest = check_maurer_cartan(epsilon->delta() - delta->delta(), first.result.source());
  const PerturbedSdr second = perturb_sdr(first.result, rest);
  expect(first.delta_prime.delta() + second.delta_prime.delta() == perturb_sdr(*s, *epsilon).delta_prime.delta(),
         ErrorKind::FunctorialityViolation, "target perturbations differ between the routes");
}

std::pair<Sdr, Sdr> tensor_pair(InstanceGenerator& gen, std::size_t max_rank) {
  Sdr left = gen.random_sdr(std::min<std::size_t>(4, std::max<std::size_t>(2, max_rank)));
  const std::size_t room = std::max<std::size_t>(2, 3 * max_rank / left.source().module().total_rank());
  Sdr right = gen.random_sdr(std::min<std::size_t>(room, 3 * max_rank));
  return {std::move(left), std::move(right)};
}

void tensor_functoriality(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  std::optional<std::pair<Sdr, Sdr>> pair;
  std::optional<Perturbation> dl;
  std::optional<Perturbation> dr;
  for (int attempt = 0; attempt < kNonzeroAttempts && (!dr || (dl->delta().is_zero() && dr->delta().is_zero()));
       ++attempt) {
    pair = tensor_pair(gen, max_rank);
    const auto& [left, right] = *pair;
    const Sdr whole = tensor_sdr(left, right);
    dl = gen.admissible_perturbation(left);
    dr = admissible_where(gen, right, {right}, [&](const Perturbation& candidate) {
      return InstanceGenerator::admissible(whole, tensor_perturbation(*dl, candidate));
    });
  }
  const auto& [left, right] = *pair;
  inst = {{"left", io::to_json(left)},
          {"right", io::to_json(right)},
          {"delta_left", io::to_json(dl->delta())},
          {"delta_right", io::to_json(dr->delta())}};
  check_tensor_functoriality(left, right, *dl, *dr);
}

void tensor_inner_case(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex c = gen.random_complex(std::min<std::size_t>(4, std::max<std::size_t>(2, max_rank)));
  Json drawn;
  const auto [sdr, delta] = draw(gen, std::max<std::size_t>(2, 3 * max_rank / c.module().total_rank()), drawn);
  inst = {{"complex", io::to_json(c)}, {"sdr", drawn["sdr"]}, {"delta", drawn["delta"]}};
  check_tensor_inner_case(c, sdr, delta);
}

void tensor_outer_case(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  std::optional<std::pair<Sdr, Sdr>> pair;
  std::optional<Perturbation> delta;
  for (int attempt = 0; attempt < kNonzeroAttempts && (!delta || delta->delta().is_zero()); ++attempt) {
    pair = tensor_pair(gen, max_rank);
    const ChainComplex& c = pair->first.source();
    delta = gen.random_perturbation(c, static_cast<int>(c.module().total_rank()));
  }
  const Sdr& sdr = pair->second;
  inst = {{"complex", io::to_json(delta->complex())}, {"delta", io::to_json(delta->delta())}, {"sdr", io::to_json(sdr)}};
  check_tensor_outer_case(*delta, sdr);
}

// --- homology --------------------------------------------------------------

void homology_equivalence(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const auto [s, delta] = draw(gen, max_rank, inst);
  const PerturbedSdr p = perturb_sdr(s, delta);
  const EquivalenceReport report = verify_equivalence(p);
  expect(report.source == homology(perturb_complex(delta)), ErrorKind::EquivalenceViolation,
         "report does not describe H(A_delta)");
  expect(homology(s.source()) == homology(s.target()), ErrorKind::EquivalenceViolation,
         "H(A) != H(B) for the unperturbed SDR");
}

void smith_trial(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const auto rows = random_rank(gen, max_rank);
  const auto cols = random_rank(gen, max_rank);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = gen.uniform(-6, 6);
  }
  const GradedModule src(Ring::integers(), {{0, cols}});
  const GradedModule tgt(Ring::integers(), {{0, rows}});
  inst = {{"matrix", io::to_json(GradedMap(src, tgt, 0, {{0, m}}))}};
  const SmithNormalForm snf = smith_normal_form(m);
  expect(snf.invariant_factors.size() == rank(m, Ring::rationals()), ErrorKind::EquivalenceViolation,
         "number of invariant factors differs from the rank");
}

void homology_invariance(InstanceGenerator& gen, std::size_t max_rank, Json& inst, Observations&) {
  const ChainComplex a = gen.random_complex(max_rank);
  const ChainComplex b = twin(gen, a);
  inst = {{"complex", io::to_json(a)}, {"conjugate", io::to_json(b)}};
  expect(homology(a) == homology(b), ErrorKind::EquivalenceViolation,
         "homology changed under a unipotent change of basis");
}

const std::vector<Theorem>& theorems() {
  static const std::vector<Theorem> all = {
      {"composition_associative", "identities", composition_associative},
      {"graded_leibniz", "identities", graded_leibniz},
      {"graded_jacobi", "identities", graded_jacobi},
      {"hom_differential_product", "identities", hom_differential_product},
      {"inverse_rule", "identities", inverse_rule},
      {"left_log_maurer_cartan", "identities", left_log_maurer_cartan},
      {"right_log_maurer_cartan", "identities", right_log_maurer_cartan},
      {"conjugation_derivation", "identities", conjugation_derivation},
      {"tensor_interchange", "identities", tensor_interchange},
      {"relative_perturbation", "identities", relative_perturbation},
      {"universal_property", "identities", universal_property},
      {"sdr_axioms", "sdr", sdr_axioms},
      {"compose_associative", "sdr", compose_associative},
      {"tensor_two_step", "sdr", tensor_two_step},
      {"square_interchange", "sdr", square_interchange},
      {"push_along", "sdr", push_along_trial},
      {"perturbation_lemma", "bpl", perturbation_lemma},
      {"remark_identities", "bpl", remark_identities},
      {"filler_square", "bpl", filler_trial},
      {"vertical_functoriality", "vertical", vertical_functoriality},
      {"iteration", "iteration", iteration},
      {"tensor_functoriality", "tensor", tensor_functoriality},
      {"tensor_inner_case", "tensor", tensor_inner_case},
      {"tensor_outer_case", "tensor", tensor_outer_case},
      {"homology_equivalence", "homology", homology_equivalence},
      {"smith_normal_form", "homology", smith_trial},
      {"homology_invariance", "homology", homology_invariance},
  };
  return all;
}

std::uint64_t stream_id(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct TrialOutcome {
  bool failed = false;
  Json counterexample;
  Observations observations;
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "sdr",       "bpl",     "vertical",
                                                 "iteration",  "tensor",    "homology"};
  return names;
}

std::vector<std::string> suite_theorems(const std::string& suite) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
  }
  std::vector<std::string> out;
  for (const auto& t : theorems()) {
    if (suite == "all" || suite == t.suite) out.emplace_back(t.name);
  }
  return out;
}

CheckReport run_theorem(const std::string& name, const CheckOptions& options) {
  const auto it = std::find_if(theorems().begin(), theorems().end(), [&](const Theorem& t) { return name == t.name; });
  if (it == theorems().end()) throw Error(ErrorKind::InvalidInput, "unknown theorem '" + name + "'");
  const Theorem& theorem = *it;
  const std::uint64_t stream = stream_id(name);

  std::vector<TrialOutcome> outcomes(options.trials);
  auto run_one = [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(options.seed, stream, i);
    InstanceGenerator gen(seed, options.ring);
    Json instance;
    TrialOutcome& out = outcomes[i];
    try {
      theorem.run(gen, options.max_rank, instance, out.observations);
    } catch (const Error& e) {
      out.failed = true;
      out.counterexample = {{"trial", i}, {"trial_seed", seed}, {"error", to_string(e.kind())},
                            {"message", e.what()}, {"instance", instance}};
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.trials));
  if (threads <= 1) {
    for (std::size_t i = 0; i < options.trials; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < options.trials; i = next++) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  CheckReport report{name, options.trials, 0, options.seed, options.max_rank, {}, std::nullopt};
  std::size_t smallest = 0;
  for (const auto& out : outcomes) {
    for (const auto& [key, n] : out.observations) report.observations[key] += n;
    if (!out.failed) continue;
    ++report.failures;
    // keep the smallest failing instance as the counterexample
    const std::size_t size = out.counterexample.dump().size();
    if (!report.counterexample || size < smallest) {
      report.counterexample = out.counterexample;
      smallest = size;
    }
  }
  return report;
}

std::vector<CheckReport> run_suite(const std::string& suite, const CheckOptions& options) {
  std::vector<CheckReport> reports;
  for (const auto& name : suite_theorems(suite)) reports.push_back(run_theorem(name, options));
  return reports;
}

nlohmann::json to_json(const CheckReport& report) {
  Json out = {{"theorem", report.theorem},
              {"trials", report.trials},
              {"failures", report.failures},
              {"seed", report.seed},
              {"max_rank", report.max_rank}};
  if (!report.observations.empty()) out["observations"] = report.observations;
  if (report.counterexample) out["counterexample"] = *report.counterexample;
  return out;
}

}  // namespace hpt
