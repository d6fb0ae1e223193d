#include "hpt/bpl.hpp"

#include <string>
#include <vector>

#include "hpt/error.hpp"

namespace hpt {

namespace {

void ensure(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::FunctorialityViolation, what);
}

GradedMap one(const GradedModule& m) { return GradedMap::identity(m); }

/// Re-raises NotNilpotent with the route that produced it.
template <typename F>
auto on_route(const std::string& route, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotNilpotent) throw;
    throw Error(ErrorKind::NotNilpotent, route + ": " + e.what(), e.details(), e.degree());
  }
}

void compare_routes(const Sdr& first, const Sdr& second, const std::string& theorem) {
  std::vector<std::string> differing;
  if (!(first.source() == second.source())) differing.push_back("source complex");
  if (!(first.target() == second.target())) differing.push_back("target complex");
  if (!(first.f() == second.f())) differing.push_back("f");
  if (!(first.g() == second.g())) differing.push_back("g");
  if (!(first.h() == second.h())) differing.push_back("h");
  if (!differing.empty()) {
    std::string msg = theorem + ": routes differ in";
    for (const auto& d : differing) msg += " " + d;
    throw Error(ErrorKind::FunctorialityViolation, msg, std::move(differing));
  }
}

}  // namespace

NeumannInverse neumann_inverse(const GradedMap& x) {
  if (!x.is_endomorphism() || x.degree() != 0) {
    throw Error(ErrorKind::ModuleMismatch, "neumann_inverse needs a degree-0 endomorphism, got " + describe(x));
  }
  const Ring& ring = x.ring();
  std::map<int, Matrix> blocks;
  NilpotencyCertificate cert{x, {}};
  for (auto [k, r] : x.source().ranks()) {
    const Matrix block = x.block(k);
    Matrix neg = -block;
    Matrix power = Matrix::identity(r);
    Matrix sum(r, r);
    int index = 0;
    // power = (-x)^index at the top of each iteration.
    while (!power.is_zero()) {
      if (index > static_cast<int>(r)) {
        throw Error(ErrorKind::NotNilpotent,
                    "operator is not nilpotent on degree " + std::to_string(k) + " (power " +
                        std::to_string(r + 1) + " is nonzero)",
                    {}, k);
      }
      sum += power;
      power = power * neg;
      power.reduce(ring);
      ++index;
    }
    cert.index.emplace(k, index);
    blocks.emplace(k, std::move(sum));
  }
  GradedMap inverse(x.source(), x.target(), 0, std::move(blocks));
  const GradedMap id = one(x.source());
  ensure(compose(id + x, inverse) == id && compose(inverse, id + x) == id, "Neumann series is not an inverse");
  return {std::move(inverse), std::move(cert)};
}

LemmaData lemma_data(const Sdr& s, const Perturbation& delta) {
  if (!(delta.complex() == s.source())) {
    throw Error(ErrorKind::ComplexMismatch, "perturbation is not on the SDR's source");
  }
  const GradedMap& d = delta.delta();
  const GradedMap& f = s.f();
  const GradedMap& g = s.g();
  const GradedMap& h = s.h();
  const GradedMap id = one(s.source().module());

  NeumannInverse inv = neumann_inverse(d * h);
  const GradedMap& alpha_inv = inv.inverse;
  GradedMap alpha = id + d * h;
  GradedMap one_plus_h_delta_inv = id - h * alpha_inv * d;
  ensure(one_plus_h_delta_inv * (id + h * d) == id && (id + h * d) * one_plus_h_delta_inv == id,
         "(1 + h delta)^-1 = 1 - h (1 + delta h)^-1 delta fails");

  GradedMap correction = h * alpha_inv * d * g * f;
  GradedMap beta = id + correction;
  GradedMap beta_inv = id - correction;
  GradedMap f_hat = f * alpha_inv;
  GradedMap g_hat = one_plus_h_delta_inv * g;
  GradedMap h_hat = h * alpha_inv;
  GradedMap h_hat_dual = one_plus_h_delta_inv * h;
  GradedMap delta_prime = f_hat * d * g;
  GradedMap delta_prime_dual = f * d * g_hat;
  GradedMap delta_one = alpha_inv * d * g * f;
  GradedMap delta_two = g * f * delta_one;
  GradedMap theta = alpha * beta_inv;
  GradedMap theta_inv = beta * alpha_inv;
  return LemmaData{std::move(alpha),      alpha_inv,           std::move(one_plus_h_delta_inv),
                   std::move(beta),       std::move(beta_inv), std::move(delta_one),
                   std::move(delta_two),  std::move(theta),    std::move(theta_inv),
                   std::move(f_hat),      std::move(g_hat),    std::move(h_hat),
                   std::move(h_hat_dual), std::move(delta_prime), std::move(delta_prime_dual),
                   std::move(inv.certificate)};
}

PerturbedSdr perturb_sdr(const Sdr& s, const Perturbation& delta) {
  LemmaData data = lemma_data(s, delta);
  ensure(data.h_hat == data.h_hat_dual, "h (1 + delta h)^-1 != (1 + h delta)^-1 h");
  ensure(data.delta_prime == data.delta_prime_dual, "f^ delta g != f delta g^");

  Perturbation delta_prime = check_maurer_cartan(data.delta_prime, s.target());
  Sdr result = validate_sdr(perturb_complex(delta), perturb_complex(delta_prime), data.f_hat, data.g_hat,
                            data.h_hat);
  NonDgIso transfer(data.theta, data.theta_inv);
  return PerturbedSdr{s, delta, std::move(result), std::move(delta_prime), std::move(transfer),
                      std::move(data.certificate)};
}

NonDgIso transfer_iso(const Sdr& s, const Perturbation& delta) {
  const LemmaData data = lemma_data(s, delta);
  NonDgIso theta(data.theta, data.theta_inv);
  const GradedMap log = left_log_derivative(theta, s.source(), perturb_complex(delta));
  const GradedMap gf = s.g() * s.f();
  if (!(log == gf * log * gf)) {
    throw Error(ErrorKind::CompatibilityViolation,
                "left logarithmic derivative of the transfer map does not factor through f and g");
  }
  return theta;
}

SdrSquare filler_square(const PerturbedSdr& p) {
  Sdr pushed = push_along(p.original, p.delta_prime);
  return validate_square(std::move(pushed), p.result, p.transfer.map(),
                         GradedMap::identity(p.original.target().module()));
}

DualOrderRun dual_order_perturb(const Sdr& s, const Perturbation& delta) {
  if (!(delta.complex() == s.source())) {
    throw Error(ErrorKind::ComplexMismatch, "perturbation is not on the SDR's source");
  }
  const GradedMap& d = delta.delta();
  const GradedMap& f = s.f();
  const GradedMap& g = s.g();
  const GradedMap& h = s.h();
  const GradedMap id = one(s.source().module());

  // beta step first: 1 + h delta, inverted by its own Neumann series
  const GradedMap beta_bar = id + h * d;
  const GradedMap beta_bar_inv = neumann_inverse(h * d).inverse;
  const GradedMap h_hat = beta_bar_inv * h;
  const GradedMap correction = g * f * d * h_hat;
  const GradedMap alpha_bar_inv = id - correction;
  const GradedMap alpha_bar = id + correction;
  GradedMap composite = alpha_bar_inv * beta_bar;
  GradedMap composite_inv = beta_bar_inv * alpha_bar;

  const GradedMap f_hat = f * composite;
  const GradedMap g_hat = composite_inv * g;
  const GradedMap h_pulled = composite_inv * h * composite;
  const Perturbation delta_prime = check_maurer_cartan(f * d * g_hat, s.target());
  Sdr result = validate_sdr(perturb_complex(delta), perturb_complex(delta_prime), f_hat, g_hat, h_pulled);
  return DualOrderRun{std::move(result), std::move(composite), std::move(composite_inv)};
}

RouteComparison check_vertical_functoriality(const Sdr& top, const Sdr& bottom, const Perturbation& delta) {
  if (!(top.target() == bottom.source())) {
    throw Error(ErrorKind::ComplexMismatch, "vertical functoriality needs composable SDRs");
  }
  Sdr stacked = on_route("route 1 (stacked)", [&] {
    const PerturbedSdr upper = perturb_sdr(top, delta);
    const PerturbedSdr lower = perturb_sdr(bottom, upper.delta_prime);
    return compose_sdr(upper.result, lower.result);
  });
  Sdr direct = on_route("route 2 (composite)", [&] { return perturb_sdr(compose_sdr(top, bottom), delta).result; });
  compare_routes(stacked, direct, "vertical functoriality");
  return {std::move(stacked), std::move(direct)};
}

RouteComparison check_iteration(const Sdr& s, const Perturbation& delta, const Perturbation& epsilon) {
  if (!(delta.complex() == s.source()) || !(epsilon.complex() == s.source())) {
    throw Error(ErrorKind::ComplexMismatch, "iteration needs two perturbations of the SDR's source");
  }
  const GradedMap id = one(s.source().module());
  Sdr iterated = on_route("route 1 (delta, then epsilon - delta)", [&] {
    const PerturbedSdr first = perturb_sdr(s, delta);
    const Perturbation relative = check_maurer_cartan(epsilon.delta() - delta.delta(), first.result.source());
    const PerturbedSdr second = perturb_sdr(first.result, relative);
    const GradedMap& h1 = first.result.h();
    ensure((id + relative.delta() * h1) * (id + delta.delta() * s.h()) == id + epsilon.delta() * s.h(),
           "(1 + (epsilon - delta) h_1)(1 + delta h) != 1 + epsilon h");
    return second.result;
  });
  Sdr direct = on_route("route 2 (epsilon)", [&] { return perturb_sdr(s, epsilon).result; });
  compare_routes(iterated, direct, "iteration");
  return {std::move(iterated), std::move(direct)};
}

Perturbation tensor_perturbation(const Perturbation& left, const Perturbation& right) {
  const ChainComplex tensor = tensor_complex(left.complex(), right.complex());
  GradedMap delta = tensor_map(left.delta(), one(right.complex().module())) +
                    tensor_map(one(left.complex().module()), right.delta());
  return check_maurer_cartan(delta, tensor);
}

RouteComparison check_tensor_functoriality(const Sdr& left, const Sdr& right, const Perturbation& dl,
                                           const Perturbation& dr) {
  const Perturbation combined = tensor_perturbation(dl, dr);
  Sdr whole = on_route("route 1 (perturb the tensor product)",
                       [&] { return perturb_sdr(tensor_sdr(left, right), combined).result; });
  Sdr factors = on_route("route 2 (tensor the perturbed factors)", [&] {
    return tensor_sdr(perturb_sdr(left, dl).result, perturb_sdr(right, dr).result);
  });
  compare_routes(whole, factors, "tensor functoriality");
  return {std::move(whole), std::move(factors)};
}

RouteComparison check_tensor_inner_case(const ChainComplex& c, const Sdr& f, const Perturbation& delta) {
  const Perturbation combined = tensor_perturbation(zero_perturbation(c), delta);
  Sdr perturbed = perturb_sdr(tensor_sdr(identity_sdr(c), f), combined).result;
  Sdr expected = tensor_sdr(identity_sdr(c), perturb_sdr(f, delta).result);
  compare_routes(perturbed, expected, "1 (x) delta case");
  return {std::move(perturbed), std::move(expected)};
}

RouteComparison check_tensor_outer_case(const Perturbation& delta_c, const Sdr& f) {
  const ChainComplex& c = delta_c.complex();
  const Sdr lifted = tensor_sdr(identity_sdr(c), f);
  const Perturbation combined = tensor_perturbation(delta_c, zero_perturbation(f.source()));
  const LemmaData data = lemma_data(lifted, combined);
  ensure(data.alpha == one(lifted.source().module()) + tensor_map(delta_c.delta(), f.h()),
         "alpha != 1 (x) 1 + delta (x) h");
  Sdr perturbed = perturb_sdr(lifted, combined).result;
  Sdr expected = tensor_sdr(identity_sdr(perturb_complex(delta_c)), f);
  compare_routes(perturbed, expected, "delta (x) 1 case");
  return {std::move(perturbed), std::move(expected)};
}

}  // namespace hpt
