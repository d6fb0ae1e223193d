#include "hpt/sdr.hpp"

#include <sstream>

#include "hpt/error.hpp"

namespace hpt {

namespace {

void require_shape(const GradedMap& m, const GradedModule& src, const GradedModule& tgt, int degree,
                   const char* name) {
  if (!(m.source() == src) || !(m.target() == tgt) || m.degree() != degree) {
    throw Error(ErrorKind::ModuleMismatch, std::string(name) + " has the wrong shape: " + describe(m));
  }
}

void record(std::vector<SdrRelationFailure>& out, const char* relation, const GradedMap& difference) {
  if (difference.is_zero()) return;
  const auto& [k, block] = *difference.blocks().begin();
  out.push_back({relation, k, block});
}

std::string summarize(const std::vector<SdrRelationFailure>& failures) {
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    os << (i ? "; " : "") << failures[i].relation << " fails on degree " << failures[i].degree << ": "
       << failures[i].witness;
  }
  return os.str();
}

}  // namespace

std::vector<SdrRelationFailure> sdr_failures(const ChainComplex& a, const ChainComplex& b, const GradedMap& f,
                                             const GradedMap& g, const GradedMap& h) {
  require_shape(f, a.module(), b.module(), 0, "f");
  require_shape(g, b.module(), a.module(), 0, "g");
  require_shape(h, a.module(), a.module(), 1, "h");

  const GradedMap id_a = GradedMap::identity(a.module());
  const GradedMap id_b = GradedMap::identity(b.module());
  std::vector<SdrRelationFailure> out;
  record(out, "Df = 0", hom_differential(f, a, b));
  record(out, "Dg = 0", hom_differential(g, b, a));
  record(out, "Dh = 1 - gf", hom_differential(h, a, a) - (id_a - g * f));
  record(out, "fg = 1", f * g - id_b);
  record(out, "fh = 0", f * h);
  record(out, "hg = 0", h * g);
  record(out, "hh = 0", h * h);
  return out;
}

Sdr validate_sdr(ChainComplex a, ChainComplex b, GradedMap f, GradedMap g, GradedMap h) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "SDR between complexes over different rings");
  auto failures = sdr_failures(a, b, f, g, h);
  if (!failures.empty()) {
    std::vector<std::string> names;
    for (const auto& fail : failures) names.push_back(fail.relation);
    throw Error(ErrorKind::SdrViolation, summarize(failures), std::move(names), failures.front().degree);
  }
  return Sdr(std::move(a), std::move(b), std::move(f), std::move(g), std::move(h));
}

Sdr identity_sdr(const ChainComplex& a) {
  const GradedMap id = GradedMap::identity(a.module());
  return validate_sdr(a, a, id, id, GradedMap::zero(a.module(), a.module(), 1));
}

Sdr compose_sdr(const Sdr& first, const Sdr& second) {
  if (!(first.target() == second.source())) {
    throw Error(ErrorKind::ComplexMismatch, "SDRs are not composable: middle complexes differ");
  }
  return validate_sdr(first.source(), second.target(), second.f() * first.f(), first.g() * second.g(),
                      first.h() + first.g() * second.h() * first.f());
}

Sdr tensor_sdr(const Sdr& left, const Sdr& right) {
  if (!(left.source().ring() == right.source().ring())) {
    throw Error(ErrorKind::RingMismatch, "tensor product of SDRs over different rings");
  }
  const GradedMap id_right = GradedMap::identity(right.source().module());
  GradedMap h = tensor_map(left.h(), id_right) + tensor_map(left.g() * left.f(), right.h());
  return validate_sdr(tensor_complex(left.source(), right.source()), tensor_complex(left.target(), right.target()),
                      tensor_map(left.f(), right.f()), tensor_map(left.g(), right.g()), std::move(h));
}

// ---------------------------------------------------------------------------

SdrSquare validate_square(Sdr top, Sdr bottom, GradedMap u, GradedMap v) {
  require_shape(u, top.source().module(), bottom.source().module(), 0, "u");
  require_shape(v, top.target().module(), bottom.target().module(), 0, "v");
  std::vector<std::string> failing;
  if (!hom_differential(u, top.source(), bottom.source()).is_zero()) failing.push_back("u is a chain map");
  if (!hom_differential(v, top.target(), bottom.target()).is_zero()) failing.push_back("v is a chain map");
  if (!(v * top.f() == bottom.f() * u)) failing.push_back("f");
  if (!(u * top.g() == bottom.g() * v)) failing.push_back("g");
  if (!(u * top.h() == bottom.h() * u)) failing.push_back("h");
  if (!failing.empty()) {
    std::string msg = "square fails for";
    for (const auto& name : failing) msg += " [" + name + "]";
    throw Error(ErrorKind::NaturalityViolation, msg, std::move(failing));
  }
  return SdrSquare(std::move(top), std::move(bottom), std::move(u), std::move(v));
}

SdrSquare identity_square(const Sdr& s) {
  return validate_square(s, s, GradedMap::identity(s.source().module()), GradedMap::identity(s.target().module()));
}

SdrSquare compose_squares_h(const SdrSquare& first, const SdrSquare& second) {
  if (!(first.bottom() == second.top())) {
    throw Error(ErrorKind::ComplexMismatch, "horizontal composition needs a shared SDR");
  }
  return validate_square(first.top(), second.bottom(), second.u() * first.u(), second.v() * first.v());
}

SdrSquare compose_squares_v(const SdrSquare& upper, const SdrSquare& lower) {
  if (!(upper.v() == lower.u())) {
    throw Error(ErrorKind::ComplexMismatch, "vertical composition needs a shared middle map");
  }
  return validate_square(compose_sdr(upper.top(), lower.top()), compose_sdr(upper.bottom(), lower.bottom()),
                         upper.u(), lower.v());
}

Sdr push_along(const Sdr& s, const Perturbation& delta_prime) {
  if (!(delta_prime.complex() == s.target())) {
    throw Error(ErrorKind::ComplexMismatch, "push_along needs a perturbation of the SDR's target");
  }
  const GradedMap& dp = delta_prime.delta();
  const GradedMap delta = s.g() * dp * s.f();
  std::vector<std::string> failing;
  if (!(dp * s.f() == s.f() * delta)) failing.push_back("delta' f = f delta");
  if (!(delta * s.g() == s.g() * dp)) failing.push_back("delta g = g delta'");
  if (!(delta * s.h() == -(s.h() * delta))) failing.push_back("delta h = -h delta");
  if (!failing.empty()) {
    throw Error(ErrorKind::CompatibilityViolation, "push_along: " + failing.front(), failing);
  }
  const Perturbation source_delta = check_maurer_cartan(delta, s.source());
  return validate_sdr(perturb_complex(source_delta), perturb_complex(delta_prime), s.f(), s.g(), s.h());
}

}  // namespace hpt
