#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hpt/fixtures.hpp"

namespace hpt {
namespace {

using test::error_kind;
using test::mat;

TEST(ChainComplex, RejectsNonDifferentials) {
  const GradedModule m(Ring::integers(), {{0, 1}, {1, 1}, {2, 1}});
  // d(z) = y, d(y) = x: d^2 != 0
  const GradedMap bad(m, m, -1, {{1, mat({{1}})}, {2, mat({{1}})}});
  EXPECT_EQ(error_kind([&] { ChainComplex(m, bad); }), ErrorKind::NotADifferential);
  EXPECT_EQ(error_kind([&] { ChainComplex(m, GradedMap::identity(m)); }), ErrorKind::NotADifferential);
}

TEST(HomDifferential, OfDIsZero) {
  const ChainComplex a = fixtures::circle();
  EXPECT_TRUE(hom_differential(a.d(), a, a).is_zero());
}

TEST(HomDifferential, OfHIsOneMinusGf) {
  const Sdr s = fixtures::interval_sdr();
  const GradedMap dh = hom_differential(s.h(), s.source(), s.source());
  EXPECT_EQ(dh, GradedMap::identity(s.source().module()) - s.g() * s.f());
}

TEST(MaurerCartan, AcceptsZeroIntervalAndD) {
  const ChainComplex a = fixtures::interval();
  EXPECT_TRUE(check_maurer_cartan(GradedMap::zero(a.module(), a.module(), -1), a).delta().is_zero());
  EXPECT_NO_THROW(check_maurer_cartan(fixtures::interval_perturbation().delta(), a));
  EXPECT_NO_THROW(check_maurer_cartan(a.d(), a));
}

TEST(MaurerCartan, RejectsViolation) {
  const GradedModule m(Ring::integers(), {{0, 1}, {1, 1}, {2, 1}});
  const ChainComplex a = ChainComplex::with_zero_differential(m);
  const GradedMap delta(m, m, -1, {{1, mat({{1}})}, {2, mat({{1}})}});
  EXPECT_EQ(error_kind([&] { check_maurer_cartan(delta, a); }), ErrorKind::MaurerCartanViolation);
  try {
    check_maurer_cartan(delta, a);
  } catch (const Error& e) {
    ASSERT_TRUE(e.degree());
    EXPECT_EQ(*e.degree(), 2);
  }
}

TEST(PerturbComplex, IntervalBecomesEToMinusB) {
  const ChainComplex ad = perturb_complex(fixtures::interval_perturbation());
  EXPECT_EQ(ad.d().blocks(), (std::map<int, Matrix>{{1, mat({{0}, {-1}})}}));
  const ChainComplex a = fixtures::interval();
  EXPECT_EQ(perturb_complex(zero_perturbation(a)), a);
}

TEST(PerturbComplex, Relative) {
  const ChainComplex a = fixtures::interval();
  const Perturbation delta = fixtures::interval_perturbation();
  // epsilon(e) = -2a + b is Maurer-Cartan too (the target of d has zero differential)
  const GradedMap eps(a.module(), a.module(), -1, {{1, mat({{-2}, {1}})}});
  const Perturbation epsilon = check_maurer_cartan(eps, a);
  const ChainComplex ad = perturb_complex(delta);
  const Perturbation rest = check_maurer_cartan(eps - delta.delta(), ad);
  EXPECT_EQ(perturb_complex(rest).d(), perturb_complex(epsilon).d());
}

TEST(HomComplex, PointToPoint) {
  const ChainComplex pt = fixtures::point();
  const ChainComplex hom = hom_complex(pt, pt);
  EXPECT_EQ(hom.module().ranks(), (std::map<int, std::size_t>{{0, 1}}));
  EXPECT_TRUE(hom.d().is_zero());
}

TEST(HomComplex, PointToInterval) {
  const ChainComplex hom = hom_complex(fixtures::point(), fixtures::interval());
  EXPECT_EQ(hom.module().ranks(), (std::map<int, std::size_t>{{0, 2}, {1, 1}}));
  // x -> e goes to x -> a - b
  EXPECT_EQ(hom.d().blocks(), (std::map<int, Matrix>{{1, mat({{1}, {-1}})}}));
  EXPECT_TRUE((hom.d() * hom.d()).is_zero());
}

TEST(HomComplex, WindowTooSmall) {
  EXPECT_EQ(error_kind([] { hom_complex(fixtures::point(), fixtures::interval(), DegreeWindow{0, 0}); }),
            ErrorKind::WindowTooSmall);
  EXPECT_NO_THROW(hom_complex(fixtures::point(), fixtures::interval(), DegreeWindow{-2, 3}));
}

TEST(HomComplex, SquaresToZeroOnCircle) {
  const ChainComplex c = fixtures::circle();
  const ChainComplex hom = hom_complex(c, tensor_complex(c, fixtures::interval()));
  EXPECT_TRUE((hom.d() * hom.d()).is_zero());
}

TEST(UniversalProperty, ZeroAndIntervalAgainstPoint) {
  const ChainComplex a = fixtures::interval();
  EXPECT_NO_THROW(check_universal_property(fixtures::point(), zero_perturbation(a)));
  const UniversalPropertyReport r = check_universal_property(fixtures::point(), fixtures::interval_perturbation());
  EXPECT_EQ(r.covariant.lo, 0);
  EXPECT_EQ(r.covariant.hi, 1);
}

TEST(UniversalProperty, PostCompositionIsMaurerCartan) {
  const ChainComplex pt = fixtures::point();
  const Perturbation p = fixtures::interval_perturbation();
  const ChainComplex hom = hom_complex(pt, p.complex());
  const GradedMap post = post_composition(p.delta(), pt.module(), p.complex().module());
  EXPECT_NO_THROW(check_maurer_cartan(post, hom));
}

}  // namespace
}  // namespace hpt
