#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "hpt/fixtures.hpp"
#include "hpt/generator.hpp"
#include "hpt/sdr.hpp"

namespace hpt {
namespace {

using test::error_kind;
using test::mat;

TEST(Sdr, IdentityAndFixturesAreValid) {
  const ChainComplex c = fixtures::circle();
  const Sdr id = identity_sdr(c);
  EXPECT_TRUE(sdr_failures(c, c, id.f(), id.g(), id.h()).empty());
  EXPECT_NO_THROW(fixtures::interval_sdr());
  EXPECT_NO_THROW(fixtures::circle_sdr());
}

TEST(Sdr, WrongSignOfHomotopyViolatesDh) {
  const Sdr s = fixtures::interval_sdr();
  const GradedMap h(s.source().module(), s.source().module(), 1, {{0, mat({{0, 1}})}});
  const auto failures = sdr_failures(s.source(), s.target(), s.f(), s.g(), h);
  ASSERT_EQ(failures.size(), 1u);
  EXPECT_EQ(failures[0].relation, "Dh = 1 - gf");
  EXPECT_EQ(failures[0].degree, 0);
  try {
    validate_sdr(s.source(), s.target(), s.f(), s.g(), h);
    FAIL() << "expected SdrViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SdrViolation);
    EXPECT_NE(std::find(e.details().begin(), e.details().end(), "Dh = 1 - gf"), e.details().end());
  }
}

TEST(Sdr, ReportsEveryFailingRelation) {
  const Sdr s = fixtures::interval_sdr();
  const GradedMap zero_g = GradedMap::zero(s.target().module(), s.source().module(), 0);
  const auto failures = sdr_failures(s.source(), s.target(), s.f(), zero_g, s.h());
  std::vector<std::string> names;
  for (const auto& f : failures) names.push_back(f.relation);
  EXPECT_EQ(names, (std::vector<std::string>{"Dh = 1 - gf", "fg = 1"}));
}

TEST(ComposeSdr, IdentityIsUnit) {
  const Sdr s = fixtures::interval_sdr();
  EXPECT_EQ(compose_sdr(identity_sdr(s.source()), s), s);
  EXPECT_EQ(compose_sdr(s, identity_sdr(s.target())), s);
}

TEST(ComposeSdr, GeneratedStack) {
  InstanceGenerator gen(3);
  const auto stack = gen.random_stack(10, 3);
  ASSERT_EQ(stack.size(), 3u);
  const Sdr top = compose_sdr(stack[0], stack[1]);
  EXPECT_EQ(top.h(), stack[0].h() + stack[0].g() * stack[1].h() * stack[0].f());
  EXPECT_EQ(compose_sdr(top, stack[2]), compose_sdr(stack[0], compose_sdr(stack[1], stack[2])));
}

TEST(ComposeSdr, MismatchThrows) {
  const Sdr s = fixtures::interval_sdr();
  EXPECT_EQ(error_kind([&] { compose_sdr(s, s); }), ErrorKind::ComplexMismatch);
}

TEST(TensorSdr, IdentitiesAndUnit) {
  const ChainComplex c = fixtures::circle();
  const ChainComplex a = fixtures::interval();
  EXPECT_EQ(tensor_sdr(identity_sdr(c), identity_sdr(a)), identity_sdr(tensor_complex(c, a)));
  const Sdr s = fixtures::interval_sdr();
  const Sdr unit = tensor_sdr(s, identity_sdr(fixtures::point()));
  EXPECT_EQ(unit.h(), tensor_map(s.h(), GradedMap::identity(fixtures::point().module())));
}

TEST(TensorSdr, IntervalSquared) {
  const Sdr s = fixtures::interval_sdr();
  const Sdr t = tensor_sdr(s, s);
  EXPECT_EQ(t.source().module().ranks(), (std::map<int, std::size_t>{{0, 4}, {1, 4}, {2, 1}}));
  EXPECT_EQ(t.target().module().ranks(), (std::map<int, std::size_t>{{0, 1}}));
  const GradedMap one = GradedMap::identity(s.source().module());
  EXPECT_EQ(t.h(), tensor_map(s.h(), one) + tensor_map(s.g() * s.f(), s.h()));
}

// Swapping the factors and conjugating back by the symmetry does not give
// the same homotopy.
TEST(TensorSdr, NotSymmetric) {
  const Sdr l = fixtures::interval_sdr();
  const Sdr r = fixtures::circle_sdr();
  const Sdr lr = tensor_sdr(l, r);
  const Sdr rl = tensor_sdr(r, l);
  const GradedModule& a = l.source().module();
  const GradedModule& c = r.source().module();
  const GradedMap swapped = tensor_symmetry(c, a) * rl.h() * tensor_symmetry(a, c);
  EXPECT_NE(swapped, lr.h());
  EXPECT_EQ(tensor_symmetry(c, a) * rl.g() * tensor_symmetry(l.target().module(), r.target().module()), lr.g());
}

TEST(Squares, IdentityAndFiller) {
  const Sdr s = fixtures::circle_sdr();
  const SdrSquare id = identity_square(s);
  EXPECT_EQ(compose_squares_h(id, id), id);
  const SdrSquare below = identity_square(identity_sdr(s.target()));
  EXPECT_EQ(compose_squares_v(id, below), id);
}

TEST(Squares, RejectsNonNatural) {
  const Sdr s = fixtures::interval_sdr();
  const GradedModule& m = s.source().module();
  // swapping a and b is a chain automorphism of the interval up to sign of e
  const GradedMap u(m, m, 0, {{0, mat({{0, 1}, {1, 0}})}, {1, mat({{-1}})}});
  const GradedMap v = GradedMap::identity(s.target().module());
  EXPECT_EQ(error_kind([&] { validate_square(s, s, u, v); }), ErrorKind::NaturalityViolation);
}

TEST(PushAlong, ZeroAndIdentity) {
  const Sdr s = fixtures::circle_sdr();
  EXPECT_EQ(push_along(s, zero_perturbation(s.target())), s);

  const ChainComplex b = s.target();
  const Perturbation dp = check_maurer_cartan(GradedMap(b.module(), b.module(), -1, {{1, mat({{2}})}}), b);
  const Sdr pushed = push_along(identity_sdr(b), dp);
  EXPECT_EQ(pushed.source(), perturb_complex(dp));
  EXPECT_EQ(pushed.target(), perturb_complex(dp));
}

TEST(PushAlong, CircleWithNonzeroDeltaPrime) {
  const Sdr s = fixtures::circle_sdr();
  const ChainComplex b = s.target();
  const Perturbation dp = check_maurer_cartan(GradedMap(b.module(), b.module(), -1, {{1, mat({{2}})}}), b);
  const Sdr pushed = push_along(s, dp);
  EXPECT_EQ(pushed.source().d(), s.source().d() + s.g() * dp.delta() * s.f());
  EXPECT_TRUE(sdr_failures(pushed.source(), pushed.target(), pushed.f(), pushed.g(), pushed.h()).empty());
}

TEST(PushAlong, PointTargetOnlyAllowsZero) {
  const Sdr s = fixtures::interval_sdr();
  EXPECT_EQ(push_along(s, zero_perturbation(s.target())), s);
}

}  // namespace
}  // namespace hpt
