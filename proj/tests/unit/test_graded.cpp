#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hpt/fixtures.hpp"
#include "hpt/matrix.hpp"

namespace hpt {
namespace {

using test::error_kind;
using test::mat;

TEST(Ring, ParsesNames) {
  EXPECT_EQ(Ring::parse("Z"), Ring::integers());
  EXPECT_EQ(Ring::parse("Q"), Ring::rationals());
  EXPECT_EQ(Ring::parse("Zp:7"), Ring::prime_field(7));
  EXPECT_EQ(Ring::parse("Zp:7").to_string(), "Zp:7");
  EXPECT_EQ(error_kind([] { Ring::parse("Zp:8"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(error_kind([] { Ring::parse("R"); }), ErrorKind::InvalidInput);
}

TEST(Ring, ReducesToCanonicalForm) {
  const Ring f5 = Ring::prime_field(5);
  EXPECT_EQ(f5.canonical(-1), 4);
  EXPECT_EQ(f5.canonical(Scalar(1, 2)), 3);
  EXPECT_EQ(f5.inverse(2), 3);
  EXPECT_EQ(error_kind([] { Ring::integers().canonical(Scalar(1, 2)); }), ErrorKind::InvalidInput);
  EXPECT_EQ(Ring::rationals().canonical(Scalar(2, 4)), Scalar(1, 2));
}

TEST(Matrix, DeterminantRankInverse) {
  EXPECT_EQ(determinant(mat({{2, 1}, {7, 4}})), 1);
  EXPECT_EQ(determinant(mat({{1, 2}, {2, 4}})), 0);
  EXPECT_EQ(rank(mat({{1, 2}, {2, 4}}), Ring::integers()), 1u);
  EXPECT_EQ(rank(mat({{2, 0}, {0, 2}}), Ring::prime_field(2)), 0u);

  const auto inv = inverse(mat({{2, 1}, {7, 4}}), Ring::integers());
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv, mat({{4, -1}, {-7, 2}}));
  EXPECT_FALSE(inverse(mat({{2, 0}, {0, 1}}), Ring::integers()));
  const auto half = inverse(mat({{2, 0}, {0, 1}}), Ring::rationals());
  ASSERT_TRUE(half);
  EXPECT_EQ((*half)(0, 0), Scalar(1, 2));
  const auto mod = inverse(mat({{2, 0}, {0, 1}}), Ring::prime_field(5));
  ASSERT_TRUE(mod);
  EXPECT_EQ((*mod)(0, 0), 3);
}

TEST(GradedMap, ComposeWithIdentityAndDSquared) {
  const ChainComplex a = fixtures::interval();
  const GradedMap id = GradedMap::identity(a.module());
  EXPECT_EQ(id * a.d(), a.d());
  EXPECT_EQ(a.d() * id, a.d());
  EXPECT_TRUE((a.d() * a.d()).is_zero());
}

TEST(GradedMap, ZeroBlocksAreDropped) {
  const GradedModule m(Ring::integers(), {{0, 1}});
  EXPECT_TRUE(GradedMap(m, m, 0, {{0, mat({{0}})}}).is_zero());
  EXPECT_EQ(GradedMap(m, m, 0, {{0, mat({{0}})}}), GradedMap::zero(m, m, 0));
}

TEST(GradedMap, ComposeMismatchThrows) {
  const GradedModule a(Ring::integers(), {{0, 1}});
  const GradedModule b(Ring::integers(), {{0, 2}});
  EXPECT_EQ(error_kind([&] { compose(GradedMap::identity(a), GradedMap::identity(b)); }), ErrorKind::ModuleMismatch);
}

// delta h on the interval: a -> 0, b -> a.
TEST(GradedMap, IntervalDeltaAfterH) {
  const Sdr s = fixtures::interval_sdr();
  const Perturbation p = fixtures::interval_perturbation();
  const GradedMap dh = p.delta() * s.h();
  EXPECT_EQ(dh.degree(), 0);
  EXPECT_EQ(dh.blocks(), (std::map<int, Matrix>{{0, mat({{0, 1}, {0, 0}})}}));
}

// [f, f] = ff - (-1)^{|f||f|} ff: zero for even |f|, 2 ff for odd |f|.
TEST(Bracket, SelfBracket) {
  const GradedModule m(Ring::integers(), {{0, 2}});
  const GradedMap f(m, m, 0, {{0, mat({{1, 2}, {3, 4}})}});
  EXPECT_TRUE(bracket(f, f).is_zero());
  const GradedModule n(Ring::integers(), {{0, 1}, {1, 1}, {2, 1}});
  const GradedMap odd(n, n, 1, {{0, mat({{1}})}, {1, mat({{1}})}});
  EXPECT_FALSE((odd * odd).is_zero());
  EXPECT_EQ(bracket(odd, odd), Scalar(2) * (odd * odd));
}

TEST(Bracket, DhIsOneMinusGf) {
  const Sdr s = fixtures::interval_sdr();
  const GradedMap dh = bracket(s.source().d(), s.h());
  EXPECT_EQ(dh, GradedMap::identity(s.source().module()) - s.g() * s.f());
  // a -> 0, b -> b - a, e -> e
  EXPECT_EQ(dh.blocks(), (std::map<int, Matrix>{{0, mat({{0, -1}, {0, 1}})}, {1, mat({{1}})}}));
}

TEST(Bracket, DeltaWithH) {
  const Sdr s = fixtures::interval_sdr();
  const Perturbation p = fixtures::interval_perturbation();
  // a -> 0, b -> a, e -> 0
  EXPECT_EQ(bracket(p.delta(), s.h()).blocks(), (std::map<int, Matrix>{{0, mat({{0, 1}, {0, 0}})}}));
}

TEST(Tensor, ModuleRanksAndOrdering) {
  const GradedModule a = fixtures::interval().module();
  const GradedModule aa = tensor_module(a, a);
  EXPECT_EQ(aa.ranks(), (std::map<int, std::size_t>{{0, 4}, {1, 4}, {2, 1}}));
  // degree 1: (a|b) (x) e come first, then e (x) (a|b)
  EXPECT_EQ(tensor_index(a, a, 0, 0, 1, 0), 0u);
  EXPECT_EQ(tensor_index(a, a, 0, 1, 1, 0), 1u);
  EXPECT_EQ(tensor_index(a, a, 1, 0, 0, 0), 2u);
  EXPECT_EQ(tensor_index(a, a, 1, 0, 0, 1), 3u);

  const GradedModule one(Ring::integers(), {{1, 1}});
  EXPECT_EQ(tensor_module(one, one).ranks(), (std::map<int, std::size_t>{{2, 1}}));
  const GradedModule pt = GradedModule::point(Ring::integers());
  EXPECT_EQ(tensor_module(pt, a), a);
}

TEST(Tensor, IdentityAndKoszulSign) {
  const GradedModule a = fixtures::interval().module();
  EXPECT_EQ(tensor_map(GradedMap::identity(a), GradedMap::identity(a)), GradedMap::identity(tensor_module(a, a)));

  // (1 (x) h)(e (x) b) = (-1)^{|h||e|} e (x) h(b) = -(e (x) -e) = e (x) e
  const Sdr s = fixtures::interval_sdr();
  const GradedMap t = tensor_map(GradedMap::identity(a), s.h());
  const Matrix block = t.block(1);
  const std::size_t from = tensor_index(a, a, 1, 0, 0, 1);
  EXPECT_EQ(block(0, from), 1);
  // (1 (x) h)(a (x) b) = a (x) -e, no sign
  const std::size_t from0 = tensor_index(a, a, 0, 0, 0, 1);
  EXPECT_EQ(t.block(0)(tensor_index(a, a, 0, 0, 1, 0), from0), -1);
}

TEST(Tensor, DifferentialSquaresToZero) {
  const ChainComplex a = fixtures::interval();
  const ChainComplex aa = tensor_complex(a, a);
  EXPECT_EQ(aa.d(), tensor_map(a.d(), GradedMap::identity(a.module())) + tensor_map(GradedMap::identity(a.module()), a.d()));
  EXPECT_TRUE((aa.d() * aa.d()).is_zero());
}

TEST(Tensor, SymmetryIsAnInvolution) {
  const GradedModule a = fixtures::interval().module();
  const GradedModule c = fixtures::circle().module();
  EXPECT_EQ(tensor_symmetry(c, a) * tensor_symmetry(a, c), GradedMap::identity(tensor_module(a, c)));
}

}  // namespace
}  // namespace hpt
