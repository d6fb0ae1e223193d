#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hpt/fixtures.hpp"
#include "hpt/generator.hpp"
#include "hpt/homology.hpp"

namespace hpt {
namespace {

using test::error_kind;
using test::mat;

std::vector<mpz_class> factors(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

void expect_valid(const Matrix& m, const SmithNormalForm& snf) {
  EXPECT_EQ(snf.u * m * snf.v, snf.s);
  EXPECT_EQ(abs(determinant(snf.u)), 1);
  EXPECT_EQ(abs(determinant(snf.v)), 1);
}

TEST(Smith, Zero) {
  const Matrix m(2, 3);
  const SmithNormalForm snf = smith_normal_form(m);
  EXPECT_TRUE(snf.s.is_zero());
  EXPECT_TRUE(snf.u.is_identity());
  EXPECT_TRUE(snf.v.is_identity());
  EXPECT_TRUE(snf.invariant_factors.empty());
}

TEST(Smith, DiagonalTwoThree) {
  const Matrix m = mat({{2, 0}, {0, 3}});
  const SmithNormalForm snf = smith_normal_form(m);
  EXPECT_EQ(snf.invariant_factors, factors({1, 6}));
  EXPECT_EQ(snf.s, mat({{1, 0}, {0, 6}}));
  expect_valid(m, snf);
}

TEST(Smith, IntervalDifferential) {
  const Matrix m = mat({{1, -1}});
  const SmithNormalForm snf = smith_normal_form(m);
  EXPECT_EQ(snf.invariant_factors, factors({1}));
  expect_valid(m, snf);
}

TEST(Smith, ClassicThreeByThree) {
  const Matrix m = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const SmithNormalForm snf = smith_normal_form(m);
  EXPECT_EQ(snf.invariant_factors, factors({2, 6, 12}));
  expect_valid(m, snf);
}

TEST(Smith, RejectsFractions) {
  Matrix m(1, 1);
  m(0, 0) = Scalar(1, 2);
  EXPECT_EQ(error_kind([&] { smith_normal_form(m); }), ErrorKind::InvalidInput);
}

TEST(Homology, Fixtures) {
  HomologyResult point;
  point.groups[0] = {1, {}};
  EXPECT_EQ(homology(fixtures::point()), point);
  EXPECT_EQ(homology(fixtures::interval()), point);
  EXPECT_EQ(homology(perturb_complex(fixtures::interval_perturbation())), point);

  HomologyResult circle;
  circle.groups[0] = {1, {}};
  circle.groups[1] = {1, {}};
  EXPECT_EQ(homology(fixtures::circle()), circle);

  HomologyResult two;
  two.groups[0] = {0, factors({2})};
  EXPECT_EQ(homology(fixtures::multiplication_by_two()), two);
}

TEST(Homology, OverFields) {
  const GradedModule m2(Ring::prime_field(2), {{0, 1}, {1, 1}});
  const ChainComplex c2(m2, GradedMap(m2, m2, -1, {{1, mat({{2}})}}));
  HomologyResult both;
  both.groups[0] = {1, {}};
  both.groups[1] = {1, {}};
  EXPECT_EQ(homology(c2), both);

  const GradedModule mq(Ring::rationals(), {{0, 1}, {1, 1}});
  const ChainComplex cq(mq, GradedMap(mq, mq, -1, {{1, mat({{2}})}}));
  EXPECT_TRUE(homology(cq).acyclic());
}

TEST(MappingCone, OfIdentityIsAcyclic) {
  const ChainComplex c = fixtures::circle();
  const ChainComplex cone = mapping_cone(GradedMap::identity(c.module()), c, c);
  EXPECT_TRUE((cone.d() * cone.d()).is_zero());
  EXPECT_TRUE(homology(cone).acyclic());
}

TEST(MappingCone, RejectsNonChainMap) {
  const Sdr s = fixtures::interval_sdr();
  const GradedMap not_chain(s.source().module(), s.source().module(), 0, {{0, mat({{1, 0}, {0, 0}})}});
  EXPECT_EQ(error_kind([&] { mapping_cone(not_chain, s.source(), s.source()); }), ErrorKind::InvalidInput);
}

TEST(VerifyEquivalence, Interval) {
  const EquivalenceReport r = verify_equivalence(perturb_sdr(fixtures::interval_sdr(), fixtures::interval_perturbation()));
  EXPECT_EQ(r.source, r.target);
  EXPECT_EQ(r.source.groups.at(0).betti, 1u);
}

TEST(Homology, InvariantUnderGeneratorBasisChange) {
  InstanceGenerator gen(11);
  for (int i = 0; i < 10; ++i) {
    const ChainComplex c = gen.random_complex(8);
    const NonDgIso psi = gen.random_unipotent(c.module(), 6);
    const ChainComplex moved(c.module(), psi.map() * c.d() * psi.inverse_map());
    EXPECT_EQ(homology(moved), homology(c));
  }
}

}  // namespace
}  // namespace hpt
