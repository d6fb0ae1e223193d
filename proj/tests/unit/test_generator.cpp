#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hpt/generator.hpp"
#include "hpt/io.hpp"

namespace hpt {
namespace {

TEST(Generator, SameSeedSameInstances) {
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    InstanceGenerator a(seed);
    InstanceGenerator b(seed);
    EXPECT_EQ(io::dump(io::to_json(a.random_sdr(8))), io::dump(io::to_json(b.random_sdr(8))));
    const Sdr s = a.random_sdr(6);
    EXPECT_EQ(io::dump(io::to_json(a.admissible_perturbation(s))), io::dump(io::to_json(b.admissible_perturbation(b.random_sdr(6)))));
  }
}

TEST(Generator, DeriveSeedSeparatesStreams) {
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 2, 4));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 3));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(2, 2, 3));
}

TEST(Generator, RespectsRankBound) {
  InstanceGenerator gen(7);
  for (int i = 0; i < 30; ++i) {
    EXPECT_LE(gen.random_complex(9).module().total_rank(), 9u);
    EXPECT_LE(gen.random_sdr(9).source().module().total_rank(), 9u);
    const auto stack = gen.random_stack(10, 3);
    ASSERT_EQ(stack.size(), 3u);
    EXPECT_LE(stack[0].source().module().total_rank(), 10u);
    EXPECT_EQ(stack[0].target(), stack[1].source());
    EXPECT_EQ(stack[1].target(), stack[2].source());
  }
}

TEST(Generator, OtherRings) {
  for (const Ring& ring : {Ring::rationals(), Ring::prime_field(5)}) {
    InstanceGenerator gen(3, ring);
    const Sdr s = gen.random_sdr(8);
    EXPECT_EQ(s.source().ring(), ring);
    EXPECT_TRUE(InstanceGenerator::admissible(s, gen.admissible_perturbation(s)));
  }
}

TEST(Generator, PerturbationsAreAdmissible) {
  InstanceGenerator gen(21);
  for (int i = 0; i < 30; ++i) {
    const Sdr s = gen.random_sdr(8);
    EXPECT_TRUE(InstanceGenerator::admissible(s, gen.admissible_perturbation(s)));
  }
}

// Filtered perturbations are admissible on every stage of the stack.
TEST(Generator, FilteredPerturbationOverStack) {
  InstanceGenerator gen(33);
  for (int i = 0; i < 20; ++i) {
    const auto stack = gen.random_stack(10, 3);
    const Filtration filt = gen.random_filtration(stack);
    EXPECT_EQ(filt.frame * filt.frame_inv, GradedMap::identity(stack[0].source().module()));
    const Perturbation delta = gen.filtered_perturbation(stack[0].source(), filt);
    ASSERT_TRUE(InstanceGenerator::admissible(stack[0], delta));
    PerturbedSdr p = perturb_sdr(stack[0], delta);
    for (std::size_t k = 1; k < stack.size(); ++k) {
      ASSERT_TRUE(InstanceGenerator::admissible(stack[k], p.delta_prime)) << "stage " << k;
      p = perturb_sdr(stack[k], p.delta_prime);
    }
  }
}

TEST(Generator, PointHasOnlyTheZeroPerturbation) {
  InstanceGenerator gen(1);
  const ChainComplex pt = ChainComplex::point(Ring::integers());
  EXPECT_TRUE(gen.admissible_perturbation(identity_sdr(pt)).delta().is_zero());
}

}  // namespace
}  // namespace hpt
