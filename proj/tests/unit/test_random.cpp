#include <gtest/gtest.h>

#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"
#include "holodist/vfilt.hpp"

using namespace holodist;

TEST(Random, Deterministic) {
  Rng a(99), b(99);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(rand_germ(a), rand_germ(b));
}

TEST(Random, GermsAreCanonicalAndInDomain) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    Germ g = rand_germ(rng);
    for (const auto& [key, c] : g.moderate()) {
      EXPECT_TRUE(in_fundamental_domain(key.alpha));
      EXPECT_FALSE(c.is_zero());
      EXPECT_GE(key.p, 0);
    }
  }
}

TEST(Random, UnimodularAndNilpotent) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    size_t n = static_cast<size_t>(rand_int(rng, 1, 5));
    Mat u = rand_unimodular(rng, n);
    Mat inv = inverse(u);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) EXPECT_TRUE(inv(i, j).is_integer());
    EXPECT_TRUE(is_nilpotent(rand_nilpotent(rng, n)));
  }
}

TEST(Random, ModulesSatisfyAxioms) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) EXPECT_TRUE(check_module(rand_module(rng)).empty());
}

TEST(Random, PairingsSeeBothDegeneracyKinds) {
  Rng rng(4);
  size_t nondeg = 0, deg = 0;
  for (int k = 0; k < 60; ++k) {
    VGradedModule l = rand_module(rng);
    DistPairing P = rand_pairing(rng, l, hermitian_dual_quiver(l), k % 2 == 1);
    CorReport r = check_cor_sesqui(P);
    EXPECT_TRUE(r.equivalent());
    (r.full_nondegenerate ? nondeg : deg)++;
  }
  EXPECT_GT(nondeg, 0u);
  EXPECT_GT(deg, 0u);
}

TEST(Random, SelftestIsDeterministic) {
  SelftestOptions opt;
  opt.seed = 7;
  opt.quick = true;
  opt.filter = "germ.";
  opt.threads = 2;
  auto a = run_selftest(opt);
  opt.threads = 1;
  auto b = run_selftest(opt);
  ASSERT_EQ(a.size(), b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].name, b[k].name);
    EXPECT_EQ(a[k].passed, b[k].passed);
    EXPECT_EQ(a[k].first_failure, b[k].first_failure);
  }
}
