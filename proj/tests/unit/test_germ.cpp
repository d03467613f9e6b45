#include <gtest/gtest.h>

#include "holodist/germ.hpp"
#include "holodist/parse.hpp"
#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"

using namespace holodist;

namespace {

Germ G(const char* s) { return parse_germ(s); }
GaussianRational gr(const char* s) { return parse_gaussian(s); }
const Scalar kTau = Scalar::tau();

void expect_property(const char* name, size_t trials, uint64_t seed = 1) {
  auto r = run_property(property(name), seed, trials);
  EXPECT_TRUE(r.ok()) << name << ": " << r.first_failure;
}

}  // namespace

TEST(Germ, MakeU) {
  EXPECT_EQ(make_u(gr("-1/2"), 3), Germ::monomial(0, 0, gr("-1/2"), 3));
  EXPECT_EQ(make_u(gr("1/2"), 0), Germ::monomial(-1, -1, gr("-1/2"), 0));
  EXPECT_EQ(make_u(-2, 1), Germ::monomial(1, 1, -1, 1));
  EXPECT_THROW(make_u(gr("-1/2"), -1), KernelError);
}

TEST(Germ, MonomialRejectsAlphaOutsideDomain) {
  EXPECT_THROW(Germ::monomial(0, 0, 0, 0), KernelError);
  EXPECT_THROW(Germ::monomial(0, 0, gr("-3/2"), 0), KernelError);
}

TEST(Germ, AddScale) {
  EXPECT_TRUE(add(G("u(-1/2,0)"), G("-u(-1/2,0)")).is_zero());
  EXPECT_EQ(scale(kTau, G("d(0,0)")), Germ::dirac(0, 0, kTau));
  Germ two = add(G("t*u(-1,0)"), G("u(-1,0)"));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(two.is_moderate());
}

TEST(Germ, MulT) {
  EXPECT_EQ(mul_t(G("t^-1*u(-1/2,0)")), G("u(-1/2,0)"));
  EXPECT_EQ(mul_t(G("d(1,0)")), -G("d(0,0)"));
  EXPECT_TRUE(mul_t(G("d(0,0)")).is_zero());
  EXPECT_EQ(mul_tbar(G("d(2,3)")), Germ::dirac(2, 2, -3));
}

TEST(Germ, EquationUap) {
  // (d_t t + alpha) u(alpha,p) = u(alpha,p-1), and the mirror.
  for (const char* a : {"-1", "-3/4", "-1/2", "-1/3", "-1/2+1/3*i"}) {
    GaussianRational alpha = gr(a);
    for (int p = 0; p <= 4; ++p) {
      Germ u = Germ::monomial(0, 0, alpha, p);
      Germ lower = p ? Germ::monomial(0, 0, alpha, p - 1) : Germ();
      EXPECT_EQ(euler_t(u, alpha), lower) << a << " p=" << p;
      EXPECT_EQ(euler_tbar(u, alpha), lower) << a << " p=" << p;
      EXPECT_EQ(d_t(mul_t(u)) + alpha * u, lower);
    }
  }
}

TEST(Germ, DeltaBridge) {
  EXPECT_EQ(d_t(d_tbar(G("u(-1,1)"))), Germ::dirac(0, 0, -kTau));
  EXPECT_EQ(d_tbar(d_t(G("u(-1,1)"))), Germ::dirac(0, 0, -kTau));
  // d_t(tb^-1) = -tau delta, with no moderate part.
  Germ g = d_t(G("tb^-1*u(-1,0)"));
  EXPECT_EQ(g, Germ::dirac(0, 0, -kTau));
  EXPECT_TRUE(localize(g).is_zero());
}

TEST(Germ, NoCorrectionsOffTheIntegerLattice) {
  Germ g = G("t^-3*tb^-2*u(-1/2,2)");
  EXPECT_TRUE(d_t(g).is_moderate());
  EXPECT_EQ(d_t(g), d_t_free(g));
  EXPECT_EQ(d_tbar(g), d_tbar_free(g));
}

TEST(Germ, MulGerm) {
  EXPECT_EQ(mul_germ(G("u(-1/2,0)"), G("u(-1/2,0)")), G("t^-1*tb^-1*u(-1,0)"));
  EXPECT_EQ(mul_germ(G("u(-1,1)"), G("u(-1,1)")), G("2*u(-1,2)"));
  EXPECT_EQ(mul_germ(G("u(-1/3,2)"), G("u(-1,0)")), G("u(-1/3,2)"));
  EXPECT_THROW(mul_germ(G("d(0,0)"), G("u(-1,0)")), KernelError);
}

TEST(Germ, Conj) {
  EXPECT_EQ(conj_germ(G("t*u(-1/2,1)")), G("tb*u(-1/2,1)"));
  // conj(dt^dtb) = -dt^dtb flips the Dirac sign; this keeps conj compatible with
  // dt dtb u(-1,1) = -tau d(0,0), since u(-1,1) is real and conj(tau) = -tau.
  EXPECT_EQ(conj_germ(G("i*d(1,0)")), G("i*d(0,1)"));
  EXPECT_EQ(conj_germ(G("d(0,0)")), G("-d(0,0)"));
  Germ bridge = d_t(d_tbar(G("u(-1,1)")));
  EXPECT_EQ(conj_germ(bridge), d_t(d_tbar(conj_germ(G("u(-1,1)")))));
  EXPECT_EQ(conj_germ(G("tau*u(-1,0)")), G("-tau*u(-1,0)"));
  // A non-real exponent conjugates to its conjugate.
  EXPECT_EQ(conj_germ(G("u(-1/2+1*i,0)")), G("u(-1/2-1*i,0)"));
}

TEST(Germ, Localize) {
  EXPECT_EQ(localize(G("u(-1,0) + 3*d(0,0)")), G("u(-1,0)"));
  EXPECT_TRUE(localize(G("d(2,1)")).is_zero());
  Germ m = G("t^-2*u(-1/3,1) - 1/2*tb*u(-1,0)");
  EXPECT_EQ(localize(m), m);
}

TEST(Germ, CommutatorsOnFixedGerms) {
  for (const char* s : {"t^-2*tb^-1*u(-1,1)", "tb^-1*u(-1,0)", "d(1,2)", "t^-1*tb^-1*u(-1,0)", "u(-3/4,2)"}) {
    Germ g = G(s);
    EXPECT_EQ(d_t(mul_t(g)) - mul_t(d_t(g)), g) << s;
    EXPECT_EQ(d_t(mul_tbar(g)), mul_tbar(d_t(g))) << s;
    EXPECT_EQ(d_tbar(mul_tbar(g)) - mul_tbar(d_tbar(g)), g) << s;
    EXPECT_EQ(d_t(d_tbar(g)), d_tbar(d_t(g))) << s;
  }
}

TEST(Germ, CanonicalFormHasNoZeros) {
  Germ g = G("u(-1/2,0) + t*u(-1,0)");
  g.add_monomial(MonoKey{0, 0, gr("-1/2"), 0}, -1);
  EXPECT_EQ(g, G("t*u(-1,0)"));
}

// Randomized identities shared with the selftest.
TEST(GermProperties, Uap) { expect_property("germ.uap", 200); }
TEST(GermProperties, DeltaBridge) { expect_property("germ.delta_bridge", 1); }
TEST(GermProperties, Commutators) { expect_property("germ.commutators", 500); }
TEST(GermProperties, Confluence) { expect_property("germ.confluence", 200); }
TEST(GermProperties, Conj) { expect_property("germ.conj", 300); }
TEST(GermProperties, Products) { expect_property("germ.products", 200); }
TEST(GermProperties, Localize) { expect_property("germ.localize", 300); }
