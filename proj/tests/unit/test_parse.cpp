#include <gtest/gtest.h>

#include "holodist/parse.hpp"
#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"

using namespace holodist;

namespace {

Germ G(const char* s) { return parse_germ(s); }

}  // namespace

TEST(Parse, Monomial) {
  EXPECT_EQ(G("u(-1/2,3)"), Germ::monomial(0, 0, parse_gaussian("-1/2"), 3));
  EXPECT_EQ(G("t^-2*tb*u(-1/3,1)"), Germ::monomial(-2, 1, parse_gaussian("-1/3"), 1));
  EXPECT_EQ(G("t"), Germ::t_power(1, 0));
}

TEST(Parse, TwoPartGerm) {
  Germ g = G("tau*d(0,0) - t^-1*tb^-1*u(-1,0)");
  EXPECT_EQ(g.delta().size(), 1u);
  EXPECT_EQ(g.moderate().size(), 1u);
  EXPECT_EQ(g.coeff(0, 0), Scalar::tau());
}

TEST(Parse, OperatorPipeline) {
  EXPECT_EQ(G("u(-1,1) | dt | dtb"), Germ::dirac(0, 0, -Scalar::tau()));
  EXPECT_EQ(G("t^-1*u(-1/2,0) | t"), G("u(-1/2,0)"));
  EXPECT_EQ(G("u(-1,0) + d(0,0) | loc"), G("u(-1,0)"));
  EXPECT_EQ(G("i*d(1,0) | conj"), G("i*d(0,1)"));
}

TEST(Parse, RenormalizesExponents) {
  EXPECT_EQ(G("u(1/2,0)"), make_u(parse_gaussian("1/2"), 0));
  EXPECT_EQ(G("u(-2,1)"), G("t*tb*u(-1,1)"));
}

TEST(Parse, ScalarsAndParentheses) {
  EXPECT_EQ(G("(1/2 + i)*tau^2*u(-1,0)"), Germ::monomial(0, 0, -1, 0, Scalar(GaussianRational(Rational(1, 2), 1), 2)));
  EXPECT_EQ(parse_scalar("3*tau - i"), Scalar(3) * Scalar::tau() - Scalar(GaussianRational::i()));
  EXPECT_EQ(G("2*(u(-1/2,0) + t*u(-1,0))"), G("2*u(-1/2,0) + 2*t*u(-1,0)"));
  EXPECT_EQ(G("-u(-1/2,0)"), -G("u(-1/2,0)"));
}

TEST(Parse, ErrorsCarrySpans) {
  try {
    G("u(-1/2,0) + foo");
    FAIL() << "accepted an unknown symbol";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.begin(), 12u);
    EXPECT_EQ(e.end(), 15u);
  }
  EXPECT_THROW(G("u(-1/2"), ParseError);
  EXPECT_THROW(G("u(-1/2,-1)"), KernelError);
  EXPECT_THROW(G("3.5*u(-1,0)"), ParseError);
  EXPECT_THROW(G(""), ParseError);
  EXPECT_THROW(G("d(0,0)*u(-1,0)"), KernelError);
}

TEST(Parse, PrintIsInverse) {
  for (const char* s : {"u(-1/2,3)", "tau*d(0,0) - t^-1*tb^-1*u(-1,0)", "(1/2+i)*t^2*u(-1/3+1/2*i,1)", "0"}) {
    Germ g = G(s);
    EXPECT_EQ(G(g.str().c_str()), g) << g.str();
  }
}

TEST(ParseProperties, GermRoundTrip) {
  auto r = run_property(property("cli.germ_roundtrip"), 1, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
