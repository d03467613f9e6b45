#include <gtest/gtest.h>

#include "holodist/io.hpp"
#include "holodist/parse.hpp"
#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"

using namespace holodist;

TEST(Io, MatrixStringsAndIntegers) {
  Json j = Json::parse(R"([["1", 2], ["-1/2+1*i", "0"]])");
  Mat m = matrix_from_json(j, 2, 2, "m");
  EXPECT_EQ(m(0, 1), GaussianRational(2));
  EXPECT_EQ(m(1, 0), parse_gaussian("-1/2+1*i"));
  EXPECT_EQ(matrix_from_json(matrix_to_json(m), 2, 2, "m"), m);
}

TEST(Io, MatrixRejectsFloatsAndBadShapes) {
  EXPECT_THROW(matrix_from_json(Json::parse("[[0.5]]"), 1, 1, "m"), KernelError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2]]"), 1, 1, "m"), KernelError);
  EXPECT_EQ(matrix_from_json(Json::parse("[]"), 0, 3, "m").cols(), 3u);
}

TEST(Io, ModuleRoundTrip) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    VGradedModule m = rand_module(rng);
    EXPECT_EQ(module_from_json(module_to_json(m)), m);
  }
}

TEST(Io, ModuleSchema) {
  Json j = Json::parse(R"({
    "alphas": ["-1", "-1/2"],
    "psi": {"-1": {"dim": 1, "N": [["0"]]}, "-1/2": {"dim": 2, "N": [["0", "1"], ["0", "0"]]}},
    "phi": {"dim": 1, "N": [["0"]]},
    "can": [["1"]],
    "var": [["0"]]
  })");
  VGradedModule m = module_from_json(j);
  EXPECT_EQ(m.psi_at(parse_gaussian("-1/2")).dim, 2u);
  EXPECT_TRUE(check_module(m).empty());
  j["psi"]["-1/2"]["dim"] = 3;
  EXPECT_THROW(module_from_json(j), KernelError);
}

TEST(Io, PairingSimpleForm) {
  Json j = Json::parse(R"J({"alpha": "-1/2", "left_dim": 1, "right_dim": 1, "entries": [["u(-1/2,0)"]]})J");
  DistPairing P = pairing_from_json(j);
  EXPECT_EQ(psi_S(P, parse_gaussian("-1/2"))(0, 0), Scalar::tau());
}

TEST(Io, PairingRoundTrip) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    VGradedModule l = rand_module(rng);
    DistPairing P = rand_pairing(rng, l, hermitian_dual_quiver(l));
    Json j = pairing_to_json(P);
    EXPECT_EQ(pairing_to_json(pairing_from_json(j)), j);
  }
}

TEST(Io, LedgerJson) {
  Json j = ledger_to_json(mellin_ledger(parse_germ("u(-1/2,1)"), 0, 0));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["s0"], "-1/2");
  EXPECT_EQ(j[0]["order"], 2);
  EXPECT_EQ(j[0]["coefficients"][0], "tau");
}

TEST(Io, BiOrderJson) {
  Json j = biorder_to_json({-1, parse_gaussian("1/2")});
  EXPECT_EQ(j, Json::array({"-1", "1/2"}));
}

TEST(IoProperties, JsonRoundTrip) {
  auto r = run_property(property("cli.json_roundtrip"), 1, 50);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
