#include <gtest/gtest.h>

#include "holodist/nilalg.hpp"
#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"

using namespace holodist;

namespace {

std::vector<size_t> gr_dims(const Filtration& f, long lo, long hi) {
  std::vector<size_t> out;
  for (long k = lo; k <= hi; ++k) out.push_back(f.gr_dim(k));
  return out;
}

void expect_matches_oracle(const Mat& n) {
  auto flags = oracle::monodromy_flags(n);
  ASSERT_EQ(flags.size(), 1u) << "oracle found " << flags.size() << " filtrations for " << n.str();
  Filtration f = monodromy_filtration(n);
  long d = static_cast<long>(n.rows());
  for (long k = -d; k <= d; ++k) EXPECT_EQ(f.at(k), flags[0][static_cast<size_t>(k + d)]) << n.str() << " k=" << k;
}

}  // namespace

TEST(Nilalg, LinearAlgebraBasics) {
  Mat a(2, 3);
  a(0, 0) = 1, a(0, 1) = 2, a(0, 2) = 3;
  a(1, 0) = 2, a(1, 1) = 4, a(1, 2) = GaussianRational(6, 1);
  EXPECT_EQ(rank(a), 2u);
  Mat k = kernel(a);
  EXPECT_EQ(k.cols(), 1u);
  EXPECT_TRUE((a * k).is_zero());
  Rng rng(1);
  Mat u = rand_unimodular(rng, 4);
  EXPECT_EQ(u * inverse(u), Mat::identity(4));
  EXPECT_THROW(inverse(Mat(2, 2)), KernelError);
}

TEST(Nilalg, JordanThree) {
  Mat n = oracle::jordan_matrix({3});
  Filtration f = monodromy_filtration(n);
  EXPECT_EQ(gr_dims(f, -3, 3), (std::vector<size_t>{0, 1, 0, 1, 0, 1, 0}));
  EXPECT_EQ(primitive_part(n, f, 2).cols(), 1u);
  EXPECT_EQ(primitive_part(n, f, 0).cols(), 0u);
  EXPECT_EQ(jordan_type(n), (std::vector<size_t>{3}));
  // gr_0 = N P gr_2
  for (const auto& piece : lefschetz_decompose(n))
    if (piece.ell == 0 && piece.basis.cols() > 0) {
      EXPECT_EQ(piece.k, 1);
    }
}

TEST(Nilalg, ZeroMap) {
  Mat n(3, 3);
  Filtration f = monodromy_filtration(n);
  EXPECT_EQ(f.at(-1).dim(), 0u);
  EXPECT_EQ(f.at(0).dim(), 3u);
  EXPECT_EQ(primitive_part(n, f, 0).cols(), 3u);
  EXPECT_EQ(jordan_type(Mat(4, 4)), (std::vector<size_t>{1, 1, 1, 1}));
  auto pieces = lefschetz_decompose(n);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].ell, 0);
  EXPECT_EQ(pieces[0].k, 0);
  EXPECT_EQ(pieces[0].basis.cols(), 3u);
}

TEST(Nilalg, BlocksTwoOne) {
  Mat n = oracle::jordan_matrix({2, 1});
  Filtration f = monodromy_filtration(n);
  EXPECT_EQ(gr_dims(f, -2, 2), (std::vector<size_t>{0, 1, 1, 1, 0}));
  EXPECT_EQ(primitive_part(n, f, 1).cols(), 1u);
  EXPECT_EQ(primitive_part(n, f, 0).cols(), 1u);
  EXPECT_THROW(primitive_part(n, f, -1), KernelError);
}

TEST(Nilalg, JordanTypeFromRanks) {
  // rank sequence (2, 1, 0) on dim 4
  Mat n = oracle::jordan_matrix({3, 1});
  EXPECT_EQ(rank(n), 2u);
  EXPECT_EQ(rank(n.pow(2)), 1u);
  EXPECT_EQ(jordan_type(n), (std::vector<size_t>{3, 1}));
}

TEST(Nilalg, RejectsNonNilpotent) {
  Mat n = Mat::identity(2);
  EXPECT_FALSE(is_nilpotent(n));
  EXPECT_THROW(monodromy_filtration(n), KernelError);
  EXPECT_THROW(jordan_type(n), KernelError);
}

TEST(Nilalg, OracleOnAllSmallNilpotents) {
  // every nilpotent with entries in {0, 1, -1} up to dim 3, and a capped prefix of dim 4
  size_t count = 0;
  for (size_t d = 1; d <= 3; ++d)
    for (const Mat& n : oracle::small_nilpotents(d, 100000)) {
      expect_matches_oracle(n);
      ++count;
    }
  for (const Mat& n : oracle::small_nilpotents(4, 300)) {
    expect_matches_oracle(n);
    ++count;
  }
  EXPECT_GT(count, 300u);
}

TEST(Nilalg, JordanOracleOnRandomConjugates) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    size_t d = static_cast<size_t>(rand_int(rng, 1, 6));
    auto blocks = oracle::random_partition(rng, d);
    Mat n = oracle::conjugated_jordan(rng, blocks);
    EXPECT_EQ(jordan_type(n), blocks);
    long D = static_cast<long>(d);
    EXPECT_EQ(gr_dims(monodromy_filtration(n), -D, D), oracle::jordan_gr_dims(blocks, -D, D));
    // Lefschetz pieces: N^k P gr_{l+2k} has dim = #blocks of size l+2k+1
    for (const auto& piece : lefschetz_decompose(n)) {
      size_t size = static_cast<size_t>(piece.ell + 2 * piece.k + 1);
      size_t expect = static_cast<size_t>(std::count(blocks.begin(), blocks.end(), size));
      EXPECT_EQ(piece.basis.cols(), expect) << "l=" << piece.ell << " k=" << piece.k;
    }
  }
}

TEST(Nilalg, SubspaceOperations) {
  Mat v(3, 2);
  v(0, 0) = 1, v(1, 1) = 1;
  Subspace xy = Subspace::span_columns(v);
  Mat w(3, 1);
  w(1, 0) = 1, w(2, 0) = 1;
  Subspace yz_diag = Subspace::span_columns(w);
  EXPECT_EQ((xy + yz_diag).dim(), 3u);
  EXPECT_EQ(xy.intersect(yz_diag).dim(), 0u);
  EXPECT_TRUE(Subspace::whole(3).contains(xy));
  EXPECT_FALSE(xy.contains(yz_diag));
  EXPECT_EQ(Subspace::whole(3).complement_of(xy).cols(), 1u);
}

TEST(NilalgProperties, Monodromy) {
  auto r = run_property(property("nilalg.monodromy"), 1, 100);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
