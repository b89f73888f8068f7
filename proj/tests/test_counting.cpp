#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "hypertet/counting.hpp"

using namespace hypertet;
constexpr double pi = std::numbers::pi;

TEST(Totient, AgainstGcdCount) {
  auto sieve = totient_sieve(500);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    EXPECT_EQ(totient(n), c) << n;
    EXPECT_EQ(sieve[n], c) << n;
  }
  EXPECT_THROW(totient(0), DomainError);
  EXPECT_EQ(totient(1000000007ULL), 1000000006ULL);
}

TEST(Psi, SmallValues) {
  EXPECT_EQ(psi(0), 0u);
  EXPECT_EQ(psi(1), 1u);
  EXPECT_EQ(psi(2), 1u);
  EXPECT_EQ(psi(3), 2u);
  EXPECT_EQ(psi(4), 3u);
  EXPECT_EQ(psi(5), 5u);
  EXPECT_EQ(psi(-3), 0u);
  // canonical_types lists the same pairs
  for (int x = 1; x <= 60; ++x) EXPECT_EQ(psi(x), canonical_types(x).size());
}

TEST(Psi, TablesAgree) {
  auto a = psi_enumerate_table(2000), b = psi_summation_table(2000);
  EXPECT_EQ(a, b);
  EXPECT_EQ(psi(20000), psi_summation_table(20000)[20000]);
}

TEST(CAlpha, Limits) {
  double ln3 = std::log(3.0);
  auto c0 = c_alpha(1e-6);
  EXPECT_NEAR(c0.value / (27 / (32 * pi * pi * ln3 * ln3)), 1, 1e-4);
  EXPECT_GT(c_alpha(pi / 3 - 1e-6).value, 1e3);
  double prev = 0;
  for (double al = 0.05; al < pi / 3; al += 0.05) {
    double c = c_alpha(al).value;
    EXPECT_GT(c, prev);
    prev = c;
  }
  EXPECT_THROW(c_alpha(pi / 3), DomainError);
}

TEST(MaxPq, ErrorsAndMonotone) {
  EXPECT_THROW(max_pq_bound(0.0, pi / 6), DomainError);
  EXPECT_THROW(max_pq_bound(-1.0, pi / 6), DomainError);
  EXPECT_THROW(max_pq_bound(std::numeric_limits<double>::infinity(), pi / 6), DomainError);
  EXPECT_THROW(max_pq_bound(std::nan(""), pi / 6), DomainError);
  EXPECT_THROW(max_pq_bound(10.0, 0.0), DomainError);
  long prev = 0;
  for (double L = 0.5; L < 200; L *= 1.3) {
    long b = max_pq_bound(L, pi / 6);
    EXPECT_GE(b, prev);
    EXPECT_GE(b, 0);
    prev = b;
  }
}

TEST(LowerBound, BelowActualLengths) {
  Surface<double> s(0.4);
  for (auto t : canonical_types(25)) {
    double L = geodesic_length(s, t);
    EXPECT_LE(length_lower_bound(t, 0.4), L);
    EXPECT_LE(t.p + t.q, max_pq_bound(L, 0.4));
  }
}

TEST(CountTable, MonotoneAndCapped) {
  Surface<double> s(pi / 6);
  std::vector<double> Ls;
  for (double L = 2; L < 40; L *= 1.25) Ls.push_back(L);
  auto rows = count_table(s, Ls, 1);
  ASSERT_EQ(rows.size(), Ls.size());
  EXPECT_EQ(rows.front().n_exact, 0u);  // below the (0,1) length
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].n_exact, rows[i].n_cap);
    EXPECT_EQ(rows[i].n_exact % 3, 0u);
    EXPECT_NEAR(rows[i].n_pred, c_alpha(pi / 6).value * Ls[i] * Ls[i], 1e-12 * rows[i].n_pred);
    if (i) {
      EXPECT_GE(rows[i].n_exact, rows[i - 1].n_exact);
    }
  }
}

TEST(CountTable, KnownCounts) {
  Surface<double> s(pi / 6);
  EXPECT_EQ(count_exact(s, 3.0).n_exact, 0u);
  EXPECT_EQ(count_exact(s, 3.33).n_exact, 3u);
  EXPECT_EQ(count_exact(s, 10.0).n_exact, 6u);
  EXPECT_EQ(count_exact(s, 13.0).n_exact, 9u);
  EXPECT_EQ(count_exact(s, 20.0).n_exact, 18u);
}

TEST(CountTable, ThreadCountDoesNotMatter) {
  Surface<double> s(0.3);
  std::vector<double> Ls{10, 25, 50, 70};
  auto a = count_table(s, Ls, 1), b = count_table(s, Ls, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].n_exact, b[i].n_exact);
    EXPECT_EQ(a[i].n_cap, b[i].n_cap);
    EXPECT_EQ(a[i].max_pq, b[i].max_pq);
  }
  std::vector<GeodesicType> t = canonical_types(30);
  auto la = type_lengths(s, t, 1), lb = type_lengths(s, t, 4);
  EXPECT_EQ(la, lb);
}
