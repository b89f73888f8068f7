#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypertet/geodesics.hpp"
#include "hypertet/unfolding.hpp"

using namespace hypertet;
constexpr double pi = std::numbers::pi;

TEST(Trace, ZeroOneHasFourMidpointCrossings) {
  auto m = midpoint_sequence(0, 1);
  ASSERT_EQ(m.seq.size(), 4u);
  for (const auto& c : m.seq.crossings) EXPECT_EQ(c.t, Rational(1, 2));
  EXPECT_EQ(m.seq.pair_counts(), (std::array<int, 3>{1, 0, 1}));
  EXPECT_FALSE(m.role_swapped);
}

TEST(Trace, RejectsBadTypes) {
  EXPECT_THROW(midpoint_sequence(1, 1), DomainError);
  EXPECT_THROW(midpoint_sequence(2, 4), NotCoprime);
  EXPECT_THROW(midpoint_sequence(3, 2), DomainError);
  EXPECT_THROW(midpoint_sequence(-1, 2), DomainError);
  EXPECT_THROW(tiling_trace(1, 2, Rational(0)), DomainError);
  EXPECT_THROW(tiling_trace(1, 2, Rational(3, 2)), DomainError);
}

TEST(Trace, CountsAndRationalTimes) {
  for (auto t : canonical_types(20)) {
    auto m = midpoint_sequence(t.p, t.q);
    auto pc = m.seq.pair_counts();
    std::sort(pc.begin(), pc.end());
    EXPECT_EQ(pc, (std::array<int, 3>{t.p, t.q, t.p + t.q})) << t.p << "," << t.q;
    EXPECT_EQ(m.seq.size(), static_cast<std::size_t>(4 * (t.p + t.q)));
    for (std::size_t k = 0; k < m.seq.size(); ++k) {
      EXPECT_GT(m.seq.crossings[k].t, 0);
      EXPECT_LT(m.seq.crossings[k].t, 1);
      EXPECT_NE(m.seq.crossings[k].edge, m.seq.crossings[(k + 1) % m.seq.size()].edge);
    }
  }
}

// Exact rationals: four crossings at t = 1/2, a quarter turn apart, on two opposite
// pairs; role swap exactly for even q. Checked for every type with p + q <= 200.
TEST(Trace, MidpointStructureUpTo200) {
  for (auto t : canonical_types(200)) {
    auto m = midpoint_sequence(t.p, t.q);
    const auto& c = m.seq.crossings;
    const std::size_t n = c.size();
    std::vector<std::size_t> half;
    for (std::size_t k = 0; k < n; ++k)
      if (c[k].t == Rational(1, 2)) half.push_back(k);
    ASSERT_EQ(half.size(), 4u) << t.p << "," << t.q;
    EXPECT_EQ(half[1], n / 4);
    EXPECT_EQ(half[2], n / 2);
    EXPECT_EQ(half[3], 3 * n / 4);
    EXPECT_EQ(c[n / 2].edge, opposite(c[0].edge));
    EXPECT_EQ(c[3 * n / 4].edge, opposite(c[n / 4].edge));
    if (t.p > 0) {
      EXPECT_NE(c[n / 4].edge, c[0].edge);
    }
    EXPECT_EQ(m.role_swapped, t.q % 2 == 0);
    EXPECT_LE(longest_vertex_run(m.seq.edges()), 3);
  }
}

TEST(Trace, MidlineMeetsVertexExactlyWhenTraceHits) {
  for (auto t : canonical_types(50)) {
    bool hit = false;
    try {
      tiling_trace(t.p, t.q, Rational(1, 2));
    } catch (const VertexHit&) {
      hit = true;
    }
    EXPECT_EQ(hit, midline_meets_vertex(t.p, t.q)) << t.p << "," << t.q;
    EXPECT_EQ(hit, t.q % 2 == 0 && t.p > 0) << t.p << "," << t.q;
  }
}

TEST(Trace, EuclideanLength) {
  EXPECT_DOUBLE_EQ(euclid_length(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(euclid_length(1, 2), 2 * std::sqrt(7.0));
}

TEST(Trace, VertexRunAndFaces) {
  std::vector<Edge> e{Edge::A1A2, Edge::A1A3, Edge::A1A4, Edge::A2A4};
  EXPECT_EQ(longest_vertex_run(e), 3);
  auto f = face_sequence(e);
  EXPECT_EQ(f[0], face_between(Edge::A1A2, Edge::A1A3));
  std::vector<Edge> bad{Edge::A1A2, Edge::A3A4};
  EXPECT_THROW(face_sequence(bad), NonAdjacentFaces);
}

// Developed corners of the faces along half a geodesic meet in total angles k alpha.
TEST(Development, VertexAnglesAreMultiplesOfAlpha) {
  using LD = long double;
  for (LD al : {LD(pi / 6), 0.9L}) {
    Surface<LD> s(al);
    for (auto t : canonical_types(10)) {
      auto m = midpoint_sequence(t.p, t.q);
      auto f = face_sequence(m.seq.edges());
      std::vector<int> half(f.begin(), f.begin() + static_cast<long>(m.x2));
      auto d = develop(s, half, HIsometry<LD>::identity(), half.size() / 2);
      double worst = 0;
      for (LD x : development_vertex_angles(s, d, LD(1e-9))) {
        double k = double(x / al);
        worst = std::max(worst, std::abs(k - std::round(k)));
        EXPECT_GE(std::round(k), 1);
        EXPECT_LE(std::round(k), 4);
      }
      EXPECT_LT(worst, 1e-8) << t.p << "," << t.q;
      for (std::size_t k = 0; k + 1 < half.size(); ++k) {
        Edge e = d.shared[k];
        auto A = d.placements[k].apply(s.edge_point(half[k], e, 0.3L));
        auto B = d.placements[k + 1].apply(s.edge_point(half[k + 1], e, 0.3L));
        EXPECT_LT(double(hdist(A, B)), 1e-9);
      }
    }
  }
}

TEST(Development, RejectsRepeatedFace) {
  Surface<double> s(pi / 6);
  EXPECT_THROW(develop(s, {0, 1, 1}), NonAdjacentFaces);
}
