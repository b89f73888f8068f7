#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypertet/tetrahedron.hpp"
#include "hypertet/unfolding.hpp"

using namespace hypertet;
constexpr double pi = std::numbers::pi;

TEST(Combinatorics, EdgesAndFaces) {
  EXPECT_EQ(edge_name(Edge::A1A2), "A1A2");
  EXPECT_EQ(edge_from_name("A3A4"), Edge::A3A4);
  EXPECT_EQ(edge_of(3, 1), Edge::A2A4);
  EXPECT_THROW(edge_of(2, 2), DomainError);
  EXPECT_THROW(edge_from_name("B1"), DomainError);
  for (int k = 0; k < 6; ++k) {
    Edge e = static_cast<Edge>(k);
    EXPECT_EQ(opposite(opposite(e)), e);
    EXPECT_FALSE(edge_has(opposite(e), lower(e)));
    EXPECT_FALSE(edge_has(opposite(e), upper(e)));
    auto fs = faces_of_edge(e);
    EXPECT_EQ(shared_edge(fs[0], fs[1]), e);
    EXPECT_THROW(face_between(e, opposite(e)), NonAdjacentFaces);
  }
  EXPECT_THROW(shared_edge(1, 1), NonAdjacentFaces);
  EXPECT_EQ(face_between(Edge::A1A2, Edge::A1A3), 3);
}

TEST(Params, RejectsBadAngles) {
  EXPECT_THROW(TetraParams<double>(0.0), DomainError);
  EXPECT_THROW(TetraParams<double>(-0.1), DomainError);
  EXPECT_THROW(TetraParams<double>(pi / 3), DomainError);
  EXPECT_THROW(TetraParams<double>(std::nan("")), DomainError);
  EXPECT_NO_THROW(TetraParams<double>(pi / 3 - 1e-9));
}

TEST(Chart, RegularTriangle) {
  for (double al : {0.1, pi / 6, 1.0}) {
    auto c = FaceChart<double>::regular(al);
    double a = edge_length(al);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(hdist(c.corners[i], c.corners[(i + 1) % 3]), a, 1e-11 * (1 + a));
      EXPECT_NEAR(angle(c.corners[i], c.corners[(i + 1) % 3], c.corners[(i + 2) % 3]), al, 1e-11);
    }
    EXPECT_TRUE(c.contains(HPoint<double>::origin()));
    EXPECT_FALSE(c.contains(HPoint<double>::polar(2 * a, 0.3)));
  }
}

TEST(Surface, GluingMatchesSharedEdges) {
  Surface<double> s(pi / 6);
  for (int k = 0; k < 6; ++k) {
    Edge e = static_cast<Edge>(k);
    auto fs = faces_of_edge(e);
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      auto Xf = s.edge_point(fs[0], e, t);
      auto Xg = s.edge_point(fs[1], e, t);
      EXPECT_LT(hdist(s.glue(fs[1], fs[0]).apply(Xg), Xf), 1e-11);
      EXPECT_LT(hdist(s.glue(fs[0], fs[1]).apply(Xf), Xg), 1e-11);
      EXPECT_NEAR(s.edge_param(fs[0], e, Xf), t, 1e-12);
    }
    // the two faces lie on opposite sides after gluing
    auto third = [&](int f) {
      for (int v : kFaceCorners[f])
        if (!edge_has(e, v)) return s.corner(f, v);
      return s.corner(f, lower(e));
    };
    auto Cg = s.glue(fs[1], fs[0]).apply(third(fs[1]));
    EXPECT_LT(orient(s.corner(fs[0], lower(e)), s.corner(fs[0], upper(e)), third(fs[0])) *
                  orient(s.corner(fs[0], lower(e)), s.corner(fs[0], upper(e)), Cg),
              0);
    EXPECT_EQ(s.glue(fs[1], fs[0]).orientation(), 1);
  }
  EXPECT_THROW(s.glue(2, 2), NonAdjacentFaces);
  EXPECT_THROW(s.edge_start(0, Edge::A1A2), DomainError);
}

TEST(Surface, ConeAngleAtEachVertex) {
  for (double al : {0.3, pi / 6, 1.0}) {
    Surface<double> s(al);
    for (int v = 0; v < 4; ++v) {
      std::vector<int> around;
      for (int f = 0; f < 4; ++f)
        if (f != v) around.push_back(f);
      auto d = develop(s, around);
      auto tot = development_vertex_angles(s, d);
      double best = 0;
      for (double x : tot) best = std::max(best, x);
      EXPECT_NEAR(best, 3 * al, 1e-10);
    }
  }
}

TEST(Distances, BoundsAreConsistent) {
  for (double al = 0.05; al < pi / 3 - 0.02; al += 0.05) {
    auto d = distance_bounds(TetraParams<double>(al));
    EXPECT_GT(d.d_trig, 0);
    EXPECT_GT(d.d_log, 0);
    EXPECT_LT(d.h, d.a);
    EXPECT_LT(d.d_trig, d.h);
  }
}

TEST(Klein, PairwiseDistancesAreEdgeLength) {
  for (double al : {0.05, 0.4, pi / 6, 1.0}) {
    auto k = klein_embedding(TetraParams<double>(al));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        EXPECT_NEAR(klein_distance(k.vertices[i], k.vertices[j]), k.edge_length, 1e-10 * (1 + k.edge_length));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(klein_distance({0.0, 0.0, 0.0}, k.vertices[i]), k.circumradius, 1e-10);
  }
}

// Independent oracle: bisect on the Klein radius until the edges have length a.
TEST(Klein, CircumradiusBisection) {
  for (double al : {0.1, pi / 6, 0.9}) {
    double a = edge_length(al);
    double lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) {
      double m = (lo + hi) / 2, s = m / std::sqrt(3.0);
      (klein_distance<double>({s, s, s}, {s, -s, -s}) < a ? lo : hi) = m;
    }
    auto k = klein_embedding(TetraParams<double>(al));
    EXPECT_NEAR(k.klein_radius, lo, 1e-13);
    EXPECT_NEAR(k.circumradius, std::atanh(lo), 1e-11);
  }
}

TEST(Klein, ChartEmbeddingIsIsometricAndGlued) {
  Surface<double> s(pi / 6);
  auto kt = klein_embedding(s.params());
  for (int f = 0; f < 4; ++f) {
    auto c = s.chart().corners;
    auto X = midpoint(c[0], c[1]), Y = midpoint(midpoint(c[1], c[2]), c[0]);
    EXPECT_NEAR(klein_distance(chart_to_klein(s, f, X, kt), chart_to_klein(s, f, Y, kt)), hdist(X, Y), 1e-10);
    for (int k = 0; k < 3; ++k) {
      auto v = chart_to_klein(s, f, c[k], kt);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(v[j], kt.vertices[kFaceCorners[f][k]][j], 1e-12);
    }
  }
  for (int e = 0; e < 6; ++e) {
    auto fs = faces_of_edge(static_cast<Edge>(e));
    auto u = chart_to_klein(s, fs[0], s.edge_point(fs[0], static_cast<Edge>(e), 0.3), kt);
    auto w = chart_to_klein(s, fs[1], s.edge_point(fs[1], static_cast<Edge>(e), 0.3), kt);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(u[j], w[j], 1e-12);
  }
  EXPECT_THROW(chart_to_klein(s, 0, HPoint<double>::polar(5, 0), kt), DomainError);
}
