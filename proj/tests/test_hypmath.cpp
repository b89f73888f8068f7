#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypertet/hypmath.hpp"

using namespace hypertet;
using P = HPoint<double>;
constexpr double pi = std::numbers::pi;

TEST(HPoint, ModelsRoundTrip) {
  auto X = P::from_poincare(0.3, -0.4);
  auto k = X.klein();
  auto Y = P::from_klein(k[0], k[1]);
  EXPECT_LT(hdist(X, Y), 1e-12);
  auto p = Y.poincare();
  EXPECT_NEAR(p[0], 0.3, 1e-14);
  EXPECT_NEAR(p[1], -0.4, 1e-14);
  EXPECT_LT(X.norm_defect(), 1e-13);
}

TEST(HPoint, RejectsOutsideDisk) {
  EXPECT_THROW(P::from_klein(0.8, 0.7), DomainError);
  EXPECT_THROW(P::from_poincare(1.0, 0.0), DomainError);
  EXPECT_THROW(P::from_hyperboloid(1, 1, 1), DomainError);
}

TEST(Distance, PolarRadius) {
  for (double r : {0.0, 1e-8, 0.5, 3.0, 12.0}) EXPECT_NEAR(hdist(P::origin(), P::polar(r, 0.7)), r, 1e-9 * (1 + r));
}

// Poincare disk closed form: cosh d = 1 + 2|x-y|^2/((1-|x|^2)(1-|y|^2)).
TEST(Distance, MatchesPoincareFormula) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    double n1 = a * a + b * b, n2 = c * c + d * d, dd = (a - c) * (a - c) + (b - d) * (b - d);
    double ref = std::acosh(1 + 2 * dd / ((1 - n1) * (1 - n2)));
    EXPECT_NEAR(hdist(P::from_poincare(a, b), P::from_poincare(c, d)), ref, 1e-10);
  }
}

TEST(Distance, TriangleInequality) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> r(0, 4), ph(0, 2 * pi);
  for (int i = 0; i < 300; ++i) {
    auto A = P::polar(r(rng), ph(rng)), B = P::polar(r(rng), ph(rng)), C = P::polar(r(rng), ph(rng));
    EXPECT_LE(hdist(A, C), hdist(A, B) + hdist(B, C) + 1e-10);
  }
}

TEST(Geodesic, PointAtDistance) {
  auto A = P::polar(1.2, 0.3), B = P::polar(2.0, 2.5);
  auto dir = HDirection<double>::toward(A, B);
  double d = hdist(A, B);
  EXPECT_LT(hdist(geodesic_point(dir, d), B), 1e-10);
  auto M = geodesic_point(dir, d / 2);
  EXPECT_LT(hdist(M, midpoint(A, B)), 1e-10);
  EXPECT_NEAR(hdist(A, M), d / 2, 1e-12);
  EXPECT_THROW(geodesic_point(B, dir, 1.0), DomainError);
}

TEST(Isometry, PreservesDistanceAndForm) {
  auto T = HIsometry<double>::boost(P::polar(1.5, 0.4)) * HIsometry<double>::rotation_about(P::polar(0.7, 2), 1.1);
  EXPECT_LT(T.lorentz_defect(), 1e-12);
  auto A = P::polar(0.9, 1.0), B = P::polar(2.2, -0.5);
  EXPECT_NEAR(hdist(T.apply(A), T.apply(B)), hdist(A, B), 1e-11);
  auto I = T * T.inverse();
  EXPECT_LT(hdist(I.apply(A), A), 1e-11);
  EXPECT_EQ(T.orientation(), 1);
}

TEST(Isometry, ReflectionFixesLine) {
  auto A = P::polar(0.5, 0.2), B = P::polar(1.5, 1.9), X = P::polar(1.0, -2.0);
  auto R = HIsometry<double>::reflect_across(A, B);
  EXPECT_EQ(R.orientation(), -1);
  EXPECT_LT(hdist(R.apply(A), A), 1e-12);
  EXPECT_LT(hdist(R.apply(B), B), 1e-12);
  EXPECT_LT(hdist(R.apply(R.apply(X)), X), 1e-11);
  EXPECT_LT(orient(A, B, X) * orient(A, B, R.apply(X)), 0);
  EXPECT_THROW(HIsometry<double>::reflect_across(A, A), DomainError);
}

TEST(Isometry, MappingTakesFrameToFrame) {
  auto P1 = P::polar(0.3, 0), P2 = P::polar(1.3, 1), Q1 = P::polar(2, 2), Q2 = P::polar(0.4, -1);
  auto M = HIsometry<double>::mapping(P1, P2, Q1, Q2);
  EXPECT_LT(hdist(M.apply(P1), Q1), 1e-11);
  auto u = M.apply(HDirection<double>::toward(P1, P2));
  auto w = HDirection<double>::toward(Q1, Q2);
  EXPECT_NEAR(signed_angle(u, w), 0, 1e-10);
}

TEST(Angles, RotationAndSum) {
  auto d = HDirection<double>::toward(P::origin(), P::polar(1, 0));
  EXPECT_NEAR(signed_angle(d, d.rotated(0.8)), 0.8, 1e-13);
  EXPECT_NEAR(signed_angle(d, d.left()), pi / 2, 1e-13);
  EXPECT_NEAR(std::abs(signed_angle(d, d.reversed())), pi, 1e-13);
  // Gauss-Bonnet: triangle area = pi - angle sum > 0
  auto A = P::polar(1, 0), B = P::polar(1.5, 2), C = P::polar(0.8, 4);
  double s = angle(A, B, C) + angle(B, C, A) + angle(C, A, B);
  EXPECT_LT(s, pi);
}

// Independent oracle: bisect on r until the isosceles triangle with legs r and apex
// angle alpha has its third side equal to r.
TEST(EdgeLength, EquilateralBisectionOracle) {
  for (double al = 0.05; al < pi / 3 - 0.01; al += 0.05) {
    double lo = 1e-9, hi = 40;
    for (int i = 0; i < 200; ++i) {
      double m = (lo + hi) / 2;
      (hdist(P::polar(m, 0), P::polar(m, al)) < m ? lo : hi) = m;
    }
    double a = edge_length(al);
    EXPECT_NEAR(a, lo, 1e-9 * (1 + a));
    auto A = P::origin(), B = P::polar(a, 0), C = P::polar(a, al);
    EXPECT_NEAR(angle(B, C, A), al, 1e-9);
  }
  EXPECT_THROW(edge_length(0.0), DomainError);
  EXPECT_THROW(edge_length(pi / 3), DomainError);
}

TEST(EdgeLength, MonotoneAndSmallLimit) {
  double prev = 1e300;
  for (double al = 0.01; al < pi / 3; al += 0.01) {
    double a = edge_length(al);
    EXPECT_LT(a, prev);
    prev = a;
  }
  EXPECT_GT(edge_length(pi / 3 - 1e-9), 0);
  EXPECT_LT(edge_length(pi / 3 - 1e-9), 1e-3);
}

TEST(Altitude, FootOfPerpendicular) {
  for (double al : {0.2, 0.5, 0.9}) {
    double a = edge_length(al);
    auto A = P::origin(), B = P::polar(a, 0), C = P::polar(a, al);
    double h = face_altitude(al);
    EXPECT_NEAR(distance_to_segment(C, A, B), h, 1e-10);
    EXPECT_LT(h, a);
  }
}

TEST(Segments, Relations) {
  auto A = P::from_klein(-0.5, 0), B = P::from_klein(0.5, 0);
  auto C = P::from_klein(0, -0.5), D = P::from_klein(0, 0.5);
  EXPECT_EQ(segment_relation(A, B, C, D), SegmentRelation::Cross);
  auto E = P::from_klein(0, 0.1);
  EXPECT_EQ(segment_relation(A, B, E, D), SegmentRelation::Disjoint);
  auto F = P::from_klein(0, 0);  // endpoint on the other segment
  EXPECT_EQ(segment_relation(A, B, F, D), SegmentRelation::Tie);
}

TEST(Segments, DistanceAgreesWithSampling) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r(0, 2.5), ph(0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    auto A = P::polar(r(rng), ph(rng)), B = P::polar(r(rng), ph(rng)), V = P::polar(r(rng), ph(rng));
    auto dir = HDirection<double>::toward(A, B);
    double L = hdist(A, B), best = 1e300;
    for (int k = 0; k <= 4000; ++k) best = std::min(best, hdist(V, geodesic_point(dir, L * k / 4000)));
    double d = distance_to_segment(V, A, B);
    EXPECT_LE(d, best + 1e-12);
    EXPECT_GT(d, best - 1e-5 * (1 + L));
  }
}
