#pragma once

// Regular hyperbolic tetrahedron as an intrinsic cone surface: four congruent face
// charts glued along six edges, plus its embedding in the Klein ball.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "hypmath.hpp"

namespace hypertet {

// Edges are ordered vertex pairs (Ai, Aj), i < j, with 0-based labels.
enum class Edge : int { A1A2 = 0, A1A3, A1A4, A2A3, A2A4, A3A4 };

inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Face f is opposite vertex f; corners listed counter-clockwise in the chart.
inline constexpr std::array<std::array<int, 3>, 4> kFaceCorners{{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

inline constexpr int edge_index(Edge e) { return static_cast<int>(e); }

inline Edge edge_of(int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 3 || j > 3) throw DomainError("edge needs two distinct vertex labels");
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kEdgeVertices[k][0] == i && kEdgeVertices[k][1] == j) return static_cast<Edge>(k);
  throw DomainError("unreachable edge lookup");
}

inline constexpr Edge opposite(Edge e) { return static_cast<Edge>(5 - edge_index(e)); }

inline int lower(Edge e) { return kEdgeVertices[edge_index(e)][0]; }
inline int upper(Edge e) { return kEdgeVertices[edge_index(e)][1]; }

inline bool edge_has(Edge e, int v) { return lower(e) == v || upper(e) == v; }

inline std::string edge_name(Edge e) {
  return "A" + std::to_string(lower(e) + 1) + "A" + std::to_string(upper(e) + 1);
}

inline Edge edge_from_name(std::string_view s) {
  if (s.size() != 4 || s[0] != 'A' || s[2] != 'A') throw DomainError("bad edge name: " + std::string(s));
  return edge_of(s[1] - '1', s[3] - '1');
}

// The two faces containing e, ascending.
inline std::array<int, 2> faces_of_edge(Edge e) {
  std::array<int, 2> r{};
  int n = 0;
  for (int f = 0; f < 4; ++f)
    if (!edge_has(e, f)) r[n++] = f;
  return r;
}

inline bool face_has_edge(int f, Edge e) { return !edge_has(e, f); }

// The face containing both edges; they must be distinct and share a vertex.
inline int face_between(Edge e1, Edge e2) {
  if (e1 == e2 || e1 == opposite(e2))
    throw NonAdjacentFaces("edges " + edge_name(e1) + " and " + edge_name(e2) + " do not bound a common face");
  for (int f = 0; f < 4; ++f)
    if (face_has_edge(f, e1) && face_has_edge(f, e2)) return f;
  throw NonAdjacentFaces("no common face");
}

// Edge shared by two distinct faces: the vertices other than f and g.
inline Edge shared_edge(int f, int g) {
  if (f == g || f < 0 || g < 0 || f > 3 || g > 3) throw NonAdjacentFaces("faces do not share an edge");
  int v[2], n = 0;
  for (int k = 0; k < 4; ++k)
    if (k != f && k != g) v[n++] = k;
  return edge_of(v[0], v[1]);
}

inline int corner_index(int face, int vertex) {
  for (int k = 0; k < 3; ++k)
    if (kFaceCorners[face][k] == vertex) return k;
  return -1;
}

template <std::floating_point Real = double>
struct TetraParams {
  Real alpha;

  explicit TetraParams(Real a) : alpha(a) {
    if (!(a > 0 && a < std::numbers::pi_v<Real> / 3)) throw DomainError("face angle must lie in (0, pi/3)");
  }
};

// Canonical regular triangle: centroid at the origin, corner 0 on the +x1 axis.
template <std::floating_point Real = double>
struct FaceChart {
  std::array<HPoint<Real>, 3> corners;

  static FaceChart regular(Real alpha) {
    TetraParams<Real> p(alpha);
    Real R = std::acosh(1 / (std::tan(alpha / 2) * std::sqrt(Real(3))));
    FaceChart c;
    for (int k = 0; k < 3; ++k) c.corners[k] = HPoint<Real>::polar(R, 2 * std::numbers::pi_v<Real> * k / 3);
    return c;
  }

  // Barycentric weights of a point with respect to the corners (hyperboloid vectors).
  std::array<Real, 3> barycentric(const HPoint<Real>& X) const {
    const auto &c0 = corners[0].vec(), &c1 = corners[1].vec(), &c2 = corners[2].vec();
    Real d = det3(c0, c1, c2);
    return {det3(X.vec(), c1, c2) / d, det3(c0, X.vec(), c2) / d, det3(c0, c1, X.vec()) / d};
  }

  bool contains(const HPoint<Real>& X, Real tol = Real(1e-12)) const {
    auto l = barycentric(X);
    return l[0] >= -tol && l[1] >= -tol && l[2] >= -tol;
  }
};

template <std::floating_point Real = double>
class Surface {
 public:
  explicit Surface(Real alpha) : params_(alpha), chart_(FaceChart<Real>::regular(alpha)) {
    a_ = hypertet::edge_length<Real>(alpha);
    for (int g = 0; g < 4; ++g)
      for (int f = 0; f < 4; ++f) {
        if (f == g) continue;
        Edge e = shared_edge(f, g);
        glue_[g][f] = HIsometry<Real>::mapping(corner(g, lower(e)), corner(g, upper(e)), corner(f, lower(e)),
                                               corner(f, upper(e)));
      }
  }

  Real alpha() const { return params_.alpha; }
  const TetraParams<Real>& params() const { return params_; }
  Real edge_length() const { return a_; }
  const FaceChart<Real>& chart() const { return chart_; }

  // Chart position of a global vertex inside a face containing it.
  const HPoint<Real>& corner(int face, int vertex) const {
    int k = corner_index(face, vertex);
    if (k < 0) throw DomainError("vertex not on face");
    return chart_.corners[k];
  }

  // Unit tangent along e (lower -> upper label) based at the lower vertex.
  HDirection<Real> edge_start(int face, Edge e) const {
    check_edge(face, e);
    return HDirection<Real>::toward(corner(face, lower(e)), corner(face, upper(e)));
  }

  // Point at arclength fraction t from the lower-label vertex.
  HPoint<Real> edge_point(int face, Edge e, Real t) const { return geodesic_point(edge_start(face, e), t * a_); }

  // Tangent along e (lower -> upper) at fraction t.
  HDirection<Real> edge_direction(int face, Edge e, Real t) const {
    auto d = edge_start(face, e);
    Real s = t * a_;
    auto P = geodesic_point(d, s);
    return HDirection<Real>::from_vector(P, std::sinh(s) * d.base().vec() + std::cosh(s) * d.vec());
  }

  // Inverse of edge_point for points on the edge line.
  Real edge_param(int face, Edge e, const HPoint<Real>& X) const {
    auto d = edge_start(face, e);
    return std::asinh(mink(X.vec(), d.vec())) / a_;
  }

  // +1 when the face interior lies to the left of the edge direction.
  int interior_side(int face, Edge e) const {
    check_edge(face, e);
    int third = 6 - lower(e) - upper(e) - face;
    return orient(corner(face, lower(e)), corner(face, upper(e)), corner(face, third)) > 0 ? 1 : -1;
  }

  // Maps the chart of face g into the chart of face f so the shared edges coincide.
  const HIsometry<Real>& glue(int g, int f) const {
    if (f == g || f < 0 || g < 0 || f > 3 || g > 3) throw NonAdjacentFaces("gluing needs two distinct faces");
    return glue_[g][f];
  }

  // The other face across edge e.
  static int across(int face, Edge e) {
    auto fs = faces_of_edge(e);
    if (fs[0] == face) return fs[1];
    if (fs[1] == face) return fs[0];
    throw DomainError("edge not on face");
  }

 private:
  static void check_edge(int face, Edge e) {
    if (face < 0 || face > 3 || !face_has_edge(face, e)) throw DomainError("edge " + edge_name(e) + " not on face");
  }

  TetraParams<Real> params_;
  FaceChart<Real> chart_;
  Real a_{};
  std::array<std::array<HIsometry<Real>, 4>, 4> glue_{};
};

template <std::floating_point Real = double>
Surface<Real> build_surface(const TetraParams<Real>& p) {
  return Surface<Real>(p.alpha);
}

template <std::floating_point Real = double>
struct DistanceBounds {
  Real d_trig;
  Real d_log;
  Real h;
  Real a;
};

// Lower bounds for the distance between a simple closed geodesic and the vertices.
template <std::floating_point Real = double>
DistanceBounds<Real> distance_bounds(const TetraParams<Real>& p) {
  const Real pi = std::numbers::pi_v<Real>;
  Real al = p.alpha;
  Real T = std::cos(3 * al / 2) * std::cos(al / 2) * std::sqrt(2 * std::cos(al) - 1) / std::cos(al);
  Real c = pi - 3 * al;
  Real s = std::sqrt(2 * pi * pi * pi);
  Real c32 = c * std::sqrt(c);
  Real d_log = std::log1p(2 * c32 / (s - c32)) / 2;
  return {std::atanh(T), d_log, face_altitude(al), edge_length(al)};
}

// Hyperbolic distance between two points of the Klein ball.
template <std::floating_point Real = double>
Real klein_distance(const std::array<Real, 3>& x, const std::array<Real, 3>& y) {
  Real xx = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  Real yy = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  Real xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  Real c = (1 - xy) / std::sqrt((1 - xx) * (1 - yy));
  return std::acosh(std::max(Real(1), c));
}

template <std::floating_point Real = double>
struct KleinTetra {
  Real alpha;
  Real edge_length;
  Real klein_radius;  // Euclidean radius of the vertices in the ball
  Real circumradius;  // hyperbolic distance from the centre to a vertex
  std::array<std::array<Real, 3>, 4> vertices;

  // Vertex i on the hyperboloid in R^{3,1}, time coordinate first.
  std::array<Real, 4> hyperboloid(int i) const {
    Real k = 1 / std::sqrt(1 - klein_radius * klein_radius);
    return {k, k * vertices[i][0], k * vertices[i][1], k * vertices[i][2]};
  }
};

inline constexpr std::array<std::array<int, 3>, 4> kTetraSigns{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

// Vertices r u_i with u_i.u_j = -1/3, so cosh a = (1 + r^2/3)/(1 - r^2).
template <std::floating_point Real = double>
KleinTetra<Real> klein_embedding(const TetraParams<Real>& p) {
  Real cm1 = (2 * std::cos(p.alpha) - 1) / (1 - std::cos(p.alpha));  // cosh a - 1
  Real r = std::sqrt(cm1 / (cm1 + Real(4) / 3));
  KleinTetra<Real> k{p.alpha, edge_length(p.alpha), r, std::atanh(r), {}};
  Real s = r / std::sqrt(Real(3));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) k.vertices[i][j] = s * kTetraSigns[i][j];
  return k;
}

// Carries a chart point of `face` onto the embedded face in the Klein ball.
template <std::floating_point Real = double>
std::array<Real, 3> chart_to_klein(const Surface<Real>& s, int face, const HPoint<Real>& X,
                                   const KleinTetra<Real>& kt) {
  if (face < 0 || face > 3) throw DomainError("face id out of range");
  auto lam = s.chart().barycentric(X);
  if (lam[0] < -1e-12 || lam[1] < -1e-12 || lam[2] < -1e-12) throw DomainError("point outside the face chart");
  std::array<Real, 4> y{};
  for (int k = 0; k < 3; ++k) {
    auto v = kt.hyperboloid(kFaceCorners[face][k]);
    for (int j = 0; j < 4; ++j) y[j] += lam[k] * v[j];
  }
  return {y[1] / y[0], y[2] / y[0], y[3] / y[0]};
}

template <std::floating_point Real = double>
std::array<Real, 3> chart_to_klein(const Surface<Real>& s, int face, const HPoint<Real>& X) {
  return chart_to_klein(s, face, X, klein_embedding(s.params()));
}

} // namespace hypertet
