#pragma once

// Simple closed geodesics of type (p,q): construction from the midpoint crossing
// sequence, validation, clearance, catching points and length bounds.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hypmath.hpp"
#include "tetrahedron.hpp"
#include "unfolding.hpp"

namespace hypertet {

struct GeodesicType {
  int p = 0;
  int q = 1;

  GeodesicType() = default;
  GeodesicType(int p_, int q_) : p(p_), q(q_) { check_type(p, q); }

  int crossings() const { return 4 * (p + q); }
  friend bool operator==(const GeodesicType&, const GeodesicType&) = default;
};

// Enumerate canonical types with p + q <= bound, ordered by (p+q, p).
inline std::vector<GeodesicType> canonical_types(int bound) {
  std::vector<GeodesicType> r;
  if (bound >= 1) r.emplace_back(0, 1);
  for (int s = 3; s <= bound; ++s)
    for (int p = 1; 2 * p < s; ++p)
      if (std::gcd(p, s - p) == 1) r.emplace_back(p, s - p);
  return r;
}

template <std::floating_point Real = double>
struct PathCrossing {
  Edge edge;
  Real t;      // arclength fraction from the lower-label vertex
  Real angle;  // between the edge direction (lower -> upper) and the direction of travel
};

template <std::floating_point Real = double>
struct Chord {
  int face;
  HPoint<Real> a;  // on the edge of crossing k
  HPoint<Real> b;  // on the edge of crossing k+1
  Real length;
};

template <std::floating_point Real = double>
struct GeodesicPath {
  GeodesicType type;
  Real alpha = 0;
  std::vector<PathCrossing<Real>> crossings;
  std::vector<int> faces;            // faces[k] carries the chord from crossing k to k+1
  std::vector<Chord<Real>> chords;   // chords[k] in the chart of faces[k]
  Real length = 0;
  std::size_t x2 = 0;
  std::array<std::size_t, 2> catching{0, 0};
  Real refraction_defect = 0;        // max |incoming - outgoing angle|
  bool role_swapped = false;

  std::vector<Edge> edges() const {
    std::vector<Edge> r;
    for (const auto& c : crossings) r.push_back(c.edge);
    return r;
  }

  std::array<int, 6> edge_counts() const {
    std::array<int, 6> n{};
    for (const auto& c : crossings) n[edge_index(c.edge)]++;
    return n;
  }

  // Crossings on one edge of each opposite pair {A1A2,A3A4}, {A1A3,A2A4}, {A1A4,A2A3}.
  std::array<int, 3> pair_counts() const {
    auto n = edge_counts();
    return {n[0], n[1], n[2]};
  }
};

namespace detail {

// Chord between A(x) = P cosh x + u sinh x and B(y) = Q cosh y + v sinh y in one chart.
template <std::floating_point Real>
struct ChordGeom {
  Vec3<Real> P, u, Q, v;
};

template <std::floating_point Real>
struct ChordEval {
  Real d, dx, dy, dxx, dyy, dxy;
};

template <std::floating_point Real>
ChordEval<Real> eval_chord(const ChordGeom<Real>& g, Real x, Real y) {
  Real chx = std::cosh(x), shx = std::sinh(x), chy = std::cosh(y), shy = std::sinh(y);
  Vec3<Real> A = chx * g.P + shx * g.u, A1 = shx * g.P + chx * g.u;
  Vec3<Real> B = chy * g.Q + shy * g.v, B1 = shy * g.Q + chy * g.v;
  Vec3<Real> D = A - B;
  Real dd = std::max(Real(0), mink(D, D));
  Real gm1 = dd / 2;  // cosh d - 1
  Real G = 1 + gm1;
  Real S = std::sqrt(gm1 * (gm1 + 2));
  ChordEval<Real> e{};
  e.d = 2 * std::asinh(std::sqrt(dd) / 2);
  if (S < Real(1e-300)) throw SegmentEscapesDevelopment("degenerate chord: consecutive crossings coincide");
  Real gx = -mink(A1, B), gy = -mink(A, B1), gxy = -mink(A1, B1);
  e.dx = gx / S;
  e.dy = gy / S;
  e.dxx = G * (1 - e.dx * e.dx) / S;
  e.dyy = G * (1 - e.dy * e.dy) / S;
  e.dxy = (gxy - e.dx * e.dy * G) / S;
  return e;
}

// Solve a tridiagonal system in place: diag b, off-diagonal c (c[i] couples i, i+1).
template <std::floating_point Real>
bool solve_tridiagonal(const std::vector<Real>& b, const std::vector<Real>& c, std::vector<Real>& r) {
  const std::size_t n = b.size();
  if (n == 0) return true;
  std::vector<Real> cp(n), bp(n);
  bp[0] = b[0];
  if (!(bp[0] > 0)) return false;
  for (std::size_t i = 1; i < n; ++i) {
    Real m = c[i - 1] / bp[i - 1];
    bp[i] = b[i] - m * c[i - 1];
    if (!(bp[i] > 0)) return false;
    r[i] -= m * r[i - 1];
  }
  r[n - 1] /= bp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) r[i] = (r[i] - c[i] * r[i + 1]) / bp[i];
  return true;
}

// Symmetric cyclic tridiagonal: c[n-1] couples n-1 and 0. Sherman-Morrison on the corner.
template <std::floating_point Real>
bool solve_cyclic_tridiagonal(const std::vector<Real>& b, const std::vector<Real>& c, std::vector<Real>& r) {
  const std::size_t n = b.size();
  if (n < 3) return false;
  Real corner = c[n - 1];
  Real gamma = -b[0];
  std::vector<Real> bb(b);
  bb[0] -= gamma;
  bb[n - 1] -= corner * corner / gamma;
  std::vector<Real> cc(c.begin(), c.end() - 1);
  // bb is no longer guaranteed positive on the first pivot, so use a plain Thomas sweep.
  auto thomas = [&](std::vector<Real>& rhs) {
    std::vector<Real> bp(n);
    bp[0] = bb[0];
    for (std::size_t i = 1; i < n; ++i) {
      Real m = cc[i - 1] / bp[i - 1];
      bp[i] = bb[i] - m * cc[i - 1];
      rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= bp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - cc[i] * rhs[i + 1]) / bp[i];
    for (auto v : bp)
      if (!std::isfinite(v) || v == 0) return false;
    return true;
  };
  std::vector<Real> u(n, 0);
  u[0] = gamma;
  u[n - 1] = corner;
  if (!thomas(r) || !thomas(u)) return false;
  Real fact = (r[0] + corner * r[n - 1] / gamma) / (1 + u[0] + corner * u[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) r[i] -= fact * u[i];
  for (auto v : r)
    if (!std::isfinite(v)) return false;
  return true;
}

template <std::floating_point Real>
ChordGeom<Real> chord_geom(const Surface<Real>& s, Edge e0, Edge e1) {
  int f = face_between(e0, e1);
  auto d0 = s.edge_start(f, e0), d1 = s.edge_start(f, e1);
  return {d0.base().vec(), d0.vec(), d1.base().vec(), d1.vec()};
}

} // namespace detail

template <std::floating_point Real = double>
struct ChainSolution {
  std::vector<Real> t;  // one per crossing in the chain
  Real length = 0;
  int iterations = 0;
};

// Crossing positions along a chain of edges minimising total length, by damped
// Newton on the (cyclic) tridiagonal Hessian. For an open chain the first and last
// crossings keep their initial positions.
template <std::floating_point Real = double>
ChainSolution<Real> solve_chain(const Surface<Real>& s, const std::vector<Edge>& edges, std::vector<Real> t0,
                                bool cyclic) {
  const std::size_t n = edges.size();
  if (t0.size() != n || n < 2) throw DomainError("chain needs matching edges and parameters");
  const std::size_t m = cyclic ? n : n - 1;  // number of chords
  const Real a = s.edge_length();
  std::vector<detail::ChordGeom<Real>> geo(m);
  for (std::size_t k = 0; k < m; ++k) geo[k] = detail::chord_geom(s, edges[k], edges[(k + 1) % n]);

  std::vector<Real> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = t0[k] * a;
  // free unknowns: all for cyclic, interior for open
  const std::size_t lo = cyclic ? 0 : 1, hi = cyclic ? n : n - 1;
  const std::size_t nu = hi - lo;

  auto total = [&](const std::vector<Real>& y) {
    Real L = 0;
    for (std::size_t k = 0; k < m; ++k) L += detail::eval_chord(geo[k], y[k], y[(k + 1) % n]).d;
    return L;
  };

  ChainSolution<Real> sol;
  std::vector<Real> grad(nu), diag(nu), off(nu), step(nu);
  Real F = total(x);
  bool done = nu == 0;
  for (int it = 0; it < 200 && !done; ++it) {
    std::fill(grad.begin(), grad.end(), 0);
    std::fill(diag.begin(), diag.end(), 0);
    std::fill(off.begin(), off.end(), 0);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t i = k, j = (k + 1) % n;
      auto e = detail::eval_chord(geo[k], x[i], x[j]);
      bool fi = i >= lo && i < hi, fj = j >= lo && j < hi;
      if (fi) {
        grad[i - lo] += e.dx;
        diag[i - lo] += e.dxx;
      }
      if (fj) {
        grad[j - lo] += e.dy;
        diag[j - lo] += e.dyy;
      }
      if (fi && fj) off[(cyclic && j == 0) ? nu - 1 : i - lo] = e.dxy;
    }
    for (std::size_t i = 0; i < nu; ++i) step[i] = -grad[i];
    Real shift = 0;
    for (;;) {
      std::vector<Real> d2(diag);
      for (auto& v : d2) v += shift;
      std::vector<Real> r(step);
      bool ok = cyclic ? detail::solve_cyclic_tridiagonal(d2, off, r) : detail::solve_tridiagonal(d2, off, r);
      if (ok) {
        step = r;
        break;
      }
      shift = shift == 0 ? Real(1e-10) : shift * 100;
      if (shift > 1e10) throw SegmentEscapesDevelopment("length Hessian is singular");
    }
    Real smax = 0, slope = 0;
    for (std::size_t i = 0; i < nu; ++i) {
      smax = std::max(smax, std::abs(step[i]));
      slope += grad[i] * step[i];
    }
    // stay strictly inside the edges
    Real tau = 1;
    for (std::size_t i = 0; i < nu; ++i) {
      Real xi = x[i + lo], di = step[i];
      if (xi + di <= 0) tau = std::min(tau, Real(0.5) * xi / -di);
      if (xi + di >= a) tau = std::min(tau, Real(0.5) * (a - xi) / di);
    }
    std::vector<Real> y(x);
    Real Fy = F;
    for (int h = 0; h < 80; ++h) {
      for (std::size_t i = 0; i < nu; ++i) y[i + lo] = x[i + lo] + tau * step[i];
      Fy = total(y);
      if (Fy <= F + Real(1e-4) * tau * slope + 16 * std::numeric_limits<Real>::epsilon() * F) break;
      tau /= 2;
    }
    x = y;
    F = Fy;
    sol.iterations = it + 1;
    if (tau == 1 && smax < Real(1e-13) * std::max(Real(1), a)) done = true;
  }
  if (!done) throw SegmentEscapesDevelopment("length minimisation did not converge inside the edges");
  sol.t.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    sol.t[k] = x[k] / a;
    if (!(sol.t[k] > Real(1e-12) && sol.t[k] < 1 - Real(1e-12)))
      throw SegmentEscapesDevelopment("crossing reaches an edge endpoint");
  }
  sol.length = F;
  return sol;
}

// The order-2 rotation of the tetrahedron swapping the ends of e and of opposite(e).
inline std::array<int, 4> half_turn(Edge e) {
  std::array<int, 4> s{};
  Edge o = opposite(e);
  s[lower(e)] = upper(e);
  s[upper(e)] = lower(e);
  s[lower(o)] = upper(o);
  s[upper(o)] = lower(o);
  return s;
}

// Image of a crossing under a vertex permutation.
template <std::floating_point Real>
std::pair<Edge, Real> permute_crossing(const std::array<int, 4>& perm, Edge e, Real t) {
  Edge f = edge_of(perm[lower(e)], perm[upper(e)]);
  return {f, perm[lower(e)] == lower(f) ? t : 1 - t};
}

// Chords, angles and length from a closed list of crossings.
template <std::floating_point Real = double>
GeodesicPath<Real> path_from_crossings(const Surface<Real>& s, GeodesicType type, const std::vector<Edge>& edges,
                                       const std::vector<Real>& ts) {
  const std::size_t n = edges.size();
  if (ts.size() != n || n < 2) throw DomainError("crossing list mismatch");
  GeodesicPath<Real> g;
  g.type = type;
  g.alpha = s.alpha();
  g.faces = face_sequence(edges);
  g.x2 = n / 2;
  for (std::size_t k = 0; k < n; ++k) {
    int f = g.faces[k];
    auto A = s.edge_point(f, edges[k], ts[k]);
    auto B = s.edge_point(f, edges[(k + 1) % n], ts[(k + 1) % n]);
    g.chords.push_back({f, A, B, hdist(A, B)});
    g.length += g.chords.back().length;
  }
  for (std::size_t k = 0; k < n; ++k) {
    int fo = g.faces[k], fi = g.faces[(k + n - 1) % n];
    auto out_edge = s.edge_direction(fo, edges[k], ts[k]);
    auto out_dir = HDirection<Real>::toward(g.chords[k].a, g.chords[k].b);
    Real out = std::abs(signed_angle(out_edge, out_dir));
    auto in_edge = s.edge_direction(fi, edges[k], ts[k]);
    const auto& prev = g.chords[(k + n - 1) % n];
    auto in_dir = HDirection<Real>::toward(prev.b, prev.a).reversed();
    Real in = std::abs(signed_angle(in_edge, in_dir));
    g.crossings.push_back({edges[k], ts[k], out});
    g.refraction_defect = std::max(g.refraction_defect, std::abs(in - out));
  }
  return g;
}

template <std::floating_point Real = double>
struct CatchingPoints {
  std::array<std::size_t, 2> primary{0, 0};
  std::vector<std::size_t> all;
};

namespace detail {

// Distance from vertex v along edge e, in edge-length units.
template <std::floating_point Real>
Real from_vertex(Edge e, int v, Real t) {
  return v == lower(e) ? t : 1 - t;
}

// Perimeter coordinate of a point on edge e of face f: local edge index + fraction.
template <std::floating_point Real>
Real perimeter_coord(int f, Edge e, Real t) {
  for (int j = 0; j < 3; ++j) {
    int u = kFaceCorners[f][j], w = kFaceCorners[f][(j + 1) % 3];
    if (edge_of(u, w) == e) return j + from_vertex(e, u, t);
  }
  throw DomainError("edge not on face");
}

} // namespace detail

// Crossing k is a catching point when crossings k-1, k, k+1 lie on three distinct edges
// around one vertex and each is the crossing of its edge nearest to that vertex.
// Throws StructureViolation if the parallel-strip pattern between catching points fails.
template <std::floating_point Real = double>
CatchingPoints<Real> catching_points(const GeodesicPath<Real>& g) {
  const std::size_t n = g.crossings.size();
  const std::size_t H = n / 2;
  CatchingPoints<Real> r;
  auto nearest = [&](std::size_t k, int v) {
    const auto& c = g.crossings[k];
    Real mine = detail::from_vertex(c.edge, v, c.t);
    for (const auto& o : g.crossings)
      if (o.edge == c.edge && detail::from_vertex(o.edge, v, o.t) < mine) return false;
    return true;
  };
  for (std::size_t k = 0; k < n; ++k) {
    Edge e0 = g.crossings[(k + n - 1) % n].edge, e1 = g.crossings[k].edge, e2 = g.crossings[(k + 1) % n].edge;
    if (e0 == e1 || e1 == e2 || e0 == e2) continue;
    for (int v = 0; v < 4; ++v) {
      if (!(edge_has(e0, v) && edge_has(e1, v) && edge_has(e2, v))) continue;
      if (nearest((k + n - 1) % n, v) && nearest(k, v) && nearest((k + 1) % n, v)) r.all.push_back(k);
    }
  }
  if (r.all.empty()) {
    if (g.type.p != 0) throw StructureViolation("no catching point found");
    r.primary = {0, H};
    r.all = {0, H};
  } else {
    for (auto k : r.all)
      if (std::find(r.all.begin(), r.all.end(), (k + H) % n) == r.all.end())
        throw StructureViolation("catching points are not antipodal");
    r.primary = {r.all.front(), (r.all.front() + H) % n};
  }

  // Parallel strips: chords leaving a catching point in the two directions stay in a
  // common face with no other chord end between them.
  std::vector<std::vector<std::pair<Real, std::size_t>>> ends(4);
  for (std::size_t k = 0; k < n; ++k) {
    int f = g.faces[k];
    ends[f].push_back({detail::perimeter_coord<Real>(f, g.crossings[k].edge, g.crossings[k].t), k});
    ends[f].push_back({detail::perimeter_coord<Real>(f, g.crossings[(k + 1) % n].edge, g.crossings[(k + 1) % n].t), k});
  }
  for (auto& v : ends) std::sort(v.begin(), v.end());
  auto adjacent = [&](std::size_t c1, std::size_t c2) {
    const auto& v = ends[g.faces[c1]];
    const std::size_t m = v.size();
    int links = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t a = v[i].second, b = v[(i + 1) % m].second;
      if ((a == c1 && b == c2) || (a == c2 && b == c1)) ++links;
    }
    return links >= 2;
  };
  for (auto c : r.all) {
    for (std::size_t k = 2; k + 1 <= H; ++k) {
      std::size_t c1 = (c + k - 1) % n, c2 = (c + n - k) % n;
      if (g.faces[c1] != g.faces[c2] || !adjacent(c1, c2))
        throw StructureViolation("strip structure fails at catching point " + std::to_string(c));
    }
  }
  return r;
}

struct BuildOptions {
  bool from_x2 = false;  // solve the half from X2 back to X1 and derive the other half
};

// The simple closed geodesic of the given type. Half of it is the shortest chain of
// crossings between the midpoints X1 and X2; the rest is its image under the half
// turn of the tetrahedron fixing X1 and X2.
template <std::floating_point Real = double>
GeodesicPath<Real> build_geodesic(const Surface<Real>& s, GeodesicType type, BuildOptions opt = {}) {
  auto ms = midpoint_sequence(type.p, type.q);
  const auto edges = ms.seq.edges();
  const std::size_t n = edges.size(), H = ms.x2;
  std::vector<Edge> half;
  std::vector<Real> guess;
  const std::size_t start = opt.from_x2 ? H : 0;
  for (std::size_t k = 0; k <= H; ++k) {
    half.push_back(edges[(start + k) % n]);
    guess.push_back(Real(to_double(ms.seq.crossings[(start + k) % n].t)));
  }
  auto sol = solve_chain(s, half, guess, false);
  std::vector<Real> ts(n);
  for (std::size_t k = 0; k <= H; ++k) ts[(start + k) % n] = sol.t[k];
  auto sigma = half_turn(edges[0]);
  for (std::size_t k = 1; k < H; ++k) {
    std::size_t src = (start + k) % n, dst = (n - src) % n;
    auto [e, t] = permute_crossing(sigma, edges[src], ts[src]);
    if (e != edges[dst]) throw StructureViolation("crossing sequence is not symmetric under the half turn");
    ts[dst] = t;
  }
  auto g = path_from_crossings(s, type, edges, ts);
  g.role_swapped = ms.role_swapped;
  g.x2 = H;
  g.catching = catching_points(g).primary;
  return g;
}

// Length only: twice the minimal half chain.
template <std::floating_point Real = double>
Real geodesic_length(const Surface<Real>& s, GeodesicType type) {
  auto ms = midpoint_sequence(type.p, type.q);
  const std::size_t H = ms.x2;
  std::vector<Edge> half;
  std::vector<Real> guess;
  for (std::size_t k = 0; k <= H; ++k) {
    half.push_back(ms.seq.crossings[k].edge);
    guess.push_back(Real(to_double(ms.seq.crossings[k].t)));
  }
  return 2 * solve_chain(s, half, guess, false).length;
}

// Closed chain with every crossing free; used to confirm the midpoint property.
template <std::floating_point Real = double>
std::vector<Real> solve_free_cycle(const Surface<Real>& s, GeodesicType type) {
  auto ms = midpoint_sequence(type.p, type.q);
  std::vector<Real> guess;
  for (const auto& c : ms.seq.crossings) guess.push_back(Real(to_double(c.t)));
  return solve_chain(s, ms.seq.edges(), guess, true).t;
}

template <std::floating_point Real = double>
Real length(const GeodesicPath<Real>& g) {
  return g.length;
}

template <std::floating_point Real = double>
struct Clearance {
  Real value = std::numeric_limits<Real>::infinity();
  int vertex = -1;
  std::size_t chord = 0;
};

// Smallest distance from a cone point to the path, measured chord by chord in face charts.
template <std::floating_point Real = double>
Clearance<Real> vertex_clearance(const Surface<Real>& s, const GeodesicPath<Real>& g) {
  Clearance<Real> c;
  for (std::size_t k = 0; k < g.chords.size(); ++k) {
    const auto& ch = g.chords[k];
    for (int v : kFaceCorners[ch.face]) {
      Real d = distance_to_segment(s.corner(ch.face, v), ch.a, ch.b);
      if (d < c.value) c = {d, v, k};
    }
  }
  return c;
}

template <std::floating_point Real = double>
struct ValidationReport {
  std::array<int, 3> pair_counts{};
  bool counts_ok = false;
  Real refraction_defect = 0;
  int midpoint_count = 0;  // of the four midpoint crossings, those within tol of 1/2
  Real midpoint_error = 0;
  Real nearest_other = 1;  // distance to 1/2 of the closest non-midpoint crossing
  bool midpoints_on_opposite_pairs = false;
  int intersections = 0;
  int ties = 0;
  Real min_gap = 1;  // smallest separation of two crossings on one edge
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

template <std::floating_point Real = double>
ValidationReport<Real> validate(const Surface<Real>& s, const GeodesicPath<Real>& g, Real tol = Real(1e-9)) {
  (void)s;
  ValidationReport<Real> r;
  const std::size_t n = g.crossings.size();
  const int p = g.type.p, q = g.type.q;
  if (n != static_cast<std::size_t>(4 * (p + q))) r.failures.push_back("crossing count");
  r.pair_counts = g.pair_counts();
  auto ec = g.edge_counts();
  auto sorted = r.pair_counts;
  std::sort(sorted.begin(), sorted.end());
  r.counts_ok = sorted == std::array<int, 3>{p, q, p + q} && ec[0] == ec[5] && ec[1] == ec[4] && ec[2] == ec[3];
  if (!r.counts_ok) r.failures.push_back("per-pair crossing counts");
  r.refraction_defect = g.refraction_defect;
  if (!(r.refraction_defect < tol)) r.failures.push_back("angles differ across an edge");

  // The midpoints sit at X1, Y1, X2, Y2 = crossings 0, n/4, n/2, 3n/4. Long paths
  // have further crossings genuinely close to 1/2, so "exactly four" means these four
  // are strictly the nearest to 1/2, each within tol.
  std::vector<std::pair<Real, std::size_t>> dev;
  for (std::size_t k = 0; k < n; ++k) dev.push_back({std::abs(g.crossings[k].t - Real(0.5)), k});
  std::sort(dev.begin(), dev.end());
  if (n >= 4 && n % 4 == 0) {
    std::vector<std::size_t> four;
    for (std::size_t i = 0; i < 4; ++i) four.push_back(dev[i].second);
    std::sort(four.begin(), four.end());
    bool placed = four == std::vector<std::size_t>{0, n / 4, n / 2, 3 * n / 4};
    r.midpoint_error = dev[3].first;
    r.nearest_other = n > 4 ? dev[4].first : Real(1);
    r.midpoint_count = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (dev[i].first < tol) ++r.midpoint_count;
    r.midpoints_on_opposite_pairs = placed && g.crossings[0].edge == opposite(g.crossings[n / 2].edge) &&
                                    g.crossings[n / 4].edge == opposite(g.crossings[3 * n / 4].edge);
    if (!placed || r.midpoint_count != 4 || !r.midpoints_on_opposite_pairs || !(r.nearest_other > r.midpoint_error))
      r.failures.push_back("midpoint property");
  } else {
    r.failures.push_back("midpoint property");
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.crossings[i].edge == g.crossings[j].edge)
        r.min_gap = std::min(r.min_gap, std::abs(g.crossings[i].t - g.crossings[j].t));

  for (std::size_t i = 0; i < g.chords.size(); ++i)
    for (std::size_t j = i + 1; j < g.chords.size(); ++j) {
      if (g.chords[i].face != g.chords[j].face) continue;
      auto rel = segment_relation(g.chords[i].a, g.chords[i].b, g.chords[j].a, g.chords[j].b);
      if (rel == SegmentRelation::Cross) ++r.intersections;
      if (rel == SegmentRelation::Tie) ++r.ties;
    }
  if (r.intersections || r.ties) r.failures.push_back("path is not simple");
  return r;
}

template <std::floating_point Real = double>
struct SegmentBounds {
  Real b_catch, b_short, b_cross;  // trigonometric forms
  Real w_catch, w_short, w_cross;  // logarithmic forms
};

// Logarithmic lower bounds for chords near a catching point, between consecutive
// crossings, and across two faces.
template <std::floating_point Real = double>
std::array<Real, 3> weak_segment_bounds(Real alpha) {
  TetraParams<Real> tp(alpha);
  const Real pi = std::numbers::pi_v<Real>;
  Real c = pi - 3 * alpha;
  Real c3 = c * c * c, D = 2 * pi * pi * pi;
  auto form = [&](Real k2) { return std::log1p(2 * c3 * k2 / (D - c3 * (1 + k2))); };
  Real r2 = alpha * alpha / (pi * pi);
  return {form(4 * r2), form(r2), std::log1p((2 * pi - 6 * alpha) / (pi + 3 * alpha))};
}

template <std::floating_point Real = double>
SegmentBounds<Real> segment_bounds(const TetraParams<Real>& p) {
  Real al = p.alpha;
  Real T = std::cos(3 * al / 2) * std::cos(al / 2) * std::sqrt(2 * std::cos(al) - 1) / std::cos(al);
  Real sh = T / std::sqrt((1 - T) * (1 + T));  // sinh of the vertex distance bound
  auto w = weak_segment_bounds(al);
  return {2 * std::atanh(sh * std::tan(al)), 2 * std::atanh(sh * std::tan(al / 2)),
          2 * std::asinh(std::cos(al / 2) * std::sqrt(2 * std::cos(al) - 1)), w[0], w[1], w[2]};
}

// The path and its images under the order-3 rotation A1 -> A2 -> A3 fixing A4.
template <std::floating_point Real = double>
std::array<GeodesicPath<Real>, 3> symmetric_copies(const Surface<Real>& s, const GeodesicPath<Real>& g) {
  std::array<GeodesicPath<Real>, 3> r{g, g, g};
  const std::array<int, 4> rot{1, 2, 0, 3};
  for (int m = 1; m < 3; ++m) {
    std::vector<Edge> es;
    std::vector<Real> ts;
    for (const auto& c : r[m - 1].crossings) {
      auto [e, t] = permute_crossing(rot, c.edge, c.t);
      es.push_back(e);
      ts.push_back(t);
    }
    r[m] = path_from_crossings(s, g.type, es, ts);
    r[m].catching = g.catching;
    r[m].x2 = g.x2;
    r[m].role_swapped = g.role_swapped;
  }
  return r;
}

// Image under the reflection swapping A1 and A2.
template <std::floating_point Real = double>
GeodesicPath<Real> mirror_copy(const Surface<Real>& s, const GeodesicPath<Real>& g) {
  const std::array<int, 4> swap{1, 0, 2, 3};
  std::vector<Edge> es;
  std::vector<Real> ts;
  for (const auto& c : g.crossings) {
    auto [e, t] = permute_crossing(swap, c.edge, c.t);
    es.push_back(e);
    ts.push_back(t);
  }
  auto r = path_from_crossings(s, g.type, es, ts);
  r.catching = g.catching;
  r.x2 = g.x2;
  r.role_swapped = g.role_swapped;
  return r;
}

// Whether two closed paths visit the same crossings in the same cyclic order
// (either direction), parameters within tol.
template <std::floating_point Real = double, std::floating_point R2 = Real>
bool same_closed_path(const std::vector<PathCrossing<Real>>& a, const std::vector<PathCrossing<R2>>& b,
                      double tol) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) return false;
  for (int dir : {1, -1})
    for (std::size_t sh = 0; sh < n; ++sh) {
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        const auto& y = b[(sh + n + dir * static_cast<long>(k) % static_cast<long>(n)) % n];
        ok = a[k].edge == y.edge && std::abs(double(a[k].t) - double(y.t)) < tol;
      }
      if (ok) return true;
    }
  return false;
}

} // namespace hypertet
