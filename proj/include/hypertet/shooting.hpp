#pragma once

// Geodesic shooting across the glued faces, and a search for closed geodesics that
// never uses the tiling or the builder: face words are enumerated, each closed word is
// solved through the axis of its holonomy, and every candidate is certified by shooting.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "geodesics.hpp"
#include "hypmath.hpp"
#include "tetrahedron.hpp"

namespace hypertet {

template <std::floating_point Real = long double>
struct ShotCrossing {
  Edge edge;
  Real t;
  Real angle;   // unsigned, between the edge direction and the direction of travel
  int entered;  // face entered through the edge
  Real s;       // arclength from the start
};

enum class ShotStop { Length, Crossings, Vertex };

template <std::floating_point Real = long double>
struct ShotState {
  int face = 0;
  HDirection<Real> dir;  // position and heading in the chart of `face`
  Real travelled = 0;
  std::vector<ShotCrossing<Real>> log;
  ShotStop stop = ShotStop::Length;
  std::optional<Edge> on_edge;  // edge the position lies on, if any
};

// Follow the geodesic from `start` (chart of `face`) for length L or n crossings.
// `on_edge` names the edge the start lies on; it is never hit again at s = 0.
template <std::floating_point Real = long double>
ShotState<Real> shoot(const Surface<Real>& s, int face, const HDirection<Real>& start, Real L,
                      std::size_t max_crossings = std::numeric_limits<std::size_t>::max(),
                      std::optional<Edge> on_edge = std::nullopt, Real vertex_tol = Real(1e-10)) {
  if (!(L >= 0)) throw DomainError("shooting length must be non-negative");
  if (face < 0 || face > 3) throw DomainError("face out of range");
  ShotState<Real> st;
  st.face = face;
  st.dir = start;
  st.on_edge = on_edge;
  const Real a = s.edge_length();
  for (;;) {
    if (st.log.size() >= max_crossings) {
      st.stop = ShotStop::Crossings;
      return st;
    }
    const auto& X = st.dir.base().vec();
    const auto& v = st.dir.vec();
    Real best = std::numeric_limits<Real>::infinity();
    Edge hit{};
    Real hit_t = 0;
    bool vertex = false;
    const auto& fc = kFaceCorners[st.face];
    for (int j = 0; j < 3; ++j) {
      Edge e = edge_of(fc[j], fc[(j + 1) % 3]);
      if (st.on_edge && *st.on_edge == e) continue;
      auto c = cross(s.corner(st.face, lower(e)).vec(), s.corner(st.face, upper(e)).vec());
      Real cx = dot(c, X), cv = dot(c, v);
      if (cv == 0) continue;
      Real r = -cx / cv;
      if (!(std::abs(r) < 1)) continue;
      Real d = std::atanh(r);
      if (!(d > 0) || d >= best) continue;
      auto Y = geodesic_point(st.dir, d);
      Real t = s.edge_param(st.face, e, Y);
      if (t * a < -vertex_tol || (1 - t) * a < -vertex_tol) continue;
      best = d;
      hit = e;
      hit_t = t;
      vertex = t * a < vertex_tol || (1 - t) * a < vertex_tol;
    }
    if (!std::isfinite(best)) {
      st.stop = ShotStop::Vertex;  // lost between two edges: only happens through a corner
      return st;
    }
    if (st.travelled + best > L) {
      Real rest = L - st.travelled;
      auto P = geodesic_point(st.dir, rest);
      st.dir = HDirection<Real>::from_vector(P, std::sinh(rest) * X + std::cosh(rest) * v);
      st.travelled = L;
      st.on_edge.reset();
      st.stop = ShotStop::Length;
      return st;
    }
    if (vertex) {
      st.stop = ShotStop::Vertex;
      return st;
    }
    auto Y = geodesic_point(st.dir, best);
    auto w = HDirection<Real>::from_vector(Y, std::sinh(best) * X + std::cosh(best) * v);
    Real ang = std::abs(signed_angle(s.edge_direction(st.face, hit, hit_t), w));
    int g = Surface<Real>::across(st.face, hit);
    st.travelled += best;
    st.log.push_back({hit, hit_t, ang, g, st.travelled});
    st.dir = s.glue(st.face, g).apply(w);
    st.face = g;
    st.on_edge = hit;
  }
}

// Start on edge e at fraction t0, heading into `face` at angle theta from the edge
// direction (lower -> upper label).
template <std::floating_point Real = long double>
ShotState<Real> shoot(const Surface<Real>& s, Edge e, Real t0, Real theta, Real L, int face = -1) {
  if (!(t0 > 0 && t0 < 1)) throw DomainError("start parameter must lie in (0, 1)");
  if (!(theta > 0 && theta < std::numbers::pi_v<Real>)) throw DomainError("start angle must lie in (0, pi)");
  if (face < 0) face = faces_of_edge(e)[0];
  auto d = s.edge_direction(face, e, t0).rotated(s.interior_side(face, e) * theta);
  return shoot(s, face, d, L, std::numeric_limits<std::size_t>::max(), std::optional<Edge>(e));
}

// Pair counts (p, q, p+q) read off the per-edge crossing counts, if they fit a type.
inline std::optional<GeodesicType> identify_type(const std::array<int, 6>& n) {
  for (int k = 0; k < 3; ++k)
    if (n[k] != n[5 - k]) return std::nullopt;
  std::array<int, 3> c{n[0], n[1], n[2]};
  std::sort(c.begin(), c.end());
  if (c[2] != c[0] + c[1] || c[0] >= c[1] || std::gcd(c[0], c[1]) != 1) return std::nullopt;
  return GeodesicType(c[0], c[1]);
}

template <std::floating_point Real = long double>
struct ClosedGeodesic {
  std::vector<int> faces;                  // faces[k] carries the chord after crossing k
  std::vector<PathCrossing<Real>> crossings;
  Real length = 0;
  Real closure_defect = 0;                 // shooting once around: max(a |dt|, |dangle|)
  std::optional<GeodesicType> type;

  std::array<int, 6> edge_counts() const {
    std::array<int, 6> n{};
    for (const auto& c : crossings) n[edge_index(c.edge)]++;
    return n;
  }
};

struct OracleOptions {
  double L_max = 0;
  std::size_t max_crossings = 0;  // 0: no cap
  double tol = 1e-9;
  unsigned threads = 1;
};

template <std::floating_point Real = long double>
struct OracleReport {
  double alpha = 0;
  double L_max = 0;
  std::size_t max_crossings = 0;
  bool complete = true;         // false when the crossing cap cut the search
  std::uint64_t nodes = 0;      // word prefixes visited
  std::uint64_t closed_words = 0;
  std::uint64_t axis_solutions = 0;  // words whose holonomy axis crosses every edge
  std::uint64_t non_simple = 0;
  std::uint64_t uncertified = 0;     // simple axis solutions that shooting did not reproduce
  double worst_defect = 0;           // over all simple axis solutions
  std::vector<ClosedGeodesic<Real>> found;  // simple, certified, sorted by length
};

namespace detail {

template <std::floating_point Real>
Vec3<Real> unit(const Vec3<Real>& v) {
  return (1 / std::sqrt(dot(v, v))) * v;
}

// Directions n with n.Y > 0 for every constraint so far, as a convex spherical polygon.
template <std::floating_point Real>
bool clip_cone(std::vector<Vec3<Real>>& poly, const Vec3<Real>& Y, Real eps) {
  std::vector<Vec3<Real>> out;
  const std::size_t m = poly.size();
  out.reserve(m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& r0 = poly[j];
    const auto& r1 = poly[(j + 1) % m];
    Real d0 = dot(r0, Y), d1 = dot(r1, Y);
    bool in0 = d0 > -eps, in1 = d1 > -eps;
    if (in0) out.push_back(r0);
    if (in0 != in1 && m > 1) out.push_back(unit(std::abs(d0) * r1 + std::abs(d1) * r0));
  }
  poly.swap(out);
  return !poly.empty();
}

template <std::floating_point Real>
bool canonical_word(const std::vector<int>& w) {
  const std::size_t n = w.size();
  std::vector<int> r(w.rbegin(), w.rend());
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      if (pass == 0 && k == 0) continue;
      const auto& u = pass == 0 ? w : r;
      int cmp = 0;
      for (std::size_t i = 0; i < n && cmp == 0; ++i) cmp = (u[(k + i) % n] > w[i]) - (u[(k + i) % n] < w[i]);
      if (cmp < 0) return false;
      if (cmp == 0 && pass == 0) return false;  // a power of a shorter word
    }
  }
  return true;
}

// Null eigenvector of M for eigenvalue lambda.
template <std::floating_point Real>
Vec3<Real> null_vector(const typename HIsometry<Real>::Mat& M, Real lambda) {
  std::array<Vec3<Real>, 3> rows;
  for (int i = 0; i < 3; ++i) rows[i] = Vec3<Real>{{M[i][0], M[i][1], M[i][2]}}, rows[i][i] -= lambda;
  Vec3<Real> best{};
  Real bn = -1;
  for (int i = 0; i < 3; ++i) {
    auto c = cross(rows[i], rows[(i + 1) % 3]);
    Real n = dot(c, c);
    if (n > bn) bn = n, best = c;
  }
  return best;
}

template <std::floating_point Real>
struct WordSearch {
  const Surface<Real>& s;
  OracleOptions opt;
  Real a;
  Real eps = Real(64) * std::numeric_limits<Real>::epsilon();

  std::vector<int> faces;
  std::vector<HIsometry<Real>> place;
  std::vector<Edge> edges;             // edges[k] between faces[k-1] and faces[k], k >= 1
  std::vector<HPoint<Real>> mids;      // developed midpoint of edges[k]
  std::vector<std::vector<Vec3<Real>>> cones;
  std::vector<std::array<int, 2>> signs;  // [+ vertex, - vertex] of edges[k]

  std::uint64_t nodes = 0, closed = 0, axis = 0, non_simple = 0, uncertified = 0;
  Real worst_defect = 0;
  bool capped = false;
  std::vector<ClosedGeodesic<Real>> found;

  WordSearch(const Surface<Real>& s_, const OracleOptions& o) : s(s_), opt(o), a(s_.edge_length()) {}

  void reset(int f0) {
    faces = {f0};
    place = {HIsometry<Real>::identity()};
    edges = {Edge::A1A2};  // slot 0 is filled in when the word closes
    mids = {HPoint<Real>()};
    signs = {{0, 0}};
    cones = {{}};
  }

  HPoint<Real> developed(std::size_t k, int v) const { return place[k].apply(s.corner(faces[k], v)); }

  // Push face g after the current prefix; false when pruned.
  bool push(int g) {
    const std::size_t k = faces.size();
    int f = faces.back();
    Edge e = shared_edge(f, g);
    auto U = developed(k - 1, lower(e)), V = developed(k - 1, upper(e));
    std::array<int, 2> sg;
    std::vector<Vec3<Real>> cone;
    if (k == 1) {
      sg = {lower(e), upper(e)};
    } else {
      const auto& ps = signs.back();
      int shared = edge_has(e, ps[0]) ? ps[0] : ps[1];
      int other = lower(e) == shared ? upper(e) : lower(e);
      sg = shared == ps[0] ? std::array<int, 2>{shared, other} : std::array<int, 2>{other, shared};
      auto Yp = unit(developed(k - 1, sg[0]).vec());
      auto Ym = -unit(developed(k - 1, sg[1]).vec());
      if (k == 2) {
        auto Y1 = unit(developed(k - 1, signs[1][0]).vec()), Y2 = -unit(developed(k - 1, signs[1][1]).vec());
        auto Y3 = other == sg[0] ? Yp : Ym;
        Real d = det3(Y1, Y2, Y3);
        Real sgn = d > 0 ? 1 : -1;
        cone = {unit(sgn * cross(Y2, Y3)), unit(sgn * cross(Y3, Y1)), unit(sgn * cross(Y1, Y2))};
      } else {
        cone = cones.back();
        if (!clip_cone(cone, other == sg[0] ? Yp : Ym, eps)) return false;
      }
    }
    auto M = HPoint<Real>::normalize(U.vec() + V.vec());
    if (k >= 2 && hdist(mids[1], M) - a > Real(opt.L_max)) return false;
    faces.push_back(g);
    place.push_back(place.back() * s.glue(g, f));
    edges.push_back(e);
    mids.push_back(M);
    signs.push_back(sg);
    cones.push_back(cone);
    return true;
  }

  void pop() {
    faces.pop_back();
    place.pop_back();
    edges.pop_back();
    mids.pop_back();
    signs.pop_back();
    cones.pop_back();
  }

  void try_close() {
    const std::size_t n = faces.size();
    int f0 = faces[0], fl = faces[n - 1];
    if (fl == f0 || faces[n - 2] == f0 || fl == faces[1]) return;
    if (!canonical_word<Real>(faces)) return;
    ++closed;
    Edge e0 = shared_edge(fl, f0);
    auto H = place.back() * s.glue(f0, fl);
    const auto& m = H.matrix();
    Real tr = m[0][0] + m[1][1] + m[2][2];
    Real ch = (tr - 1) / 2;
    if (!(ch > 1 + eps)) return;
    Real ell = std::acosh(ch);
    if (ell > Real(opt.L_max)) return;
    auto Ep = null_vector<Real>(m, std::exp(ell)), Em = null_vector<Real>(H.inverse().matrix(), std::exp(ell));
    auto c = unit(cross(Ep, Em));
    // crossings on edges[1..n-1] and e0, all in the development
    std::vector<Edge> es(n);
    std::vector<Real> ts(n);
    for (std::size_t k = 0; k < n; ++k) {
      Edge e = k == 0 ? e0 : edges[k];
      std::size_t host = k == 0 ? n - 1 : k - 1;  // a copy in which the edge is placed
      auto U = developed(host, lower(e)), V = developed(host, upper(e));
      Real cu = dot(c, unit(U.vec())), cw0 = dot(c, unit(V.vec()));
      if (!(cu * cw0 < 0)) return;
      auto w = HDirection<Real>::toward(U, V);
      Real r = -dot(c, U.vec()) / dot(c, w.vec());
      if (!(std::abs(r) < 1)) return;
      Real t = std::atanh(r) / a;
      if (!(t > Real(1e-12) && t < 1 - Real(1e-12))) return;
      es[k] = e;
      ts[k] = t;
    }
    ++axis;
    // chords per face chart, crossing k to k+1 in faces[k]
    std::vector<Chord<Real>> ch_list(n);
    for (std::size_t k = 0; k < n; ++k) {
      int f = faces[k];
      auto A = s.edge_point(f, es[k], ts[k]), B = s.edge_point(f, es[(k + 1) % n], ts[(k + 1) % n]);
      ch_list[k] = {f, A, B, hdist(A, B)};
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (ch_list[i].face != ch_list[j].face) continue;
        if (segment_relation(ch_list[i].a, ch_list[i].b, ch_list[j].a, ch_list[j].b) != SegmentRelation::Disjoint) {
          ++non_simple;
          return;
        }
      }
    // certify by shooting: refine (t, angle) at crossing 1 (its edge and the next are
    // placed next to the origin, so the axis is accurate there) to a fixed point of the
    // return map, then require closure and agreement with the axis solution
    const int F = faces[1];
    const Edge E = es[1];
    auto at = [&](std::size_t k) { return (k + 2) % n; };  // crossing reached by log[k]
    auto A1 = s.edge_point(F, E, ts[1]), B1 = s.edge_point(F, es[2 % n], ts[2 % n]);
    Real theta1 = std::abs(signed_angle(s.edge_direction(F, E, ts[1]), HDirection<Real>::toward(A1, B1)));
    const int side = s.interior_side(F, E);
    const Real Lshot = ell * (1 + Real(1e-6)) + Real(1e-9);
    auto around = [&](Real t, Real th, ShotState<Real>& st) {
      auto d = s.edge_direction(F, E, t).rotated(side * th);
      st = shoot(s, F, d, Lshot, n, E);
      if (st.log.size() != n) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (st.log[k].edge != es[at(k)] || st.log[k].entered != faces[at(k)]) return false;
      return true;
    };
    Real t = ts[1], th = theta1;
    ShotState<Real> st;
    for (int it = 0; it < 8; ++it) {
      if (!around(t, th, st)) break;
      Real ft = st.log.back().t - t, fa = st.log.back().angle - th;
      if (std::max(a * std::abs(ft), std::abs(fa)) < std::numeric_limits<Real>::epsilon() * 64) break;
      const Real h = Real(1e-9);
      ShotState<Real> s1, s2;
      if (!around(t + h, th, s1) || !around(t, th + h, s2)) break;
      Real j11 = (s1.log.back().t - t - h - ft) / h, j21 = (s1.log.back().angle - th - fa) / h;
      Real j12 = (s2.log.back().t - t - ft) / h, j22 = (s2.log.back().angle - th - h - fa) / h;
      Real det = j11 * j22 - j12 * j21;
      if (!(std::abs(det) > 0)) break;
      t -= (j22 * ft - j12 * fa) / det;
      th -= (j11 * fa - j21 * ft) / det;
    }
    Real defect = std::numeric_limits<Real>::infinity();
    if (around(t, th, st))
      defect = std::max({a * std::abs(st.log.back().t - t), std::abs(st.log.back().angle - th),
                         std::abs(st.log.back().s - ell)});
    Real drift = std::max(a * std::abs(t - ts[1]), std::abs(th - theta1));
    worst_defect = std::max(worst_defect, defect);
    if (!(defect < Real(opt.tol)) || !(drift < Real(1e-6))) {
      ++uncertified;
      return;
    }
    ClosedGeodesic<Real> g;
    g.faces = faces;
    g.length = st.log.back().s;
    g.closure_defect = defect;
    g.crossings.resize(n);
    g.crossings[1] = {E, t, th};
    for (std::size_t k = 0; k + 1 < n; ++k) g.crossings[at(k)] = {st.log[k].edge, st.log[k].t, st.log[k].angle};
    g.type = identify_type(g.edge_counts());
    found.push_back(std::move(g));
  }

  void dfs() {
    ++nodes;
    if (faces.size() >= 3) try_close();
    if (opt.max_crossings && faces.size() >= opt.max_crossings) {
      capped = true;
      return;
    }
    int f = faces.back(), f_prev = faces.size() >= 2 ? faces[faces.size() - 2] : -1;
    for (int g = faces[0]; g < 4; ++g) {
      if (g == f || g == f_prev) continue;
      if (!push(g)) continue;
      dfs();
      pop();
    }
  }
};

} // namespace detail

// All simple closed geodesics of length <= L_max (up to the crossing cap).
template <std::floating_point Real = long double>
OracleReport<Real> find_closed(const Surface<Real>& s, const OracleOptions& opt) {
  if (!(opt.L_max > 0) || !std::isfinite(opt.L_max)) throw DomainError("L_max must be positive and finite");
  if (!(opt.tol > 0)) throw DomainError("tolerance must be positive");
  // tasks: prefixes of three faces starting with the smallest face of the word
  std::vector<std::array<int, 3>> tasks;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = a; c < 4; ++c)
        if (c != b && c != a) tasks.push_back({a, b, c});
  std::vector<detail::WordSearch<Real>> out;
  out.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) out.emplace_back(s, opt);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= tasks.size()) return;
      try {
        auto& ws = out[i];
        ws.reset(tasks[i][0]);
        if (!ws.push(tasks[i][1]) || !ws.push(tasks[i][2])) continue;
        ws.dfs();
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
        next = tasks.size();
      }
    }
  };
  unsigned th = std::max(1u, opt.threads);
  if (th == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < th; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  OracleReport<Real> r;
  r.alpha = double(s.alpha());
  r.L_max = opt.L_max;
  r.max_crossings = opt.max_crossings;
  for (auto& ws : out) {
    r.nodes += ws.nodes;
    r.closed_words += ws.closed;
    r.axis_solutions += ws.axis;
    r.non_simple += ws.non_simple;
    r.uncertified += ws.uncertified;
    r.worst_defect = std::max(r.worst_defect, double(ws.worst_defect));
    r.complete = r.complete && !ws.capped;
    for (auto& g : ws.found) r.found.push_back(std::move(g));
  }
  std::stable_sort(r.found.begin(), r.found.end(), [](const auto& x, const auto& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.faces < y.faces;
  });
  return r;
}

} // namespace hypertet
