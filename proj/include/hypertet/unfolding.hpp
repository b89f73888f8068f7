#pragma once

// Exact edge-crossing sequences of straight lines in the triangular tiling whose
// vertices carry the labels A1..A4, and developments of face sequences.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "hypmath.hpp"
#include "tetrahedron.hpp"

namespace hypertet {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline BigInt floor_of(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Tiling point in the lattice basis e1 = (1, 0), e2 = (1/2, sqrt3/2).
// Cartesian x = i + j/2 is rational; y = j sqrt3/2 is stored through m = j.
struct TilingPoint {
  Rational x;
  Rational m;
};

enum class LineFamily { Row, Column, Diagonal };

struct TilingCrossing {
  Edge edge;
  Rational t;     // fraction along the edge from its lower-label vertex
  Rational time;  // fraction along the traced segment
  TilingPoint at;
  LineFamily family;
};

struct CrossingSeq {
  int p = 0;
  int q = 0;
  Rational mu;
  std::vector<TilingCrossing> crossings;

  std::size_t size() const { return crossings.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> r;
    r.reserve(crossings.size());
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

// Label of lattice vertex i e1 + j e2.
inline int tiling_label(const BigInt& i, const BigInt& j) {
  int a = static_cast<int>(i & 1), b = static_cast<int>(j & 1);
  return a + 2 * b;
}

inline void check_type(int p, int q) {
  if (p < 0 || q < 1 || p >= q) throw DomainError("type needs 0 <= p < q");
  if (std::gcd(p, q) != 1) throw NotCoprime("p and q are not coprime");
}

namespace detail {

inline TilingCrossing make_crossing(const BigInt& i0, const BigInt& j0, const BigInt& i1, const BigInt& j1,
                                    const Rational& frac, const Rational& time, const TilingPoint& at,
                                    LineFamily fam) {
  int l0 = tiling_label(i0, j0), l1 = tiling_label(i1, j1);
  Edge e = edge_of(l0, l1);
  Rational t = l0 < l1 ? frac : Rational(1) - frac;
  return {e, t, time, at, fam};
}

} // namespace detail

// Crossings of the segment from (mu, 0) to (mu + q + 2p, q sqrt3), start included,
// end excluded. Pure rational arithmetic.
inline CrossingSeq tiling_trace(int p, int q, const Rational& mu) {
  check_type(p, q);
  if (!(mu > 0 && mu < 1)) throw DomainError("start offset must lie in (0, 1)");
  CrossingSeq s{p, q, mu, {}};
  const BigInt P2 = 2 * p, Q2 = 2 * q;
  // lattice position at time tau: i = mu + 2p tau, j = 2q tau
  auto point = [&](const Rational& tau) {
    Rational i = mu + Rational(P2) * tau, j = Rational(Q2) * tau;
    return TilingPoint{i + j / 2, j};
  };
  for (int n = 0; n < 2 * q; ++n) {
    Rational tau(n, 2 * q);
    Rational i = mu + Rational(P2) * tau;
    BigInt fi = floor_of(i);
    s.crossings.push_back(detail::make_crossing(fi, n, fi + 1, n, i - Rational(fi), tau, point(tau), LineFamily::Row));
  }
  for (int n = 1; n <= 2 * p; ++n) {
    Rational tau = (Rational(n) - mu) / Rational(P2);
    Rational j = Rational(Q2) * tau;
    BigInt fj = floor_of(j);
    s.crossings.push_back(
        detail::make_crossing(n, fj, n, fj + 1, j - Rational(fj), tau, point(tau), LineFamily::Column));
  }
  for (int n = 1; n <= 2 * (p + q); ++n) {
    Rational tau = (Rational(n) - mu) / Rational(P2 + Q2);
    Rational j = Rational(Q2) * tau;
    BigInt fj = floor_of(j);
    s.crossings.push_back(detail::make_crossing(BigInt(n) - fj, fj, BigInt(n) - fj - 1, fj + 1, j - Rational(fj), tau,
                                                point(tau), LineFamily::Diagonal));
  }
  std::stable_sort(s.crossings.begin(), s.crossings.end(),
                   [](const TilingCrossing& a, const TilingCrossing& b) { return a.time < b.time; });
  for (std::size_t k = 0; k < s.crossings.size(); ++k) {
    const auto& c = s.crossings[k];
    bool clash = k + 1 < s.crossings.size() && s.crossings[k + 1].time == c.time;
    if (clash || c.t == 0 || c.t == 1)
      throw VertexHit("line of type (" + std::to_string(p) + "," + std::to_string(q) + ") from mu = " + to_string(mu) +
                      " passes through a tiling vertex");
  }
  return s;
}

struct MidpointSequence {
  CrossingSeq seq;        // rotated so that crossing 0 is X1 (t = 1/2)
  std::size_t x2 = 0;     // index of X2 on the opposite edge, also t = 1/2
  bool role_swapped = false;  // true when the midpoints are not carried by A1A2/A3A4
};

// Trace through the midpoints of two pairs of opposite edges. For odd q the start
// is the midpoint of A1A2; for even q that line meets a vertex and the trace starts
// at the offset putting a diagonal-family edge midpoint on the line instead.
inline MidpointSequence midpoint_sequence(int p, int q) {
  check_type(p, q);
  MidpointSequence r;
  r.role_swapped = q % 2 == 0;
  Rational mu = r.role_swapped ? Rational(1) - Rational(p, 2 * q) : Rational(1, 2);
  r.seq = tiling_trace(p, q, mu);
  auto& cs = r.seq.crossings;
  auto it = std::find_if(cs.begin(), cs.end(), [](const TilingCrossing& c) { return c.t == Rational(1, 2); });
  if (it == cs.end()) throw StructureViolation("no edge midpoint on the traced line");
  std::rotate(cs.begin(), it, cs.end());
  r.x2 = cs.size() / 2;
  if (cs[r.x2].t != Rational(1, 2) || cs[r.x2].edge != opposite(cs[0].edge))
    throw StructureViolation("half-way crossing is not the midpoint of the opposite edge");
  return r;
}

// Whether the line through the midpoint of A1A2 meets a tiling vertex.
// A3/A4 vertices: q(2l - 2k - 1) = 2p(2k + 1), solvable for q = 2 mod 4.
// A1/A2 vertices: 2k(q + 2p) = q(2l - 1), solvable for q = 0 mod 4.
inline bool midline_meets_vertex(int p, int q) {
  check_type(p, q);
  for (long k = 0; k < q; ++k) {
    long rhs = 2L * p * (2 * k + 1);
    if (rhs % q == 0 && (rhs / q) % 2 != 0) return true;  // 2l = rhs/q + 2k + 1 even
    long lhs = 2 * k * (q + 2L * p);
    if (lhs % q == 0 && (lhs / q) % 2 != 0) return true;  // 2l - 1 = lhs/q odd
  }
  return false;
}

// Faces visited between consecutive crossings of a cyclic edge sequence.
inline std::vector<int> face_sequence(const std::vector<Edge>& edges) {
  std::vector<int> f(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) f[k] = face_between(edges[k], edges[(k + 1) % edges.size()]);
  return f;
}

// Longest run of consecutive crossed edges through a common vertex (cyclic).
inline int longest_vertex_run(const std::vector<Edge>& edges) {
  int best = 0;
  const std::size_t n = edges.size();
  for (int v = 0; v < 4; ++v) {
    for (std::size_t s = 0; s < n; ++s) {
      int run = 0;
      while (run < static_cast<int>(n) && edge_has(edges[(s + run) % n], v)) ++run;
      best = std::max(best, run);
    }
  }
  return best;
}

// Euclidean length of the closed trace for unit tiling edges.
inline double euclid_length(int p, int q) {
  check_type(p, q);
  return 2 * std::sqrt(double(p) * p + double(p) * q + double(q) * q);
}

template <std::floating_point Real = double>
struct Development {
  std::vector<int> faces;
  std::vector<HIsometry<Real>> placements;  // chart of faces[k] -> plane
  std::vector<Edge> shared;                 // shared[k] joins copies k and k+1
};

// Lay the faces out one after another, each glued to its neighbour. Copy `anchor`
// gets the seed and the rest are glued outward from it, so rounding grows with the
// distance from the anchor rather than from copy 0.
template <std::floating_point Real = double>
Development<Real> develop(const Surface<Real>& s, const std::vector<int>& faces,
                          const HIsometry<Real>& seed = HIsometry<Real>::identity(), std::size_t anchor = 0) {
  Development<Real> d;
  if (faces.empty()) return d;
  if (anchor >= faces.size()) throw DomainError("anchor copy out of range");
  d.faces = faces;
  d.placements.assign(faces.size(), seed);
  for (std::size_t k = 1; k < faces.size(); ++k) {
    int g = faces[k], f = faces[k - 1];
    if (g == f || g < 0 || g > 3 || f < 0 || f > 3) throw NonAdjacentFaces("consecutive faces must be distinct");
    d.shared.push_back(shared_edge(f, g));
  }
  for (std::size_t k = anchor + 1; k < faces.size(); ++k) d.placements[k] = d.placements[k - 1] * s.glue(faces[k], faces[k - 1]);
  for (std::size_t k = anchor; k-- > 0;) d.placements[k] = d.placements[k + 1] * s.glue(faces[k], faces[k + 1]);
  return d;
}

// Developed positions of the corners of copy k, indexed by global vertex label (-1 slot unused).
template <std::floating_point Real = double>
std::array<HPoint<Real>, 3> placed_corners(const Surface<Real>& s, const Development<Real>& d, std::size_t k) {
  std::array<HPoint<Real>, 3> r;
  for (int c = 0; c < 3; ++c) r[c] = d.placements[k].apply(s.chart().corners[c]);
  return r;
}

// Total angle at each distinct developed vertex, summed over the copies meeting it.
template <std::floating_point Real = double>
std::vector<Real> development_vertex_angles(const Surface<Real>& s, const Development<Real>& d,
                                            Real merge_tol = Real(1e-9)) {
  std::vector<HPoint<Real>> where;
  std::vector<Real> total;
  for (std::size_t k = 0; k < d.faces.size(); ++k) {
    auto c = placed_corners(s, d, k);
    for (int i = 0; i < 3; ++i) {
      Real ang = angle(c[i], c[(i + 1) % 3], c[(i + 2) % 3]);
      std::size_t j = 0;
      for (; j < where.size(); ++j)
        if (hdist(where[j], c[i]) < merge_tol) break;
      if (j == where.size()) {
        where.push_back(c[i]);
        total.push_back(0);
      }
      total[j] += ang;
    }
  }
  return total;
}

} // namespace hypertet
