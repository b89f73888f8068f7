#pragma once

// JSON, CSV and SVG output.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "counting.hpp"
#include "geodesics.hpp"
#include "identify.hpp"
#include "shooting.hpp"
#include "tetrahedron.hpp"
#include "unfolding.hpp"

namespace hypertet::io {

using nlohmann::json;

// Rounded to 15 significant digits so output does not depend on the last bits.
inline double num(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.15g", x);
  return std::strtod(b, nullptr);
}

inline std::string fmt(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.15g", x);
  return b;
}

inline json info_json(double alpha) {
  TetraParams<double> p(alpha);
  auto d = distance_bounds(p);
  auto k = klein_embedding(p);
  return {{"a", num(d.a)}, {"h", num(d.h)}, {"d_trig", num(d.d_trig)}, {"d_log", num(d.d_log)},
          {"circumradius", num(k.circumradius)}};
}

inline json tetra_json(double alpha) {
  auto k = klein_embedding(TetraParams<double>(alpha));
  json v = json::array();
  for (const auto& x : k.vertices) v.push_back({num(x[0]), num(x[1]), num(x[2])});
  return {{"alpha", num(alpha)},
          {"edge_length", num(k.edge_length)},
          {"circumradius", num(k.circumradius)},
          {"klein_radius", num(k.klein_radius)},
          {"vertices", v}};
}

inline json crossing_seq_json(const CrossingSeq& s) {
  json c = json::array();
  for (const auto& x : s.crossings) c.push_back({{"edge", edge_name(x.edge)}, {"t", to_string(x.t)}, {"time", to_string(x.time)}});
  return {{"p", s.p}, {"q", s.q}, {"mu", to_string(s.mu)}, {"crossings", c}};
}

template <std::floating_point Real>
json path_json(const GeodesicPath<Real>& g) {
  json c = json::array();
  for (const auto& x : g.crossings)
    c.push_back({{"edge", edge_name(x.edge)}, {"t", num(double(x.t))}, {"angle", num(double(x.angle))}});
  return {{"p", g.type.p},
          {"q", g.type.q},
          {"alpha", num(double(g.alpha))},
          {"length", num(double(g.length))},
          {"crossings", c},
          {"catching", {g.catching[0], g.catching[1]}}};
}

template <std::floating_point Real>
std::string count_csv(const std::vector<CountRow<Real>>& rows) {
  std::string s = "alpha,L,n_exact,n_pred,n_cap,max_pq\n";
  for (const auto& r : rows)
    s += fmt(double(r.alpha)) + "," + fmt(double(r.L)) + "," + std::to_string(r.n_exact) + "," +
         fmt(double(r.n_pred)) + "," + std::to_string(r.n_cap) + "," + std::to_string(r.max_pq) + "\n";
  return s;
}

template <std::floating_point Real>
json count_json(const std::vector<CountRow<Real>>& rows) {
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"alpha", num(double(r.alpha))},
                 {"L", num(double(r.L))},
                 {"n_exact", r.n_exact},
                 {"n_pred", num(double(r.n_pred))},
                 {"n_cap", r.n_cap},
                 {"max_pq", r.max_pq}});
  return a;
}

template <std::floating_point Real>
json oracle_json(const OracleReport<Real>& r, const std::vector<Identification>& ids) {
  json f = json::array();
  for (std::size_t i = 0; i < r.found.size(); ++i) {
    const auto& g = r.found[i];
    json e{{"length", num(double(g.length))},
           {"closure_defect", num(double(g.closure_defect))},
           {"crossings", g.crossings.size()},
           {"edge_counts", g.edge_counts()}};
    if (ids[i].matched) {
      e["type"] = {ids[i].type->p, ids[i].type->q};
      e["copy"] = ids[i].copy;
      e["length_diff"] = num(ids[i].length_diff);
    } else {
      e["type"] = "unidentified";
    }
    f.push_back(e);
  }
  return {{"alpha", num(r.alpha)},
          {"L_max", num(r.L_max)},
          {"complete", r.complete},
          {"search", r.complete ? "complete" : "search incomplete"},
          {"prefixes", r.nodes},
          {"closed_words", r.closed_words},
          {"non_simple", r.non_simple},
          {"uncertified", r.uncertified},
          {"found", f}};
}

enum class DiskModel { Poincare, Klein };

namespace detail {

inline std::array<double, 2> to_disk(const HPoint<double>& P, DiskModel m) {
  return m == DiskModel::Poincare ? P.poincare() : P.klein();
}

inline std::string polyline(const std::vector<std::array<double, 2>>& pts, const char* style) {
  std::string s = "<polyline fill=\"none\" " + std::string(style) + " points=\"";
  char b[64];
  for (const auto& p : pts) {
    std::snprintf(b, sizeof b, "%.3f,%.3f ", 500 + 480 * p[0], 500 - 480 * p[1]);
    s += b;
  }
  s += "\"/>\n";
  return s;
}

inline std::vector<std::array<double, 2>> arc(const HPoint<double>& A, const HPoint<double>& B, DiskModel m) {
  std::vector<std::array<double, 2>> r;
  double d = hdist(A, B);
  if (d == 0) return {to_disk(A, m)};
  auto dir = HDirection<double>::toward(A, B);
  for (int k = 0; k <= 32; ++k) r.push_back(to_disk(geodesic_point(dir, d * k / 32), m));
  return r;
}

} // namespace detail

// The faces carrying crossings 0..x2 laid out around the middle one, with the chord.
inline std::string development_svg(const Surface<double>& s, const GeodesicPath<double>& g,
                                   DiskModel model = DiskModel::Poincare) {
  std::vector<int> faces(g.faces.begin(), g.faces.begin() + static_cast<long>(g.x2));
  auto d = develop(s, faces, HIsometry<double>::identity(), faces.size() / 2);
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
      "<circle cx=\"500\" cy=\"500\" r=\"480\" fill=\"none\" stroke=\"#888\"/>\n";
  for (std::size_t k = 0; k < faces.size(); ++k) {
    auto c = placed_corners(s, d, k);
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < 3; ++i) {
      auto a = detail::arc(c[i], c[(i + 1) % 3], model);
      pts.insert(pts.end(), a.begin(), a.end());
    }
    pts.push_back(pts.front());
    out += detail::polyline(pts, "stroke=\"#333\" stroke-width=\"0.8\"");
  }
  std::vector<std::array<double, 2>> chord;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& ch = g.chords[k];
    auto a = detail::arc(d.placements[k].apply(ch.a), d.placements[k].apply(ch.b), model);
    chord.insert(chord.end(), a.begin(), a.end());
  }
  out += detail::polyline(chord, "stroke=\"#c00\" stroke-width=\"1.6\"");
  out += "</svg>\n";
  return out;
}

} // namespace hypertet::io
