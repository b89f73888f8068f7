// hypertet: simple closed geodesics on regular hyperbolic tetrahedra.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypertet/counting.hpp"
#include "hypertet/geodesics.hpp"
#include "hypertet/identify.hpp"
#include "hypertet/io.hpp"
#include "hypertet/shooting.hpp"

using namespace hypertet;

namespace {

constexpr int kOk = 0, kValidation = 2, kInvariant = 3;

// "0.5", "pi/6", "2pi/7", "2*pi/7", "pi"
double parse_angle(const std::string& s) {
  static const std::regex frac(R"(^\s*(\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    double k = m[1].matched ? std::stod(m[1]) : 1.0;
    double n = m[2].matched ? std::stod(m[2]) : 1.0;
    if (n == 0) throw DomainError("angle denominator is zero");
    return k * std::numbers::pi / n;
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse angle '" + s + "'");
  }
  if (used != s.size()) throw DomainError("cannot parse angle '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> r;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse length '" + item + "'");
    }
    if (used != item.size()) throw DomainError("cannot parse length '" + item + "'");
    r.push_back(v);
  }
  if (r.empty()) throw DomainError("empty length list");
  return r;
}

unsigned threads_from_env() {
  const char* e = std::getenv("HTET_THREADS");
  if (!e || !*e) return 1;
  char* end = nullptr;
  long v = std::strtol(e, &end, 10);
  if (*end || v < 1 || v > 1024) throw DomainError("HTET_THREADS must be an integer in [1, 1024]");
  return static_cast<unsigned>(v);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open " + path);
  f << text;
}

struct Opts {
  std::string alpha = "pi/6";
  std::string format;
  std::string output;
  std::string svg;
  std::string model = "poincare";
  int p = 0, q = 1;
  std::string L;
  std::string grid;
  double L_max = 0;
  std::size_t max_crossings = 0;
};

int cmd_info(const Opts& o) {
  double al = parse_angle(o.alpha);
  auto j = io::info_json(al);
  if (o.format == "json") {
    emit(j.dump(2) + "\n", o.output);
  } else {
    std::string t;
    for (const char* k : {"a", "h", "d_trig", "d_log", "circumradius"})
      t += std::string(k) + std::string(14 - std::string(k).size(), ' ') + io::fmt(j[k].get<double>()) + "\n";
    emit(t, o.output);
  }
  return kOk;
}

int cmd_export_tetra(const Opts& o) {
  emit(io::tetra_json(parse_angle(o.alpha)).dump(2) + "\n", o.output);
  return kOk;
}

int cmd_build(const Opts& o) {
  double al = parse_angle(o.alpha);
  GeodesicType t(o.p, o.q);
  Surface<double> s(al);
  auto g = build_geodesic(s, t);
  auto rep = validate(s, g);
  if (!rep.ok()) {
    for (const auto& f : rep.failures) std::cerr << "invariant: " << f << "\n";
    return kInvariant;
  }
  std::string svg;
  if (!o.svg.empty())
    svg = io::development_svg(s, g, o.model == "klein" ? io::DiskModel::Klein : io::DiskModel::Poincare);
  emit(io::path_json(g).dump(2) + "\n", o.output);
  if (!o.svg.empty()) emit(svg, o.svg);
  return kOk;
}

int cmd_count(const Opts& o) {
  double al = parse_angle(o.alpha);
  std::vector<double> Ls;
  if (!o.grid.empty()) {
    auto g = parse_list(o.grid);
    if (g.size() != 3 || !(g[0] > 0) || !(g[1] >= g[0]) || g[2] < 1 || g[2] != std::floor(g[2]))
      throw DomainError("--grid expects Lmin,Lmax,n with 0 < Lmin <= Lmax and integer n >= 1");
    int n = static_cast<int>(g[2]);
    for (int k = 0; k < n; ++k) Ls.push_back(n == 1 ? g[1] : g[0] * std::pow(g[1] / g[0], double(k) / (n - 1)));
  } else {
    if (o.L.empty()) throw DomainError("count needs --L or --grid");
    Ls = parse_list(o.L);
  }
  for (double L : Ls)
    if (!(L > 0) || !std::isfinite(L)) throw DomainError("lengths must be positive and finite");
  unsigned th = threads_from_env();
  Surface<double> s(al);
  auto rows = count_table(s, Ls, th);
  emit(o.format == "json" ? io::count_json(rows).dump(2) + "\n" : io::count_csv(rows), o.output);
  return kOk;
}

int cmd_oracle(const Opts& o) {
  double al = parse_angle(o.alpha);
  if (!(o.L_max > 0) || !std::isfinite(o.L_max)) throw DomainError("--L-max must be positive and finite");
  OracleOptions opt;
  opt.L_max = o.L_max;
  opt.max_crossings = o.max_crossings;
  opt.threads = threads_from_env();
  Surface<long double> sl(static_cast<long double>(al));
  Surface<double> sd(al);
  auto r = find_closed(sl, opt);
  auto ids = identify_found(sd, r);
  std::size_t ok = 0;
  for (const auto& i : ids) ok += i.matched;
  if (o.format == "json") {
    emit(io::oracle_json(r, ids).dump(2) + "\n", o.output);
  } else {
    std::string t;
    char b[200];
    for (std::size_t i = 0; i < r.found.size(); ++i) {
      const auto& c = ids[i].counts;
      std::string ty = ids[i].matched ? "(" + std::to_string(ids[i].type->p) + "," + std::to_string(ids[i].type->q) + ")"
                                      : std::string("unidentified");
      std::snprintf(b, sizeof b, "%-13s L=%.10f crossings=%zu counts=%d%d%d%d%d%d defect=%.1e\n", ty.c_str(),
                    double(r.found[i].length), r.found[i].crossings.size(), c[0], c[1], c[2], c[3], c[4], c[5],
                    double(r.found[i].closure_defect));
      t += b;
    }
    std::snprintf(b, sizeof b, "%zu found / %zu identified%s\n", r.found.size(), ok,
                  r.complete ? "" : " (search incomplete)");
    t += b;
    emit(t, o.output);
  }
  return ok == r.found.size() ? kOk : kInvariant;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple closed geodesics on regular tetrahedra in hyperbolic space"};
  app.require_subcommand(1);
  Opts o;
  auto angle = [&](CLI::App* c) { c->add_option("--alpha", o.alpha, "face angle: radians or k*pi/n")->capture_default_str(); };
  auto out = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output file (default stdout)"); };

  auto* info = app.add_subcommand("info", "edge length, altitude, vertex distance bounds, circumradius");
  angle(info);
  out(info);
  info->add_option("--format", o.format, "table|json")->check(CLI::IsMember({"table", "json"}));

  auto* tet = app.add_subcommand("export-tetra", "embedded tetrahedron in the Klein ball as JSON");
  angle(tet);
  out(tet);

  auto* build = app.add_subcommand("build", "construct and validate the geodesic of type (p,q)");
  angle(build);
  out(build);
  build->add_option("--p", o.p)->required();
  build->add_option("--q", o.q)->required();
  build->add_option("--svg", o.svg, "write the development picture here");
  build->add_option("--model", o.model, "poincare|klein")->check(CLI::IsMember({"poincare", "klein"}));

  auto* count = app.add_subcommand("count", "count geodesics by length");
  angle(count);
  out(count);
  count->add_option("--L", o.L, "comma-separated lengths");
  count->add_option("--grid", o.grid, "Lmin,Lmax,n geometric grid");
  count->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* oracle = app.add_subcommand("oracle", "search closed geodesics by shooting and identify them");
  angle(oracle);
  out(oracle);
  oracle->add_option("--L-max", o.L_max)->required();
  oracle->add_option("--max-crossings", o.max_crossings, "cap on crossings per word (0: none)");
  oracle->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }
  try {
    if (*info) return cmd_info(o);
    if (*tet) return cmd_export_tetra(o);
    if (*build) return cmd_build(o);
    if (*count) return cmd_count(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariant;
  }
  return kOk;
}
