#pragma once

// Counting simple closed geodesics by length: exact counts from the builder,
// the upper bound via the crossing-number estimate, and the asymptotic constant.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "geodesics.hpp"

namespace hypertet {

inline std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw DomainError("totient of 0");
  std::uint64_t r = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    r -= r / d;
  }
  if (n > 1) r -= r / n;
  return r;
}

// phi(0..n), phi(0) = 0.
inline std::vector<std::uint64_t> totient_sieve(std::size_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::size_t i = 2; i <= n; ++i)
    if (phi[i] == i)
      for (std::size_t j = i; j <= n; j += i) phi[j] -= phi[j] / i;
  return phi;
}

// psi(0..n) by listing the types directly: (0,1) plus coprime 1 <= p < q, p+q <= x.
inline std::vector<std::uint64_t> psi_enumerate_table(std::size_t n) {
  std::vector<std::uint64_t> r(n + 1, 0);
  for (std::size_t x = 1; x <= n; ++x) {
    std::uint64_t add = x == 1 ? 1 : 0;
    for (std::size_t p = 1; 2 * p < x; ++p)
      if (std::gcd(p, x - p) == 1) ++add;
    r[x] = r[x - 1] + add;
  }
  return r;
}

// psi(0..n) as 1 + sum_{y=3..x} phi(y)/2.
inline std::vector<std::uint64_t> psi_summation_table(std::size_t n) {
  auto phi = totient_sieve(n);
  std::vector<std::uint64_t> r(n + 1, 0);
  for (std::size_t x = 1; x <= n; ++x) r[x] = r[x - 1] + (x == 1 ? 1 : x >= 3 ? phi[x] / 2 : 0);
  return r;
}

inline std::uint64_t psi(long x) {
  if (x <= 0) return 0;
  auto n = static_cast<std::size_t>(x);
  return n <= 10000 ? psi_enumerate_table(n)[n] : psi_summation_table(n)[n];
}

template <std::floating_point Real = double>
struct CAlpha {
  Real alpha;
  Real w_short, w_cross;
  Real value;
};

// Constant of the quadratic growth N(L) ~ c L^2.
template <std::floating_point Real = double>
CAlpha<Real> c_alpha(Real alpha) {
  auto w = weak_segment_bounds(alpha);
  Real s = w[1] + w[2];
  const Real pi = std::numbers::pi_v<Real>;
  return {alpha, w[1], w[2], Real(27) / (32 * pi * pi) / (s * s)};
}

// Largest p+q a simple closed geodesic of length <= L can have.
template <std::floating_point Real = double>
long max_pq_bound(Real L, Real alpha) {
  if (!(L > 0) || !std::isfinite(L)) throw DomainError("length bound must be positive and finite");
  auto w = weak_segment_bounds(alpha);
  Real b = std::floor(Real(0.75) * (L - 2 * w[0]) / (w[1] + w[2]) + 2);
  return std::max<long>(0, static_cast<long>(b));
}

// Lower bound on the length of a geodesic of type (p,q).
template <std::floating_point Real = double>
Real length_lower_bound(GeodesicType t, Real alpha) {
  auto w = weak_segment_bounds(alpha);
  return Real(4) * (t.p + t.q - 2) / 3 * (w[1] + w[2]) + 2 * w[0];
}

template <std::floating_point Real = double>
struct CountRow {
  Real alpha;
  Real L;
  std::uint64_t n_exact;  // geodesics (3 per type) with length <= L
  Real n_pred;            // c(alpha) L^2
  std::uint64_t n_cap;    // 3 psi(max_pq)
  long max_pq;
};

// Lengths of all listed types, computed by `threads` workers; order follows `types`.
template <std::floating_point Real = double>
std::vector<Real> type_lengths(const Surface<Real>& s, const std::vector<GeodesicType>& types, unsigned threads) {
  std::vector<Real> len(types.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  auto work = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= types.size()) return;
      try {
        len[i] = geodesic_length(s, types[i]);
      } catch (...) {
        std::lock_guard<std::mutex> g(m);
        if (!err) err = std::current_exception();
        next = types.size();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return len;
}

template <std::floating_point Real = double>
std::vector<CountRow<Real>> count_table(const Surface<Real>& s, const std::vector<Real>& Ls, unsigned threads = 1) {
  long top = 0;
  for (Real L : Ls) top = std::max(top, max_pq_bound(L, s.alpha()));
  auto types = canonical_types(static_cast<int>(top));
  auto len = type_lengths(s, types, threads);
  auto c = c_alpha(s.alpha()).value;
  auto ps = psi_summation_table(static_cast<std::size_t>(std::max<long>(top, 1)));
  std::vector<CountRow<Real>> rows;
  for (Real L : Ls) {
    long b = max_pq_bound(L, s.alpha());
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (len[i] > L) continue;
      if (types[i].p + types[i].q > b)
        throw InvariantFailure("type (" + std::to_string(types[i].p) + "," + std::to_string(types[i].q) +
                               ") is shorter than the crossing-number bound allows");
      n += 3;
    }
    rows.push_back({s.alpha(), L, n, c * L * L, 3 * ps[static_cast<std::size_t>(b)], b});
  }
  return rows;
}

template <std::floating_point Real = double>
CountRow<Real> count_exact(const Surface<Real>& s, Real L, unsigned threads = 1) {
  return count_table(s, std::vector<Real>{L}, threads).front();
}

} // namespace hypertet
