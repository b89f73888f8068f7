#pragma once

// Hyperbolic plane of curvature -1 in the hyperboloid model.
// Minkowski form <u,v> = -u0 v0 + u1 v1 + u2 v2, points on the upper sheet <P,P> = -1.

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace hypertet {

template <std::floating_point Real>
struct Vec3 {
  std::array<Real, 3> c{};

  Real& operator[](std::size_t i) { return c[i]; }
  Real operator[](std::size_t i) const { return c[i]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
  friend Vec3 operator*(Real s, const Vec3& a) { return {{s * a[0], s * a[1], s * a[2]}}; }
  friend Vec3 operator-(const Vec3& a) { return {{-a[0], -a[1], -a[2]}}; }
};

template <std::floating_point Real>
Real mink(const Vec3<Real>& a, const Vec3<Real>& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <std::floating_point Real>
Real dot(const Vec3<Real>& a, const Vec3<Real>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <std::floating_point Real>
Vec3<Real> cross(const Vec3<Real>& a, const Vec3<Real>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

// J = diag(-1, 1, 1)
template <std::floating_point Real>
Vec3<Real> flip0(const Vec3<Real>& a) {
  return {{-a[0], a[1], a[2]}};
}

template <std::floating_point Real>
Real det3(const Vec3<Real>& a, const Vec3<Real>& b, const Vec3<Real>& c) {
  return dot(a, cross(b, c));
}

template <std::floating_point Real = double>
class HPoint {
 public:
  HPoint() : v_{{1, 0, 0}} {}

  static HPoint origin() { return HPoint(); }

  static HPoint from_hyperboloid(Real x0, Real x1, Real x2) {
    Vec3<Real> v{{x0, x1, x2}};
    Real n = mink(v, v);
    if (!(x0 >= 1) || std::abs(n + 1) > Real(1e-12) * std::max(Real(1), x0 * x0))
      throw DomainError("point is not on the hyperboloid sheet");
    return HPoint(v);
  }

  // Rescale a future-pointing timelike vector onto the sheet.
  static HPoint normalize(const Vec3<Real>& v) {
    Real n = -mink(v, v);
    if (!(n > 0) || !(v[0] > 0)) throw DomainError("vector is not future timelike");
    Real s = 1 / std::sqrt(n);
    Vec3<Real> w = s * v;
    if (w[0] < 1) w[0] = 1;
    return HPoint(w);
  }

  static HPoint from_klein(Real u, Real w) {
    Real r2 = u * u + w * w;
    if (!(r2 < 1)) throw DomainError("Klein coordinates outside the unit disk");
    Real x0 = 1 / std::sqrt(1 - r2);
    return HPoint(Vec3<Real>{{x0, x0 * u, x0 * w}});
  }

  static HPoint from_poincare(Real u, Real w) {
    Real r2 = u * u + w * w;
    if (!(r2 < 1)) throw DomainError("Poincare coordinates outside the unit disk");
    Real k = 1 / (1 - r2);
    return HPoint(Vec3<Real>{{(1 + r2) * k, 2 * u * k, 2 * w * k}});
  }

  // Point at distance r from the origin in direction phi.
  static HPoint polar(Real r, Real phi) {
    return HPoint(Vec3<Real>{{std::cosh(r), std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi)}});
  }

  const Vec3<Real>& vec() const { return v_; }
  Real x0() const { return v_[0]; }
  Real x1() const { return v_[1]; }
  Real x2() const { return v_[2]; }

  std::array<Real, 2> klein() const { return {v_[1] / v_[0], v_[2] / v_[0]}; }
  std::array<Real, 2> poincare() const { return {v_[1] / (1 + v_[0]), v_[2] / (1 + v_[0])}; }

  Real norm_defect() const { return std::abs(mink(v_, v_) + 1); }

  template <std::floating_point R2>
  HPoint<R2> cast() const {
    return HPoint<R2>::normalize(Vec3<R2>{{R2(v_[0]), R2(v_[1]), R2(v_[2])}});
  }

 private:
  explicit HPoint(const Vec3<Real>& v) : v_(v) {}
  Vec3<Real> v_;
};

// Unit tangent vector v at base point P.
template <std::floating_point Real = double>
class HDirection {
 public:
  HDirection() : base_(), v_{{0, 1, 0}} {}

  // Project v onto the tangent plane at P and normalize.
  static HDirection from_vector(const HPoint<Real>& P, const Vec3<Real>& v) {
    const auto& p = P.vec();
    Vec3<Real> t = v + mink(v, p) * p;
    Real n = mink(t, t);
    if (!(n > 0)) throw DomainError("zero tangent vector");
    return HDirection(P, (1 / std::sqrt(n)) * t);
  }

  // Direction at P along the geodesic to Q.
  static HDirection toward(const HPoint<Real>& P, const HPoint<Real>& Q) {
    // Q + <P,Q> P written through D = Q - P, which avoids cancellation for nearby points.
    Vec3<Real> d = Q.vec() - P.vec();
    Real dd = mink(d, d);
    if (!(dd > 0)) throw DomainError("direction between coincident points");
    Vec3<Real> t = d - (dd / 2) * P.vec();
    return from_vector(P, t);
  }

  const HPoint<Real>& base() const { return base_; }
  const Vec3<Real>& vec() const { return v_; }

  // Rotated by +pi/2 (counter-clockwise in the disk pictures).
  HDirection left() const { return HDirection(base_, flip0(cross(base_.vec(), v_))); }

  HDirection rotated(Real theta) const {
    Vec3<Real> w = left().vec();
    return from_vector(base_, std::cos(theta) * v_ + std::sin(theta) * w);
  }

  HDirection reversed() const { return HDirection(base_, -v_); }

  Real defect() const {
    return std::max(std::abs(mink(base_.vec(), v_)), std::abs(mink(v_, v_) - 1));
  }

 private:
  HDirection(const HPoint<Real>& P, const Vec3<Real>& v) : base_(P), v_(v) {}
  HPoint<Real> base_;
  Vec3<Real> v_;
};

template <std::floating_point Real>
Real hdist(const HPoint<Real>& P, const HPoint<Real>& Q) {
  Real c = -mink(P.vec(), Q.vec());
  // rounding in <P,Q> scales with the size of the coordinates, not with c
  if (c < 1 - Real(1e-9) * std::max(Real(1), P.x0() * Q.x0()))
    throw DomainError("corrupted point pair: -<P,Q> < 1");
  // <Q-P,Q-P> = 4 sinh^2(d/2) is cancellation free.
  Vec3<Real> d = Q.vec() - P.vec();
  Real dd = mink(d, d);
  if (dd < 0) dd = 0;
  return 2 * std::asinh(std::sqrt(dd) / 2);
}

template <std::floating_point Real>
HPoint<Real> geodesic_point(const HDirection<Real>& v, Real s) {
  return HPoint<Real>::normalize(std::cosh(s) * v.base().vec() + std::sinh(s) * v.vec());
}

template <std::floating_point Real>
HPoint<Real> geodesic_point(const HPoint<Real>& P, const HDirection<Real>& v, Real s) {
  if (hdist(P, v.base()) > Real(1e-12)) throw DomainError("direction is not based at the point");
  return geodesic_point(v, s);
}

// Signed angle from u to w, both at the same base point.
template <std::floating_point Real>
Real signed_angle(const HDirection<Real>& u, const HDirection<Real>& w) {
  return std::atan2(det3(u.base().vec(), u.vec(), w.vec()), mink(u.vec(), w.vec()));
}

// Angle at P between the geodesics PQ and PR, in [0, pi].
template <std::floating_point Real>
Real angle(const HPoint<Real>& P, const HPoint<Real>& Q, const HPoint<Real>& R) {
  auto u = HDirection<Real>::toward(P, Q);
  auto w = HDirection<Real>::toward(P, R);
  return std::abs(signed_angle(u, w));
}

template <std::floating_point Real>
HPoint<Real> midpoint(const HPoint<Real>& P, const HPoint<Real>& Q) {
  return HPoint<Real>::normalize(P.vec() + Q.vec());
}

// Sign of det[A,B,C]; positive when A, B, C run counter-clockwise.
template <std::floating_point Real>
Real orient(const HPoint<Real>& A, const HPoint<Real>& B, const HPoint<Real>& C) {
  return det3(A.vec(), B.vec(), C.vec());
}

enum class SegmentRelation { Disjoint, Cross, Tie };

// Open segments AB and CD. A determinant within the guard band is a Tie unless the
// other pair already separates the segments.
template <std::floating_point Real>
SegmentRelation segment_relation(const HPoint<Real>& A, const HPoint<Real>& B, const HPoint<Real>& C,
                                 const HPoint<Real>& D, Real guard = Real(1e-12)) {
  Real o1 = orient(A, B, C), o2 = orient(A, B, D);
  Real o3 = orient(C, D, A), o4 = orient(C, D, B);
  auto same_side = [guard](Real x, Real y) { return (x > guard && y > guard) || (x < -guard && y < -guard); };
  if (same_side(o1, o2) || same_side(o3, o4)) return SegmentRelation::Disjoint;
  auto clear = [guard](Real x) { return std::abs(x) > guard; };
  if (clear(o1) && clear(o2) && clear(o3) && clear(o4)) return SegmentRelation::Cross;
  return SegmentRelation::Tie;
}

// Unit spacelike normal of the geodesic line through A and B.
template <std::floating_point Real>
Vec3<Real> line_normal(const HPoint<Real>& A, const HPoint<Real>& B) {
  Vec3<Real> n = flip0(cross(A.vec(), B.vec()));
  Real nn = mink(n, n);
  if (!(nn > 0)) throw DomainError("line through coincident points");
  return (1 / std::sqrt(nn)) * n;
}

template <std::floating_point Real>
Real distance_to_segment(const HPoint<Real>& V, const HPoint<Real>& A, const HPoint<Real>& B) {
  Vec3<Real> n = line_normal(A, B);
  Real sh = mink(V.vec(), n);
  Vec3<Real> f = V.vec() - sh * n;
  auto F = HPoint<Real>::normalize(f);
  auto ua = HDirection<Real>::toward(A, B);
  auto ub = HDirection<Real>::toward(B, A);
  if (mink(F.vec(), ua.vec()) >= 0 && mink(F.vec(), ub.vec()) >= 0) return std::asinh(std::abs(sh));
  return std::min(hdist(V, A), hdist(V, B));
}

template <std::floating_point Real = double>
class HIsometry {
 public:
  using Mat = std::array<std::array<Real, 3>, 3>;

  HIsometry() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, orientation_(1) {}
  HIsometry(const Mat& m, int orientation) : m_(m), orientation_(orientation) {}

  static HIsometry identity() { return HIsometry(); }

  const Mat& matrix() const { return m_; }
  int orientation() const { return orientation_; }

  Vec3<Real> apply(const Vec3<Real>& v) const {
    Vec3<Real> r;
    for (int i = 0; i < 3; ++i) r[i] = m_[i][0] * v[0] + m_[i][1] * v[1] + m_[i][2] * v[2];
    return r;
  }

  HPoint<Real> apply(const HPoint<Real>& P) const { return HPoint<Real>::normalize(apply(P.vec())); }

  HDirection<Real> apply(const HDirection<Real>& d) const {
    return HDirection<Real>::from_vector(apply(d.base()), apply(d.vec()));
  }

  friend HIsometry operator*(const HIsometry& a, const HIsometry& b) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r[i][j] = a.m_[i][0] * b.m_[0][j] + a.m_[i][1] * b.m_[1][j] + a.m_[i][2] * b.m_[2][j];
    return HIsometry(r, a.orientation_ * b.orientation_);
  }

  // J M^T J
  HIsometry inverse() const {
    Mat r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = m_[j][i] * ((i == 0) != (j == 0) ? -1 : 1);
    return HIsometry(r, orientation_);
  }

  // max |M^T J M - J|
  Real lorentz_defect() const {
    Real worst = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Real s = -m_[0][i] * m_[0][j] + m_[1][i] * m_[1][j] + m_[2][i] * m_[2][j];
        Real target = i == j ? (i == 0 ? -1 : 1) : 0;
        worst = std::max(worst, std::abs(s - target));
      }
    return worst;
  }

  // Pure translation carrying the origin to P.
  static HIsometry boost(const HPoint<Real>& P) {
    Real x0 = P.x0(), x1 = P.x1(), x2 = P.x2();
    Real k = 1 / (1 + x0);
    return HIsometry(Mat{{{x0, x1, x2}, {x1, 1 + x1 * x1 * k, x1 * x2 * k}, {x2, x1 * x2 * k, 1 + x2 * x2 * k}}}, 1);
  }

  static HIsometry rotation_about(const HPoint<Real>& P, Real theta) {
    Real c = std::cos(theta), s = std::sin(theta);
    HIsometry r(Mat{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}, 1);
    auto b = boost(P);
    return b * r * b.inverse();
  }

  static HIsometry reflect_across(const HPoint<Real>& A, const HPoint<Real>& B) {
    if (hdist(A, B) < Real(1e-14)) throw DomainError("reflection line through coincident points");
    Vec3<Real> n = line_normal(A, B);
    // X - 2 <X,n> n
    Mat r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = (i == j ? 1 : 0) - 2 * n[i] * n[j] * (j == 0 ? -1 : 1);
    return HIsometry(r, -1);
  }

  // Orientation-preserving isometry taking P1 to Q1 and the direction P1->P2 to Q1->Q2.
  static HIsometry mapping(const HPoint<Real>& P1, const HPoint<Real>& P2, const HPoint<Real>& Q1,
                           const HPoint<Real>& Q2) {
    auto frame = [](const HPoint<Real>& a, const HPoint<Real>& b) {
      auto u = HDirection<Real>::toward(a, b);
      auto w = u.left();
      Mat f{};
      for (int i = 0; i < 3; ++i) {
        f[i][0] = a.vec()[i];
        f[i][1] = u.vec()[i];
        f[i][2] = w.vec()[i];
      }
      return HIsometry(f, 1);
    };
    auto fp = frame(P1, P2);
    auto fq = frame(Q1, Q2);
    return fq * fp.inverse();
  }

 private:
  Mat m_;
  int orientation_;
};

// Tetrahedron edge length for face angle alpha: cosh a = cos(alpha) / (1 - cos(alpha)).
template <std::floating_point Real = double>
Real edge_length(Real alpha) {
  if (!(alpha > 0 && alpha < std::numbers::pi_v<Real> / 3))
    throw DomainError("face angle must lie in (0, pi/3)");
  Real c = std::cos(alpha);
  // cosh a - 1 = (2 cos(alpha) - 1)/(1 - cos(alpha)), kept separate for small a
  Real t = (2 * c - 1) / (1 - c);
  return std::log1p(t + std::sqrt(t * (t + 2)));
}

// Altitude of a face: tanh h = tanh a cos(alpha/2).
template <std::floating_point Real = double>
Real face_altitude(Real alpha) {
  Real a = edge_length(alpha);
  return std::atanh(std::tanh(a) * std::cos(alpha / 2));
}

} // namespace hypertet
