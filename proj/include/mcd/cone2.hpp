#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "mcd/errors.hpp"
#include "mcd/rational.hpp"

namespace mcd {

/// A divisor class in a fixed rational basis of the rank-2 class lattice.
struct ClassVec {
  Rat x;
  Rat y;

  bool is_zero() const { return x == 0 && y == 0; }

  friend bool operator==(const ClassVec& a, const ClassVec& b) = default;
  friend ClassVec operator+(const ClassVec& a, const ClassVec& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend ClassVec operator*(const Rat& s, const ClassVec& v) {
    return {s * v.x, s * v.y};
  }
};

/// Primitive integer direction: gcd(|u|,|v|) = 1, (u,v) != (0,0).
/// Two classes on the same open half-line normalize to the same Ray.
struct Ray {
  Int u;
  Int v;

  ClassVec class_vec() const { return {Rat(u), Rat(v)}; }
  Ray opposite() const { return {-u, -v}; }

  friend bool operator==(const Ray& a, const Ray& b) = default;
};

inline Rat cross(const ClassVec& a, const ClassVec& b) {
  return a.x * b.y - a.y * b.x;
}

inline Int cross(const Ray& a, const Ray& b) { return a.u * b.v - a.v * b.u; }

inline Ray normalize(const ClassVec& v) {
  if (v.is_zero()) throw std::invalid_argument("zero class has no ray");
  // Clear denominators, then divide out the content.
  Int a = numerator(v.x) * denominator(v.y);
  Int b = numerator(v.y) * denominator(v.x);
  Int g = boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                     boost::multiprecision::abs(b));
  return Ray{a / g, b / g};
}

inline bool same_ray(const ClassVec& a, const ClassVec& b) {
  return normalize(a) == normalize(b);
}

// Exact angular order with origin at the positive x-axis, sweeping
// counterclockwise through [0, 2pi).
inline int half_index(const Ray& r) {
  return (r.v > 0 || (r.v == 0 && r.u > 0)) ? 0 : 1;
}

inline bool angle_less(const Ray& a, const Ray& b) {
  int ha = half_index(a);
  int hb = half_index(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

enum class ConeKind { Zero, Ray, Wedge, HalfPlane, Line, Full };

inline const char* cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Zero: return "zero";
    case ConeKind::Ray: return "ray";
    case ConeKind::Wedge: return "wedge";
    case ConeKind::HalfPlane: return "half_plane";
    case ConeKind::Line: return "line";
    case ConeKind::Full: return "full";
  }
  return "?";
}

/// Closed convex cone in the rank-2 class space, in canonical variant form.
///  - Wedge(a, b): generators counterclockwise, opening strictly in (0, pi).
///  - HalfPlane(a, -a): the side counterclockwise from a (cross(a, v) >= 0).
///  - Line(r): r is the representative with angle in [0, pi).
class Cone2 {
 public:
  static Cone2 zero() { return Cone2(ConeKind::Zero, {}, {}); }
  static Cone2 ray(Ray r) { return Cone2(ConeKind::Ray, r, r); }
  static Cone2 wedge(Ray a, Ray b) {
    if (cross(a, b) <= 0)
      throw internal_error("wedge generators must be counterclockwise and non-collinear");
    return Cone2(ConeKind::Wedge, a, b);
  }
  static Cone2 half_plane(Ray boundary_start) {
    return Cone2(ConeKind::HalfPlane, boundary_start, boundary_start.opposite());
  }
  static Cone2 line(Ray r) {
    Ray canon = half_index(r) == 0 ? r : r.opposite();
    return Cone2(ConeKind::Line, canon, canon.opposite());
  }
  static Cone2 full() { return Cone2(ConeKind::Full, {}, {}); }

  ConeKind kind() const { return kind_; }
  const Ray& gen1() const { return g1_; }
  const Ray& gen2() const { return g2_; }

  std::vector<Ray> boundary_rays() const {
    switch (kind_) {
      case ConeKind::Zero:
      case ConeKind::Full: return {};
      case ConeKind::Ray: return {g1_};
      default: return {g1_, g2_};
    }
  }

  friend bool operator==(const Cone2& a, const Cone2& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case ConeKind::Zero:
      case ConeKind::Full: return true;
      default: return a.g1_ == b.g1_ && a.g2_ == b.g2_;
    }
  }

 private:
  Cone2(ConeKind k, Ray a, Ray b) : kind_(k), g1_(a), g2_(b) {}

  ConeKind kind_;
  Ray g1_{1, 0};
  Ray g2_{1, 0};
};

/// Smallest closed convex cone containing the given rays.
inline Cone2 cone_hull_rays(std::vector<Ray> rays) {
  std::sort(rays.begin(), rays.end(), angle_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  if (rays.empty()) return Cone2::zero();
  if (rays.size() == 1) return Cone2::ray(rays[0]);
  if (rays.size() == 2 && cross(rays[0], rays[1]) == 0) return Cone2::line(rays[0]);

  // Circular gap scan: a gap > pi leaves a wedge, exactly pi a half-plane,
  // otherwise the rays wrap the whole plane.
  const std::size_t n = rays.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Ray& a = rays[i];
    const Ray& b = rays[(i + 1) % n];
    if (cross(a, b) < 0) return Cone2::wedge(b, a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Ray& a = rays[i];
    const Ray& b = rays[(i + 1) % n];
    if (cross(a, b) == 0) return Cone2::half_plane(b);
  }
  return Cone2::full();
}

inline Cone2 cone_hull(const std::vector<ClassVec>& vs) {
  std::vector<Ray> rays;
  rays.reserve(vs.size());
  for (const auto& v : vs) {
    if (v.is_zero()) throw std::invalid_argument("cone_hull: zero generator");
    rays.push_back(normalize(v));
  }
  return cone_hull_rays(std::move(rays));
}

inline bool contains_ray(const Cone2& c, const Ray& r) {
  switch (c.kind()) {
    case ConeKind::Zero: return false;
    case ConeKind::Ray: return r == c.gen1();
    case ConeKind::Wedge:
      return cross(c.gen1(), r) >= 0 && cross(c.gen2(), r) <= 0;
    case ConeKind::HalfPlane: return cross(c.gen1(), r) >= 0;
    case ConeKind::Line: return cross(c.gen1(), r) == 0;
    case ConeKind::Full: return true;
  }
  return false;
}

/// Set membership; the origin belongs to every cone.
inline bool contains(const Cone2& c, const ClassVec& v) {
  if (v.is_zero()) return true;
  return contains_ray(c, normalize(v));
}

inline bool strictly_convex(const Cone2& c) {
  switch (c.kind()) {
    case ConeKind::Zero:
    case ConeKind::Ray:
    case ConeKind::Wedge: return true;
    default: return false;
  }
}

/// C1 and C2 intersect in {0} only. Two closed convex cones overlap beyond
/// the origin iff some boundary ray of one lies in the other.
inline bool meets_only_at_origin(const Cone2& c1, const Cone2& c2) {
  if (c1.kind() == ConeKind::Zero || c2.kind() == ConeKind::Zero) return true;
  if (c1.kind() == ConeKind::Full || c2.kind() == ConeKind::Full) return false;
  for (const Ray& r : c1.boundary_rays())
    if (contains_ray(c2, r)) return false;
  for (const Ray& r : c2.boundary_rays())
    if (contains_ray(c1, r)) return false;
  return true;
}

/// D1 >=_A D2 : D2 lies in Cone(D1, A), i.e. D2 = alpha*D1 + beta*A with
/// alpha, beta >= 0. Solved exactly; the collinear D1 || A case reduces to
/// membership in the degenerate hull.
inline bool succeq(const ClassVec& A, const ClassVec& D1, const ClassVec& D2) {
  if (A.is_zero() || D1.is_zero() || D2.is_zero())
    throw std::invalid_argument("succeq: zero class");
  Rat det = cross(D1, A);
  if (det != 0) {
    Rat alpha = cross(D2, A) / det;
    Rat beta = cross(D1, D2) / det;
    return alpha >= 0 && beta >= 0;
  }
  return contains(cone_hull({D1, A}), D2);
}

/// Permutation sorting vs into the >=_A chain order (farthest from A first).
/// Ties (equal rays) keep input order.
inline std::vector<std::size_t> angular_sort_order(const ClassVec& A,
                                                   const std::vector<ClassVec>& vs) {
  static const char* kNotOrderable = "family not >=_A-orderable against this ample class";
  if (A.is_zero()) throw std::invalid_argument("angular_sort: zero ample class");
  std::vector<std::size_t> idx(vs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (vs.empty()) return idx;

  Cone2 hull = cone_hull(vs);
  if (hull.kind() != ConeKind::Zero && contains(hull, A))
    throw std::invalid_argument(kNotOrderable);
  std::vector<ClassVec> all = vs;
  all.push_back(A);
  if (!strictly_convex(cone_hull(all))) throw std::invalid_argument(kNotOrderable);

  // The preconditions force every member strictly to one angular side of A;
  // on that side the chain order is a plain rotational sort.
  const Rat side = cross(A, vs[0]);
  if (side == 0) throw internal_error("angular_sort: member collinear with ample survived checks");
  const int sigma = sign(side);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return sigma * sign(cross(vs[a], vs[b])) < 0;
  });
  return idx;
}

inline std::vector<ClassVec> angular_sort(const ClassVec& A,
                                          const std::vector<ClassVec>& vs) {
  std::vector<ClassVec> out;
  out.reserve(vs.size());
  for (std::size_t i : angular_sort_order(A, vs)) out.push_back(vs[i]);
  return out;
}

/// A' = D_nef + eps*A for the largest dyadic eps = 1/2^t (1 <= t <= 64)
/// with A' outside C_avoid. Any small enough eps works since C_avoid is
/// closed; the dyadic scan makes the choice reproducible.
inline ClassVec separating_ample(const ClassVec& A, const ClassVec& d_nef,
                                 const Cone2& c_avoid) {
  if (A.is_zero() || d_nef.is_zero())
    throw std::invalid_argument("separating_ample: zero class");
  if (normalize(A) == normalize(d_nef))
    throw std::invalid_argument("separating_ample: ample collinear with nef edge");
  if (contains(c_avoid, d_nef))
    throw std::invalid_argument("separating_ample: nef edge already in the avoided cone");
  Rat eps(1);
  for (int t = 1; t <= 64; ++t) {
    eps /= 2;
    ClassVec candidate = d_nef + eps * A;
    if (!contains(c_avoid, candidate)) return candidate;
  }
  throw std::invalid_argument(
      "separating_ample: no dyadic eps <= 1/2^64 escapes the avoided cone "
      "(inconsistent input cones)");
}

}  // namespace mcd
