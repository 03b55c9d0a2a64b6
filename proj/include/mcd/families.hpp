#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "mcd/engine.hpp"
#include "mcd/model.hpp"

namespace mcd {

// ---------------------------------------------------------------------------
// General hypersurface of bidegree (a, b) on P^1 x P^n

struct HypersurfaceParams {
  int a = 1;
  int b = 1;
  int n = 3;
};

inline Scenario gen_hypersurface_p1_pn(const HypersurfaceParams& p) {
  if (p.a <= 0 || p.b <= 0 || p.n < std::max(p.a, 3))
    throw std::invalid_argument(
        "hypersurface parameters require a > 0, b > 0, n >= max(a, 3) (got a=" +
        std::to_string(p.a) + ", b=" + std::to_string(p.b) + ", n=" + std::to_string(p.n) + ")");

  Scenario s;
  s.name = "p1pn(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) +
           ", n=" + std::to_string(p.n) + ")";
  s.dim_x = p.n;
  s.basis_labels = {"O(1,0)", "O(0,1)"};
  s.ample = {Rat(1), Rat(1)};

  // The bidegree trick divisors of class (-1, b), then restricted
  // hyperplanes from the P^n factor. Already in chain order against (1,1).
  for (int i = 1; i <= p.n; ++i) {
    ClassVec cls = i <= p.a ? ClassVec{Rat(-1), Rat(p.b)} : ClassVec{Rat(0), Rat(1)};
    s.family_d.entries.push_back({"D" + std::to_string(i), cls});
  }
  s.family_d.prefix_dims.mode = DimMode::GenericCI;
  auto& t = s.family_d.prefix_dims.stage0;
  for (int j = 0; j < p.n; ++j) t.push_back(p.n - j);
  t.push_back(-1);
  s.family_d.irreducible_first = true;

  // Two disjoint fibers of the projection to P^1.
  s.family_dp.entries.push_back({"D'1", {Rat(1), Rat(0)}});
  s.family_dp.entries.push_back({"D'2", {Rat(1), Rat(0)}});
  s.family_dp.prefix_dims.mode = DimMode::GenericCI;
  s.family_dp.prefix_dims.stage0 = {p.n, p.n - 1, -1};
  return s;
}

// ---------------------------------------------------------------------------
// Blowup of a Fano complete intersection at a general point

struct BlowupFanoParams {
  int N = 4;
  std::vector<int> degrees;

  int s() const { return static_cast<int>(degrees.size()); }
  int n() const { return N - s(); }
  int sum_a() const {
    int t = 0;
    for (int d : degrees) t += d - 1;
    return t;
  }
};

inline Scenario gen_blowup_fano_ci(const BlowupFanoParams& p) {
  int sum_d = std::accumulate(p.degrees.begin(), p.degrees.end(), 0);
  bool degrees_ok = !p.degrees.empty();
  for (int d : p.degrees) degrees_ok = degrees_ok && d >= 2;
  if (!degrees_ok || sum_d > p.N || p.n() < 3)
    throw std::invalid_argument(
        "blowup parameters require degrees d_i >= 2, sum d_i <= N "
        "(anticanonical positivity) and n = N - s >= 3 (got N=" +
        std::to_string(p.N) + ", s=" + std::to_string(p.s()) + ", sum d=" +
        std::to_string(sum_d) + ")");

  const int n = p.n();
  Scenario s;
  s.name = "blowup(N=" + std::to_string(p.N) + ", degrees=[";
  for (std::size_t i = 0; i < p.degrees.size(); ++i)
    s.name += (i ? "," : "") + std::to_string(p.degrees[i]);
  s.name += "])";
  s.dim_x = n;
  s.basis_labels = {"H", "E"};

  // Classes i*H - (i+1)*E from the bidegree trick on each defining
  // hypersurface, plus pullbacks H - E of general hyperplanes downstairs.
  // Ascending i is the chain order; equal rays across hypersurfaces stay
  // adjacent in degree-list order.
  std::vector<ClassVec> classes;
  int a_max = 0;
  for (int i = 1;; ++i) {
    bool any = false;
    for (int d : p.degrees) {
      if (i <= d - 1) {
        classes.push_back({Rat(i), Rat(-(i + 1))});
        any = true;
      }
    }
    if (!any) break;
    a_max = i;
  }
  for (int c = 0; c < n - p.sum_a(); ++c) classes.push_back({Rat(1), Rat(-1)});

  for (std::size_t i = 0; i < classes.size(); ++i)
    s.family_d.entries.push_back({"D" + std::to_string(i + 1), classes[i]});
  s.family_d.prefix_dims.mode = DimMode::GenericCI;
  auto& t = s.family_d.prefix_dims.stage0;
  for (int j = 0; j < n; ++j) t.push_back(n - j);
  t.push_back(-1);
  s.family_d.irreducible_first = true;

  s.family_dp.entries.push_back({"E", {Rat(0), Rat(1)}});
  s.family_dp.entries.push_back({"H", {Rat(1), Rat(0)}});
  s.family_dp.prefix_dims.mode = DimMode::GenericCI;
  s.family_dp.prefix_dims.stage0 = {n, n - 1, -1};
  s.family_dp.contracted_class = ClassVec{Rat(0), Rat(1)};

  // Interior point of the eventual nef cone: the sum of H with the family
  // ray nearest to it (a_max*H - (a_max+1)*E, or H - E when pullback
  // hyperplanes are present).
  Ray nearest = p.sum_a() < n ? Ray{1, -1} : Ray{Int(a_max), Int(-(a_max + 1))};
  s.ample = normalize(Ray{1, 0}.class_vec() + nearest.class_vec()).class_vec();
  return s;
}

// ---------------------------------------------------------------------------
// Hypersurfaces on P^k x P^{n+1-k}: the direct single-chamber case and the
// closed-form Kodaira dimension table

struct PkPlParams {
  int k = 2;
  int a = 1;
  int b = 1;
  int n = 3;
};

inline void check_pkpl_params(const PkPlParams& p) {
  if (p.n < 3 || p.a <= 0 || p.b <= 0 || p.k < 2 || p.k > p.n - 1)
    throw std::invalid_argument(
        "parameters require n >= 3, a > 0, b > 0, 2 <= k <= n-1 (got k=" +
        std::to_string(p.k) + ", a=" + std::to_string(p.a) + ", b=" +
        std::to_string(p.b) + ", n=" + std::to_string(p.n) + ")");
}

struct KodairaDim {
  enum class Kind { MinusInfinity, Value, NotCovered };
  Kind kind = Kind::MinusInfinity;
  int value = 0;

  std::string str() const {
    switch (kind) {
      case Kind::MinusInfinity: return "-inf";
      case Kind::Value: return std::to_string(value);
      case Kind::NotCovered: return "not covered";
    }
    return "?";
  }

  friend bool operator==(const KodairaDim&, const KodairaDim&) = default;
};

/// Kodaira dimension of a general (a,b)-hypersurface on P^k x P^{n+1-k},
/// from the canonical class O(a-k-1, b-(n+2-k)). The one parameter region
/// outside the table (a = k+1 with b >= n+3-k) is reported as not covered,
/// never guessed.
inline KodairaDim kodaira_dim_pk_pl(const PkPlParams& p) {
  check_pkpl_params(p);
  if (p.a <= p.k || p.b <= p.n + 1 - p.k)
    return {KodairaDim::Kind::MinusInfinity, 0};
  if (p.a == p.k + 1 && p.b == p.n + 2 - p.k) return {KodairaDim::Kind::Value, 0};
  if (p.a >= p.k + 2 && p.b == p.n + 2 - p.k) return {KodairaDim::Kind::Value, p.k};
  if (p.a >= p.k + 2 && p.b >= p.n + 3 - p.k) return {KodairaDim::Kind::Value, p.n};
  return {KodairaDim::Kind::NotCovered, 0};
}

/// For 2 <= k <= n-1 both rulings are semiample and not big, so the three
/// cones coincide with the first quadrant and there is nothing to decompose.
/// Built directly; this configuration has no two-family scenario form.
inline DecompositionReport gen_pk_pl_trivial(const PkPlParams& p) {
  check_pkpl_params(p);

  DecompositionReport rep;
  rep.scenario.name = "pkpl(k=" + std::to_string(p.k) + ", a=" + std::to_string(p.a) +
                      ", b=" + std::to_string(p.b) + ", n=" + std::to_string(p.n) + ")";
  rep.scenario.dim_x = p.n;
  rep.scenario.basis_labels = {"O(1,0)", "O(0,1)"};

  const Ray h10{1, 0};
  const Ray h01{0, 1};
  const EdgeFlags fibration = edge_flags(0);

  auto make_side = [&](const Ray& edge) {
    SideResult side;
    side.nef_edge = edge;
    side.nef_edge_flags = fibration;
    side.mov_edge = edge;
    side.eff_edge = {true, edge};
    side.k_sequence = {0};
    side.case_trace = {CaseTag::Case1};
    side.note = "both rulings are semiample and not big; no engine run";
    return side;
  };
  rep.side_d = make_side(h10);
  rep.side_dp = make_side(h01);

  rep.nef_x = Chamber{"X", h10, h01, fibration, fibration};
  rep.mov = cone_hull_rays({h10, h01});
  rep.eff = {rep.mov, true, ""};
  rep.mds_certificate = {true, true};
  return rep;
}

}  // namespace mcd
