#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcd/cone2.hpp"
#include "mcd/errors.hpp"
#include "mcd/model.hpp"

namespace mcd {

// ---------------------------------------------------------------------------
// Certificates and result records

/// Witness that the chain prefix D_1..D_{k+1} is a nef-cone edge: the last
/// member is semiample (its base locus sits inside the empty full
/// intersection), it avoids the cone of the earlier members, the length-k
/// prefix intersection is nonempty, and the image-dimension bound holds.
struct StarCertificate {
  int k = 0;
  std::string semiample_reason;
  bool cond2_ok = false;
  int cond3_dim = 0;
  int cond4_bound = 0;
};

struct EdgeFlags {
  bool semiample = false;
  bool big = false;
  bool birational_off_prefix = false;

  friend bool operator==(const EdgeFlags&, const EdgeFlags&) = default;
};

enum class CaseTag { Case1, Case2, Case3 };

inline const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
  }
  return "?";
}

/// Nef cone of one stage. `left` is the outward edge (new at this stage),
/// `right` the edge shared with the previous stage toward the ample side.
struct Chamber {
  std::string stage_name;
  Ray left{1, 0};
  Ray right{0, 1};
  EdgeFlags left_flags;
  EdgeFlags right_flags;
};

/// Effective-cone edge of one side: exactly known, or only bounded (the
/// true edge lies at or beyond `ray`, looking outward from the ample).
struct EffEdge {
  bool known = true;
  Ray ray{1, 0};
};

struct StageTrace {
  int stage_index = 0;
  std::string stage_name;
  ClassVec stage_ample;
  std::vector<DivisorEntry> chain;
  std::vector<int> dims;
  DimsSource dims_source = DimsSource::Stage0Table;
  StarCertificate cert;
  CaseTag case_tag = CaseTag::Case1;
  std::optional<std::string> chamber_name;
};

struct SideResult {
  Ray nef_edge{1, 0};
  EdgeFlags nef_edge_flags;
  std::vector<Chamber> chambers;  // modification stages, ordered outward
  Ray mov_edge{1, 0};
  EffEdge eff_edge;
  std::vector<int> k_sequence;
  std::vector<CaseTag> case_trace;
  std::vector<StageTrace> stage_traces;
  ClassVec ample_used;
  bool used_separating_ample = false;
  std::string note;
};

struct EffCone {
  Cone2 cone = Cone2::zero();
  bool exact = true;
  std::string notes;
};

struct MdsCertificate {
  bool edges_semiample = false;
  bool chambers_tile_mov = false;

  bool ok() const { return edges_semiample && chambers_tile_mov; }
};

struct ScenarioInfo {
  std::string name;
  int dim_x = 0;
  std::array<std::string, 2> basis_labels{"e1", "e2"};
  std::optional<ClassVec> ample;
  std::vector<DivisorEntry> family_d_entries;
  std::vector<DivisorEntry> family_dp_entries;
};

struct DecompositionReport {
  ScenarioInfo scenario;
  Chamber nef_x;
  SideResult side_d;
  SideResult side_dp;
  Cone2 mov = Cone2::zero();
  EffCone eff;
  MdsCertificate mds_certificate;

  /// All chambers tiling the movable cone: Nef(X) first, then the D-side
  /// stages outward, then the D'-side stages outward.
  std::vector<Chamber> chambers_in_order() const {
    std::vector<Chamber> out;
    out.push_back(nef_x);
    for (const auto& c : side_d.chambers) out.push_back(c);
    for (const auto& c : side_dp.chambers) out.push_back(c);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Chain ordering

/// Sorts a family into the chain order against the given ample class
/// (farthest member first); labels travel with their classes.
inline std::vector<DivisorEntry> order_chain(const ClassVec& ample, const Family& fam) {
  auto idx = angular_sort_order(ample, fam.classes());
  std::vector<DivisorEntry> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(fam.entries[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Edge finding (the recursive chain search and its independent oracle)

namespace detail {

inline std::vector<Ray> chain_rays(const StageState& stage) {
  std::vector<Ray> rays;
  rays.reserve(stage.chain.size());
  for (const auto& e : stage.chain) rays.push_back(normalize(e.cls));
  return rays;
}

inline void check_stage_preconditions(const StageState& stage) {
  const int n = static_cast<int>(stage.chain.size());
  if (n == 0) throw std::invalid_argument("find_star_chain: empty chain");
  if (prefix_dim(stage, n) != -1)
    throw std::invalid_argument("find_star_chain: full prefix intersection is nonempty");
  for (int i = 0; i + 1 < n; ++i)
    if (!succeq(stage.stage_ample, stage.chain[i].cls, stage.chain[i + 1].cls))
      throw std::invalid_argument("find_star_chain: chain is not >=_A-sorted at position " +
                                  std::to_string(i));
}

inline StarCertificate make_certificate(const StageState& stage,
                                        const std::vector<Ray>& rays, int k,
                                        int r_level) {
  StarCertificate cert;
  cert.k = k;
  cert.semiample_reason = "base-locus-in-empty-intersection";
  if (k == 0) {
    cert.cond2_ok = true;  // Cone of an empty prefix is {0}
  } else {
    std::vector<Ray> prefix(rays.begin(), rays.begin() + k);
    cert.cond2_ok = !contains_ray(cone_hull_rays(std::move(prefix)), rays[k]);
  }
  if (!cert.cond2_ok)
    throw internal_error("condition 2 failed for a sorted chain (edge inside the prefix cone)");
  cert.cond3_dim = prefix_dim(stage, k);
  cert.cond4_bound = r_level - k - 1;
  return cert;
}

}  // namespace detail

/// The edge-finding recursion: start from the full chain; k1 is the first
/// index whose ray equals the last member's ray; if the length-k1 prefix
/// intersection is nonempty we are done, otherwise the chain is cut at k1
/// and the search repeats. Terminates since k1 = 0 always succeeds.
inline StarCertificate find_star_chain(const StageState& stage) {
  detail::check_stage_preconditions(stage);
  const auto rays = detail::chain_rays(stage);
  int r = static_cast<int>(rays.size());
  for (;;) {
    int k1 = 0;
    while (rays[k1] != rays[r - 1]) ++k1;
    if (prefix_dim(stage, k1) >= 0)
      return detail::make_certificate(stage, rays, k1, r);
    r = k1;
  }
}

/// Independent oracle for find_star_chain: scans the candidate levels
/// (chain length plus every ray-group boundary) downward, re-deriving k1 at
/// each level by exhaustive scan, and returns at the first level whose k1
/// has a nonempty prefix. Must agree with the recursion everywhere.
inline StarCertificate find_star_chain_bruteforce(const StageState& stage) {
  detail::check_stage_preconditions(stage);
  const auto rays = detail::chain_rays(stage);
  const int n = static_cast<int>(rays.size());

  std::vector<int> levels{n};
  for (int i = n - 1; i >= 1; --i) {
    bool group_start = rays[i] != rays[i - 1];
    if (group_start) levels.push_back(i);
  }
  for (int r : levels) {
    int k1 = -1;
    for (int i = 0; i < r; ++i) {
      if (rays[i] == rays[r - 1]) {
        k1 = i;
        break;
      }
    }
    if (prefix_dim(stage, k1) >= 0)
      return detail::make_certificate(stage, rays, k1, r);
  }
  throw internal_error("edge search exhausted all levels (unreachable: level 0 always accepts)");
}

// ---------------------------------------------------------------------------
// Edge classification

/// k = 0 edges are fibration-type: semiample but not big. k > 0 edges are
/// big, and the associated map is an isomorphism off the length-k prefix.
inline EdgeFlags edge_flags(int k) {
  if (k < 0) throw std::invalid_argument("edge_flags: negative k");
  if (k == 0) return {true, false, false};
  return {true, true, true};
}

inline CaseTag classify_case(const StageState& stage, const StarCertificate& cert) {
  if (cert.cond3_dim == stage.dim_x) {
    if (cert.k != 0)
      throw internal_error("prefix of positive length reported dimension dim X");
    return CaseTag::Case1;
  }
  if (cert.cond3_dim == stage.dim_x - 1) return CaseTag::Case2;
  return CaseTag::Case3;
}

// ---------------------------------------------------------------------------
// The symbolic modification step

namespace detail {

inline std::pair<std::vector<int>, DimsSource> resolve_stage_dims(
    const PrefixDimSpec& spec, int stage_index, int chain_len, int dim_x) {
  if (spec.mode == DimMode::ExplicitTable) {
    auto it = spec.stages.find(stage_index);
    if (it != spec.stages.end()) {
      const auto& t = it->second;
      check_dims_table(t, dim_x, static_cast<std::size_t>(chain_len),
                       "stage " + std::to_string(stage_index) + " table");
      if (t.back() != -1)
        throw internal_error("stage " + std::to_string(stage_index) +
                             " table contradicts the emptied full prefix");
      return {t, DimsSource::ExplicitStage};
    }
  }
  std::vector<int> t(static_cast<std::size_t>(chain_len) + 1);
  for (int j = 0; j < chain_len; ++j) t[static_cast<std::size_t>(j)] = dim_x - j;
  t.back() = -1;
  return {t, DimsSource::Synthesized};
}

}  // namespace detail

/// Case-3 step: cut the chain to its first k members on a new stage whose
/// full prefix is empty, pick the canonical interior ample of the span of
/// the k-th and (k+1)-th rays, and record the new stage's nef cone. The
/// modification itself is symbolic; classes are unchanged.
inline std::pair<Chamber, StageState> sqm_step(const StageState& stage,
                                               const StarCertificate& cert) {
  if (classify_case(stage, cert) != CaseTag::Case3)
    throw std::invalid_argument("sqm_step requires a Case-3 stage");
  const int k = cert.k;

  StageState next;
  next.stage_index = stage.stage_index + 1;
  next.side_tag = stage.side_tag;
  next.chain.assign(stage.chain.begin(), stage.chain.begin() + k);
  next.dim_x = stage.dim_x;
  next.dim_spec = stage.dim_spec;
  auto [dims, source] =
      detail::resolve_stage_dims(stage.dim_spec, next.stage_index, k, stage.dim_x);
  next.dims = std::move(dims);
  next.dims_source = source;

  const Ray right = normalize(stage.chain[static_cast<std::size_t>(k)].cls);
  const Ray prev = normalize(stage.chain[static_cast<std::size_t>(k - 1)].cls);
  next.stage_ample = prev.class_vec() + right.class_vec();

  StarCertificate next_cert = find_star_chain(next);
  if (next_cert.k > k - 1)
    throw internal_error("modification step produced a non-decreasing edge index");

  Chamber chamber;
  chamber.stage_name = next.stage_name();
  chamber.left = normalize(next.chain[static_cast<std::size_t>(next_cert.k)].cls);
  chamber.right = right;
  chamber.left_flags = edge_flags(next_cert.k);
  chamber.right_flags = edge_flags(k);
  if (chamber.left == chamber.right || cross(chamber.left, chamber.right) == 0)
    throw internal_error("degenerate chamber emitted by modification step");
  return {std::move(chamber), std::move(next)};
}

// ---------------------------------------------------------------------------
// One side of the decomposition

inline SideResult run_side(const Scenario& scenario, const Family& fam,
                           const ClassVec& ample, const std::string& side_tag) {
  SideResult out;
  out.ample_used = ample;

  StageState stage;
  stage.stage_index = 0;
  stage.side_tag = side_tag;
  stage.chain = order_chain(ample, fam);
  stage.dims = fam.prefix_dims.stage0;
  stage.dims_source = DimsSource::Stage0Table;
  stage.stage_ample = ample;
  stage.dim_x = scenario.dim_x;
  stage.dim_spec = fam.prefix_dims;
  check_dims_table(stage.dims, stage.dim_x, stage.chain.size(), "stage 0 table");

  for (;;) {
    StarCertificate cert = find_star_chain(stage);
    if (!out.k_sequence.empty() && cert.k >= out.k_sequence.back())
      throw internal_error("edge index failed to decrease across stages");
    out.k_sequence.push_back(cert.k);

    CaseTag tag = classify_case(stage, cert);
    out.case_trace.push_back(tag);

    StageTrace tr;
    tr.stage_index = stage.stage_index;
    tr.stage_name = stage.stage_name();
    tr.stage_ample = stage.stage_ample;
    tr.chain = stage.chain;
    tr.dims = stage.dims;
    tr.dims_source = stage.dims_source;
    tr.cert = cert;
    tr.case_tag = tag;

    if (stage.stage_index == 0) {
      out.nef_edge = normalize(stage.chain[static_cast<std::size_t>(cert.k)].cls);
      out.nef_edge_flags = edge_flags(cert.k);
    }

    if (tag == CaseTag::Case1) {
      out.mov_edge = normalize(stage.chain[0].cls);
      out.eff_edge = {true, out.mov_edge};
      out.stage_traces.push_back(std::move(tr));
      break;
    }
    if (tag == CaseTag::Case2) {
      out.mov_edge = normalize(stage.chain[static_cast<std::size_t>(cert.k)].cls);
      if (fam.contracted_class) {
        out.eff_edge = {true, normalize(*fam.contracted_class)};
      } else if (cert.k == 1 && fam.irreducible_first) {
        // The length-1 prefix is the first divisor itself; when it is
        // irreducible it is the contracted divisor.
        out.eff_edge = {true, normalize(stage.chain[0].cls)};
      } else {
        out.eff_edge = {false, normalize(stage.chain[0].cls)};
      }
      out.stage_traces.push_back(std::move(tr));
      break;
    }

    auto [chamber, next] = sqm_step(stage, cert);
    tr.chamber_name = chamber.stage_name;
    out.stage_traces.push_back(std::move(tr));
    out.chambers.push_back(std::move(chamber));
    stage = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tiling verification

namespace detail {

/// Exact check that the chambers, swept from the D-side movable edge to the
/// D'-side movable edge, share consecutive rays, rotate monotonically in one
/// direction, and fill the movable cone with disjoint interiors.
inline bool verify_tiling(const DecompositionReport& rep) {
  std::vector<const Chamber*> sweep;
  for (auto it = rep.side_d.chambers.rbegin(); it != rep.side_d.chambers.rend(); ++it)
    sweep.push_back(&*it);
  sweep.push_back(&rep.nef_x);
  for (const auto& c : rep.side_dp.chambers) sweep.push_back(&c);

  Ray edge = rep.side_d.mov_edge;
  std::vector<Ray> walk{edge};
  for (const Chamber* c : sweep) {
    bool left_matches = c->left == edge;
    bool right_matches = c->right == edge;
    if (left_matches == right_matches) return false;  // exactly one shared ray
    edge = left_matches ? c->right : c->left;
    walk.push_back(edge);
  }
  if (edge != rep.side_dp.mov_edge) return false;

  int rot = 0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    int s = sign(cross(walk[i], walk[i + 1]));
    if (s == 0) return false;
    if (rot == 0) rot = s;
    if (s != rot) return false;
  }
  for (const Ray& r : walk)
    if (!contains_ray(rep.mov, r)) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Full decomposition

inline DecompositionReport run_decomposition(const Scenario& scenario) {
  ValidationReport vrep = validate(scenario);
  if (!vrep.ok())
    throw validation_error("scenario rejected: " + vrep.failure_summary());

  const Cone2 hull_d = cone_hull(scenario.family_d.classes());
  const Cone2 hull_dp = cone_hull(scenario.family_dp.classes());

  // At least one family cone excludes the ample; run that side first with
  // the scenario ample, then separate a fresh ample for the other side.
  const bool d_first = !contains(hull_d, scenario.ample);
  const Family& first_fam = d_first ? scenario.family_d : scenario.family_dp;
  const Family& second_fam = d_first ? scenario.family_dp : scenario.family_d;
  const Cone2& second_hull = d_first ? hull_dp : hull_d;

  SideResult first =
      run_side(scenario, first_fam, scenario.ample, d_first ? "X" : "X'");
  ClassVec a_prime =
      separating_ample(scenario.ample, first.nef_edge.class_vec(), second_hull);
  SideResult second = run_side(scenario, second_fam, a_prime, d_first ? "X'" : "X");
  second.used_separating_ample = true;

  DecompositionReport rep;
  rep.side_d = d_first ? std::move(first) : std::move(second);
  rep.side_dp = d_first ? std::move(second) : std::move(first);

  rep.scenario.name = scenario.name;
  rep.scenario.dim_x = scenario.dim_x;
  rep.scenario.basis_labels = scenario.basis_labels;
  rep.scenario.ample = scenario.ample;
  rep.scenario.family_d_entries = scenario.family_d.entries;
  rep.scenario.family_dp_entries = scenario.family_dp.entries;

  rep.nef_x = Chamber{"X", rep.side_d.nef_edge, rep.side_dp.nef_edge,
                      rep.side_d.nef_edge_flags, rep.side_dp.nef_edge_flags};
  if (rep.nef_x.left == rep.nef_x.right)
    throw internal_error("the two nef edges coincide");

  rep.mov = cone_hull_rays({rep.side_d.mov_edge, rep.side_dp.mov_edge});
  if (rep.mov.kind() != ConeKind::Wedge && rep.mov.kind() != ConeKind::Ray)
    throw internal_error("movable cone is not strictly convex");

  rep.eff.exact = rep.side_d.eff_edge.known && rep.side_dp.eff_edge.known;
  rep.eff.cone = cone_hull_rays({rep.side_d.eff_edge.ray, rep.side_dp.eff_edge.ray});
  if (!rep.eff.exact) {
    std::string sides;
    if (!rep.side_d.eff_edge.known) sides = "D-side";
    if (!rep.side_dp.eff_edge.known) sides += std::string(sides.empty() ? "" : ", ") + "D'-side";
    rep.eff.notes = sides + " effective edge known only as a bound "
                    "(birational contraction with prefix length >= 2 and no contracted class given)";
  }

  MdsCertificate cert;
  cert.edges_semiample = true;
  for (const Chamber& c : rep.chambers_in_order())
    cert.edges_semiample = cert.edges_semiample && c.left_flags.semiample &&
                           c.right_flags.semiample;
  cert.chambers_tile_mov = detail::verify_tiling(rep);
  if (!cert.chambers_tile_mov)
    throw internal_error("chambers do not tile the movable cone (inconsistent dimension data)");
  rep.mds_certificate = cert;

  // Containment sanity: Nef(X) inside Mov inside Eff (when Eff is exact).
  for (const Ray& r : {rep.nef_x.left, rep.nef_x.right})
    if (!contains_ray(rep.mov, r))
      throw internal_error("nef cone escapes the movable cone");
  if (rep.eff.exact)
    for (const Ray& r : {rep.side_d.mov_edge, rep.side_dp.mov_edge})
      if (!contains_ray(rep.eff.cone, r))
        throw internal_error("movable cone escapes the effective cone");

  return rep;
}

}  // namespace mcd
