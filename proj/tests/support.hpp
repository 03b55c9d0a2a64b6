#pragma once

// Shared helpers for the test suites: deterministic random fixtures and an
// independent floating-angle comparator used to cross-check the exact
// predicates away from degeneracy.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mcd/cone2.hpp"
#include "mcd/model.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline mcd::Rat rand_pos_rat(Rng& rng) {
  return mcd::make_rat(rand_int(rng, 1, 9), rand_int(rng, 1, 9));
}

inline mcd::ClassVec rand_class(Rng& rng) {
  for (;;) {
    mcd::ClassVec v{mcd::make_rat(rand_int(rng, -9, 9), rand_int(rng, 1, 9)),
                    mcd::make_rat(rand_int(rng, -9, 9), rand_int(rng, 1, 9))};
    if (!v.is_zero()) return v;
  }
}

inline mcd::ClassVec rot90(const mcd::ClassVec& v) { return {-v.y, v.x}; }

/// Random configuration with every member strictly on one angular side of
/// the ample (within 90 degrees), as positive combinations of the ample and
/// its rotation. This is the shape every sorted chain lives in.
struct OneSideConfig {
  mcd::ClassVec ample;
  std::vector<mcd::ClassVec> members;
};

inline OneSideConfig rand_one_side(Rng& rng, int count, bool allow_duplicates = true) {
  OneSideConfig cfg;
  cfg.ample = rand_class(rng);
  mcd::ClassVec u = rot90(cfg.ample);
  if (rand_int(rng, 0, 1) == 0) u = {-u.x, -u.y};  // either angular side
  std::vector<mcd::ClassVec> pool;
  int distinct = allow_duplicates ? rand_int(rng, 1, count) : count;
  for (int i = 0; i < distinct; ++i) {
    mcd::Rat alpha(rand_int(rng, 0, 5));
    mcd::Rat beta(rand_int(rng, 1, 5));
    pool.push_back(alpha * cfg.ample + beta * u);
  }
  for (int i = 0; i < count; ++i) {
    mcd::ClassVec pick = pool[static_cast<std::size_t>(rand_int(rng, 0, distinct - 1))];
    cfg.members.push_back(rand_pos_rat(rng) * pick);
  }
  return cfg;
}

inline std::vector<int> rand_dims_table(Rng& rng, int dim_x, int len) {
  std::vector<int> t(static_cast<std::size_t>(len) + 1);
  t[0] = dim_x;
  for (int j = 1; j < len; ++j) {
    int prev = t[static_cast<std::size_t>(j - 1)];
    int ceiling = j == 1 ? dim_x - 1 : prev;
    t[static_cast<std::size_t>(j)] = std::max(-1, ceiling - rand_int(rng, j == 1 ? 0 : 0, 2));
    if (t[static_cast<std::size_t>(j)] > prev) t[static_cast<std::size_t>(j)] = prev;
  }
  t[static_cast<std::size_t>(len)] = -1;
  return t;
}

/// Random sorted stage for the edge-search oracle suite: strictly convex
/// ray multiset of bounded size with a random monotone dimension table.
inline mcd::StageState rand_stage(Rng& rng) {
  int m = rand_int(rng, 1, 8);
  int dim_x = rand_int(rng, 2, 8);
  OneSideConfig cfg = rand_one_side(rng, m);
  auto order = mcd::angular_sort_order(cfg.ample, cfg.members);

  mcd::StageState stage;
  stage.stage_index = 0;
  stage.side_tag = "X";
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    stage.chain.push_back({"T" + std::to_string(pos + 1), cfg.members[order[pos]]});
  stage.dims = rand_dims_table(rng, dim_x, m);
  stage.dims_source = mcd::DimsSource::Stage0Table;
  stage.stage_ample = cfg.ample;
  stage.dim_x = dim_x;
  stage.dim_spec.mode = mcd::DimMode::GenericCI;
  stage.dim_spec.stage0 = stage.dims;
  return stage;
}

/// Random scenario that passes validation: the two families sit strictly on
/// opposite angular sides of the ample, with monotone tables ending empty.
inline mcd::Scenario rand_scenario(Rng& rng, int index) {
  mcd::Scenario s;
  s.name = "rand-" + std::to_string(index);
  s.dim_x = rand_int(rng, 3, 6);
  s.basis_labels = {"u", "w"};
  mcd::ClassVec a = rand_class(rng);
  s.ample = rand_pos_rat(rng) * a;
  mcd::ClassVec up = rot90(a);
  mcd::ClassVec down{-up.x, -up.y};

  auto make_family = [&](const mcd::ClassVec& side, int count, const std::string& prefix) {
    mcd::Family fam;
    std::vector<mcd::ClassVec> pool;
    int distinct = rand_int(rng, 1, count);
    for (int i = 0; i < distinct; ++i)
      pool.push_back(mcd::Rat(rand_int(rng, 0, 5)) * a + mcd::Rat(rand_int(rng, 1, 5)) * side);
    for (int i = 0; i < count; ++i) {
      mcd::ClassVec pick = pool[static_cast<std::size_t>(rand_int(rng, 0, distinct - 1))];
      fam.entries.push_back({prefix + std::to_string(i + 1), rand_pos_rat(rng) * pick});
    }
    fam.prefix_dims.mode = mcd::DimMode::GenericCI;
    fam.prefix_dims.stage0 = rand_dims_table(rng, s.dim_x, count);
    fam.irreducible_first = rand_int(rng, 0, 1) == 1;
    return fam;
  };
  s.family_d = make_family(up, rand_int(rng, 2, s.dim_x), "D");
  s.family_dp = make_family(down, rand_int(rng, 2, s.dim_x), "D'");
  return s;
}

// ---------------------------------------------------------------------------
// Floating-angle comparator (display-independent cross-check)

inline double to_double(const mcd::Rat& r) {
  return r.convert_to<double>();
}

inline double angle_of(const mcd::ClassVec& v) {
  return std::atan2(to_double(v.y), to_double(v.x));
}

inline double norm2(const mcd::ClassVec& v) {
  double x = to_double(v.x), y = to_double(v.y);
  return std::sqrt(x * x + y * y);
}

/// |sin of the angle| between two vectors; the degeneracy gauge.
inline double cross_margin(const mcd::ClassVec& a, const mcd::ClassVec& b) {
  return std::abs(to_double(mcd::cross(a, b))) / (norm2(a) * norm2(b));
}

/// Wraps an angle difference into (-pi, pi].
inline double wrap_angle(double d) {
  while (d > M_PI) d -= 2 * M_PI;
  while (d <= -M_PI) d += 2 * M_PI;
  return d;
}

/// D2 in Cone(D1, A) by angles, valid when D1 and A are non-collinear:
/// the hull of two non-collinear vectors is the shorter arc between them.
inline bool float_succeq(const mcd::ClassVec& A, const mcd::ClassVec& D1,
                         const mcd::ClassVec& D2) {
  double span = wrap_angle(angle_of(D1) - angle_of(A));
  double rel = wrap_angle(angle_of(D2) - angle_of(A));
  if (span >= 0) return rel >= -1e-12 && rel <= span + 1e-12;
  return rel <= 1e-12 && rel >= span - 1e-12;
}

}  // namespace testsupport
