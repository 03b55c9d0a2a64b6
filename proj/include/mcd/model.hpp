#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcd/cone2.hpp"
#include "mcd/errors.hpp"

namespace mcd {

using json = nlohmann::json;

struct DivisorEntry {
  std::string label;
  ClassVec cls;

  friend bool operator==(const DivisorEntry&, const DivisorEntry&) = default;
};

enum class DimMode { ExplicitTable, GenericCI };

/// Intersection-dimension oracle data. stage0[j] = dim of the first j
/// divisors' common intersection (dim of the empty set is -1); index 0 is
/// the whole space. In explicit mode, `stages` may pin tables for the
/// modification stages; otherwise stage >= 1 tables are synthesized with
/// the generic complete-intersection profile dim X - j.
struct PrefixDimSpec {
  DimMode mode = DimMode::GenericCI;
  std::vector<int> stage0;
  std::map<int, std::vector<int>> stages;

  friend bool operator==(const PrefixDimSpec&, const PrefixDimSpec&) = default;
};

struct Family {
  std::vector<DivisorEntry> entries;
  PrefixDimSpec prefix_dims;
  std::optional<ClassVec> contracted_class;
  bool irreducible_first = true;

  std::vector<ClassVec> classes() const {
    std::vector<ClassVec> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.cls);
    return out;
  }

  friend bool operator==(const Family&, const Family&) = default;
};

struct Scenario {
  std::string name;
  int dim_x = 0;
  std::array<std::string, 2> basis_labels{"e1", "e2"};
  ClassVec ample;
  Family family_d;
  Family family_dp;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One stage of the modification chain. Classes never change across stages
/// (the modifications are isomorphisms in codimension one); only the chain
/// length, ample, and dimension table move.
enum class DimsSource { Stage0Table, ExplicitStage, Synthesized };

inline const char* dims_source_name(DimsSource s) {
  switch (s) {
    case DimsSource::Stage0Table: return "stage0-table";
    case DimsSource::ExplicitStage: return "explicit-table";
    case DimsSource::Synthesized: return "generic-synthesis";
  }
  return "?";
}

struct StageState {
  int stage_index = 0;
  std::string side_tag = "X";  // "X" or "X'"
  std::vector<DivisorEntry> chain;
  std::vector<int> dims;  // dims[j] for j = 0..chain.size()
  DimsSource dims_source = DimsSource::Stage0Table;
  ClassVec stage_ample;
  int dim_x = 0;
  PrefixDimSpec dim_spec;  // carried along to resolve later stages

  std::string stage_name() const {
    if (stage_index == 0) return "X";
    return side_tag + "(" + std::to_string(stage_index) + ")";
  }
};

inline int prefix_dim(const StageState& stage, int j) {
  if (j < 0 || j > static_cast<int>(stage.chain.size()))
    throw std::out_of_range("prefix_dim: index " + std::to_string(j) +
                            " outside [0, " + std::to_string(stage.chain.size()) + "]");
  return stage.dims[static_cast<std::size_t>(j)];
}

/// Structural requirements on a dims table: starts at dim X, non-increasing,
/// values in [-1, dim X], and proper subsets (<= dim X - 1) past index 0.
inline void check_dims_table(const std::vector<int>& t, int dim_x,
                             std::size_t n_entries, const std::string& where) {
  if (t.size() != n_entries + 1)
    throw parse_error(where + ": table length " + std::to_string(t.size()) +
                      ", expected " + std::to_string(n_entries + 1));
  if (t[0] != dim_x)
    throw parse_error(where + ": table must start at dim X = " + std::to_string(dim_x));
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < -1 || t[j] > dim_x)
      throw parse_error(where + ": value " + std::to_string(t[j]) +
                        " at index " + std::to_string(j) + " outside [-1, dim X]");
    if (j >= 1 && t[j] > dim_x - 1)
      throw parse_error(where + ": nonzero effective divisors are proper subsets, "
                        "so values past index 0 must be <= dim X - 1");
    if (j >= 1 && t[j] > t[j - 1])
      throw parse_error(where + ": table must be non-increasing (increase at index " +
                        std::to_string(j) + ")");
  }
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string failure_summary() const {
    std::string out;
    for (const auto& c : checks)
      if (!c.pass) out += (out.empty() ? "" : "; ") + c.name + ": " + c.detail;
    return out;
  }
};

inline ValidationReport validate(const Scenario& s) {
  ValidationReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  add("dim-x", s.dim_x >= 2, s.dim_x >= 2 ? "" : "dim X must be >= 2");

  bool classes_ok = !s.ample.is_zero();
  std::string zero_where = s.ample.is_zero() ? "ample" : "";
  auto scan_family = [&](const Family& f, const std::string& tag) {
    for (const auto& e : f.entries)
      if (e.cls.is_zero() && zero_where.empty()) {
        classes_ok = false;
        zero_where = tag + " entry '" + e.label + "'";
      }
    if (f.contracted_class && f.contracted_class->is_zero() && zero_where.empty()) {
      classes_ok = false;
      zero_where = tag + " contracted_class";
    }
  };
  scan_family(s.family_d, "family_d");
  scan_family(s.family_dp, "family_dp");
  add("classes-nonzero", classes_ok,
      classes_ok ? "" : "zero class at " + zero_where);

  const auto r = s.family_d.entries.size();
  const auto rp = s.family_dp.entries.size();
  const bool sizes_ok = r >= 2 && rp >= 2 && static_cast<int>(r) <= s.dim_x &&
                        static_cast<int>(rp) <= s.dim_x;
  add("family-sizes", sizes_ok,
      sizes_ok ? ""
               : "family sizes must satisfy 2 <= r, r' <= dim X (got r=" +
                     std::to_string(r) + ", r'=" + std::to_string(rp) +
                     ", dim X=" + std::to_string(s.dim_x) + ")");

  auto table_check = [&](const Family& f, const std::string& tag) -> std::string {
    try {
      check_dims_table(f.prefix_dims.stage0, s.dim_x, f.entries.size(), tag + ".stage0");
      for (const auto& [idx, t] : f.prefix_dims.stages) {
        if (idx < 1) return tag + ".stages: stage index must be >= 1";
        if (t.empty() || t.back() != -1)
          return tag + ".stages[" + std::to_string(idx) + "]: must end at -1";
        check_dims_table(t, s.dim_x, t.size() - 1, tag + ".stages[" + std::to_string(idx) + "]");
      }
    } catch (const parse_error& e) {
      return e.what();
    }
    return "";
  };
  std::string tbl = table_check(s.family_d, "family_d");
  if (tbl.empty()) tbl = table_check(s.family_dp, "family_dp");
  add("prefix-tables", tbl.empty(), tbl);

  bool full_empty = tbl.empty() &&
                    !s.family_d.prefix_dims.stage0.empty() &&
                    !s.family_dp.prefix_dims.stage0.empty() &&
                    s.family_d.prefix_dims.stage0.back() == -1 &&
                    s.family_dp.prefix_dims.stage0.back() == -1;
  add("full-prefix-empty", full_empty,
      full_empty ? "" : "both families must have empty full intersection (-1 at the last index)");

  if (!classes_ok) {
    add("cone-disjoint", false, "skipped: zero class present");
    add("global-strict-convexity", false, "skipped: zero class present");
    add("ample-outside-a-family", false, "skipped: zero class present");
    add("orderable", false, "skipped: zero class present");
    return rep;
  }

  Cone2 hull_d = cone_hull(s.family_d.classes());
  Cone2 hull_dp = cone_hull(s.family_dp.classes());
  bool disjoint = meets_only_at_origin(hull_d, hull_dp);
  add("cone-disjoint", disjoint,
      disjoint ? "" : "the two family cones share a nonzero class");

  std::vector<ClassVec> all = s.family_d.classes();
  for (const auto& c : s.family_dp.classes()) all.push_back(c);
  all.push_back(s.ample);
  bool convex = strictly_convex(cone_hull(all));
  add("global-strict-convexity", convex,
      convex ? "" : "all classes plus the ample must span a strictly convex cone");

  const bool in_d = contains(hull_d, s.ample);
  const bool in_dp = contains(hull_dp, s.ample);
  add("ample-outside-a-family", !(in_d && in_dp),
      (in_d && in_dp) ? "ample lies in both family cones" : "");

  std::string order_fail;
  auto try_order = [&](const Family& f, bool fam_contains_ample, const std::string& tag) {
    if (fam_contains_ample) return;
    try {
      angular_sort_order(s.ample, f.classes());
    } catch (const std::exception& e) {
      if (order_fail.empty()) order_fail = tag + ": " + e.what();
    }
  };
  try_order(s.family_d, in_d, "family_d");
  try_order(s.family_dp, in_dp, "family_dp");
  add("orderable", order_fail.empty(), order_fail);

  return rep;
}

// ---------------------------------------------------------------------------
// JSON scenario schema

namespace detail {

inline void require_keys(const json& j, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional,
                         const std::string& where) {
  if (!j.is_object()) throw parse_error(where + ": expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) throw parse_error(where + ": missing key '" + k + "'");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                 std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known) throw parse_error(where + ": unknown key '" + k + "'");
  }
}

inline Int int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw parse_error(where + ": expected an integer");
  return Int(j.get<long long>());
}

inline ClassVec class_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array");
  if (j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    try {
      return ClassVec{parse_rat(j[0].get<std::string>()),
                      parse_rat(j[1].get<std::string>())};
    } catch (const parse_error& e) {
      throw parse_error(where + ": " + e.what());
    }
  }
  if (j.size() == 4) {
    Int xn = int_from_json(j[0], where);
    Int xd = int_from_json(j[1], where);
    Int yn = int_from_json(j[2], where);
    Int yd = int_from_json(j[3], where);
    if (xd == 0 || yd == 0) throw parse_error(where + ": zero denominator");
    return ClassVec{make_rat(xn, xd), make_rat(yn, yd)};
  }
  throw parse_error(where + ": class must be [\"p/q\",\"r/s\"] or [xn,xd,yn,yd]");
}

inline json class_to_json(const ClassVec& v) {
  return json::array({rat_str(v.x), rat_str(v.y)});
}

inline std::vector<int> dims_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw parse_error(where + ": expected integers");
    out.push_back(e.get<int>());
  }
  return out;
}

inline Family family_from_json(const json& j, const std::string& where) {
  require_keys(j, {"entries", "prefix_dims"},
               {"contracted_class", "irreducible_first"}, where);
  Family f;
  if (!j["entries"].is_array()) throw parse_error(where + ".entries: expected an array");
  std::size_t i = 0;
  for (const auto& ej : j["entries"]) {
    std::string ewhere = where + ".entries[" + std::to_string(i++) + "]";
    require_keys(ej, {"label", "class"}, {}, ewhere);
    if (!ej["label"].is_string()) throw parse_error(ewhere + ".label: expected a string");
    f.entries.push_back({ej["label"].get<std::string>(),
                         class_from_json(ej["class"], ewhere + ".class")});
  }
  const json& pd = j["prefix_dims"];
  std::string pwhere = where + ".prefix_dims";
  require_keys(pd, {"mode", "stage0"}, {"stages"}, pwhere);
  if (!pd["mode"].is_string()) throw parse_error(pwhere + ".mode: expected a string");
  std::string mode = pd["mode"].get<std::string>();
  if (mode == "explicit")
    f.prefix_dims.mode = DimMode::ExplicitTable;
  else if (mode == "generic_ci")
    f.prefix_dims.mode = DimMode::GenericCI;
  else
    throw parse_error(pwhere + ".mode: must be 'explicit' or 'generic_ci'");
  f.prefix_dims.stage0 = dims_from_json(pd["stage0"], pwhere + ".stage0");
  if (pd.contains("stages")) {
    if (f.prefix_dims.mode != DimMode::ExplicitTable)
      throw parse_error(pwhere + ": 'stages' is only allowed in explicit mode");
    if (!pd["stages"].is_object()) throw parse_error(pwhere + ".stages: expected an object");
    for (const auto& [key, val] : pd["stages"].items()) {
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw parse_error(pwhere + ".stages: key '" + key + "' is not a stage index");
      }
      if (idx < 1) throw parse_error(pwhere + ".stages: stage index must be >= 1");
      f.prefix_dims.stages[idx] = dims_from_json(val, pwhere + ".stages[" + key + "]");
    }
  }
  if (j.contains("contracted_class"))
    f.contracted_class = class_from_json(j["contracted_class"], where + ".contracted_class");
  if (j.contains("irreducible_first")) {
    if (!j["irreducible_first"].is_boolean())
      throw parse_error(where + ".irreducible_first: expected a boolean");
    f.irreducible_first = j["irreducible_first"].get<bool>();
  }
  return f;
}

inline json family_to_json(const Family& f) {
  json entries = json::array();
  for (const auto& e : f.entries)
    entries.push_back(json{{"label", e.label}, {"class", class_to_json(e.cls)}});
  json pd;
  pd["mode"] = f.prefix_dims.mode == DimMode::ExplicitTable ? "explicit" : "generic_ci";
  pd["stage0"] = f.prefix_dims.stage0;
  if (!f.prefix_dims.stages.empty()) {
    json stages = json::object();
    for (const auto& [idx, t] : f.prefix_dims.stages) stages[std::to_string(idx)] = t;
    pd["stages"] = stages;
  }
  json out;
  out["entries"] = entries;
  out["prefix_dims"] = pd;
  if (f.contracted_class) out["contracted_class"] = class_to_json(*f.contracted_class);
  out["irreducible_first"] = f.irreducible_first;
  return out;
}

}  // namespace detail

inline Scenario scenario_from_json(const json& j) {
  detail::require_keys(j, {"name", "dim_x", "basis_labels", "ample", "family_d", "family_dp"},
                       {}, "scenario");
  Scenario s;
  if (!j["name"].is_string()) throw parse_error("scenario.name: expected a string");
  s.name = j["name"].get<std::string>();
  if (!j["dim_x"].is_number_integer())
    throw parse_error("scenario.dim_x: expected an integer");
  s.dim_x = j["dim_x"].get<int>();
  const json& bl = j["basis_labels"];
  if (!bl.is_array() || bl.size() != 2 || !bl[0].is_string() || !bl[1].is_string())
    throw parse_error("scenario.basis_labels: expected two strings");
  s.basis_labels = {bl[0].get<std::string>(), bl[1].get<std::string>()};
  s.ample = detail::class_from_json(j["ample"], "scenario.ample");
  s.family_d = detail::family_from_json(j["family_d"], "scenario.family_d");
  s.family_dp = detail::family_from_json(j["family_dp"], "scenario.family_dp");

  // Structural table invariants are enforced at load time; the hypothesis
  // checks (sizes, emptiness, cone conditions) are validate()'s job.
  check_dims_table(s.family_d.prefix_dims.stage0, s.dim_x, s.family_d.entries.size(),
                   "scenario.family_d.prefix_dims.stage0");
  check_dims_table(s.family_dp.prefix_dims.stage0, s.dim_x, s.family_dp.entries.size(),
                   "scenario.family_dp.prefix_dims.stage0");
  for (const auto* fam : {&s.family_d, &s.family_dp})
    for (const auto& [idx, t] : fam->prefix_dims.stages)
      check_dims_table(t, s.dim_x, t.size() - 1,
                       "scenario prefix_dims.stages[" + std::to_string(idx) + "]");
  return s;
}

inline json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["dim_x"] = s.dim_x;
  j["basis_labels"] = json::array({s.basis_labels[0], s.basis_labels[1]});
  j["ample"] = detail::class_to_json(s.ample);
  j["family_d"] = detail::family_to_json(s.family_d);
  j["family_dp"] = detail::family_to_json(s.family_dp);
  return j;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open scenario file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("JSON parse error in " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write scenario file: " + path.string());
  out << scenario_to_json(s).dump(2) << "\n";
}

}  // namespace mcd
