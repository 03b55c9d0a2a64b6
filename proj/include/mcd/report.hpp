#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mcd/engine.hpp"
#include "mcd/families.hpp"
#include "mcd/model.hpp"

namespace mcd {

enum class RenderFormat { Text, Json, Svg, Ascii };

struct RenderSpec {
  RenderFormat format = RenderFormat::Text;
  bool include_trace = false;
  int canvas_width = 640;
  int canvas_height = 640;
};

// ---------------------------------------------------------------------------
// Basis-label display

/// Integer ray as a divisor expression, e.g. (3,-4) with basis (H,E) -> "3H-4E".
inline std::string format_ray(const Ray& r, const std::array<std::string, 2>& basis) {
  auto coeff = [](const Int& c, bool lead) -> std::string {
    std::string sgn = c < 0 ? "-" : (lead ? "" : "+");
    Int a = boost::multiprecision::abs(c);
    return a == 1 ? sgn : sgn + a.str();
  };
  std::string out;
  if (r.u != 0) out += coeff(r.u, true) + basis[0];
  if (r.v != 0) out += coeff(r.v, out.empty()) + basis[1];
  return out;
}

inline std::string format_class(const ClassVec& v, const std::array<std::string, 2>& basis) {
  auto coeff = [](const Rat& c, bool lead) -> std::string {
    std::string sgn = c < 0 ? "-" : (lead ? "" : "+");
    Rat a = abs(c);
    std::string mag = denominator(a) == 1 ? numerator(a).str()
                                          : numerator(a).str() + "/" + denominator(a).str();
    return a == 1 ? sgn : sgn + mag;
  };
  if (v.is_zero()) return "0";
  std::string out;
  if (v.x != 0) out += coeff(v.x, true) + basis[0];
  if (v.y != 0) out += coeff(v.y, out.empty()) + basis[1];
  return out;
}

namespace detail {

inline std::string flags_str(const EdgeFlags& f) {
  std::string out = f.semiample ? "semiample" : "not-semiample";
  out += f.big ? " big" : " not-big";
  if (f.birational_off_prefix) out += " birational-off-prefix";
  return out;
}

inline std::string case_list(const std::vector<CaseTag>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += std::string(i ? ", " : "") + case_name(v[i]);
  return out + "]";
}

inline std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    out += std::string(i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

/// Distinct rays drawn in a figure, with merged entry labels, sorted by
/// exact angle from the positive first basis direction.
struct LabeledRay {
  Ray ray;
  std::string label;
  bool mov_edge = false;
  bool eff_edge = false;
};

inline std::vector<LabeledRay> figure_rays(const DecompositionReport& rep) {
  std::vector<LabeledRay> out;
  auto find = [&](const Ray& r) -> LabeledRay* {
    for (auto& lr : out)
      if (lr.ray == r) return &lr;
    return nullptr;
  };
  auto add = [&](const Ray& r, const std::string& label) {
    if (LabeledRay* lr = find(r)) {
      if (!label.empty()) lr->label += (lr->label.empty() ? "" : ",") + label;
      return;
    }
    out.push_back({r, label, false, false});
  };
  for (const auto& e : rep.scenario.family_d_entries) add(normalize(e.cls), e.label);
  for (const auto& e : rep.scenario.family_dp_entries) add(normalize(e.cls), e.label);
  for (const Chamber& c : rep.chambers_in_order()) {
    add(c.left, "");
    add(c.right, "");
  }
  for (const Ray& r : {rep.side_d.mov_edge, rep.side_dp.mov_edge}) {
    add(r, "");
    find(r)->mov_edge = true;
  }
  for (const EffEdge& e : {rep.side_d.eff_edge, rep.side_dp.eff_edge}) {
    add(e.ray, "");
    find(e.ray)->eff_edge = true;
  }
  for (auto& lr : out)
    if (lr.label.empty()) lr.label = format_ray(lr.ray, rep.scenario.basis_labels);
  std::sort(out.begin(), out.end(),
            [](const LabeledRay& a, const LabeledRay& b) { return angle_less(a.ray, b.ray); });
  return out;
}

inline std::string provenance_line(const SideResult& side, const std::string& tag) {
  std::string out = "side " + tag + ":";
  if (side.stage_traces.empty()) return out + " (no engine stages)";
  for (const auto& st : side.stage_traces)
    out += " stage " + st.stage_name + " from " + dims_source_name(st.dims_source) + ";";
  out.pop_back();
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Text

inline std::string render_text(const DecompositionReport& rep, const RenderSpec& spec) {
  const auto& basis = rep.scenario.basis_labels;
  std::ostringstream os;
  os << "scenario: " << rep.scenario.name << "\n";
  os << "dim X = " << rep.scenario.dim_x << ", basis (" << basis[0] << ", " << basis[1] << ")";
  if (rep.scenario.ample) os << ", ample = " << format_class(*rep.scenario.ample, basis);
  os << "\n\n";

  auto chambers = rep.chambers_in_order();
  os << "chambers (" << chambers.size() << "):\n";
  for (const Chamber& c : chambers) {
    os << "  Nef(" << c.stage_name << ") = Cone(" << format_ray(c.left, basis) << ", "
       << format_ray(c.right, basis) << ")  [left: " << detail::flags_str(c.left_flags)
       << " | right: " << detail::flags_str(c.right_flags) << "]\n";
  }
  os << "\n";
  os << "Mov(X) = Cone(" << format_ray(rep.side_d.mov_edge, basis) << ", "
     << format_ray(rep.side_dp.mov_edge, basis) << ")\n";
  os << "Eff(X) " << (rep.eff.exact ? "=" : ">=") << " Cone("
     << format_ray(rep.side_d.eff_edge.ray, basis) << ", "
     << format_ray(rep.side_dp.eff_edge.ray, basis) << ")";
  if (!rep.eff.exact) os << "  [" << rep.eff.notes << "]";
  os << "\n";
  os << "MDS certificate: " << (rep.mds_certificate.ok() ? "true" : "false")
     << " (chamber edges semiample: " << (rep.mds_certificate.edges_semiample ? "true" : "false")
     << ", chambers tile Mov: " << (rep.mds_certificate.chambers_tile_mov ? "true" : "false")
     << ")\n\n";

  auto side_line = [&](const SideResult& s, const std::string& tag) {
    os << "side " << tag << ": k-sequence " << detail::int_list(s.k_sequence) << ", cases "
       << detail::case_list(s.case_trace) << ", mov edge " << format_ray(s.mov_edge, basis)
       << ", eff edge " << (s.eff_edge.known ? "" : "at-or-beyond ")
       << format_ray(s.eff_edge.ray, basis);
    if (s.used_separating_ample)
      os << " (ran with separating ample " << format_class(s.ample_used, basis) << ")";
    if (!s.note.empty()) os << " [" << s.note << "]";
    os << "\n";
  };
  side_line(rep.side_d, "D ");
  side_line(rep.side_dp, "D'");
  os << "dims provenance: " << detail::provenance_line(rep.side_d, "D") << "; "
     << detail::provenance_line(rep.side_dp, "D'") << "\n";

  if (spec.include_trace) {
    os << "\ntrace:\n";
    auto dump_side = [&](const SideResult& s, const std::string& tag) {
      os << "  side " << tag << ":\n";
      for (const auto& st : s.stage_traces) {
        os << "    stage " << st.stage_name << ": ample = "
           << format_class(st.stage_ample, basis) << ", chain [";
        for (std::size_t i = 0; i < st.chain.size(); ++i)
          os << (i ? ", " : "") << st.chain[i].label << "="
             << format_ray(normalize(st.chain[i].cls), basis);
        os << "], dims " << detail::int_list(st.dims) << " ("
           << dims_source_name(st.dims_source) << "), k=" << st.cert.k << ", case "
           << case_name(st.case_tag) << ", cond3_dim=" << st.cert.cond3_dim
           << ", cond4_bound=" << st.cert.cond4_bound;
        if (st.chamber_name) os << ", emits Nef(" << *st.chamber_name << ")";
        os << "\n";
      }
    };
    dump_side(rep.side_d, "D");
    dump_side(rep.side_dp, "D'");
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline json ray_json(const Ray& r) { return json::array({int_str(r.u), int_str(r.v)}); }

inline json flags_json(const EdgeFlags& f) {
  return json{{"semiample", f.semiample},
              {"big", f.big},
              {"birational_off_prefix", f.birational_off_prefix}};
}

inline json chamber_json(const Chamber& c) {
  return json{{"stage", c.stage_name},
              {"left", ray_json(c.left)},
              {"right", ray_json(c.right)},
              {"left_flags", flags_json(c.left_flags)},
              {"right_flags", flags_json(c.right_flags)}};
}

inline json cone_json(const Cone2& c) {
  json gens = json::array();
  for (const Ray& r : c.boundary_rays()) gens.push_back(ray_json(r));
  return json{{"kind", cone_kind_name(c.kind())}, {"generators", gens}};
}

inline json eff_edge_json(const EffEdge& e) {
  return json{{"known", e.known}, {"ray", ray_json(e.ray)}};
}

inline json entries_json(const std::vector<DivisorEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back(json{{"label", e.label}, {"class", class_to_json(e.cls)}});
  return out;
}

inline json side_trace_json(const SideResult& s) {
  json stages = json::array();
  for (const auto& st : s.stage_traces) {
    json chain = json::array();
    for (const auto& e : st.chain)
      chain.push_back(json{{"label", e.label}, {"ray", ray_json(normalize(e.cls))}});
    stages.push_back(json{{"index", st.stage_index},
                          {"name", st.stage_name},
                          {"ample", class_to_json(st.stage_ample)},
                          {"chain", chain},
                          {"dims", st.dims},
                          {"dims_source", dims_source_name(st.dims_source)},
                          {"k", st.cert.k},
                          {"cond2_ok", st.cert.cond2_ok},
                          {"cond3_dim", st.cert.cond3_dim},
                          {"cond4_bound", st.cert.cond4_bound},
                          {"semiample_reason", st.cert.semiample_reason},
                          {"case", case_name(st.case_tag)},
                          {"chamber", st.chamber_name ? json(*st.chamber_name) : json(nullptr)}});
  }
  json cases = json::array();
  for (CaseTag t : s.case_trace) cases.push_back(case_name(t));
  return json{{"ample_used", class_to_json(s.ample_used)},
              {"separating_ample", s.used_separating_ample},
              {"k_sequence", s.k_sequence},
              {"case_trace", cases},
              {"mov_edge", ray_json(s.mov_edge)},
              {"eff_edge", eff_edge_json(s.eff_edge)},
              {"note", s.note},
              {"stages", stages}};
}

}  // namespace detail

inline json report_to_json(const DecompositionReport& rep) {
  json chambers = json::array();
  for (const Chamber& c : rep.chambers_in_order()) chambers.push_back(detail::chamber_json(c));
  json scenario{{"name", rep.scenario.name},
                {"dim_x", rep.scenario.dim_x},
                {"basis_labels", json::array({rep.scenario.basis_labels[0],
                                              rep.scenario.basis_labels[1]})},
                {"ample", rep.scenario.ample ? detail::class_to_json(*rep.scenario.ample)
                                             : json(nullptr)},
                {"family_d", json{{"entries", detail::entries_json(rep.scenario.family_d_entries)}}},
                {"family_dp", json{{"entries", detail::entries_json(rep.scenario.family_dp_entries)}}}};
  return json{
      {"scenario", scenario},
      {"nef_x", detail::chamber_json(rep.nef_x)},
      {"chambers", chambers},
      {"mov", json{{"cone", detail::cone_json(rep.mov)},
                   {"edge_d", detail::ray_json(rep.side_d.mov_edge)},
                   {"edge_dp", detail::ray_json(rep.side_dp.mov_edge)}}},
      {"eff", json{{"exact", rep.eff.exact},
                   {"cone", detail::cone_json(rep.eff.cone)},
                   {"edge_d", detail::eff_edge_json(rep.side_d.eff_edge)},
                   {"edge_dp", detail::eff_edge_json(rep.side_dp.eff_edge)},
                   {"notes", rep.eff.notes}}},
      {"mds_certificate", json{{"ok", rep.mds_certificate.ok()},
                               {"edges_semiample", rep.mds_certificate.edges_semiample},
                               {"chambers_tile_mov", rep.mds_certificate.chambers_tile_mov}}},
      {"trace", json{{"side_d", detail::side_trace_json(rep.side_d)},
                     {"side_dp", detail::side_trace_json(rep.side_dp)}}}};
}

inline std::string render_json(const DecompositionReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::pair<double, double> unit_dir(const Ray& r) {
  double u = r.u.convert_to<double>();
  double v = r.v.convert_to<double>();
  double len = std::sqrt(u * u + v * v);
  return {u / len, v / len};
}

}  // namespace detail

inline std::string render_svg(const DecompositionReport& rep, const RenderSpec& spec) {
  if (spec.canvas_width <= 0 || spec.canvas_height <= 0)
    throw std::invalid_argument("render: canvas dimensions must be positive");
  const double w = spec.canvas_width;
  const double h = spec.canvas_height;
  const double cx = w / 2;
  const double cy = h / 2;
  const double radius = 0.40 * std::min(w, h);
  const auto& basis = rep.scenario.basis_labels;
  auto rays = detail::figure_rays(rep);

  auto tip = [&](const Ray& r, double scale) {
    auto [ux, uy] = detail::unit_dir(r);
    return std::pair<double, double>{cx + scale * radius * ux, cy - scale * radius * uy};
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.canvas_width
     << "\" height=\"" << spec.canvas_height << "\" viewBox=\"0 0 " << spec.canvas_width
     << " " << spec.canvas_height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Chamber wedges, shaded alternately.
  auto chambers = rep.chambers_in_order();
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    auto [x1, y1] = tip(chambers[i].left, 0.92);
    auto [x2, y2] = tip(chambers[i].right, 0.92);
    const char* fill = i % 2 == 0 ? "#dce7f5" : "#f5e9d4";
    os << "<path d=\"M " << detail::fixed2(cx) << " " << detail::fixed2(cy) << " L "
       << detail::fixed2(x1) << " " << detail::fixed2(y1) << " L " << detail::fixed2(x2)
       << " " << detail::fixed2(y2) << " Z\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
  }

  // Rays in angular order, movable/effective boundaries emphasized.
  for (const auto& lr : rays) {
    auto [x, y] = tip(lr.ray, 1.0);
    const char* color = lr.eff_edge ? "#b91c1c" : (lr.mov_edge ? "#1d4ed8" : "#1f2937");
    const char* width = (lr.eff_edge || lr.mov_edge) ? "3" : "1.5";
    os << "<line x1=\"" << detail::fixed2(cx) << "\" y1=\"" << detail::fixed2(cy)
       << "\" x2=\"" << detail::fixed2(x) << "\" y2=\"" << detail::fixed2(y)
       << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
  }
  for (const auto& lr : rays) {
    auto [x, y] = tip(lr.ray, 1.08);
    os << "<text x=\"" << detail::fixed2(x) << "\" y=\"" << detail::fixed2(y)
       << "\" font-size=\"13\" font-family=\"monospace\" text-anchor=\"middle\">"
       << lr.label << "</text>\n";
  }

  os << "<text x=\"10\" y=\"20\" font-size=\"14\" font-family=\"monospace\">"
     << rep.scenario.name << "</text>\n";
  double ly = h - 52;
  auto legend = [&](const std::string& line) {
    os << "<text x=\"10\" y=\"" << detail::fixed2(ly)
       << "\" font-size=\"12\" font-family=\"monospace\">" << line << "</text>\n";
    ly += 16;
  };
  legend("Nef(X) = Cone(" + format_ray(rep.nef_x.left, basis) + ", " +
         format_ray(rep.nef_x.right, basis) + ")");
  legend("Mov(X) = Cone(" + format_ray(rep.side_d.mov_edge, basis) + ", " +
         format_ray(rep.side_dp.mov_edge, basis) + ")");
  legend("Eff(X) " + std::string(rep.eff.exact ? "=" : ">=") + " Cone(" +
         format_ray(rep.side_d.eff_edge.ray, basis) + ", " +
         format_ray(rep.side_dp.eff_edge.ray, basis) + ")");
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// ASCII fan

inline std::string render_ascii(const DecompositionReport& rep) {
  const int width = 79;
  const int height = 33;
  const int cx = width / 2;
  const int cy = height / 2;
  const double rx = 34;
  const double ry = 14;
  std::vector<std::string> grid(height, std::string(width, ' '));
  grid[cy][cx] = 'o';

  auto rays = detail::figure_rays(rep);
  for (const auto& lr : rays) {
    auto [ux, uy] = detail::unit_dir(lr.ray);
    for (int s = 1; s <= 100; ++s) {
      int px = cx + static_cast<int>(std::lround(ux * rx * s / 100.0));
      int py = cy - static_cast<int>(std::lround(uy * ry * s / 100.0));
      if (px < 0 || px >= width || py < 0 || py >= height) break;
      grid[py][px] = '*';
    }
    int lx = cx + static_cast<int>(std::lround(ux * (rx + 2)));
    int ly = cy - static_cast<int>(std::lround(uy * (ry + 1)));
    if (ux >= 0) lx += 1;
    else lx -= static_cast<int>(lr.label.size());
    for (std::size_t i = 0; i < lr.label.size(); ++i) {
      int px = lx + static_cast<int>(i);
      if (px >= 0 && px < width && ly >= 0 && ly < height) grid[ly][px] = lr.label[i];
    }
  }

  const auto& basis = rep.scenario.basis_labels;
  std::ostringstream os;
  os << rep.scenario.name << "\n";
  for (const auto& row : grid) os << row << "\n";
  os << "Nef(X) = Cone(" << format_ray(rep.nef_x.left, basis) << ", "
     << format_ray(rep.nef_x.right, basis) << ")\n";
  os << "Mov(X) = Cone(" << format_ray(rep.side_d.mov_edge, basis) << ", "
     << format_ray(rep.side_dp.mov_edge, basis) << ")\n";
  os << "Eff(X) " << (rep.eff.exact ? "=" : ">=") << " Cone("
     << format_ray(rep.side_d.eff_edge.ray, basis) << ", "
     << format_ray(rep.side_dp.eff_edge.ray, basis) << ")\n";
  return os.str();
}

inline std::string render(const DecompositionReport& rep, const RenderSpec& spec) {
  switch (spec.format) {
    case RenderFormat::Text: return render_text(rep, spec);
    case RenderFormat::Json: return render_json(rep);
    case RenderFormat::Svg: return render_svg(rep, spec);
    case RenderFormat::Ascii: return render_ascii(rep);
  }
  throw std::invalid_argument("render: unknown format");
}

}  // namespace mcd
