#ifndef SU11_CLI_HPP
#define SU11_CLI_HPP

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/oracles.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/sl_geometry.hpp"
#include "su11/sr_geometry.hpp"
#include "su11/types.hpp"
#include "su11/verify.hpp"
#include "su11/version.hpp"

namespace su11::cli {

using json = nlohmann::ordered_json;

/** @brief Malformed command-line input; maps to exit code 2. */
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/** @brief Process exit codes. */
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_domain = 3, exit_numerical = 4 };

// ---------------------------------------------------------------------------
// literals and formatting

namespace detail {

inline std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// imaginary coefficient: "", "+", "-" stand for +-1
inline std::optional<double> parse_imag(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

}  // namespace detail

/**
 * @brief Parses a complex literal "a+bi", "a-bi", "a" or "bi" (locale-free).
 */
inline std::optional<cplx> parse_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    const auto re = detail::parse_real(s);
    if (!re) return std::nullopt;
    return cplx(*re, 0);
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = detail::parse_imag(body);
    if (!im) return std::nullopt;
    return cplx(0, *im);
  }
  const auto re = detail::parse_real(body.substr(0, split));
  const auto im = detail::parse_imag(body.substr(split));
  if (!re || !im) return std::nullopt;
  return cplx(*re, *im);
}

/** @brief parse_complex that throws UsageError naming the flag. */
inline cplx require_complex(const std::string& flag, const std::string& text) {
  const auto z = parse_complex(text);
  if (!z) throw UsageError("malformed complex literal for " + flag + ": '" + text + "' (expected a+bi)");
  return *z;
}

/** @brief %.17g with -0 printed as 0; "null" for non-finite values. */
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void emit(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

/** @brief Pretty JSON with 17-significant-digit floats, newline-terminated. */
inline std::string dump_json(const json& j) {
  std::string out;
  detail::emit(j, out, 0);
  out += '\n';
  return out;
}

/** @brief Float as JSON, null when non-finite. */
inline json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline json to_json(const cplx& z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }
inline json to_json(const CoverPoint& p) { return json{{"c", num(p.c)}, {"w", to_json(p.w)}}; }
inline json to_json(const MatrixPoint& g) { return json{{"z1", to_json(g.z1)}, {"z2", to_json(g.z2)}}; }
inline json to_json(const AlgebraVector& a) { return json{{"a1", num(a.a1)}, {"a2", num(a.a2)}, {"a3", num(a.a3)}}; }

inline json to_json(const ShootingConfig& c) {
  return json{{"grid_theta", c.grid_theta}, {"grid_beta", c.grid_beta}, {"t_max", num(c.t_max)},
              {"endpoint_tol", num(c.endpoint_tol)}, {"dedup_tol", num(c.dedup_tol)}, {"refine_tol", num(c.refine_tol)},
              {"a1_max", num(c.a1_max)}, {"threads", c.threads}};
}

inline json to_json(const OracleReport& r) {
  json sols = json::array();
  for (const auto& s : r.solutions)
    sols.push_back(json{{"a", to_json(s.a)}, {"length", num(s.length)}, {"endpoint_residual", num(s.endpoint_residual)}});
  return json{{"target", to_json(r.target)}, {"found_count", r.found_count}, {"min_length", num(r.min_length)},
              {"max_length", num(r.max_length)}, {"continuous_family", r.continuous_family}, {"solutions", sols}};
}

inline json to_json(const Adjudication& a) {
  json checks = json::array();
  for (const auto& c : a.checks)
    checks.push_back(json{{"point", to_json(c.point)}, {"paper_value", num(c.paper_value)}, {"oracle_value", num(c.oracle_value)},
                          {"delta", num(c.delta)}});
  return json{{"claim_id", a.claim_id}, {"claim", a.claim}, {"verdict", a.verdict}, {"checks", checks}};
}

inline json to_json(const verify::Check& c) {
  return json{{"criterion", c.criterion}, {"id", c.id},          {"pass", c.pass},    {"metric", num(c.metric)},
              {"relation", c.relation},   {"tolerance", num(c.tolerance)}, {"detail", c.detail}};
}

/** @brief Tolerances in effect: library constants and the oracle configuration. */
inline json tolerances(const ShootingConfig& cfg) {
  return json{{"root_xtol", num(root_xtol)},
              {"series_switch", num(series_switch)},
              {"phi_seam_tol", num(phi_seam_tol)},
              {"sr_region_tol", num(sr_region_tol)},
              {"cut_locus_tol", num(cut_locus_tol)},
              {"sl_member_tol", num(sl_member_tol)},
              {"sl_verify_tol", num(sl_verify_tol)},
              {"adjudication_tol", num(adjudication_tol)},
              {"oracle", to_json(cfg)}};
}

/** @brief OutputRecord {command, inputs, results, provenance}. */
inline json make_record(const std::string& command, json inputs, json results, const ShootingConfig& cfg) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"provenance", json{{"library_version", library_version}, {"tolerances", tolerances(cfg)}}}};
}

// ---------------------------------------------------------------------------
// enum names

inline const char* name(DistanceCase c) {
  switch (c) {
    case DistanceCase::VerticalA: return "VerticalA";
    case DistanceCase::HorizontalB: return "HorizontalB";
    case DistanceCase::BetaLow_c: return "BetaLow_c";
    case DistanceCase::Boundary_d: return "Boundary_d";
    case DistanceCase::BetaHigh_e: return "BetaHigh_e";
    case DistanceCase::BetaHigh_f: return "BetaHigh_f";
  }
  return "";
}

inline const char* name(GeodesicCount::Kind k) {
  switch (k) {
    case GeodesicCount::Kind::Finite: return "finite";
    case GeodesicCount::Kind::CountablyInfinite: return "countably-infinite";
    case GeodesicCount::Kind::UncountableGeomCountable: return "uncountable";
  }
  return "";
}

inline const char* name(SLClass c) {
  switch (c) {
    case SLClass::NotReachable: return "not-reachable";
    case SLClass::UniqueA: return "unique-a";
    case SLClass::TwoB: return "two-b";
    case SLClass::ThreeC: return "three-c";
    case SLClass::CountableXi: return "countable-xi";
  }
  return "";
}

inline const char* name(LorentzReach::Kind k) {
  switch (k) {
    case LorentzReach::Kind::None: return "none";
    case LorentzReach::Kind::Unique: return "unique";
    case LorentzReach::Kind::UncountableSimilar: return "uncountable-similar";
    case LorentzReach::Kind::UncountableDifferent: return "uncountable-different";
  }
  return "";
}

// ---------------------------------------------------------------------------
// commands

/** @brief Point flags as given on the command line. */
struct PointArgs {
  std::optional<double> c;
  std::optional<std::string> w, z1, z2;
};

namespace detail {

inline CoverPoint cover_point(const PointArgs& a, json& inputs) {
  if (!a.c || !a.w) throw UsageError("this command needs --c and --w");
  if (!std::isfinite(*a.c)) throw UsageError("--c must be finite");
  const CoverPoint p{*a.c, require_complex("--w", *a.w)};
  inputs["c"] = num(p.c);
  inputs["w"] = to_json(p.w);
  return p;
}

inline std::string note_for_lorentz(const CoverPoint& p, const LorentzDistance& d) {
  std::string note;
  if (d.paper_value && std::abs(*d.paper_value - d.value) > adjudication_tol)
    note = "docket item lorentz-distance: asin(sqrt(tan^2 c - |w|^2)) gives " + format_double(*d.paper_value) +
           "; value is the length of the unique timelike geodesic";
  if (p.c < 0 && p.c > -std::numbers::pi / 2 && lorentz_reachable(p).kind != LorentzReach::Kind::None) {
    if (!note.empty()) note += "; ";
    note += "docket item lorentz-reach-sign: the literal inequality |w| < tan c excludes this reachable point";
  }
  return note;
}

}  // namespace detail

/** @brief dist: SR distance on the cover or in SU(1,1), or Lorentzian distance. */
inline json cmd_dist(const std::string& space, const PointArgs& args, const ShootingConfig& cfg, bool with_oracle) {
  json inputs{{"space", space}};
  json res;
  if (space == "sr-cover" || space == "sr-matrix") {
    CoverPoint p;
    if (space == "sr-cover") {
      p = detail::cover_point(args, inputs);
    } else {
      if (!args.z1 || !args.z2) throw UsageError("--space sr-matrix needs --z1 and --z2");
      const MatrixPoint g{require_complex("--z1", *args.z1), require_complex("--z2", *args.z2)};
      inputs["z1"] = to_json(g.z1);
      inputs["z2"] = to_json(g.z2);
      const double det = std::norm(g.z1) - std::norm(g.z2);
      if (!(std::abs(det - 1) <= 1e-9 * (1 + std::norm(g.z1)))) throw NotInDomain("point is not in SU(1,1): |z1|^2 - |z2|^2 != 1");
      p = principal_lift(g);
      res["lift"] = to_json(p);
    }
    const auto d = sr_distance_cover(p);
    res["value"] = num(d.value);
    res["case"] = name(d.case_tag);
    res["beta"] = d.beta ? num(*d.beta) : json(nullptr);
    res["paper_value"] = d.paper_value ? num(*d.paper_value) : json(nullptr);
    res["note"] = d.case_tag == DistanceCase::VerticalA
                      ? json("docket item vertical-distance: |c| is not attained; value is the length sqrt(c^2 + 2 pi |c|) of "
                             "the shortest geodesic family")
                      : json(nullptr);
    if (with_oracle) res["oracle"] = to_json(shoot_sr(p, cfg));
  } else if (space == "lorentz") {
    const CoverPoint p = detail::cover_point(args, inputs);
    const auto d = lorentz_distance(p);
    res["value"] = num(d.value);
    res["lower_bound"] = d.lower_bound;
    res["paper_value"] = d.paper_value ? num(*d.paper_value) : json(nullptr);
    const std::string note = detail::note_for_lorentz(p, d);
    res["note"] = note.empty() ? json(nullptr) : json(note);
    if (with_oracle) res["oracle"] = to_json(shoot_lorentz(p, cfg));
  } else {
    throw UsageError("unknown --space '" + space + "' (sr-cover, sr-matrix, lorentz)");
  }
  inputs["oracle"] = with_oracle;
  return make_record("dist", inputs, res, cfg);
}

/** @brief count: number of SR geodesics from the identity. */
inline json cmd_count(const PointArgs& args, const ShootingConfig& cfg, bool with_oracle) {
  json inputs;
  const CoverPoint p = detail::cover_point(args, inputs);
  inputs["oracle"] = with_oracle;
  const auto n = count_geodesics_cover(p);
  json res{{"kind", name(n.kind)}, {"n", n.n}};
  if (with_oracle) res["oracle"] = to_json(shoot_sr(p, cfg));
  return make_record("count", inputs, res, cfg);
}

/** @brief classify-sl: sub-Lorentzian geodesic class, optionally solved. */
inline json cmd_classify_sl(const PointArgs& args, const ShootingConfig& cfg, bool solve) {
  json inputs;
  const CoverPoint p = detail::cover_point(args, inputs);
  inputs["solve"] = solve;
  const SLClass cls = sl_classify(p);
  json res{{"class", name(cls)}, {"expected_geodesics", expected_geodesics(cls)}};
  res["endpoint_params"] = nullptr;
  if (cls != SLClass::NotReachable && cls != SLClass::CountableXi) {
    const auto ep = sl_endpoint_params(p);
    res["endpoint_params"] = json{{"k", ep.k}, {"s", num(ep.s)}, {"x1", num(ep.x1)}, {"y2", num(ep.y2)}, {"sign_x2", ep.sign_x2}};
  }
  if (solve) {
    const auto sols = sl_solve_initial(p);
    json list = json::array();
    for (const auto& a : sols.initial) list.push_back(to_json(a));
    res["solutions"] = list;
    res["free_theta"] = sols.free_theta;
  }
  return make_record("classify-sl", inputs, res, cfg);
}

/** @brief future: timelike and causal future membership. */
inline json cmd_future(const PointArgs& args, const ShootingConfig& cfg) {
  json inputs;
  const CoverPoint p = detail::cover_point(args, inputs);
  const auto reach = lorentz_reachable(p);
  json res{{"lorentz", in_future_lorentz(p)},
           {"sublorentz", in_future_sublorentz(p)},
           {"causal_lorentz", causal_future_member(p, Causality::Lorentz)},
           {"causal_sublorentz", causal_future_member(p, Causality::SubLorentz)},
           {"lorentz_geodesics", name(reach.kind)},
           {"lorentz_witness", reach.witness ? to_json(*reach.witness) : json(nullptr)}};
  return make_record("future", inputs, res, cfg);
}

/** @brief CSV number: %.17g, -0 as 0. */
inline std::string csv_num(double v) {
  if (v == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/**
 * @brief trace: curve samples "t,c,re_w,im_w" at t = t_max i / (samples - 1).
 * kind sr and sl follow the normal geodesics, lorentz the one-parameter subgroup.
 */
inline std::string cmd_trace(const std::string& kind, const AlgebraVector& a, double t_max, int samples) {
  if (samples < 2) throw UsageError("--samples must be >= 2");
  if (!(t_max > 0) || !std::isfinite(t_max)) throw UsageError("--t-max must be positive");
  if (kind != "sr" && kind != "sl" && kind != "lorentz") throw UsageError("unknown --kind '" + kind + "' (sr, sl, lorentz)");
  std::string out = "t,c,re_w,im_w\n";
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? t_max : t_max * i / (samples - 1);
    const CoverPoint p = kind == "sr" ? sr_geodesic_cover(a, t) : kind == "sl" ? sl_geodesic_cover(a, t) : exp_cover(a * t);
    out += csv_num(t) + ',' + csv_num(p.c) + ',' + csv_num(p.w.real()) + ',' + csv_num(p.w.imag()) + '\n';
  }
  return out;
}

/** @brief Unit-speed SR covector with rate alpha <= 1 and horizontal angle theta. */
inline AlgebraVector unit_speed_sr(double alpha_value, double theta) {
  if (!(alpha_value <= 1)) throw UsageError("--alpha must be <= 1 for a unit-speed covector");
  return {std::cos(theta), std::sin(theta), std::sqrt(1 - alpha_value)};
}

/**
 * @brief locus: conjugate-even columns "abs_w,c_1..c_J"; future boundaries
 * "s,c_re_axis,c_im_axis" with w = s and w = i s, s in [0, w_max].
 */
inline std::string cmd_locus(const std::string& kind, long long j, double w_max, int samples) {
  if (samples < 2) throw UsageError("--samples must be >= 2");
  if (!(w_max > 0) || !std::isfinite(w_max)) throw UsageError("--w-max must be positive");
  std::string out;
  auto s_at = [&](int i) { return i + 1 == samples ? w_max : w_max * i / (samples - 1); };
  if (kind == "conjugate-even") {
    if (j < 1) throw UsageError("--j must be >= 1");
    out = "abs_w";
    for (long long k = 1; k <= j; ++k) out += ",c_" + std::to_string(k);
    out += '\n';
    for (int i = 0; i < samples; ++i) {
      const double W = s_at(i);
      out += csv_num(W);
      for (long long k = 1; k <= j; ++k) out += ',' + csv_num(conjugate_locus_c(W, k));
      out += '\n';
    }
  } else if (kind == "future-boundary-lorentz" || kind == "future-boundary-sl") {
    const bool sl = kind == "future-boundary-sl";
    auto boundary = [&](cplx w) { return sl ? su11::detail::sublorentz_threshold(w) : -std::atan(std::abs(w)); };
    out = "s,c_re_axis,c_im_axis\n";
    for (int i = 0; i < samples; ++i) {
      const double s = s_at(i);
      out += csv_num(s) + ',' + csv_num(boundary(cplx(s, 0))) + ',' + csv_num(boundary(cplx(0, s))) + '\n';
    }
  } else {
    throw UsageError("unknown --kind '" + kind + "' (conjugate-even, future-boundary-lorentz, future-boundary-sl)");
  }
  return out;
}

/** @brief verify: runs a suite; record plus pass flag. */
inline std::pair<json, bool> cmd_verify(const std::string& suite, const verify::VerifyOptions& opt) {
  const auto res = verify::run_suite(suite, opt);
  json checks = json::array();
  for (const auto& c : res.checks) checks.push_back(to_json(c));
  json adj = json::array();
  for (const auto& a : res.adjudications) adj.push_back(to_json(a));
  const bool ok = res.all_pass();
  json inputs{{"suite", suite}, {"seed", opt.seed}, {"quick", opt.quick}, {"timing", opt.timing}};
  json results{{"all_pass", ok}, {"checks", checks}, {"adjudications", adj}};
  return {make_record("verify", inputs, results, opt.shooting), ok};
}

/** @brief Inverse of to_json(Adjudication); null numbers become NaN. */
inline Adjudication adjudication_from_json(const json& a) {
  auto real = [](const json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); };
  Adjudication x{a.at("claim_id").get<std::string>(), a.at("claim").get<std::string>(), {}, a.at("verdict").get<std::string>()};
  for (const auto& c : a.at("checks")) {
    const auto& pt = c.at("point");
    x.checks.push_back({CoverPoint{real(pt.at("c")), cplx(real(pt.at("w").at("re")), real(pt.at("w").at("im")))}, real(c.at("paper_value")),
                        real(c.at("oracle_value")), real(c.at("delta"))});
  }
  return x;
}

/** @brief Markdown rendering of a verify record. */
inline std::string verify_markdown(const json& record) {
  const auto& r = record.at("results");
  auto real = [](const json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); };
  std::string s = "| criterion | check | result | metric | bound | detail |\n|---|---|---|---|---|---|\n";
  for (const auto& c : r.at("checks")) {
    const std::string metric = c.at("metric").is_null() ? "inf" : verify::detail::num(real(c.at("metric")));
    s += "| " + std::to_string(c.at("criterion").get<int>()) + " | " + c.at("id").get<std::string>() + " | " +
         (c.at("pass").get<bool>() ? "pass" : "FAIL") + " | " + metric + " | " + c.at("relation").get<std::string>() + " " +
         verify::detail::num(real(c.at("tolerance"))) + " | " + c.at("detail").get<std::string>() + " |\n";
  }
  if (!r.at("adjudications").empty()) {
    std::vector<Adjudication> adj;
    for (const auto& a : r.at("adjudications")) adj.push_back(adjudication_from_json(a));
    s += "\n" + verify::docket_markdown(adj);
  }
  return s;
}

/**
 * @brief Writes text to path, resolved against $SU11_OUTPUT_DIR when relative;
 * to stdout when path is empty.
 */
inline void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SU11_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + p.string());
  f << text;
}

}  // namespace su11::cli

#endif  // SU11_CLI_HPP
