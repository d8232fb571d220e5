#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "su11/cli.hpp"

namespace {

namespace cli = su11::cli;

void add_point_flags(CLI::App* sub, cli::PointArgs& p) {
  sub->add_option("--c", p.c, "Cover coordinate c");
  sub->add_option("--w", p.w, "Cover coordinate w as a+bi");
}

void add_oracle_flags(CLI::App* sub, su11::ShootingConfig& cfg) {
  sub->add_option("--grid-theta", cfg.grid_theta, "Oracle grid nodes on the direction axis")->capture_default_str();
  sub->add_option("--grid-beta", cfg.grid_beta, "Oracle grid nodes on the length axis")->capture_default_str();
  sub->add_option("--t-max", cfg.t_max, "Oracle length range")->capture_default_str();
  sub->add_option("--endpoint-tol", cfg.endpoint_tol, "Oracle endpoint residual tolerance")->capture_default_str();
  sub->add_option("--dedup-tol", cfg.dedup_tol, "Oracle parameter-space dedup tolerance")->capture_default_str();
  sub->add_option("--refine-tol", cfg.refine_tol, "Grid residual that triggers refinement")->capture_default_str();
  sub->add_option("--a1-max", cfg.a1_max, "Oracle a1 range for sub-Lorentzian targets")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Oracle scan threads, 0 for all cores")->capture_default_str();
}

std::string render(const cli::json& record) { return cli::dump_json(record); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-Riemannian and sub-Lorentzian geometry of SU(1,1) and its universal cover"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write to this file (relative paths resolve against $SU11_OUTPUT_DIR)");

  su11::ShootingConfig cfg;
  cli::PointArgs point;
  bool with_oracle = false;

  auto* dist = app.add_subcommand("dist", "Distance from the identity");
  std::string space;
  dist->add_option("--space", space, "sr-cover, sr-matrix or lorentz")->required();
  add_point_flags(dist, point);
  dist->add_option("--z1", point.z1, "Matrix entry z1 as a+bi");
  dist->add_option("--z2", point.z2, "Matrix entry z2 as a+bi");
  dist->add_flag("--oracle", with_oracle, "Also run the shooting oracle");
  add_oracle_flags(dist, cfg);

  auto* count = app.add_subcommand("count", "Number of SR geodesics from the identity");
  add_point_flags(count, point);
  count->add_flag("--oracle", with_oracle, "Also run the shooting oracle");
  add_oracle_flags(count, cfg);

  auto* classify = app.add_subcommand("classify-sl", "Sub-Lorentzian geodesic class");
  add_point_flags(classify, point);
  bool solve = false;
  classify->add_flag("--solve", solve, "Also list the initial covectors");

  auto* future = app.add_subcommand("future", "Timelike and causal future membership");
  add_point_flags(future, point);

  auto* trace = app.add_subcommand("trace", "CSV samples of a geodesic (t,c,re_w,im_w)");
  std::string trace_kind;
  su11::AlgebraVector a;
  std::optional<double> unit_alpha;
  double theta = 0, t_max = 1;
  int samples = 512;
  trace->add_option("--kind", trace_kind, "sr, sl or lorentz")->required();
  trace->add_option("--a1", a.a1, "Initial covector a1");
  trace->add_option("--a2", a.a2, "Initial covector a2");
  trace->add_option("--a3", a.a3, "Initial covector a3");
  auto* alpha_opt = trace->add_option("--alpha", unit_alpha, "Unit-speed SR covector with this rate (overrides --a1..--a3)");
  trace->add_option("--theta", theta, "Horizontal angle for --alpha")->needs(alpha_opt);
  trace->add_option("--t-max", t_max, "Final time")->capture_default_str();
  trace->add_option("--samples", samples, "Number of rows")->capture_default_str();

  auto* locus = app.add_subcommand("locus", "CSV samples of conjugate loci or future boundaries");
  std::string locus_kind;
  long long j = 1;
  double w_max = 3;
  int locus_samples = 301;
  locus->add_option("--kind", locus_kind, "conjugate-even, future-boundary-lorentz or future-boundary-sl")->required();
  locus->add_option("--j", j, "Number of conjugate components")->capture_default_str();
  locus->add_option("--w-max", w_max, "Largest |w|")->capture_default_str();
  locus->add_option("--samples", locus_samples, "Number of rows")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Invariant suites and the claim docket");
  std::string suite = "all", format = "json";
  su11::verify::VerifyOptions vopt;
  verify->add_option("--suite", suite, "algebra, sr, sl, adjudicate or all")->capture_default_str();
  verify->add_option("--seed", vopt.seed, "RNG seed")->capture_default_str();
  verify->add_flag("--quick", vopt.quick, "Reduced sample sizes");
  verify->add_flag("--timing", vopt.timing, "Add wall-clock budget checks");
  verify->add_option("--format", format, "json, markdown, or docket (README verdict table only)")->capture_default_str();
  add_oracle_flags(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    try {
      cfg.validate();
    } catch (const su11::DomainError& e) {
      throw cli::UsageError(e.what());
    }
    if (dist->parsed()) {
      cli::write_output(render(cli::cmd_dist(space, point, cfg, with_oracle)), output);
    } else if (count->parsed()) {
      cli::write_output(render(cli::cmd_count(point, cfg, with_oracle)), output);
    } else if (classify->parsed()) {
      cli::write_output(render(cli::cmd_classify_sl(point, cfg, solve)), output);
    } else if (future->parsed()) {
      cli::write_output(render(cli::cmd_future(point, cfg)), output);
    } else if (trace->parsed()) {
      if (unit_alpha) {
        if (trace_kind != "sr") throw cli::UsageError("--alpha applies to --kind sr");
        a = cli::unit_speed_sr(*unit_alpha, theta);
      }
      cli::write_output(cli::cmd_trace(trace_kind, a, t_max, samples), output);
    } else if (locus->parsed()) {
      cli::write_output(cli::cmd_locus(locus_kind, j, w_max, locus_samples), output);
    } else if (verify->parsed()) {
      if (format != "json" && format != "markdown" && format != "docket")
        throw cli::UsageError("--format must be json, markdown or docket");
      if (suite != "all" && suite != "algebra" && suite != "sr" && suite != "sl" && suite != "adjudicate")
        throw cli::UsageError("unknown --suite '" + suite + "'");
      vopt.shooting = cfg;
      const auto [record, ok] = cli::cmd_verify(suite, vopt);
      if (format == "docket") {
        std::vector<su11::Adjudication> adj;
        for (const auto& x : record.at("results").at("adjudications")) adj.push_back(cli::adjudication_from_json(x));
        cli::write_output(su11::verify::docket_markdown(adj), output);
      } else {
        cli::write_output(format == "json" ? render(record) : cli::verify_markdown(record), output);
      }
      return ok ? cli::exit_ok : cli::exit_check_failed;
    }
  } catch (const cli::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::exit_usage;
  } catch (const su11::NotInDomain& e) {
    std::fprintf(stderr, "not in domain: %s\n", e.what());
    return cli::exit_domain;
  } catch (const su11::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return cli::exit_domain;
  } catch (const su11::NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return cli::exit_numerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::exit_numerical;
  }
  return cli::exit_ok;
}
