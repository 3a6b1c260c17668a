// SPDX-License-Identifier: MIT
// Command-line harness: subcommands over the library with reproducible
// CSV and SVG outputs, a manifest beside every run, and stable exit
// codes (0 ok, 1 usage, 2 bad input or audit failure, 3 internal).
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "menukit/common.hpp"
#include "menukit/csvio.hpp"
#include "menukit/curve.hpp"
#include "menukit/dist.hpp"
#include "menukit/duality.hpp"
#include "menukit/lp.hpp"
#include "menukit/model.hpp"
#include "menukit/oracle.hpp"
#include "menukit/plapprox.hpp"
#include "menukit/revenue.hpp"
#include "menukit/rng.hpp"
#include "menukit/rounding.hpp"
#include "menukit/svgplot.hpp"

namespace menukit::cli {

namespace detail {

[[nodiscard]] inline std::string default_out_dir() {
  const char* env = std::getenv("MENUKIT_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : ".";
}

[[nodiscard]] inline std::string quote_arg(const std::string& a) {
  if (a.find_first_of(" \t'\"") == std::string::npos && !a.empty()) return a;
  std::string out = "'";
  for (char ch : a) {
    if (ch == '\'')
      out += "'\\''";
    else
      out += ch;
  }
  out += "'";
  return out;
}

// Shared output plumbing for one subcommand run: every file goes
// through an atomic write, and a manifest listing the canonical
// command, the audited instance constants, and the produced files is
// written last.
struct RunContext {
  std::string out_dir;
  std::string tag;
  std::vector<std::string> written;

  [[nodiscard]] std::string path(const std::string& basename) const {
    return out_dir + "/" + basename;
  }

  void write(const std::string& basename, const std::string& content) {
    std::filesystem::create_directories(out_dir);
    write_file_atomic(path(basename), content);
    written.push_back(basename);
    std::printf("wrote %s\n", path(basename).c_str());
  }

  void manifest(const std::string& subcommand,
                const std::vector<std::string>& args) {
    std::string command = subcommand;
    for (const std::string& a : args) command += " " + quote_arg(a);
    const InstanceConstants& k = instance_constants();
    std::vector<std::pair<std::string, std::string>> kv = {
        {"tool", "menukit"},
        {"subcommand", subcommand},
        {"command", command},
        {"constants_diag_intercept", format_num(k.diag_intercept, 17)},
        {"constants_strip_width", format_num(k.strip_width, 17)},
        {"constants_curvature_radius_max",
         format_num(k.curvature_radius_max, 17)},
        {"constants_density_floor", format_num(k.density_floor, 17)},
        {"constants_strip_halfwidth", format_num(k.strip_halfwidth, 17)},
    };
    for (const std::string& f : written) kv.emplace_back("output", f);
    std::filesystem::create_directories(out_dir);
    write_file_atomic(path(tag + ".manifest"), manifest_text(kv));
    std::printf("wrote %s\n", path(tag + ".manifest").c_str());
  }
};

[[nodiscard]] inline std::string bool_cell(bool b) { return b ? "1" : "0"; }

}  // namespace detail

// ==== subcommands ==========================================================

struct EvalCmd {
  std::string menu_path;
  std::string dist_spec;
  std::uint64_t mc_n = 200000;
  std::uint64_t seed = 1;
  detail::RunContext ctx;

  void run() {
    const Menu m = load_menu(menu_path);
    const ProductDistribution d = parse_dist_spec(dist_spec);
    const RevenueReport exact = revenue_exact(m, d);
    const McReport mc = revenue_mc(m, d, mc_n, seed);
    std::string csv = csv_row({"menu", "dist", "menu_size", "comm_bits",
                               "revenue_exact", "mc_estimate", "mc_stderr"});
    csv += csv_row({menu_path, dist_spec, std::to_string(menu_size(m)),
                    std::to_string(comm_complexity(menu_size(m))),
                    format_num(exact.revenue), format_num(mc.estimate),
                    format_num(mc.stderr_est)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + ".csv", csv);
    ctx.manifest("eval", {"--menu", menu_path, "--dist", dist_spec, "--mc",
                          std::to_string(mc_n), "--seed",
                          std::to_string(seed), "--out", ctx.out_dir,
                          "--tag", ctx.tag});
  }
};

struct RoundCmd {
  std::string menu_path;
  std::string dist_spec;
  double epsilon = 0.1;
  std::string mode = "additive";
  double cap = 100.0;
  bool prune = false;
  detail::RunContext ctx;

  void run() {
    const Menu before = load_menu(menu_path);
    const ProductDistribution d = parse_dist_spec(dist_spec);
    Menu after = [&] {
      if (mode == "additive") return nudge_round_additive(before, epsilon);
      if (mode == "full") return nudge_round_full(before, epsilon);
      if (mode == "multiplicative")
        return nudge_round_multiplicative(before, epsilon, cap);
      throw precondition_error("round: unknown mode '" + mode + "'");
    }();
    if (prune) after = boundary_prune(after).menu;

    const double rev_before = revenue_exact(before, d).revenue;
    const double rev_after = revenue_exact(after, d).revenue;
    // Additive-style guarantee for the nudge modes; the multiplicative
    // grid targets a 3-eps multiplicative loss instead.
    const double floor_rev = mode == "multiplicative"
                                 ? (1.0 - 3.0 * epsilon) * rev_before
                                 : (1.0 - epsilon) * rev_before - epsilon;
    std::string csv =
        csv_row({"epsilon", "mode", "size_before", "size_after",
                 "revenue_before", "revenue_after", "guarantee_slack"});
    csv += csv_row({format_num(epsilon), mode,
                    std::to_string(menu_size(before)),
                    std::to_string(menu_size(after)), format_num(rev_before),
                    format_num(rev_after), format_num(rev_after - floor_rev)});
    ctx.write(ctx.tag + "_menu.txt", format_menu(after));
    ctx.write(ctx.tag + ".csv", csv);
    std::vector<std::string> args = {"--menu", menu_path, "--dist",
                                     dist_spec, "--epsilon",
                                     format_num(epsilon, 17), "--mode", mode,
                                     "--cap", format_num(cap, 17)};
    if (prune) args.push_back("--prune");
    args.insert(args.end(), {"--out", ctx.out_dir, "--tag", ctx.tag});
    ctx.manifest("round", args);
  }
};

struct CertifyCmd {
  std::string menu_path;
  std::string kind = "exact";
  double delta = 0.0;
  int panels = 256;
  detail::RunContext ctx;

  void run() {
    const Menu m = load_menu(menu_path);
    const GapCertificate cert = [&] {
      if (kind == "coarse") {
        require(delta > 0.0, "certify: coarse kind needs --delta > 0");
        return certify_gap_coarse(m, delta);
      }
      if (kind == "exact") return certify_gap_exact(m, panels);
      throw precondition_error("certify: unknown kind '" + kind + "'");
    }();
    const double rev = revenue_exact(m, beta12_squared()).revenue;
    std::string csv = csv_row({"menu", "menu_size", "revenue", "kind",
                               "delta", "deviation", "z_term", "a_term",
                               "quad_error", "certified_gap"});
    csv += csv_row({menu_path, std::to_string(menu_size(m)),
                    format_num(rev), cert.kind, format_num(cert.delta),
                    format_num(cert.deviation), format_num(cert.z_term),
                    format_num(cert.a_term), format_num(cert.quad_error),
                    format_num(cert.certified_gap, 17)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + ".csv", csv);
    std::vector<std::string> args = {"--menu", menu_path, "--kind", kind};
    if (kind == "coarse")
      args.insert(args.end(), {"--delta", format_num(delta, 17)});
    else
      args.insert(args.end(), {"--panels", std::to_string(panels)});
    args.insert(args.end(), {"--out", ctx.out_dir, "--tag", ctx.tag});
    ctx.manifest("certify", args);
  }
};

struct PlapproxCmd {
  std::string deltas = "1e-4,1e-5,1e-6,1e-7,1e-8";
  std::size_t adversaries = 50;
  std::uint64_t seed = 1;
  detail::RunContext ctx;

  void run() {
    const InstanceConstants& k = instance_constants();
    std::vector<double> ds;
    std::string cur;
    for (char ch : deltas + ",") {
      if (ch != ',') {
        cur += ch;
        continue;
      }
      if (cur.empty()) continue;
      char* end = nullptr;
      const double v = std::strtod(cur.c_str(), &end);
      if (end == cur.c_str() || *end != '\0')
        throw parse_error("plapprox: bad delta '" + cur + "'");
      ds.push_back(v);
      cur.clear();
    }
    require(!ds.empty(), "plapprox: need at least one delta");

    std::string csv =
        csv_row({"delta", "budget", "greedy_segments",
                 "min_deviation_measure_over_adversaries"});
    for (std::size_t di = 0; di < ds.size(); ++di) {
      const double delta = ds[di];
      const double budget =
          k.strip_width / (8.0 * std::sqrt(k.curvature_radius_max * delta));
      const PiecewiseLinear greedy = greedy_pl_approx(delta);
      const std::size_t cap =
          std::max<std::size_t>(1, static_cast<std::size_t>(budget));

      double min_dev = deviation_measure(truncate_with_constant(greedy, 1),
                                         delta);
      for (std::size_t n = 2; n <= cap && n <= greedy.pieces.size(); ++n)
        min_dev = std::min(
            min_dev,
            deviation_measure(truncate_with_constant(greedy, n), delta));
      SplitMix64 rng = SplitMix64::substream(seed, di);
      const double scales[3] = {0.001, 0.01, 0.1};
      for (std::size_t i = 0; i < adversaries; ++i) {
        const PiecewiseLinear t = random_contour(rng, cap, scales[i % 3]);
        min_dev = std::min(min_dev, deviation_measure(t, delta));
      }
      csv += csv_row({format_num(delta), format_num(budget),
                      std::to_string(greedy.pieces.size()),
                      format_num(min_dev, 17)});
    }
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + ".csv", csv);
    ctx.manifest("plapprox",
                 {"--deltas", deltas, "--adversaries",
                  std::to_string(adversaries), "--seed",
                  std::to_string(seed), "--out", ctx.out_dir, "--tag",
                  ctx.tag});
  }
};

struct OptimizeCmd {
  std::string dist_spec;
  std::size_t cbudget = 4;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  std::string warm_path;
  detail::RunContext ctx;

  void run() {
    const ProductDistribution d = parse_dist_spec(dist_spec);
    std::vector<Menu> warm;
    if (!warm_path.empty()) warm.push_back(load_menu(warm_path));
    const Menu best = opt_menu_search(d, cbudget, restarts, seed, warm);
    const double rev = revenue_exact(best, d).revenue;
    const Baselines base = baselines(d);
    std::string csv = csv_row({"dist", "size_budget", "restarts", "seed",
                               "menu_size", "revenue", "srev", "brev"});
    csv += csv_row({dist_spec, std::to_string(cbudget),
                    std::to_string(restarts), std::to_string(seed),
                    std::to_string(menu_size(best)), format_num(rev),
                    format_num(base.srev), format_num(base.brev)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + "_menu.txt", format_menu(best));
    ctx.write(ctx.tag + ".csv", csv);
    std::vector<std::string> args = {
        "--dist", dist_spec, "--cbudget", std::to_string(cbudget),
        "--restarts", std::to_string(restarts), "--seed",
        std::to_string(seed)};
    if (!warm_path.empty()) args.insert(args.end(), {"--warm", warm_path});
    args.insert(args.end(), {"--out", ctx.out_dir, "--tag", ctx.tag});
    ctx.manifest("optimize", args);
  }
};

struct OracleCmd {
  std::string dist_spec;
  std::size_t n_grid = 12;
  detail::RunContext ctx;

  void run() {
    const ProductDistribution d = parse_dist_spec(dist_spec);
    const GridLpResult res = opt_grid_lp(d, n_grid);
    const GridMechanism& g = res.lp.mechanism;

    std::string mech = csv_row({"v1", "v2", "q1", "q2", "t"});
    for (std::size_t i = 0; i < g.types(); ++i)
      mech += csv_row({format_num(g.v1[i], 17), format_num(g.v2[i], 17),
                       format_num(g.q1[i], 17), format_num(g.q2[i], 17),
                       format_num(g.t[i], 17)});

    std::string csv = csv_row(
        {"dist", "n_grid", "types", "value", "step", "upper_bound",
         "cut_rounds", "cuts_final", "iterations", "max_bound_violation",
         "max_ir_violation", "max_ic_violation"});
    csv += csv_row(
        {dist_spec, std::to_string(n_grid), std::to_string(g.types()),
         format_num(res.lp.value, 17), format_num(res.step),
         format_num(res.upper_bound, 17), std::to_string(res.lp.cut_rounds),
         std::to_string(res.lp.cuts_final),
         std::to_string(res.lp.iterations),
         format_num(res.lp.audit.max_bound_violation),
         format_num(res.lp.audit.max_ir_violation),
         format_num(res.lp.audit.max_ic_violation)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + "_mechanism.csv", mech);
    ctx.write(ctx.tag + ".csv", csv);
    ctx.manifest("oracle", {"--dist", dist_spec, "--ngrid",
                            std::to_string(n_grid), "--out", ctx.out_dir,
                            "--tag", ctx.tag});
  }
};

struct HazardCmd {
  std::string dist_spec;
  int grid_n = 257;
  detail::RunContext ctx;

  void run() {
    const ProductDistribution d = parse_dist_spec(dist_spec);
    const HazardReport rep = hazard_check(d, grid_n);
    std::string csv = csv_row(
        {"dist", "grid_n", "satisfied", "min_value", "arg1", "arg2"});
    csv += csv_row({dist_spec, std::to_string(grid_n),
                    detail::bool_cell(rep.satisfied),
                    format_num(rep.min_value, 17), format_num(rep.arg1),
                    format_num(rep.arg2)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + ".csv", csv);
    ctx.manifest("hazard", {"--dist", dist_spec, "--grid",
                            std::to_string(grid_n), "--out", ctx.out_dir,
                            "--tag", ctx.tag});
  }
};

struct CurveCmd {
  std::string dist_spec;
  std::size_t cmax = 6;
  std::size_t restarts = 4;
  std::uint64_t seed = 7;
  std::size_t n_grid = 12;
  detail::RunContext ctx;

  void run() {
    const ProductDistribution d = parse_dist_spec(dist_spec);
    const CurveResult res = curve_sweep(d, cmax, restarts, seed, n_grid);
    std::string csv = csv_row(
        {"C", "best_revenue", "gap_vs_upper_bound", "cert_exact"});
    for (const CurveRow& row : res.rows)
      csv += csv_row({std::to_string(row.size_budget),
                      format_num(row.best_revenue, 17),
                      format_num(row.gap_vs_upper_bound, 17),
                      format_num(row.cert_exact, 17)});
    std::fputs(csv.c_str(), stdout);
    ctx.write(ctx.tag + ".csv", csv);
    ctx.write(ctx.tag + "_best_menu.txt", format_menu(res.rows.back().best));
    ctx.manifest("curve", {"--dist", dist_spec, "--cmax",
                           std::to_string(cmax), "--restarts",
                           std::to_string(restarts), "--seed",
                           std::to_string(seed), "--ngrid",
                           std::to_string(n_grid), "--out", ctx.out_dir,
                           "--tag", ctx.tag});
  }
};

struct PlotCmd {
  std::string csv_path;
  std::string x_col;
  std::string y_col;
  bool loglog = false;
  std::string title;
  detail::RunContext ctx;

  void run() {
    const CsvFile csv = parse_csv(read_file(csv_path));
    require(csv.header.size() >= 2, "plot: csv needs at least two columns");
    const std::string xc = x_col.empty() ? csv.header[0] : x_col;
    const std::string yc = y_col.empty() ? csv.header[1] : y_col;
    PlotOptions opt;
    opt.xlabel = xc;
    opt.ylabel = yc;
    opt.title = title;
    opt.loglog = loglog;
    const std::string svg =
        render_plot(csv.numeric_column(xc), csv.numeric_column(yc), opt);
    ctx.write(ctx.tag + ".svg", svg);
    std::vector<std::string> args = {"--csv", csv_path, "--x", xc, "--y",
                                     yc};
    if (loglog) args.push_back("--loglog");
    if (!title.empty()) args.insert(args.end(), {"--title", title});
    args.insert(args.end(), {"--out", ctx.out_dir, "--tag", ctx.tag});
    ctx.manifest("plot", args);
  }
};

// ==== selftest =============================================================

namespace detail {

struct SelfTest {
  int failures = 0;

  void check(bool ok, const std::string& name, const std::string& detail) {
    if (ok) {
      std::printf("ok   %s\n", name.c_str());
    } else {
      std::printf("FAIL %s: %s\n", name.c_str(), detail.c_str());
      ++failures;
    }
  }
};

}  // namespace detail

struct SelftestCmd {
  void run() {
    detail::SelfTest t;
    const InstanceConstants& k = instance_constants();
    t.check(std::abs(k.strip_width - 0.06187679) <= 1e-7 &&
                std::abs(k.curvature_radius_max - 3.2754) <= 1e-3 &&
                k.density_floor > 3.0 && k.density_floor < 4.0,
            "instance constants in their audited windows",
            "x'=" + format_num(k.strip_width, 17) +
                " r=" + format_num(k.curvature_radius_max, 17) +
                " d=" + format_num(k.density_floor, 17));

    {
      bool ok = true;
      std::string why;
      for (const double eps : {1e-12, 3e-13}) {
        const LowerBoundParams p = lower_bound_params(eps);
        const double lhs = (p.delta / 4.0) * (p.delta / 2.0) *
                           (k.strip_width / 2.0) * k.density_floor;
        if (std::abs(lhs - eps / 2.0) > 1e-12 * eps) {
          ok = false;
          why = "eps=" + format_num(eps) + " lhs=" + format_num(lhs, 17);
        }
      }
      const double c1 = lower_bound_params(1e-12).size_bound;
      const double c2 = lower_bound_params(1e-12 / 16.0).size_bound;
      if (std::abs(c2 - 2.0 * c1) > 1e-9 * c1) {
        ok = false;
        why = "size bound did not double: " + format_num(c2 / c1, 17);
      }
      t.check(ok, "shortfall parameter identities", why);
    }

    {
      const LpMechanismResult lp = opt_mechanism_lp(
          {0.5, 0.5, 1.0, 1.0}, {0.5, 1.0, 0.5, 1.0}, {0.25, 0.25, 0.25, 0.25});
      t.check(std::abs(lp.value - 1.125) <= 1e-9 &&
                  lp.audit.max_ic_violation <= 1e-8,
              "two-by-two grid lp optimum",
              "value=" + format_num(lp.value, 17));
    }

    {
      const MyersonResult my = myerson_price(Marginal::beta12());
      t.check(std::abs(my.price - 1.0 / 3.0) <= 1e-6 &&
                  std::abs(my.revenue - 4.0 / 27.0) <= 1e-9 &&
                  comm_complexity(2) == 1,
              "single-good posted price",
              "price=" + format_num(my.price, 17));
    }

    {
      const ProductDistribution d = uniform_squared();
      SplitMix64 rng(99);
      bool ok = true;
      std::string why;
      for (int i = 0; i < 3 && ok; ++i) {
        std::vector<MenuEntry> es;
        for (int j = 0; j < 4; ++j)
          es.push_back({rng.next_unit(), rng.next_unit(), rng.next_unit()});
        const Menu m(std::move(es));
        const double before = revenue_exact(m, d).revenue;
        const double after =
            revenue_exact(nudge_round_additive(m, 0.1), d).revenue;
        if (after < 0.9 * before - 0.1 - 1e-10) {
          ok = false;
          why = "before=" + format_num(before, 17) +
                " after=" + format_num(after, 17);
        }
      }
      t.check(ok, "price rounding guarantee", why);
    }

    {
      // A contour with few pieces (close at 1.6e-5) lands within the
      // much tighter 1e-6 budget and must stray on half the strip.
      const BudgetCheck bc =
          segment_budget_check(greedy_pl_approx(1.6e-5), 1e-6);
      t.check(bc.within_budget && bc.holds &&
                  bc.deviation >= 0.5 * k.strip_width,
              "segment budget deviation",
              "deviation=" + format_num(bc.deviation, 17));
    }

    {
      const ProductDistribution d = beta12_squared();
      const double p = 0.7;
      const double lhs = revenue_exact(Menu({{1.0, 1.0, p}}), d).revenue;
      const double rhs = p * bundle_tail_mass(d, p);
      t.check(std::abs(lhs - rhs) <= 1e-10, "bundle tail dual route",
              "exact=" + format_num(lhs, 17) +
                  " closed=" + format_num(rhs, 17));
    }

    {
      const GapCertificate exact = certify_gap_exact(Menu());
      const GapCertificate coarse = certify_gap_coarse(Menu(), 0.001);
      t.check(std::abs(exact.certified_gap - 1.0155898782150134e-2) <= 1e-6 &&
                  exact.certified_gap >= coarse.certified_gap,
              "empty menu certificate",
              "exact=" + format_num(exact.certified_gap, 17));
    }

    {
      const RevenueReport rep = revenue_exact(Menu(), beta12_squared());
      const RevenueReport repu = revenue_exact(Menu(), uniform_squared());
      t.check(std::abs(rep.null_mass - 1.0) <= 1e-12 &&
                  std::abs(repu.null_mass - 1.0) <= 1e-12,
              "unit mass normalization",
              "beta=" + format_num(rep.null_mass, 17));
    }

    if (t.failures > 0)
      throw internal_error("selftest: " + std::to_string(t.failures) +
                           " checks failed");
    std::printf("selftest: all checks passed\n");
  }
};

// ==== wiring ===============================================================

inline int run(int argc, char** argv) {
  CLI::App app{"menukit: menu mechanisms for two goods, exact revenue, "
               "certificates, and experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; command-line flags override");

  const auto add_common = [](CLI::App* sub, detail::RunContext& ctx,
                             const std::string& tag) {
    ctx.out_dir = detail::default_out_dir();
    ctx.tag = tag;
    sub->add_option("--out", ctx.out_dir,
                    "output directory (default $MENUKIT_OUT_DIR or .)");
    sub->add_option("--tag", ctx.tag, "basename prefix for outputs");
  };

  auto eval = std::make_shared<EvalCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "eval", "exact revenue of a menu with a Monte Carlo cross-check");
    sub->add_option("--menu", eval->menu_path, "menu file")->required();
    sub->add_option("--dist", eval->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--mc", eval->mc_n, "Monte Carlo sample count");
    sub->add_option("--seed", eval->seed, "sampling seed");
    add_common(sub, eval->ctx, "eval");
    sub->callback([eval] { eval->run(); });
  }

  auto round = std::make_shared<RoundCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "round", "nudge-and-round a menu onto a price grid");
    sub->add_option("--menu", round->menu_path, "menu file")->required();
    sub->add_option("--dist", round->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--epsilon", round->epsilon, "rounding parameter")
        ->required();
    sub->add_option("--mode", round->mode,
                    "additive | full | multiplicative");
    sub->add_option("--cap", round->cap,
                    "price cap for the multiplicative grid");
    sub->add_flag("--prune", round->prune,
                  "boundary-prune the rounded menu");
    add_common(sub, round->ctx, "round");
    sub->callback([round] { round->run(); });
  }

  auto certify = std::make_shared<CertifyCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "certify", "revenue-gap certificate for a menu under iid:beta12");
    sub->add_option("--menu", certify->menu_path, "menu file")->required();
    sub->add_option("--kind", certify->kind, "coarse | exact");
    sub->add_option("--delta", certify->delta,
                    "certificate halfwidth (coarse kind)");
    sub->add_option("--panels", certify->panels,
                    "quadrature panels (exact kind)");
    add_common(sub, certify->ctx, "certify");
    sub->callback([certify] { certify->run(); });
  }

  auto plapprox = std::make_shared<PlapproxCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "plapprox",
        "piecewise-linear budget sweep against adversarial contours");
    sub->add_option("--deltas", plapprox->deltas,
                    "comma-separated deviation halfwidths");
    sub->add_option("--adversaries", plapprox->adversaries,
                    "random contours per delta");
    sub->add_option("--seed", plapprox->seed, "adversary seed");
    add_common(sub, plapprox->ctx, "plapprox");
    sub->callback([plapprox] { plapprox->run(); });
  }

  auto optimize = std::make_shared<OptimizeCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "optimize", "local search for the best menu under a size budget");
    sub->add_option("--dist", optimize->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--cbudget", optimize->cbudget, "menu size budget");
    sub->add_option("--restarts", optimize->restarts, "random restarts");
    sub->add_option("--seed", optimize->seed, "restart seed");
    sub->add_option("--warm", optimize->warm_path, "warm-start menu file");
    add_common(sub, optimize->ctx, "optimize");
    sub->callback([optimize] { optimize->run(); });
  }

  auto oracle = std::make_shared<OracleCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "oracle", "optimal mechanism for the discretized type grid");
    sub->add_option("--dist", oracle->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--ngrid", oracle->n_grid, "grid points per good");
    add_common(sub, oracle->ctx, "oracle");
    sub->callback([oracle] { oracle->run(); });
  }

  auto hazard = std::make_shared<HazardCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "hazard", "check the density regularity condition");
    sub->add_option("--dist", hazard->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--grid", hazard->grid_n, "evaluation grid per axis");
    add_common(sub, hazard->ctx, "hazard");
    sub->callback([hazard] { hazard->run(); });
  }

  auto curve = std::make_shared<CurveCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "curve", "revenue gap versus menu-size budget");
    sub->add_option("--dist", curve->dist_spec, "distribution spec")
        ->required();
    sub->add_option("--cmax", curve->cmax, "largest size budget");
    sub->add_option("--restarts", curve->restarts, "search restarts");
    sub->add_option("--seed", curve->seed, "search seed");
    sub->add_option("--ngrid", curve->n_grid, "grid for the upper bound");
    add_common(sub, curve->ctx, "curve");
    sub->callback([curve] { curve->run(); });
  }

  auto selftest = std::make_shared<SelftestCmd>();
  {
    CLI::App* sub = app.add_subcommand(
        "selftest", "fast invariant suite; exit 0 iff all checks pass");
    sub->callback([selftest] { selftest->run(); });
  }

  auto plot = std::make_shared<PlotCmd>();
  {
    CLI::App* sub =
        app.add_subcommand("plot", "render a CSV as a single-panel SVG");
    sub->add_option("--csv", plot->csv_path, "input CSV file")->required();
    sub->add_option("--x", plot->x_col, "x column (default first)");
    sub->add_option("--y", plot->y_col, "y column (default second)");
    sub->add_flag("--loglog", plot->loglog, "log-log axes");
    sub->add_option("--title", plot->title, "plot title");
    add_common(sub, plot->ctx, "plot");
    sub->callback([plot] { plot->run(); });
  }

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const audit_error& e) {
    std::fprintf(stderr, "audit failure: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace menukit::cli
