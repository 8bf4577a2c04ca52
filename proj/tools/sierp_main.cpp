#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sierp/report.hpp"
#include "sierp/rng.hpp"

using nlohmann::json;
using namespace sierp;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitVerification = 4;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

LatticePoint parse_point(const std::string& text) {
  if (text == "origin") return LatticePoint{0, 0};
  return LatticePoint::parse(text);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

json enclosure_json(const Enclosure& e) {
  return json{{"lo", e.lo().to_string()}, {"hi", e.hi().to_string()}};
}

// --------------------------------------------------------------------------
// energy
// --------------------------------------------------------------------------

struct EnergyArgs {
  std::string builtin;
  std::string function_file;
  int n = 0;
  bool origin = false;
  std::string c = "1";
  std::string corners = "1,0,0";
  std::string out;
};

int cmd_energy(const EnergyArgs& args) {
  PHFunction f = [&] {
    if (!args.function_file.empty()) {
      std::ifstream in(args.function_file);
      if (!in)
        throw std::invalid_argument("cannot read " + args.function_file);
      json j;
      in >> j;
      return phfunction_from_json(j);
    }
    if (args.builtin == "phiK") {
      const CellAddress K = args.origin ? origin_cell(args.n, args.n + 2)
                                        : interior_cell(args.n);
      return cell_cutoff(K);
    }
    if (args.builtin == "const") {
      const Region cell = Region::single(CellAddress(AmbientWindow{0}, ""));
      return PHFunction::constant(cell, Rational::parse(args.c));
    }
    if (args.builtin == "harmonic") {
      const auto vals = parse_rational_list(args.corners);
      if (vals.size() != 3)
        throw std::invalid_argument("--corners needs three rationals");
      const Region cell = Region::single(CellAddress(AmbientWindow{0}, ""));
      const auto corners = cell_corners(cell.cells().front());
      std::map<LatticePoint, Rational> values{{corners[0], vals[0]},
                                              {corners[1], vals[1]},
                                              {corners[2], vals[2]}};
      return PHFunction::make_local(cell, 0, values);
    }
    throw std::invalid_argument("unknown builtin '" + args.builtin + "'");
  }();
  const EnergyValue e = dirichlet_energy(f, f.support());
  emit(args.out, dump(json{{"energy", e.value.to_string()},
                           {"stabilized_at", e.stabilized_at}}));
  return 0;
}

// --------------------------------------------------------------------------
// cutoff-cell / cutoff-ball
// --------------------------------------------------------------------------

struct CutoffCellArgs {
  int n = 0;
  bool origin = false;
  int index = 0;
  std::string out;
};

int cmd_cutoff_cell(const CutoffCellArgs& args) {
  const CellAddress K = args.origin ? origin_cell(args.n, args.n + 2)
                                    : interior_cell(args.n, args.index);
  const PHFunction phi = cell_cutoff(K);
  const EnergyValue e = dirichlet_energy(phi, phi.support());
  json j;
  j["cell"] = K.to_string();
  j["neighborhood_cells"] = phi.support().size();
  j["energy"] = e.value.to_string();
  j["phi"] = phfunction_to_json(phi);
  emit(args.out, dump(j));
  return 0;
}

struct CutoffBallArgs {
  std::string x0 = "origin";
  std::string r = "1/2";
  int window = 100;  // sentinel: derive from r
  std::string out;
};

int cmd_cutoff_ball(const CutoffBallArgs& args) {
  const LatticePoint x0 = parse_point(args.x0);
  const Rational r = Rational::parse(args.r);
  const int n = scale_from_radius(r);
  const AmbientWindow w{args.window == 100 ? n + 3 : args.window};
  const BallRegion ball = ball_cells(x0, r, n, w);
  json parts = json::array();
  for (const CellAddress& cell : ball.core.cells()) {
    const PHFunction phi = cell_cutoff(cell);
    parts.push_back(json{
        {"cell", cell.to_string()},
        {"energy", dirichlet_energy(phi, phi.support()).value.to_string()}});
  }
  json core = json::array();
  for (const CellAddress& cell : ball.core.cells())
    core.push_back(cell.to_string());
  json enlarged = json::array();
  for (const CellAddress& cell : ball.enlarged.cells())
    enlarged.push_back(cell.to_string());
  json j;
  j["n"] = ball.scale_level;
  j["base_cell"] = ball.base_cell.to_string();
  j["parts"] = std::move(parts);
  j["core"] = std::move(core);
  j["enlarged"] = std::move(enlarged);
  emit(args.out, dump(j));
  return 0;
}

// --------------------------------------------------------------------------
// estimate-cms
// --------------------------------------------------------------------------

struct EstimateArgs {
  std::string levels = "-1,0,1";
  int samples = 70;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_estimate_cms(const EstimateArgs& args) {
  const CmsEstimate est =
      estimate_cms(parse_int_list(args.levels), args.samples, args.seed);
  json per_level = json::object();
  for (const auto& [level, value] : est.per_level)
    per_level[std::to_string(level)] = value.to_string();
  json j;
  j["cms"] = est.value.to_string();
  j["cms_dec"] = est.value.to_decimal(8);
  j["per_level"] = std::move(per_level);
  j["samples_used"] = est.samples_used;
  j["samples_skipped"] = est.samples_skipped;
  emit(args.out, dump(j));
  return 0;
}

// --------------------------------------------------------------------------
// check-lemma22 / check-css
// --------------------------------------------------------------------------

Rational resolve_cms(const std::string& cms_arg, int n, std::uint64_t seed,
                     CmsEstimate* est_out) {
  if (!cms_arg.empty()) return Rational::parse(cms_arg);
  const CmsEstimate est = estimate_cms({n - 1, n, n + 1}, 70, seed);
  if (est_out) *est_out = est;
  return est.value;
}

json summarize(const std::vector<InequalityReport>& reports) {
  int passes = 0;
  const InequalityReport* worst = nullptr;
  for (const InequalityReport& rep : reports) {
    if (rep.pass) ++passes;
    if (!worst || rep.slack() < worst->slack()) worst = &rep;
  }
  json j;
  j["instances"] = reports.size();
  j["passes"] = passes;
  if (worst) {
    j["min_slack"] = worst->slack().to_string();
    j["min_slack_dec"] = worst->slack().to_decimal(8);
    j["min_slack_id"] = worst->id;
  }
  return j;
}

struct CheckLemmaArgs {
  int n = 0;
  int index = 0;
  std::string suite = "mixed";
  int count = 20;
  std::uint64_t seed = 0;
  int depth_offset = 6;
  std::string cms;
  std::string out;
};

int cmd_check_lemma(const CheckLemmaArgs& args) {
  const CellAddress K = interior_cell(args.n, args.index);
  const Rational cms = resolve_cms(args.cms, args.n, args.seed, nullptr);
  const auto reports =
      check_cell_suite(K, suite_kind_from_string(args.suite), args.count,
                       args.seed, cms, args.depth_offset);
  ReportFile report;
  report.config = json{{"command", "check-lemma22"},
                       {"cell", K.to_string()},
                       {"suite", args.suite},
                       {"count", args.count},
                       {"seed", args.seed},
                       {"depth_offset", args.depth_offset}};
  report.cms = cms;
  report.instances = reports;
  emit(args.out, dump(report_to_json(report)));
  if (!args.out.empty()) std::cout << dump(summarize(reports));
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(),
                  [](const InequalityReport& r) { return r.pass; });
  return all_pass ? 0 : kExitVerification;
}

struct CheckCssArgs {
  std::string x0;
  std::string r;
  int window = 100;  // sentinel
  std::string suite = "mixed";
  int count = 20;
  std::uint64_t seed = 0;
  int depth_offset = 6;
  bool allow_nondyadic = false;
  bool direct = false;
  std::string cms;
  std::string out;
  int n_lo = -3;
  int n_hi = 3;
};

int cmd_check_css(const CheckCssArgs& args) {
  ReportFile report;
  std::vector<InequalityReport> reports;

  if (args.x0.empty() != args.r.empty())
    throw CLI::ValidationError("check-css", "--x0 and --r must come together");

  if (!args.x0.empty()) {
    const LatticePoint x0 = parse_point(args.x0);
    const Rational r = Rational::parse(args.r);
    if (!dyadic_power(r, nullptr) && !args.allow_nondyadic)
      throw CLI::ValidationError(
          "check-css", "non-dyadic radius requires --allow-nondyadic");
    const int n = scale_from_radius(r);
    const AmbientWindow w{args.window == 100 ? n + 3 : args.window};
    const Rational cms = resolve_cms(args.cms, n, args.seed, nullptr);
    reports = check_css_suite(x0, r, w, suite_kind_from_string(args.suite),
                              args.count, args.seed, cms, args.depth_offset,
                              args.direct);
    report.cms = cms;
    report.config = json{{"command", "check-css"},
                         {"x0", x0.to_string()},
                         {"r", r.to_string()},
                         {"window", w.level},
                         {"suite", args.suite},
                         {"count", args.count},
                         {"seed", args.seed},
                         {"depth_offset", args.depth_offset}};
  } else {
    SweepOptions options;
    options.seed = args.seed;
    options.functions_per_instance = args.count;
    options.depth_offset = args.depth_offset;
    options.n_lo = args.n_lo;
    options.n_hi = args.n_hi;
    options.suite_kind = suite_kind_from_string(args.suite);
    const SweepOutcome outcome = run_css_sweep(options);
    reports = outcome.reports;
    report.cms = outcome.cms.value;
    report.config = json{{"command", "check-css"},
                         {"mode", "default-sweep"},
                         {"n_lo", args.n_lo},
                         {"n_hi", args.n_hi},
                         {"suite", args.suite},
                         {"count", args.count},
                         {"seed", args.seed},
                         {"depth_offset", args.depth_offset}};
  }

  report.instances = reports;
  emit(args.out, dump(report_to_json(report)));
  if (!args.out.empty()) std::cout << dump(summarize(reports));
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(),
                  [](const InequalityReport& r) { return r.pass; });
  return all_pass ? 0 : kExitVerification;
}

// --------------------------------------------------------------------------
// vd-probe
// --------------------------------------------------------------------------

struct VdArgs {
  std::string x0 = "origin";
  std::string radii = "1,2";
  int window = 6;
  std::string out;
};

int cmd_vd_probe(const VdArgs& args) {
  const auto rows = vd_probe(parse_point(args.x0),
                             parse_rational_list(args.radii),
                             AmbientWindow{args.window});
  json jrows = json::array();
  Rational max_ratio_hi(0);
  for (const VdRow& row : rows) {
    jrows.push_back(json{{"r", row.r.to_string()},
                         {"V_r", enclosure_json(row.volume_r)},
                         {"V_2r", enclosure_json(row.volume_2r)},
                         {"ratio", enclosure_json(row.ratio)}});
    max_ratio_hi = max(max_ratio_hi, row.ratio.hi());
  }
  json j;
  j["x0"] = parse_point(args.x0).to_string();
  j["rows"] = std::move(jrows);
  j["max_ratio_upper"] = max_ratio_hi.to_string();
  emit(args.out, dump(j));
  return 0;
}

// --------------------------------------------------------------------------
// sweep
// --------------------------------------------------------------------------

struct SweepArgs {
  std::string kind = "lemma22";
  int n_lo = -2;
  int n_hi = 2;
  int n = 0;
  std::string suite = "mixed";
  int count = 8;
  std::uint64_t seed = 0;
  int depth_offset = 6;
  std::string out;
  std::string report_path;
};

int cmd_sweep(const SweepArgs& args) {
  if (args.n_lo > args.n_hi)
    throw CLI::ValidationError("sweep", "--n-lo must be <= --n-hi");

  if (args.kind == "widths") {
    // Enclosure-width table for one instance across depths.
    const CellAddress K = interior_cell(args.n);
    const PHFunction phi = cell_cutoff(K);
    std::ostringstream csv;
    csv << "depth,lo,hi,width_dec,width_ratio_dec\n";
    Rational prev_width(0);
    for (int offset = 2; offset <= 8; ++offset) {
      const int depth = phi.definition_level() - offset;
      const Enclosure e =
          integral_f2_dgamma(phi, phi, phi.support(), depth);
      csv << depth << ',' << e.lo().to_string() << ',' << e.hi().to_string()
          << ',' << e.width().to_decimal(12) << ',';
      if (prev_width.is_zero())
        csv << "";
      else
        csv << (e.width() / prev_width).to_decimal(6);
      csv << '\n';
      prev_width = e.width();
    }
    emit(args.out, csv.str());
    return 0;
  }

  SweepOptions options;
  options.seed = args.seed;
  options.functions_per_instance = args.count;
  options.depth_offset = args.depth_offset;
  options.n_lo = args.n_lo;
  options.n_hi = args.n_hi;
  options.suite_kind = suite_kind_from_string(args.suite);

  SweepOutcome outcome;
  if (args.kind == "lemma22") {
    outcome = run_lemma22_sweep(options);
  } else if (args.kind == "css") {
    outcome = run_css_sweep(options);
  } else {
    throw CLI::ValidationError("sweep", "unknown kind '" + args.kind + "'");
  }

  emit(args.out, sweep_csv(outcome.reports));
  if (!args.report_path.empty()) {
    ReportFile report;
    report.config = json{{"command", "sweep"},
                         {"kind", args.kind},
                         {"n_lo", args.n_lo},
                         {"n_hi", args.n_hi},
                         {"suite", args.suite},
                         {"count", args.count},
                         {"seed", args.seed},
                         {"depth_offset", args.depth_offset}};
    report.cms = outcome.cms.value;
    report.instances = outcome.reports;
    emit(args.report_path, dump(report_to_json(report)));
  }
  return outcome.all_pass ? 0 : kExitVerification;
}

// --------------------------------------------------------------------------
// recheck
// --------------------------------------------------------------------------

int cmd_recheck(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  json j;
  in >> j;
  const RecheckResult result = recheck_report(j);
  for (const std::string& message : result.messages)
    std::cout << message << "\n";
  std::cout << "rechecked " << result.checked << " instance(s), "
            << result.inconsistent << " inconsistent, "
            << result.failed_verdicts << " failed verdict(s)\n";
  return result.all_pass() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic verifier for cutoff-Sobolev-type energy "
               "inequalities on the Sierpinski gasket"};
  app.require_subcommand(1);

  EnergyArgs energy_args;
  auto* energy = app.add_subcommand("energy", "Dirichlet energy of a function");
  energy->add_option("--builtin", energy_args.builtin,
                     "builtin function: phiK | const | harmonic");
  energy->add_option("--function", energy_args.function_file,
                     "PHFunction JSON file");
  energy->add_option("--n", energy_args.n, "cell level for phiK");
  energy->add_flag("--origin", energy_args.origin, "origin-anchored cell");
  energy->add_flag("--interior", [](std::int64_t) {},
                   "interior cell (default)");
  energy->add_option("--c", energy_args.c, "constant value");
  energy->add_option("--corners", energy_args.corners,
                     "corner values u1,u2,u3 for harmonic");
  energy->add_option("--out", energy_args.out, "output file");

  CutoffCellArgs cc_args;
  auto* cutoff_cell_cmd =
      app.add_subcommand("cutoff-cell", "construct a cell cutoff");
  cutoff_cell_cmd->add_option("--n", cc_args.n, "cell level");
  cutoff_cell_cmd->add_flag("--origin", cc_args.origin, "origin-anchored cell");
  cutoff_cell_cmd->add_option("--index", cc_args.index,
                              "interior cell variant (0..2)");
  cutoff_cell_cmd->add_option("--out", cc_args.out, "output file");

  CutoffBallArgs cb_args;
  auto* cutoff_ball_cmd =
      app.add_subcommand("cutoff-ball", "construct a ball cutoff");
  cutoff_ball_cmd->add_option("--x0", cb_args.x0, "center 'a,b' or 'origin'");
  cutoff_ball_cmd->add_option("--r", cb_args.r, "radius (rational)");
  cutoff_ball_cmd->add_option("--window", cb_args.window, "window level");
  cutoff_ball_cmd->add_option("--out", cb_args.out, "output file");

  EstimateArgs est_args;
  auto* estimate =
      app.add_subcommand("estimate-cms", "estimate the Morrey-Sobolev constant");
  estimate->add_option("--levels", est_args.levels, "comma-separated levels");
  estimate->add_option("--samples", est_args.samples, "samples per level");
  estimate->add_option("--seed", est_args.seed, "RNG seed")->required();
  estimate->add_option("--out", est_args.out, "output file");

  CheckLemmaArgs lemma_args;
  auto* check_lemma =
      app.add_subcommand("check-lemma22", "verify the cell cutoff inequality");
  check_lemma->add_option("--n", lemma_args.n, "cell level");
  check_lemma->add_option("--index", lemma_args.index, "interior cell variant");
  check_lemma->add_option("--suite", lemma_args.suite, "test-function suite");
  check_lemma->add_option("--count", lemma_args.count, "functions per instance");
  check_lemma->add_option("--seed", lemma_args.seed, "RNG seed")->required();
  check_lemma->add_option("--depth-offset", lemma_args.depth_offset,
                          "enclosure depth below the definition level");
  check_lemma->add_option("--cms", lemma_args.cms,
                          "Morrey-Sobolev constant override (num/den)");
  check_lemma->add_option("--out", lemma_args.out, "report file");

  CheckCssArgs css_args;
  auto* check_css_cmd = app.add_subcommand(
      "check-css", "verify the simplified cutoff Sobolev inequality");
  check_css_cmd->add_option("--x0", css_args.x0, "center 'a,b' or 'origin'");
  check_css_cmd->add_option("--r", css_args.r, "radius (rational)");
  check_css_cmd->add_option("--window", css_args.window, "window level");
  check_css_cmd->add_option("--suite", css_args.suite, "test-function suite");
  check_css_cmd->add_option("--count", css_args.count,
                            "functions per instance");
  check_css_cmd->add_option("--seed", css_args.seed, "RNG seed")->required();
  check_css_cmd->add_option("--depth-offset", css_args.depth_offset,
                            "enclosure depth below the definition level");
  check_css_cmd->add_flag("--allow-nondyadic", css_args.allow_nondyadic,
                          "accept non-dyadic radii (rounded conservatively)");
  check_css_cmd->add_flag("--direct", css_args.direct,
                          "attach the direct edge-sum diagnostic");
  check_css_cmd->add_option("--cms", css_args.cms,
                            "Morrey-Sobolev constant override");
  check_css_cmd->add_option("--n-lo", css_args.n_lo, "sweep: lowest level");
  check_css_cmd->add_option("--n-hi", css_args.n_hi, "sweep: highest level");
  check_css_cmd->add_option("--out", css_args.out, "report file");

  VdArgs vd_args;
  auto* vd = app.add_subcommand("vd-probe", "volume-doubling ratio probe");
  vd->add_option("--x0", vd_args.x0, "center");
  vd->add_option("--radii", vd_args.radii, "comma-separated dyadic radii");
  vd->add_option("--window", vd_args.window, "window level");
  vd->add_option("--out", vd_args.out, "output file");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over instances");
  sweep->add_option("--kind", sweep_args.kind, "lemma22 | css | widths");
  sweep->add_option("--n-lo", sweep_args.n_lo, "lowest level");
  sweep->add_option("--n-hi", sweep_args.n_hi, "highest level");
  sweep->add_option("--n", sweep_args.n, "instance level (widths)");
  sweep->add_option("--suite", sweep_args.suite, "test-function suite");
  sweep->add_option("--count", sweep_args.count, "functions per instance");
  sweep->add_option("--seed", sweep_args.seed, "RNG seed")->required();
  sweep->add_option("--depth-offset", sweep_args.depth_offset,
                    "enclosure depth below the definition level");
  sweep->add_option("--out", sweep_args.out, "CSV output file");
  sweep->add_option("--report", sweep_args.report_path,
                    "also write a JSON report");

  std::string recheck_path;
  auto* recheck = app.add_subcommand("recheck", "re-verify a report file");
  recheck->add_option("report", recheck_path, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*energy) return cmd_energy(energy_args);
    if (*cutoff_cell_cmd) return cmd_cutoff_cell(cc_args);
    if (*cutoff_ball_cmd) return cmd_cutoff_ball(cb_args);
    if (*estimate) return cmd_estimate_cms(est_args);
    if (*check_lemma) return cmd_check_lemma(lemma_args);
    if (*check_css_cmd) return cmd_check_css(css_args);
    if (*vd) return cmd_vd_probe(vd_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*recheck) return cmd_recheck(recheck_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const WindowTooSmallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const PointOutsideWindowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
