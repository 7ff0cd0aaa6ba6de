#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvops/extremal.hpp"
#include "curvops/generators.hpp"
#include "curvops/identities.hpp"
#include "curvops/minimizer.hpp"
#include "curvops/serialize.hpp"

namespace {

using curvops::fmt_double;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

/// "4,5,6", "4..12" or "7".
std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    const int lo = std::stoi(text.substr(0, range_pos));
    const int hi = std::stoi(text.substr(range_pos + 2));
    if (hi < lo) throw curvops::BadRange("empty dimension range");
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
    return dims;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) dims.push_back(std::stoi(item));
  }
  if (dims.empty()) throw curvops::BadRange("no dimensions given");
  return dims;
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw curvops::Error("cannot open output file " + *path);
    out << content;
  } else {
    std::cout << content;
  }
}

ordered_json report_header(const std::string& command, ordered_json config) {
  ordered_json j;
  j["tool"] = curvops::kToolName;
  j["version"] = curvops::kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

// ---------------------------------------------------------------------------

struct IdentitiesArgs {
  std::string dims = "4,5,6";
  int trials = 20;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string format = "json";
  std::optional<std::string> out;
  int jobs = 1;
};

int run_identities(const IdentitiesArgs& args) {
  curvops::SuiteConfig cfg;
  cfg.dims = parse_dims(args.dims);
  for (const int n : cfg.dims)
    if (n < 4) throw curvops::BadRange("identities: dimensions must be >= 4");
  if (args.trials < 1) throw curvops::BadParams("identities: trials must be >= 1");
  if (args.tol <= 0.0) throw curvops::BadParams("identities: tol must be positive");
  if (args.jobs < 1) throw curvops::BadParams("identities: jobs must be >= 1");
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.tol = args.tol;
  cfg.jobs = args.jobs;

  const curvops::SuiteResult result = curvops::run_identity_suite(cfg);

  if (args.format == "csv") {
    std::ostringstream csv;
    csv << "identity_id,n,trials,max_residual,pass_rate\n";
    for (const auto& cell : result.summaries)
      csv << cell.identity_id << ',' << cell.n << ',' << cell.trials << ','
          << fmt_double(cell.max_residual) << ',' << fmt_double(cell.pass_rate) << '\n';
    write_output(args.out, csv.str());
  } else {
    ordered_json config;
    config["dims"] = cfg.dims;
    config["trials"] = cfg.trials;
    config["seed"] = cfg.seed;
    config["tol"] = cfg.tol;
    config["jobs"] = cfg.jobs;
    ordered_json j = report_header("identities", std::move(config));
    j["all_passed"] = result.all_passed;
    ordered_json cells = ordered_json::array();
    for (const auto& cell : result.summaries) {
      ordered_json c;
      c["identity_id"] = cell.identity_id;
      c["n"] = cell.n;
      c["trials"] = cell.trials;
      c["max_residual"] = cell.max_residual;
      c["pass_rate"] = cell.pass_rate;
      c["gated"] = cell.gated;
      c["passed"] = cell.passed;
      cells.push_back(std::move(c));
    }
    j["summaries"] = std::move(cells);
    ordered_json reports = ordered_json::array();
    for (const auto& rep : result.reports) {
      ordered_json r;
      r["identity_id"] = rep.identity_id;
      r["lhs"] = rep.lhs;
      r["rhs"] = rep.rhs;
      r["residual"] = rep.residual;
      r["tol"] = rep.tol;
      r["passed"] = rep.passed;
      r["context"] = {{"n", rep.context.n}, {"seed", rep.context.seed}, {"einstein", rep.context.einstein}};
      reports.push_back(std::move(r));
    }
    j["reports"] = std::move(reports);
    write_output(args.out, j.dump(2) + "\n");
  }
  return result.all_passed ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string model;
  int dim = 0;
  double kappa = 1.0;
  int p = 0;
  std::string load;
  std::string dump;
  double tol = 1e-8;
  std::string format = "json";
  std::optional<std::string> out;
};

int run_spectrum(const SpectrumArgs& args) {
  curvops::CurvTensor r;
  if (!args.load.empty()) {
    try {
      r = curvops::load_tensor(args.load);
    } catch (const curvops::Error& e) {
      // unreadable, unparsable or invalid input is a usage error
      throw curvops::BadParams(e.what());
    }
  } else if (!args.model.empty()) {
    curvops::ModelParams params;
    if (args.dim > 0) params.dim = args.dim;
    params.kappa = args.kappa;
    if (args.p > 0) params.p = args.p;
    r = curvops::model_space(args.model, params);
  } else {
    throw curvops::BadParams("spectrum: need --model or --load");
  }
  if (!args.dump.empty()) curvops::save_tensor(args.dump, r);

  const int n = r.dim();
  const curvops::OperatorMatrix m = curvops::op_second_kind(r);
  curvops::Spectrum spec = curvops::spectrum(m);
  const curvops::DecomposedCurvature dec = curvops::decompose(r);
  const bool einstein = curvops::is_einstein(dec, args.tol);
  if (einstein) curvops::attach_weyl_shift(spec, dec.scalar);

  const std::vector<double> deltas = {1.0, 2.0, 3.0, static_cast<double>((n + 2) / 4), 4.5};
  ordered_json verdicts = ordered_json::array();
  for (const double d : deltas) {
    const auto v = curvops::delta_nonnegative(spec, d);
    verdicts.push_back({{"delta", d}, {"value", v.value}, {"holds", v.holds}});
  }

  // k-nonnegativity is monotone in k; flag the spectrum if it is not.
  bool consistent = true;
  for (int k = 1; k + 1 <= spec.size(); ++k) {
    const bool hk = curvops::delta_nonnegative(spec, k).holds;
    const bool hk1 = curvops::delta_nonnegative(spec, k + 1).holds;
    if (hk && !hk1) consistent = false;
  }

  if (args.format == "csv") {
    std::ostringstream csv;
    csv << "alpha,lambda\n";
    for (int a = 0; a < spec.size(); ++a)
      csv << a + 1 << ',' << fmt_double(spec.eigenvalues[a]) << '\n';
    write_output(args.out, csv.str());
  } else {
    ordered_json config;
    config["model"] = args.model;
    config["load"] = args.load;
    config["dim"] = args.dim;
    config["kappa"] = args.kappa;
    config["p"] = args.p;
    config["tol"] = args.tol;
    ordered_json j = report_header("spectrum", std::move(config));
    j["n"] = n;
    j["N"] = spec.size();
    j["eigenvalues"] = spec.eigenvalues;
    j["traces"] = {{"tr1", m.trace()}, {"tr2", m.trace_sq()}, {"tr3", m.trace_cube()}};
    j["einstein"] = einstein;
    if (spec.weyl_shifted) j["weyl_shifted"] = *spec.weyl_shifted;
    j["delta"] = std::move(verdicts);
    j["verdicts_consistent"] = consistent;
    write_output(args.out, j.dump(2) + "\n");
  }
  return consistent ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct ExtremalArgs {
  std::string dims = "4..12";
  int starts = 64;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string format = "json";
  std::optional<std::string> out;
};

int run_extremal(const ExtremalArgs& args) {
  const std::vector<int> dims = parse_dims(args.dims);
  for (const int n : dims)
    if (n < 4) throw curvops::BadRange("extremal: dimensions must be >= 4");
  if (args.starts < 1) throw curvops::BadParams("extremal: starts must be >= 1");

  using curvops::ExtremalPattern;
  const ExtremalPattern patterns[] = {ExtremalPattern::distinct4, ExtremalPattern::repeat_ik,
                                      ExtremalPattern::double_pair};
  bool ok = true;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "n,pattern,closed,numeric,abs_diff,dispersion,lagrange_residual,converged_starts\n";
  for (const int n : dims)
    for (const ExtremalPattern p : patterns) {
      const double closed = curvops::case_extremum_closed(n, p);
      const auto numeric = curvops::case_extremum_numeric(n, p, args.starts, args.seed);
      const double diff = std::abs(numeric.max_value - closed);
      const double lagrange = curvops::lagrange_residual(numeric.argmax, p);
      if (diff > args.tol || lagrange > 1e-6) ok = false;
      rows.push_back({{"n", n},
                      {"pattern", curvops::pattern_name(p)},
                      {"closed", closed},
                      {"numeric", numeric.max_value},
                      {"abs_diff", diff},
                      {"dispersion", numeric.dispersion},
                      {"lagrange_residual", lagrange},
                      {"converged_starts", numeric.converged_starts}});
      csv << n << ',' << curvops::pattern_name(p) << ',' << fmt_double(closed) << ','
          << fmt_double(numeric.max_value) << ',' << fmt_double(diff) << ','
          << fmt_double(numeric.dispersion) << ',' << fmt_double(lagrange) << ','
          << numeric.converged_starts << '\n';
    }

  if (args.format == "csv") {
    write_output(args.out, csv.str());
  } else {
    ordered_json config;
    config["dims"] = dims;
    config["starts"] = args.starts;
    config["seed"] = args.seed;
    config["tol"] = args.tol;
    ordered_json j = report_header("extremal", std::move(config));
    j["all_within_tol"] = ok;
    j["rows"] = std::move(rows);
    write_output(args.out, j.dump(2) + "\n");
  }
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct MinimizeArgs {
  int n = 0;
  int N = 0;
  int k2 = 0;
  double B = 0.0;
  bool b_set = false;
  double C = 1.0;
  std::string oracle = "grid";
  int resolution = 40;
  int samples = 512;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::optional<std::string> out;
};

int run_minimize(const MinimizeArgs& args) {
  int N = args.N, k2 = args.k2;
  double B = args.B;
  const double C = args.C;
  if (args.n > 0) {
    if (args.n < 4) throw curvops::BadRange("minimize: need n >= 4");
    N = (args.n - 1) * (args.n + 2) / 2;
    k2 = curvops::hypothesis_k2(args.n);
    B = args.n <= 5 ? curvops::theorem12_B(args.n) : curvops::theorem11_B_value(args.n);
  } else {
    if (N < 2 || k2 < 1) throw curvops::BadParams("minimize: need --n or --N/--k2");
    if (!args.b_set) throw curvops::BadParams("minimize: need --B with --N/--k2");
  }
  if (args.oracle != "grid" && args.oracle != "random")
    throw curvops::BadParams("minimize: oracle must be grid or random");

  const auto candidates = curvops::candidate_points(N, k2, C, B);
  double cand_min = candidates[0].f_value;
  for (const auto& c : candidates) cand_min = std::min(cand_min, c.f_value);

  const bool grid = args.oracle == "grid";
  const curvops::BruteResult brute =
      curvops::brute_min(N, k2, C, B, grid ? curvops::OracleMode::grid : curvops::OracleMode::random,
                         grid ? args.resolution : args.samples, args.seed);
  const double tol_grid = curvops::grid_tolerance(N, C, args.resolution);
  const double margin = brute.min_value - cand_min;
  bool ok = margin >= -tol_grid;

  std::optional<bool> dichotomy;
  if (grid && B > 0.0 && C > 0.0) {
    const auto scan = curvops::brute_min_scan(N, k2, C, B, args.resolution);
    dichotomy = scan.dichotomy;
    if (!scan.dichotomy) ok = false;
  }

  if (args.format == "csv") {
    std::ostringstream csv;
    csv << "N,k2,C,B,mode,budget,candidate_min,brute_min,margin,argmin_a,dichotomy\n";
    csv << N << ',' << k2 << ',' << fmt_double(C) << ',' << fmt_double(B) << ',' << args.oracle
        << ',' << (grid ? args.resolution : args.samples) << ',' << fmt_double(cand_min) << ','
        << fmt_double(brute.min_value) << ',' << fmt_double(margin) << ','
        << fmt_double(brute.argmin_a) << ','
        << (dichotomy ? (*dichotomy ? "true" : "false") : "na") << '\n';
    write_output(args.out, csv.str());
  } else {
    ordered_json config;
    config["n"] = args.n;
    config["N"] = N;
    config["k2"] = k2;
    config["C"] = C;
    config["B"] = B;
    config["oracle"] = args.oracle;
    config["budget"] = grid ? args.resolution : args.samples;
    config["seed"] = args.seed;
    ordered_json j = report_header("minimize", std::move(config));
    ordered_json cand = ordered_json::array();
    for (const auto& c : candidates)
      cand.push_back({{"m", c.m}, {"f", c.f_value}, {"a_m", c.a_m}, {"lambdas", c.lambdas}});
    j["candidates"] = std::move(cand);
    j["candidate_min"] = cand_min;
    j["brute_min"] = brute.min_value;
    j["brute_argmin"] = brute.argmin;
    j["argmin_a"] = brute.argmin_a;
    j["margin"] = margin;
    j["tol_grid"] = tol_grid;
    j["sufficiency_holds"] = margin >= -tol_grid;
    if (dichotomy) j["dichotomy"] = *dichotomy;
    write_output(args.out, j.dump(2) + "\n");
  }
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct TableArgs {
  std::string n_range = "4..60";
  std::string format = "json";
  std::optional<std::string> out;
};

int run_table(const TableArgs& args) {
  const std::vector<int> range = parse_dims(args.n_range);
  const auto rows = curvops::theorem_F_table(range.front(), range.back());
  // Exit status gates the n >= 6 grid; the small-dimension rows carry their
  // honest (negative) verdicts as information.
  bool ok = true;
  for (const auto& row : rows)
    if (row.n >= 6) ok = ok && row.verdict;

  if (args.format == "csv") {
    std::ostringstream csv;
    csv << "n,N,k2,B,F_zero_block,F_spike,verdict,branch,candidate_f_values\n";
    for (const auto& row : rows) {
      csv << row.n << ',' << row.N << ',' << row.k2 << ',' << fmt_double(row.B) << ','
          << fmt_double(row.F_zero_block) << ',' << fmt_double(row.F_spike) << ','
          << (row.verdict ? "true" : "false") << ',' << row.branch << ",\"";
      for (std::size_t i = 0; i < row.candidate_f.size(); ++i) {
        if (i) csv << ';';
        csv << fmt_double(row.candidate_f[i]);
      }
      csv << "\"\n";
    }
    write_output(args.out, csv.str());
  } else {
    ordered_json config;
    config["n_range"] = args.n_range;
    ordered_json j = report_header("table", std::move(config));
    j["grid_verdicts_positive"] = ok;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows)
      jrows.push_back({{"n", row.n},
                       {"N", row.N},
                       {"k2", row.k2},
                       {"B", row.B},
                       {"F_zero_block", row.F_zero_block},
                       {"F_spike", row.F_spike},
                       {"verdict", row.verdict},
                       {"branch", row.branch},
                       {"candidate_f_values", row.candidate_f}});
    j["rows"] = std::move(jrows);
    write_output(args.out, j.dump(2) + "\n");
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical certification toolkit for curvature operators of the second kind"};
  app.require_subcommand(1);

  IdentitiesArgs id_args;
  CLI::App* identities = app.add_subcommand("identities", "run the algebraic identity suite");
  identities->add_option("--dims", id_args.dims, "dimensions, e.g. 4,5,6 or 4..10");
  identities->add_option("--trials", id_args.trials, "random trials per (identity, n) cell");
  identities->add_option("--seed", id_args.seed, "master seed");
  identities->add_option("--tol", id_args.tol, "relative residual tolerance");
  identities->add_option("--format", id_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  std::string id_out, sp_out, ex_out, mi_out, ta_out;
  identities->add_option("--out", id_out, "output file (default stdout)");
  identities->add_option("--jobs", id_args.jobs, "parallel workers over cells");

  SpectrumArgs sp_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and delta-nonnegativity verdicts");
  spectrum->add_option("--model", sp_args.model, "flat | sphere | product_spheres");
  spectrum->add_option("--dim", sp_args.dim, "dimension for flat/sphere");
  spectrum->add_option("--kappa", sp_args.kappa, "sectional curvature parameter");
  spectrum->add_option("--p", sp_args.p, "factor dimension for product_spheres");
  spectrum->add_option("--load", sp_args.load, "load a tensor JSON file");
  spectrum->add_option("--dump", sp_args.dump, "write the tensor used to a JSON file");
  spectrum->add_option("--tol", sp_args.tol, "Einstein detection tolerance");
  spectrum->add_option("--format", sp_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--out", sp_out, "output file (default stdout)");

  ExtremalArgs ex_args;
  CLI::App* extremal = app.add_subcommand("extremal", "constrained maxima vs closed forms");
  extremal->add_option("--dims", ex_args.dims, "dimensions, e.g. 4..12");
  extremal->add_option("--starts", ex_args.starts, "multi-start count");
  extremal->add_option("--seed", ex_args.seed, "master seed");
  extremal->add_option("--tol", ex_args.tol, "allowed |numeric - closed|");
  extremal->add_option("--format", ex_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  extremal->add_option("--out", ex_out, "output file (default stdout)");

  MinimizeArgs mi_args;
  CLI::App* minimize = app.add_subcommand("minimize", "candidate minimizers vs brute-force oracle");
  minimize->add_option("--n", mi_args.n, "derive (N, k2, B) from the dimension");
  minimize->add_option("--N", mi_args.N, "sequence length");
  minimize->add_option("--k2", mi_args.k2, "leading block size");
  CLI::Option* bopt = minimize->add_option("--B", mi_args.B, "quadratic coefficient");
  minimize->add_option("--C", mi_args.C, "sequence sum");
  minimize->add_option("--oracle", mi_args.oracle, "grid or random")
      ->check(CLI::IsMember({"grid", "random"}));
  minimize->add_option("--resolution", mi_args.resolution, "grid points per unit of C");
  minimize->add_option("--samples", mi_args.samples, "random-mode sample count");
  minimize->add_option("--seed", mi_args.seed, "master seed");
  minimize->add_option("--format", mi_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  minimize->add_option("--out", mi_out, "output file (default stdout)");

  TableArgs ta_args;
  CLI::App* table = app.add_subcommand("table", "per-dimension F-positivity table");
  table->add_option("--n-range", ta_args.n_range, "dimension range, e.g. 4..60");
  table->add_option("--format", ta_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  table->add_option("--out", ta_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*identities) {
      if (!id_out.empty()) id_args.out = id_out;
      return run_identities(id_args);
    }
    if (*spectrum) {
      if (!sp_out.empty()) sp_args.out = sp_out;
      return run_spectrum(sp_args);
    }
    if (*extremal) {
      if (!ex_out.empty()) ex_args.out = ex_out;
      return run_extremal(ex_args);
    }
    if (*minimize) {
      mi_args.b_set = bopt->count() > 0;
      if (!mi_out.empty()) mi_args.out = mi_out;
      return run_minimize(mi_args);
    }
    if (*table) {
      if (!ta_out.empty()) ta_args.out = ta_out;
      return run_table(ta_args);
    }
  } catch (const curvops::BadParams& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const curvops::BadRange& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const curvops::UnknownModel& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const curvops::BadProblem& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const curvops::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitConfig;
}
