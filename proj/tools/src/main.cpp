// entroflow: seeded entropy-decay experiments on the Ornstein-Uhlenbeck
// flow and general confining potentials, emitting CSV/JSON reports and
// gnuplot scripts.  Exit codes: 0 all checks pass, 1 mathematical
// violation, 2 usage or configuration error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entroflow/entropy.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/evolution.hpp"
#include "entroflow/field.hpp"
#include "entroflow/inequality.hpp"
#include "entroflow/potential.hpp"
#include "entroflow/quadrature.hpp"
#include "entroflow/text_io.hpp"

namespace {

using namespace entroflow;

struct RunConfig {
  int dimension = 1;
  int degree = 8;
  int quad_order = 0;  // 0: let the modules choose
  int band = 2;
  std::vector<double> exponents = {1.0};
  double eps = 0.3;
  std::vector<double> amps;
  double t0 = 0.0;
  double t1 = 2.0;
  int t_steps = 21;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;
  int sweeps = 1;
  std::string potential = "harmonic";
  int points = 2001;
  int modes = 6;
  std::vector<int> probe_k;
  std::string out = ".";
  std::string config_path;
  std::string report_path;  // plot input
};

// Raw flag strings for the comma-list options.
struct ListFlags {
  std::string p, amps, seeds, k;
};

struct Flags {
  CLI::Option* d = nullptr;
  CLI::Option* degree = nullptr;
  CLI::Option* quad_order = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* p = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* amps = nullptr;
  CLI::Option* t0 = nullptr;
  CLI::Option* t1 = nullptr;
  CLI::Option* t_steps = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* seeds = nullptr;
  CLI::Option* sweeps = nullptr;
  CLI::Option* potential = nullptr;
  CLI::Option* points = nullptr;
  CLI::Option* modes = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* out = nullptr;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    std::stringstream cs(cell);
    T v{};
    cs >> v;
    if (cs.fail() || !cs.eof())
      throw usage_error(std::string("cannot parse ") + what + " entry '" + cell + "'");
    out.push_back(v);
  }
  if (out.empty()) throw usage_error(std::string("empty list for ") + what);
  return out;
}

void add_common(CLI::App* sub, RunConfig& cfg, ListFlags& lists, Flags& f) {
  f.d = sub->add_option("--d", cfg.dimension, "space dimension (1-3)");
  f.degree = sub->add_option("--degree", cfg.degree, "spectral truncation degree N");
  f.quad_order = sub->add_option("--quad-order", cfg.quad_order,
                                 "quadrature points per axis (0 = automatic)");
  f.n = sub->add_option("--n", cfg.band, "vanishing-moment band n");
  f.p = sub->add_option("--p", lists.p, "entropy exponent(s) in [1,2], comma list");
  f.eps = sub->add_option("--eps", cfg.eps, "uniform deviation bound in [0,1)");
  f.amps = sub->add_option("--amps", lists.amps, "amplitude ladder, comma list");
  f.t0 = sub->add_option("--t0", cfg.t0, "trajectory start time");
  f.t1 = sub->add_option("--t1", cfg.t1, "trajectory end time");
  f.t_steps = sub->add_option("--t-steps", cfg.t_steps, "trajectory sample count");
  f.seed = sub->add_option("--seed", cfg.seed, "base RNG seed");
  f.seeds = sub->add_option("--seeds", lists.seeds, "explicit seed list (overrides --sweeps)");
  f.sweeps = sub->add_option("--sweeps", cfg.sweeps, "number of seeded repetitions");
  f.potential = sub->add_option("--potential", cfg.potential,
                                "potential preset: harmonic | double-well");
  f.points = sub->add_option("--points", cfg.points, "grid points per axis");
  f.modes = sub->add_option("-m,--modes", cfg.modes, "eigenpair count");
  f.k = sub->add_option("--k", lists.k, "probe multi-index, comma list of length d");
  f.out = sub->add_option("--out", cfg.out, "output directory");
  sub->add_option("--config", cfg.config_path, "JSON config file; flags override");
}

void apply_json_lists(const nlohmann::json& node, std::vector<double>& target) {
  if (node.is_array())
    target = node.get<std::vector<double>>();
  else if (node.is_string())
    target = parse_list<double>(node.get<std::string>(), "config list");
  else
    target = {node.get<double>()};
}

void apply_config_file(RunConfig& cfg, const Flags& f) {
  if (cfg.config_path.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(cfg.config_path));
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw usage_error("config file must hold a JSON object");
  try {
    if (j.contains("d") && !f.d->count()) cfg.dimension = j["d"].get<int>();
    if (j.contains("degree") && !f.degree->count()) cfg.degree = j["degree"].get<int>();
    if (j.contains("quad-order") && !f.quad_order->count())
      cfg.quad_order = j["quad-order"].get<int>();
    if (j.contains("n") && !f.n->count()) cfg.band = j["n"].get<int>();
    if (j.contains("p") && !f.p->count()) apply_json_lists(j["p"], cfg.exponents);
    if (j.contains("eps") && !f.eps->count()) cfg.eps = j["eps"].get<double>();
    if (j.contains("amps") && !f.amps->count()) apply_json_lists(j["amps"], cfg.amps);
    if (j.contains("t0") && !f.t0->count()) cfg.t0 = j["t0"].get<double>();
    if (j.contains("t1") && !f.t1->count()) cfg.t1 = j["t1"].get<double>();
    if (j.contains("t-steps") && !f.t_steps->count()) cfg.t_steps = j["t-steps"].get<int>();
    if (j.contains("seed") && !f.seed->count()) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("seeds") && !f.seeds->count())
      cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("sweeps") && !f.sweeps->count()) cfg.sweeps = j["sweeps"].get<int>();
    if (j.contains("potential") && !f.potential->count())
      cfg.potential = j["potential"].get<std::string>();
    if (j.contains("points") && !f.points->count()) cfg.points = j["points"].get<int>();
    if (j.contains("m") && !f.modes->count()) cfg.modes = j["m"].get<int>();
    if (j.contains("k") && !f.k->count()) cfg.probe_k = j["k"].get<std::vector<int>>();
    if (j.contains("out") && !f.out->count()) cfg.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(std::string("config field has the wrong type: ") + e.what());
  }
}

void finalize_lists(RunConfig& cfg, const ListFlags& lists) {
  if (!lists.p.empty()) cfg.exponents = parse_list<double>(lists.p, "--p");
  if (!lists.amps.empty()) cfg.amps = parse_list<double>(lists.amps, "--amps");
  if (!lists.seeds.empty()) cfg.seeds = parse_list<std::uint64_t>(lists.seeds, "--seeds");
  if (!lists.k.empty()) cfg.probe_k = parse_list<int>(lists.k, "--k");
  for (double p : cfg.exponents)
    if (!(p >= 1.0 && p <= 2.0)) throw usage_error("--p entries must lie in [1,2]");
  std::sort(cfg.exponents.begin(), cfg.exponents.end());
  cfg.exponents.erase(std::unique(cfg.exponents.begin(), cfg.exponents.end()),
                      cfg.exponents.end());
}

void validate(const RunConfig& cfg) {
  if (cfg.dimension < 1 || cfg.dimension > 3) throw usage_error("--d must be 1, 2, or 3");
  if (cfg.degree < 1 || cfg.degree > 64) throw usage_error("--degree must lie in [1,64]");
  if (cfg.band < 1) throw usage_error("--n must be at least 1");
  if (cfg.quad_order < 0 || cfg.quad_order > 512)
    throw usage_error("--quad-order must lie in [0,512]");
  if (!(cfg.eps >= 0.0 && cfg.eps < 1.0)) throw usage_error("--eps must lie in [0,1)");
  if (cfg.t_steps < 2) throw usage_error("--t-steps must be at least 2");
  if (cfg.points < 16) throw usage_error("--points must be at least 16");
  if (cfg.modes < 1) throw usage_error("--modes must be at least 1");
}

std::vector<std::uint64_t> seed_list(const RunConfig& cfg) {
  if (!cfg.seeds.empty()) {
    std::vector<std::uint64_t> s = cfg.seeds;
    std::sort(s.begin(), s.end());
    return s;
  }
  if (cfg.sweeps < 1) throw usage_error("--sweeps must be at least 1");
  std::vector<std::uint64_t> s(cfg.sweeps);
  for (int i = 0; i < cfg.sweeps; ++i) s[i] = cfg.seed + static_cast<std::uint64_t>(i);
  return s;
}

int resolved_order(const RunConfig& cfg) {
  if (cfg.quad_order > 0) return cfg.quad_order;
  return 2 * cfg.degree + 4;  // damps aliasing of w^p, w log w
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.out) / name;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg) {
  const int order = resolved_order(cfg);
  const DenseGridSpec grid = certification_grid(cfg.dimension, cfg.degree, order);
  const AdmissibleField af =
      random_admissible(cfg.dimension, cfg.band, cfg.eps, cfg.degree, cfg.seed, grid);
  const QuadratureRule rule = gauss_hermite_rule(order, cfg.dimension);
  const Trajectory traj =
      sample_trajectory(af.field, cfg.exponents, cfg.t0, cfg.t1, cfg.t_steps, rule, grid);
  write_file_atomic(out_path(cfg, "trajectory.csv"), trajectory_csv(traj));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool all_ok = true;
  JsonWriter w;
  w.begin_object();
  w.key("command").value("simulate");
  w.key("dimension").value(cfg.dimension);
  w.key("band").value(cfg.band);
  w.key("degree").value(cfg.degree);
  w.key("eps").value(cfg.eps);
  w.key("seed").value(af.seed);
  w.key("recipe").value(af.recipe);
  w.key("quad_order").value(rule.points_per_axis());
  w.key("inf_w").value(af.bounds.inf_w);
  w.key("sup_w").value(af.bounds.sup_w);
  w.key("H_1").value(H_p(af.bounds, 1.0));
  w.key("exponents").begin_array();
  for (std::size_t i = 0; i < cfg.exponents.size(); ++i) {
    const double p = cfg.exponents[i];
    w.begin_object();
    w.key("p").value(p);
    w.key("entropy0").value(traj.samples.front().entropy[i]);
    w.key("H_p").value(H_p(af.bounds, p));
    if (traj.samples.front().entropy[i] > 1e-12) {
      const DecayFit fit =
          decay_experiment(af, p, TimeGrid{cfg.t0, cfg.t1, cfg.t_steps}, rule);
      w.key("fitted_rate").value(fit.fitted_rate);
      w.key("rate_2lambda").value(fit.rate_2lambda);
      w.key("rate_4_over_pK").value(fit.rate_4_over_pK);
      w.key("rate_np_over_Hp").value(fit.rate_np_over_Hp);
      w.key("rate_spectral").value(fit.rate_spectral);
      w.key("envelope_2lambda_ok").value(fit.envelope_2lambda_ok);
      w.key("envelope_k_ok").value(fit.envelope_k_ok);
      w.key("envelope_hp_ok").value(fit.envelope_hp_ok);
      all_ok = all_ok && fit.envelope_2lambda_ok && fit.envelope_k_ok && fit.envelope_hp_ok;
    } else {  // stationary data: nothing to fit, envelopes hold vacuously
      w.key("fitted_rate").value(nan);
      w.key("rate_2lambda").value(nan);
      w.key("rate_4_over_pK").value(nan);
      w.key("rate_np_over_Hp").value(nan);
      w.key("rate_spectral").value(nan);
      w.key("envelope_2lambda_ok").value(true);
      w.key("envelope_k_ok").value(true);
      w.key("envelope_hp_ok").value(true);
    }
    w.end_object();
  }
  w.end_array();
  w.key("all_envelopes_ok").value(all_ok);
  w.end_object();
  write_file_atomic(out_path(cfg, "summary.json"), w.str() + "\n");
  return all_ok ? 0 : 1;
}

// --- inequality -------------------------------------------------------------

int cmd_inequality(const RunConfig& cfg) {
  const int order = resolved_order(cfg);
  const DenseGridSpec grid = certification_grid(cfg.dimension, cfg.degree, order);
  const QuadratureRule rule = gauss_hermite_rule(order, cfg.dimension);
  std::vector<InequalityReport> reports;
  for (std::uint64_t seed : seed_list(cfg)) {
    const AdmissibleField af =
        random_admissible(cfg.dimension, cfg.band, cfg.eps, cfg.degree, seed, grid);
    const FieldSample sample = sample_admissible(af, rule);
    InequalityReport poincare = check_poincare(af.field, cfg.band);
    poincare.seed = seed;
    reports.push_back(poincare);
    reports.push_back(check_improved_lsi(sample, cfg.band));
    for (double p : cfg.exponents) {
      reports.push_back(check_beckner(sample, cfg.band, p));
      reports.push_back(check_pversion(sample, cfg.band, p));
      reports.push_back(check_ck(sample, p));
    }
  }
  write_file_atomic(out_path(cfg, "reports.json"), reports_json(reports));
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return all_pass ? 0 : 1;
}

// --- decay ------------------------------------------------------------------

int cmd_decay(const RunConfig& cfg) {
  const int order = resolved_order(cfg);
  const DenseGridSpec grid = certification_grid(cfg.dimension, cfg.degree, order);
  const QuadratureRule rule = gauss_hermite_rule(order, cfg.dimension);
  std::string csv =
      "n,p,seed,fitted_rate,rate_2lambda,rate_4_over_pK,rate_np_over_Hp,rate_spectral,"
      "residual_rms,envelope_ok\n";
  bool all_ok = true;
  for (std::uint64_t seed : seed_list(cfg)) {
    const AdmissibleField af =
        random_admissible(cfg.dimension, cfg.band, cfg.eps, cfg.degree, seed, grid);
    for (double p : cfg.exponents) {
      const DecayFit fit = decay_experiment(af, p, TimeGrid{cfg.t0, cfg.t1, cfg.t_steps}, rule);
      const bool ok = fit.envelope_2lambda_ok && fit.envelope_k_ok && fit.envelope_hp_ok;
      all_ok = all_ok && ok;
      const std::vector<std::string> cells = {
          std::to_string(cfg.band),        format_g17(p),
          std::to_string(seed),            format_g17(fit.fitted_rate),
          format_g17(fit.rate_2lambda),    format_g17(fit.rate_4_over_pK),
          format_g17(fit.rate_np_over_Hp), format_g17(fit.rate_spectral),
          format_g17(fit.residual_rms),    ok ? "1" : "0"};
      csv += csv_line(cells);
    }
  }
  write_file_atomic(out_path(cfg, "decay.csv"), csv);
  return all_ok ? 0 : 1;
}

// --- sharpness ---------------------------------------------------------------

int cmd_sharpness(const RunConfig& cfg) {
  std::vector<int> kidx = cfg.probe_k;
  if (kidx.empty()) {  // default probe: band weight on the first axis
    kidx.assign(cfg.dimension, 0);
    kidx[0] = cfg.band;
  }
  if (static_cast<int>(kidx.size()) != cfg.dimension)
    throw usage_error("--k needs exactly d entries");
  std::vector<double> amps = cfg.amps;
  if (amps.empty()) amps = {0.2, 0.1, 0.05, 0.02, 0.01};
  const SharpnessScan scan = sharpness_scan(MultiIndex(kidx), amps, cfg.quad_order);
  write_file_atomic(out_path(cfg, "sharpness.csv"), sharpness_csv(scan));
  return 0;
}

// --- spectrum ----------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg) {
  const PotentialSpec pot = potential_by_name(cfg.potential, cfg.dimension);
  const DiscretizedOperator op = discretize(pot, cfg.points);
  const OperatorSpectrum sp = spectrum(op, cfg.modes);
  write_file_atomic(out_path(cfg, "spectrum.csv"), spectrum_csv(sp));
  return 0;
}

// --- plot --------------------------------------------------------------------

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

int cmd_plot(const RunConfig& cfg) {
  const std::string content = read_file(cfg.report_path);
  std::vector<std::string> lines;
  {
    std::stringstream ss(content);
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 2) throw usage_error("report has no data rows: " + cfg.report_path);
  const std::vector<std::string> header = split_csv_row(lines[0]);

  const std::string stem = std::filesystem::path(cfg.report_path).stem().string();
  std::string script;
  if (header.size() >= 7 && header[0] == "t" && header[1].rfind("E_", 0) == 0 &&
      header.back() == "H_1") {
    // Entropy trajectory: log-scale decay curves plus the exponential
    // envelope from the first sample's entropy and bounds functional.
    const std::size_t entropy_cols = header.size() - 6;  // between t and production
    const std::vector<std::string> first = split_csv_row(lines[1]);
    if (first.size() != header.size()) throw usage_error("report row width mismatch");
    const std::string e0 = first[1];
    const std::string h1 = first.back();
    const std::string t0 = first[0];
    script += "# entropy decay trajectories with exponential envelope\n";
    script += "set datafile separator \",\"\n";
    script += "set logscale y\n";
    script += "set xlabel \"t\"\nset ylabel \"entropy\"\nset key top right\n";
    script += "$DATA << EOD\n";
    for (std::size_t i = 1; i < lines.size(); ++i) script += lines[i] + "\n";
    script += "EOD\n";
    script += "n = " + std::to_string(cfg.band) + "\n";
    script += "E0 = " + e0 + "\nH1 = " + h1 + "\nt0 = " + t0 + "\n";
    script += "plot \\\n";
    for (std::size_t c = 0; c < entropy_cols; ++c) {
      script += "  $DATA using 1:" + std::to_string(c + 2) + " with linespoints title \"" +
                header[c + 1] + "\", \\\n";
    }
    script += "  E0 * exp(-n / H1 * (x - t0)) with lines dashtype 2 title "
              "\"E_1(0) exp(-n t / H_1)\"\n";
  } else if (header.size() >= 8 && header[0] == "amplitude" && header[7] == "tightness") {
    script += "# sharpness ladder: tightness against amplitude\n";
    script += "set datafile separator \",\"\n";
    script += "set logscale x\n";
    script += "set xlabel \"amplitude\"\nset ylabel \"tightness\"\nset yrange [0:1.1]\n";
    script += "$DATA << EOD\n";
    for (std::size_t i = 1; i < lines.size(); ++i) script += lines[i] + "\n";
    script += "EOD\n";
    script += "plot \\\n";
    script += "  $DATA using 1:8 with linespoints title \"tightness\", \\\n";
    script += "  1 with lines dashtype 2 title \"sharp limit\"\n";
  } else {
    throw usage_error("unsupported report schema in " + cfg.report_path);
  }
  write_file_atomic(out_path(cfg, stem + "_plot.gp"), script);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entroflow: entropy decay experiments for spectral densities"};
  app.require_subcommand(1);

  RunConfig cfg;
  ListFlags lists;
  Flags flags;

  CLI::App* simulate =
      app.add_subcommand("simulate", "evolve a seeded admissible field, write trajectory CSV");
  CLI::App* inequality =
      app.add_subcommand("inequality", "run inequality checkers over seeded sweeps");
  CLI::App* decay = app.add_subcommand("decay", "fit entropy decay rates against predictions");
  CLI::App* sharpness =
      app.add_subcommand("sharpness", "amplitude ladder for near-optimal probes");
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "eigenvalues of a discretized confining potential");
  CLI::App* plot = app.add_subcommand("plot", "emit a gnuplot script for a report CSV");

  // One flag set shared across subcommands; only the parsed one is read.
  std::map<const CLI::App*, Flags> flag_map;
  for (CLI::App* sub : {simulate, inequality, decay, sharpness, spectrum, plot}) {
    Flags f;
    add_common(sub, cfg, lists, f);
    flag_map[sub] = f;
  }
  plot->add_option("report", cfg.report_path, "report CSV to visualize")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    apply_config_file(cfg, flag_map[active]);
    finalize_lists(cfg, lists);
    validate(cfg);
    if (active == simulate) return cmd_simulate(cfg);
    if (active == inequality) return cmd_inequality(cfg);
    if (active == decay) return cmd_decay(cfg);
    if (active == sharpness) return cmd_sharpness(cfg);
    if (active == spectrum) return cmd_spectrum(cfg);
    return cmd_plot(cfg);
  } catch (const usage_error& e) {
    std::fprintf(stderr, "entroflow: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "entroflow: %s\n", e.what());
    return 1;
  }
}
