#include "cupset/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/linalg.hpp"
#include "cupset/protocols.hpp"
#include "cupset/unitarity.hpp"

namespace cupset {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_classical_variant(const std::string& v) { return v.rfind("classical-", 0) == 0; }

void emit(const Table& t, const RunConfig& cfg) {
  if (cfg.output.empty()) {
    if (cfg.format == OutputFormat::Csv)
      write_csv(t, std::cout);
    else
      std::cout << table_to_json(t).dump(2) << '\n';
  } else {
    write_table(t, cfg.output, cfg.format);
  }
}

Cell param_cell(const CupSample& s, std::size_t i) {
  if (i < s.params.size()) return s.params[i];
  return std::string();
}

}  // namespace

SumBand band_for(const CupSample& s, bool classical) {
  if (classical) return {0.0, 2.0};
  switch (s.variant) {
    case CupVariant::Isometric: return {band_lower(s.dims), 1.0};
    case CupVariant::Reversible:
      if (s.dims == CupDims{2, 2, 2}) return {1.0 / 3.0, 1.0};
      return {0.0, 1.0};
    case CupVariant::Full: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

Table cupset_table(const RunConfig& cfg, bool& violation) {
  if (cfg.points < 1) throw Error("--points must be positive");
  std::vector<CupSample> samples;
  const bool classical = is_classical_variant(cfg.variant);
  if (classical) {
    samples = classical_cupset(parse_variant(cfg.variant.substr(10)), cfg.points);
  } else {
    SeededRng rng(cfg.seed);
    samples = generate_cupset(parse_variant(cfg.variant), parse_family(cfg.family), cfg.points, cfg.dims, rng);
  }
  Table t;
  t.header = {"family", "variant", "curve", "p0", "p1", "p2", "u", "ubar", "band_lower", "band_upper", "in_band"};
  violation = false;
  for (const auto& s : samples) {
    const SumBand band = band_for(s, classical);
    const double sum = s.u + s.ubar;
    const bool ok = sum >= band.lower - 1e-9 && sum <= band.upper + 1e-9;
    violation = violation || !ok;
    t.add({to_string(s.family), classical ? cfg.variant : to_string(s.variant), s.curve, param_cell(s, 0),
           param_cell(s, 1), param_cell(s, 2), s.u, s.ubar, band.lower, band.upper, ok});
  }
  return t;
}

namespace {

struct Experiment {
  std::string family;
  std::string curve;
  double param = 0.0;
  DenseOperator unitary;
  bool mixed = false;
  CupSample ideal;
};

std::vector<Experiment> protocol_experiments(const RunConfig& cfg) {
  if (cfg.points < 1) throw Error("--points must be positive");
  if (!(cfg.dims == CupDims{2, 2, 2})) throw UnsupportedDimensionError("protocol simulations use qubit dims 2,2,2");
  std::vector<Experiment> out;
  const DenseOperator pure = DenseOperator::basis_projector(2, 0), mixed = DenseOperator::maximally_mixed(2);
  auto add = [&](const std::string& family, const std::string& curve, double param, DenseOperator u, bool m) {
    Experiment e{family, curve, param, u, m, {}};
    e.ideal = cup_from_unitary(u, m ? mixed : pure, m ? CupVariant::Reversible : CupVariant::Isometric,
                               CupFamily::Custom, {param}, curve);
    out.push_back(std::move(e));
  };
  const auto grid = unit_grid(cfg.points);
  if (cfg.family == "extremal") {
    add(cfg.family, "identity", 0.0, DenseOperator::identity(4), false);
    add(cfg.family, "swap", 0.0, gates::SWAP(), false);
    add(cfg.family, "cnot", 0.0, gates::CNOT_AB(), false);
    return out;
  }
  if (cfg.family == "haar") {
    const SeededRng master(cfg.seed);
    for (int i = 0; i < cfg.points; ++i) {
      SeededRng local = master.derive(0x4a11ULL + static_cast<std::uint64_t>(i));
      add(cfg.family, "", static_cast<double>(i), haar_random_unitary(4, local), false);
    }
    return out;
  }
  if (cfg.family == "cnot-rev") {
    if (cfg.variant != "reversible") throw Error("cnot-rev is a reversible family");
    for (double a : grid) add(cfg.family, "cnot-ab", a, family_cnot_ab_alpha(a), true);
    for (double a : grid) add(cfg.family, "cnotba-cnotab", a, family_cnotba_cnotab(a), true);
    for (double a : grid) add(cfg.family, "cnot-swaplike", a, family_cnot_alpha_swaplike(a), true);
    return out;
  }
  DenseOperator (*make)(double) = nullptr;
  if (cfg.family == "swap-alpha") make = family_swap_alpha;
  if (cfg.family == "cnot-alpha") make = family_cnot_ab_alpha;
  if (cfg.family == "cnotba-cnotab") make = family_cnotba_cnotab;
  if (!make) throw Error("protocol: unsupported family '" + cfg.family + "'");
  bool m = false;
  if (cfg.variant == "reversible")
    m = true;
  else if (cfg.variant != "isometric")
    throw Error("protocol: variant must be isometric or reversible");
  for (double a : grid) add(cfg.family, "", a, make(a), m);
  return out;
}

struct RowResult {
  double u = kNaN, ubar = kNaN, u_se = kNaN, ubar_se = kNaN;
  std::string status = "ok";
  std::vector<std::pair<UrbTarget, DecayFit>> decays;
};

RowResult run_experiment(const Experiment& e, const RunConfig& cfg, std::uint64_t row) {
  RowResult r;
  const SeededRng master(cfg.seed);
  NoiseModel noise = cfg.noise;
  const std::string& p = cfg.pipeline;
  if (p == "swap-complementarity" || p == "swap-choi") {
    noise.seed = master.derive(2 * row).seed();
    if (p == "swap-complementarity" && e.mixed)
      throw Error("swap-complementarity needs an isometric (pure ancilla) family");
    const DirectCupEstimate d = p == "swap-complementarity"
                                    ? estimate_cup_direct_complementarity(e.unitary, noise)
                                    : estimate_cup_direct_choi(e.unitary,
                                                               e.mixed ? DenseOperator::maximally_mixed(2)
                                                                       : DenseOperator::basis_projector(2, 0),
                                                               noise);
    r.u = d.cup.u;
    r.ubar = d.cup.ubar;
    r.u_se = d.u_stderr;
    r.ubar_se = d.ubar_stderr;
    return r;
  }
  if (p == "spectral") {
    if (cfg.settings < 1) throw Error("--settings must be positive");
    const auto [a, b] = marginal_channels(e.unitary, 2, 2,
                                          e.mixed ? DenseOperator::maximally_mixed(2)
                                                  : DenseOperator::basis_projector(2, 0));
    SeededRng ra = master.derive(2 * row), rb = master.derive(2 * row + 1);
    r.u = spectral_variational(a, cfg.settings, ra).value;
    r.ubar = spectral_variational(b, cfg.settings, rb).value;
    r.u_se = 0.0;
    r.ubar_se = 0.0;
    return r;
  }
  if (p != "irb" && p != "irb-efficient") throw Error("unknown pipeline '" + p + "'");
  std::vector<std::string> failures;
  for (UrbTarget target : {UrbTarget::E, UrbTarget::Ebar}) {
    noise.seed = master.derive(2 * row + (target == UrbTarget::Ebar ? 1 : 0)).seed();
    const CircuitSpec block = interleave_block(e.unitary, target, e.mixed);
    double s = kNaN, se = kNaN;
    try {
      UrbOptions opts;
      opts.average_states = cfg.average_states;
      DecayFit fit = p == "irb" ? run_interleaved_urb_circuit(block, cfg.lengths, cfg.sequences, noise, opts)
                                : run_efficient_urb(block, cfg.lengths, cfg.sequences, noise);
      s = fit.s;
      se = fit.s_stderr;
      r.decays.emplace_back(target, std::move(fit));
    } catch (const FitError& err) {
      failures.push_back(std::string(target == UrbTarget::E ? "u" : "ubar") + ": " + err.what());
    }
    (target == UrbTarget::E ? r.u : r.ubar) = s;
    (target == UrbTarget::E ? r.u_se : r.ubar_se) = se;
  }
  if (!failures.empty()) {
    r.status = "fit-error";
    for (const auto& f : failures) r.status += "; " + f;
  } else if (std::isinf(r.u_se) || std::isinf(r.ubar_se)) {
    // Flat decay data: the rate is not identifiable and is reported as 1.
    r.status = "no-decay";
  }
  return r;
}

}  // namespace

Table protocol_table(const RunConfig& cfg, Table* decay) {
  if (cfg.pipeline == "irb" || cfg.pipeline == "irb-efficient") {
    if (cfg.lengths.empty()) throw Error("no lengths given");
  }
  const auto experiments = protocol_experiments(cfg);
  Table t;
  t.header = {"family", "variant", "pipeline", "curve", "param", "u_est", "ubar_est",
              "u_ideal", "ubar_ideal", "u_stderr", "ubar_stderr", "status"};
  if (decay) {
    decay->header = {"family", "curve", "param", "target", "length", "mean", "stderr", "fit_s", "fit_c0", "fit_c1"};
    decay->rows.clear();
  }
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    const auto& e = experiments[i];
    RowResult r = run_experiment(e, cfg, i);
    t.add({e.family, e.mixed ? std::string("reversible") : std::string("isometric"), cfg.pipeline, e.curve, e.param,
           r.u, r.ubar, e.ideal.u, e.ideal.ubar, r.u_se, r.ubar_se, r.status});
    if (decay) {
      for (const auto& [target, fit] : r.decays)
        for (std::size_t k = 0; k < fit.xs.size(); ++k)
          decay->add({e.family, e.curve, e.param, std::string(target == UrbTarget::E ? "E" : "Ebar"),
                      static_cast<long long>(fit.xs[k]), fit.ys[k],
                      k < fit.y_stderr.size() ? fit.y_stderr[k] : kNaN, fit.s, fit.c0, fit.c1});
    }
  }
  return t;
}

namespace {

double to_double(const std::string& s) {
  if (s.empty()) return kNaN;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw Error("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw Error("not a number: '" + s + "'");
  return v;
}

int first_column(const CsvData& d, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (const int c = d.column(n); c >= 0) return c;
  return -1;
}

std::string cell_or_empty(const CsvData& d, std::size_t row, int col) {
  return col < 0 ? std::string() : d.rows[row][static_cast<std::size_t>(col)];
}

}  // namespace

Table fit_table(const CsvData& noisy, const CsvData& ideal) {
  const int nu = first_column(noisy, {"u_est", "u"}), nub = first_column(noisy, {"ubar_est", "ubar"});
  const int iu = first_column(ideal, {"u", "u_ideal"}), iub = first_column(ideal, {"ubar", "ubar_ideal"});
  if (nu < 0 || nub < 0) throw Error("noisy table lacks u/ubar columns");
  if (iu < 0 || iub < 0) throw Error("ideal table lacks u/ubar columns");
  if (noisy.rows.size() != ideal.rows.size())
    throw DimensionError("noisy and ideal tables have different row counts");
  const int nf = noisy.column("family"), nc = noisy.column("curve"), nv = noisy.column("variant");
  const int if_ = ideal.column("family"), ic = ideal.column("curve"), iv = ideal.column("variant");
  const int np = first_column(noisy, {"param", "p0"}), ip = first_column(ideal, {"param", "p0"});
  const int ns = noisy.column("status");
  std::map<std::string, std::pair<std::vector<CupSample>, std::vector<CupSample>>> surfaces;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < noisy.rows.size(); ++i) {
    const std::string key_n = cell_or_empty(noisy, i, nf) + "/" + cell_or_empty(noisy, i, nv) + "/" +
                              cell_or_empty(noisy, i, nc);
    const std::string key_i = cell_or_empty(ideal, i, if_) + "/" + cell_or_empty(ideal, i, iv) + "/" +
                              cell_or_empty(ideal, i, ic);
    if (nf >= 0 && if_ >= 0 && key_n != key_i)
      throw DimensionError("row " + std::to_string(i + 1) + ": surfaces differ (" + key_n + " vs " + key_i + ")");
    if (np >= 0 && ip >= 0) {
      const double a = to_double(noisy.rows[i][static_cast<std::size_t>(np)]);
      const double b = to_double(ideal.rows[i][static_cast<std::size_t>(ip)]);
      if (!(std::isnan(a) && std::isnan(b)) && !(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b))))
        throw DimensionError("row " + std::to_string(i + 1) + ": parameters differ");
    }
    if (ns >= 0 && noisy.rows[i][static_cast<std::size_t>(ns)] != "ok") continue;
    CupSample n, d;
    n.u = to_double(noisy.rows[i][static_cast<std::size_t>(nu)]);
    n.ubar = to_double(noisy.rows[i][static_cast<std::size_t>(nub)]);
    d.u = to_double(ideal.rows[i][static_cast<std::size_t>(iu)]);
    d.ubar = to_double(ideal.rows[i][static_cast<std::size_t>(iub)]);
    if (!std::isfinite(n.u) || !std::isfinite(n.ubar) || !std::isfinite(d.u) || !std::isfinite(d.ubar)) continue;
    if (!surfaces.count(key_n)) order.push_back(key_n);
    surfaces[key_n].first.push_back(n);
    surfaces[key_n].second.push_back(d);
  }
  if (order.empty()) throw EmptyDataError("no usable rows to fit");
  Table t;
  t.header = {"surface", "p_A", "p_B", "residual", "n_points"};
  for (const auto& key : order) {
    const auto& [n, d] = surfaces[key];
    const DepolarFit f = fit_depolarizing(n, d);
    t.add({key, f.p_A, f.p_B, f.residual, static_cast<long long>(n.size())});
  }
  return t;
}

int cmd_cupset(const RunConfig& cfg, std::ostream& log) {
  try {
    bool violation = false;
    const Table t = cupset_table(cfg, violation);
    emit(t, cfg);
    if (violation) {
      log << "band violation detected\n";
      return kExitBandViolation;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_protocol(const RunConfig& cfg, std::ostream& log) {
  try {
    Table decay;
    const bool want_decay = !cfg.decay_output.empty();
    const Table t = protocol_table(cfg, want_decay ? &decay : nullptr);
    emit(t, cfg);
    if (want_decay) write_table(decay, cfg.decay_output, cfg.format);
    std::size_t failed = 0;
    for (const auto& row : t.rows)
      if (std::get<std::string>(row.back()).rfind("fit-error", 0) == 0) ++failed;
    if (failed) log << failed << " of " << t.rows.size() << " rows failed to fit\n";
    if (failed == t.rows.size()) return kExitError;
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_fit(const RunConfig& cfg, std::ostream& log) {
  try {
    if (cfg.noisy_path.empty() || cfg.ideal_path.empty()) throw Error("fit needs --noisy and --ideal tables");
    const Table t = fit_table(read_csv(cfg.noisy_path), read_csv(cfg.ideal_path));
    emit(t, cfg);
    if (!cfg.output.empty()) {
      for (const auto& row : t.rows)
        log << std::get<std::string>(row[0]) << ": p_A=" << format_cell(row[1]) << " p_B=" << format_cell(row[2])
            << " residual=" << format_cell(row[3]) << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

namespace {

// Flag values held as strings so that only flags given on the command line
// override a loaded configuration.
struct Flags {
  std::string config, save_config, variant, family, dims, noise, lengths, out, format, pipeline, noisy, ideal, decay;
  int points = 0, sequences = 0, settings = 0;
  std::uint64_t shots = 0, seed = 0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "load a run configuration (JSON)");
  app->add_option("--save-config", f.save_config, "write the effective configuration (JSON)");
  app->add_option("--out", f.out, "output file (default: stdout)");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", f.seed, "master seed");
}

void add_generation(CLI::App* app, Flags& f) {
  app->add_option("--variant", f.variant, "isometric, reversible, full, or classical-<variant>");
  app->add_option("--family", f.family, "family name");
  app->add_option("--points", f.points, "grid points per curve or sample count");
  app->add_option("--dims", f.dims, "d_X,d_A,d_B");
}

RunConfig resolve(const CLI::App* app, const Flags& f, Command cmd) {
  RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error("cannot open " + f.config);
    try {
      cfg = config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("cannot parse " + f.config + ": " + e.what());
    }
  }
  cfg.command = cmd;
  auto given = [&](const char* name) { return app->get_option_no_throw(name) && app->count(name) > 0; };
  if (given("--variant")) cfg.variant = f.variant;
  if (given("--family")) cfg.family = f.family;
  if (given("--points")) cfg.points = f.points;
  if (given("--dims")) cfg.dims = parse_dims(f.dims);
  if (given("--noise")) {
    cfg.noise = load_noise(f.noise);
    if (!given("--seed")) cfg.seed = cfg.noise.seed;
  }
  if (given("--shots")) cfg.noise.shots = f.shots;
  if (given("--sequences")) cfg.sequences = f.sequences;
  if (given("--lengths")) cfg.lengths = parse_lengths(f.lengths);
  if (given("--pipeline")) cfg.pipeline = f.pipeline;
  if (given("--settings")) cfg.settings = f.settings;
  if (given("--average-states")) cfg.average_states = true;
  if (given("--decay-out")) cfg.decay_output = f.decay;
  if (given("--noisy")) cfg.noisy_path = f.noisy;
  if (given("--ideal")) cfg.ideal_path = f.ideal;
  if (given("--out")) cfg.output = f.out;
  if (given("--format")) cfg.format = parse_format(f.format);
  if (given("--seed")) cfg.seed = f.seed;
  if (!f.save_config.empty()) {
    std::ofstream out(f.save_config, std::ios::trunc);
    if (!out) throw Error("cannot open " + f.save_config + " for writing");
    out << to_json(cfg).dump(2) << '\n';
    if (!out) throw Error("write failed for " + f.save_config);
  }
  return cfg;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"CUP-set generation, protocol simulation and noise fitting"};
  app.require_subcommand(1);
  Flags f;

  auto* cup = app.add_subcommand("cupset", "generate (u, ubar) samples and check the sum band");
  add_common(cup, f);
  add_generation(cup, f);

  auto* proto = app.add_subcommand("protocol", "simulate an estimation pipeline on a boundary family");
  add_common(proto, f);
  add_generation(proto, f);
  proto->add_option("--pipeline", f.pipeline, "swap-complementarity, swap-choi, irb, irb-efficient or spectral")
      ->check(CLI::IsMember({"swap-complementarity", "swap-choi", "irb", "irb-efficient", "spectral"}));
  proto->add_option("--noise", f.noise, "noise model (JSON)");
  proto->add_option("--shots", f.shots, "shots per circuit (0: exact expectations)");
  proto->add_option("--sequences", f.sequences, "random sequences per length");
  proto->add_option("--lengths", f.lengths, "sequence lengths, e.g. 1-10 or 1,2,4,8");
  proto->add_option("--settings", f.settings, "spectral settings budget");
  proto->add_flag("--average-states", "average the interleaved protocol over the six input states");
  proto->add_option("--decay-out", f.decay, "write the raw decay table here");

  auto* fit = app.add_subcommand("fit", "fit per-surface depolarizing noise to noisy vs ideal tables");
  add_common(fit, f);
  fit->add_option("--noisy", f.noisy, "table with measured values");
  fit->add_option("--ideal", f.ideal, "table with ideal values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    if (cup->parsed()) return cmd_cupset(resolve(cup, f, Command::Cupset), std::cerr);
    if (proto->parsed()) return cmd_protocol(resolve(proto, f, Command::Protocol), std::cerr);
    return cmd_fit(resolve(fit, f, Command::Fit), std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace cupset
