// genent: command-line driver. Every command is a seeded batch job that
// prints JSON/CSV or, with --out-dir, writes its output plus a run manifest.
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genent/chain_report.hpp"
#include "genent/format.hpp"
#include "genent/hamming.hpp"
#include "genent/io.hpp"
#include "genent/purity.hpp"
#include "genent/random_expect.hpp"

namespace {

using genent::Error;
using genent::ErrorKind;
using genent::Json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Global {
  std::string config_file;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  std::string out_dir;
  std::string format = "json";
  Json config = Json::object();
  CLI::Option* seed_opt = nullptr;
};

/// Fills `value` from the config file unless the flag was given.
template <class T>
void from_config(const Global& g, const CLI::Option* opt, const char* key, T& value) {
  if (opt->count() > 0 || !g.config.contains(key)) return;
  try {
    value = g.config.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

std::string json_to_csv(const Json& j, const std::string& prefix = "") {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      out += json_to_csv(*it, key);
    } else if (it->is_number()) {
      out += key + "," + genent::format_number(it->get<double>()) + "\n";
    } else if (it->is_string()) {
      out += key + "," + it->get<std::string>() + "\n";
    } else {
      out += key + "," + it->dump() + "\n";
    }
  }
  return out;
}

struct Output {
  std::string stem;
  std::string json_text;
  std::optional<std::string> csv_text;  // for tabular results
};

/// Prints to stdout, or writes the file and a manifest under --out-dir.
void emit(const Global& g, const std::string& command, const Json& effective, const std::vector<Output>& outputs,
          double seconds) {
  const std::string hash = genent::config_hash(effective);
  std::vector<genent::ReportFile> files;
  for (const auto& o : outputs) {
    if (g.format == "csv")
      files.push_back({o.stem + "_" + hash + ".csv", o.csv_text ? *o.csv_text : json_to_csv(Json::parse(o.json_text))});
    else
      files.push_back({o.stem + "_" + hash + ".json", o.json_text});
  }
  if (g.out_dir.empty()) {
    for (const auto& f : files) std::cout << f.contents;
    return;
  }
  Json manifest{{"command", command},
                {"config", effective},
                {"master_seed", g.seed},
                {"library_version", genent::kLibraryVersion},
                {"config_hash", hash},
                {"eigensolver", genent::eigensolver_backend()},
                {"wall_time_seconds", seconds}};
  Json names = Json::array();
  for (const auto& f : files) names.push_back(f.name);
  manifest["files"] = names;
  files.push_back({"manifest_" + hash + ".json", manifest.dump(2) + "\n"});
  genent::write_files(g.out_dir, files);
  for (const auto& f : files) std::cout << (std::filesystem::path(g.out_dir) / f.name).string() << "\n";
}

// ---------------------------------------------------------------------------
// Observable sets by name

genent::ObservableSet set_for_state(const std::string& name, const genent::PureState& psi) {
  const int n = psi.sites();
  const int d = psi.local_dim();
  const auto N = psi.basis().register_dim();
  if (name == "all") return genent::all_observables(N);
  if (name == "diag") return genent::diagonal_algebra(N);
  if (name == "local") return d == 2 ? genent::local_qubits(n) : genent::local_qudits(n, d);
  if (name == "bilocal") return genent::pairwise_blocks(n);
  if (name == "spin") {
    genent::require(n == 1, ErrorKind::InvalidArgument, "set 'spin' needs a single-site state of dimension 2J+1");
    return genent::spin_j(d - 1);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown observable set '" + name + "' (all, diag, local, bilocal, spin)");
}

// ---------------------------------------------------------------------------
// Commands

struct PurityArgs {
  std::string state, set = "local", set_file;
  CLI::Option *state_opt, *set_opt, *set_file_opt;
};

Json cmd_purity(const Global& g, PurityArgs& a, Json& effective) {
  from_config(g, a.state_opt, "state", a.state);
  from_config(g, a.set_opt, "set", a.set);
  from_config(g, a.set_file_opt, "set_file", a.set_file);
  genent::require(!a.state.empty(), ErrorKind::InvalidArgument, "purity: --state is required");
  effective = {{"state", a.state}, {"set", a.set_file.empty() ? a.set : "file:" + a.set_file}};
  const auto psi = genent::load_state(a.state);
  const auto h = a.set_file.empty() ? set_for_state(a.set, psi) : genent::observable_set_from_json(genent::read_json_file(a.set_file));
  genent::require(h.hilbert_dim == psi.basis().register_dim(), ErrorKind::DimensionMismatch,
                  "observable set does not act on the state's register");
  Json out{{"set", h.label}, {"dim_h", h.dim_h()}, {"kappa", h.kappa}, {"P_h", genent::purity(psi, h)}};
  if (a.set_file.empty() && a.set == "local" && psi.local_dim() == 2) {
    const genent::PureState full(genent::make_full_basis(psi.sites()), psi.register_amplitudes());
    const auto p = genent::local_purity_mub(full);
    const double nx = genent::npc(genent::change_basis(full, genent::BasisAxis::X));
    const double ny = genent::npc(genent::change_basis(full, genent::BasisAxis::Y));
    const double nz = genent::npc(full);
    const double pred = genent::uncorrelated_prediction(nx, ny, nz, static_cast<double>(full.dim()));
    out["P_x"] = p.x;
    out["P_y"] = p.y;
    out["P_z"] = p.z;
    out["P_loc"] = p.loc;
    out["NPC_x"] = nx;
    out["NPC_y"] = ny;
    out["NPC_z"] = nz;
    out["uncorrelated_prediction"] = pred;
    out["prediction_residual"] = p.loc - pred;
  }
  return out;
}

struct NpcArgs {
  std::string state;
  CLI::Option* state_opt;
};

Json cmd_npc(const Global& g, NpcArgs& a, Json& effective) {
  from_config(g, a.state_opt, "state", a.state);
  genent::require(!a.state.empty(), ErrorKind::InvalidArgument, "npc: --state is required");
  effective = {{"state", a.state}};
  const auto psi = genent::load_state(a.state);
  Json out{{"dim", psi.dim()}, {"IPR_z", genent::ipr(psi)}, {"NPC_z", genent::npc(psi)}};
  if (psi.local_dim() == 2 && psi.basis().is_full()) {
    for (auto axis : {genent::BasisAxis::X, genent::BasisAxis::Y}) {
      const auto rotated = genent::change_basis(psi, axis);
      const std::string s(1, genent::axis_name(axis));
      out["IPR_" + s] = genent::ipr(rotated);
      out["NPC_" + s] = genent::npc(rotated);
    }
  }
  return out;
}

struct ProfileArgs {
  std::string state, basis = "z";
  CLI::Option *state_opt, *basis_opt;
};

Output cmd_profile(const Global& g, ProfileArgs& a, Json& effective) {
  from_config(g, a.state_opt, "state", a.state);
  from_config(g, a.basis_opt, "basis", a.basis);
  genent::require(!a.state.empty(), ErrorKind::InvalidArgument, "hamming-profile: --state is required");
  effective = {{"state", a.state}, {"basis", a.basis}};
  const auto psi = genent::load_state(a.state);
  const auto p = genent::profile(psi, genent::parse_axis(a.basis));
  genent::CsvWriter csv({"f", "n_f", "A_f", "w_f"});
  Json rows = Json::array();
  for (int f = 1; f <= p.sites; ++f) {
    const auto i = static_cast<std::size_t>(f);
    csv.row({static_cast<double>(f), static_cast<double>(p.n_f[i]), p.A_f[i], p.w_f[i]});
    rows.push_back({{"f", f}, {"n_f", p.n_f[i]}, {"A_f", p.A_f[i]}, {"w_f", p.w_f[i]}});
  }
  Json out{{"basis", p.basis_label}, {"A_bar", p.A_bar}, {"IPR", p.ipr}, {"degenerate", p.degenerate}, {"profile", rows}};
  return {"hamming_profile", out.dump(2) + "\n", csv.str()};
}

struct RandomArgs {
  std::string set = "local", ensemble = "complex";
  int n = 0, two_j = 0;
  long long dim = 0;
  std::optional<int> sector_m;
  std::size_t samples = 10000;
  CLI::Option *set_opt, *ensemble_opt, *n_opt, *two_j_opt, *dim_opt, *sector_opt, *samples_opt;
};

Json cmd_random_expect(const Global& g, RandomArgs& a, Json& effective) {
  from_config(g, a.set_opt, "set", a.set);
  from_config(g, a.ensemble_opt, "ensemble", a.ensemble);
  from_config(g, a.n_opt, "n", a.n);
  from_config(g, a.two_j_opt, "two_j", a.two_j);
  from_config(g, a.dim_opt, "dim", a.dim);
  from_config(g, a.samples_opt, "samples", a.samples);
  if (a.sector_opt->count() == 0 && g.config.contains("sector_m")) a.sector_m = g.config.at("sector_m").get<int>();
  genent::require(a.ensemble == "complex" || a.ensemble == "real", ErrorKind::InvalidArgument,
                  "random-expect: --ensemble must be complex or real");
  const bool real = a.ensemble == "real";

  genent::ObservableSet h;
  genent::BasisPtr basis;
  if (a.set == "spin") {
    genent::require(a.two_j >= 1, ErrorKind::InvalidArgument, "random-expect: set 'spin' needs --two-j >= 1");
    h = genent::spin_j(a.two_j);
    basis = genent::make_full_basis(1, a.two_j + 1);
  } else if (a.set == "local" || a.set == "bilocal") {
    genent::require(a.n >= 1, ErrorKind::InvalidArgument, "random-expect: set '" + a.set + "' needs --n");
    h = a.set == "local" ? genent::local_qubits(a.n) : genent::pairwise_blocks(a.n);
    basis = genent::make_full_basis(a.n);
  } else if (a.set == "diag" || a.set == "all") {
    const auto N = a.dim > 0 ? static_cast<genent::Index>(a.dim) : (a.n > 0 ? genent::Index{1} << a.n : 0);
    genent::require(N >= 2, ErrorKind::InvalidArgument, "random-expect: set '" + a.set + "' needs --dim or --n");
    h = a.set == "diag" ? genent::diagonal_algebra(N) : genent::all_observables(N);
    basis = a.n > 0 && a.dim == 0 ? genent::make_full_basis(a.n) : genent::make_full_basis(1, static_cast<int>(N));
  } else {
    throw Error(ErrorKind::InvalidArgument, "random-expect: unknown set '" + a.set + "' (local, bilocal, spin, diag, all)");
  }
  if (a.sector_m) {
    genent::require(a.set == "local" || a.set == "bilocal", ErrorKind::Unsupported,
                    "random-expect: sector ensembles are defined for qubit sets (local, bilocal)");
    basis = genent::make_sector(a.n, *a.sector_m);
  }
  effective = {{"set", a.set},         {"ensemble", a.ensemble}, {"n", a.n},          {"two_j", a.two_j},
               {"dim", a.dim},         {"samples", a.samples},   {"seed", g.seed},
               {"sector_m", a.sector_m ? Json(*a.sector_m) : Json(nullptr)}};

  double closed = 0.0;
  genent::EnsembleKind kind;
  if (a.sector_m) {
    closed = genent::expected_purity_sector(h, *basis, real);
    kind = real ? genent::EnsembleKind::HaarRealSector : genent::EnsembleKind::HaarComplexSector;
  } else if (real) {
    genent::require(h.is_real(), ErrorKind::Unsupported,
                    "random-expect: the real ensemble needs a set of real observables ('" + a.set + "' has imaginary ones)");
    closed = genent::expected_purity_real(h, basis->register_dim());
    kind = genent::EnsembleKind::HaarReal;
  } else {
    closed = genent::expected_purity_haar(h, basis->register_dim());
    kind = genent::EnsembleKind::HaarComplex;
  }
  const auto mc = genent::monte_carlo_expected_purity(h, {kind, basis, g.seed, {}}, a.samples, g.jobs);
  Json out{{"set", h.label},
           {"ensemble", a.ensemble},
           {"basis", basis->describe()},
           {"closed_form", closed},
           {"monte_carlo_mean", mc.mean},
           {"monte_carlo_stderr", mc.std_error},
           {"samples", mc.count},
           {"sigma_distance", mc.std_error > 0 ? std::abs(mc.mean - closed) / mc.std_error : 0.0}};
  if (a.set == "bilocal" && a.sector_m && *a.sector_m == 0 && real && a.n % 2 == 0) {
    out["lambda"] = genent::bilocal_lambda(a.n);
    out["variant_lambda_squared_over_N0"] = genent::bilocal_sector_real_lambda2_over_n0(a.n);
  }
  return out;
}

struct ChainArgs {
  int n = 0, realizations = 0, bins = 0;
  std::vector<double> ratios;
  CLI::Option *n_opt, *realizations_opt, *bins_opt, *ratios_opt;
};

int cmd_chain(const Global& g, ChainArgs& a, const std::chrono::steady_clock::time_point start) {
  genent::require(!g.config_file.empty() || a.n_opt->count() > 0, ErrorKind::InvalidArgument,
                  "chain: pass --config FILE (and/or --n, --ratios, --realizations)");
  Json cfg = g.config;
  if (a.n_opt->count()) cfg["n"] = a.n;
  if (a.realizations_opt->count()) cfg["realizations"] = a.realizations;
  if (a.bins_opt->count()) cfg["bins"] = a.bins;
  if (a.ratios_opt->count()) cfg["ratios"] = a.ratios;
  if (g.seed_opt->count()) cfg["master_seed"] = g.seed;
  const auto experiment = genent::chain_experiment_from_json(cfg);
  const Json effective = genent::chain_experiment_to_json(experiment);
  const std::string hash = genent::config_hash(effective);

  const auto data = genent::run_ensemble(experiment, g.jobs);
  const auto analysis = genent::analyze_dataset(data);
  auto files = genent::chain_report_files(data, analysis, hash);

  std::size_t failures = 0, total = 0;
  bool ratio_lost = false;
  for (const auto& rr : data.ratios) {
    failures += rr.failures;
    total += rr.realizations.size();
    if (rr.failures == rr.realizations.size()) ratio_lost = true;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
  Json manifest{{"command", "chain"},
                {"config", effective},
                {"master_seed", experiment.master_seed},
                {"library_version", genent::kLibraryVersion},
                {"config_hash", hash},
                {"eigensolver", genent::eigensolver_backend()},
                {"jobs", genent::resolve_jobs(g.jobs)},
                {"failed_realizations", failures},
                {"wall_time_seconds", seconds}};
  Json names = Json::array();
  for (const auto& f : files) names.push_back(f.name);
  manifest["files"] = names;
  files.push_back({"manifest_" + hash + ".json", manifest.dump(2) + "\n"});
  genent::write_files(dir, files);
  for (const auto& f : files) std::cout << (std::filesystem::path(dir) / f.name).string() << "\n";
  if (failures > 0)
    std::cerr << "genent chain: " << failures << " of " << total
              << " realizations failed and were excluded (see failure_log in the summary)\n";
  return ratio_lost ? kExitNumerical : 0;
}

struct FitArgs {
  std::string input, x = "mean_npc", y = "mean_p_loc";
  std::optional<double> ratio;
  int trimmed = 0;
  std::size_t min_count = 5;
  CLI::Option *input_opt, *x_opt, *y_opt, *trimmed_opt, *min_count_opt, *ratio_opt;
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Json cmd_fit(const Global& g, FitArgs& a, Json& effective) {
  from_config(g, a.input_opt, "input", a.input);
  from_config(g, a.x_opt, "x", a.x);
  from_config(g, a.y_opt, "y", a.y);
  from_config(g, a.trimmed_opt, "edge_trimmed", a.trimmed);
  from_config(g, a.min_count_opt, "min_count", a.min_count);
  if (a.ratio_opt->count() == 0 && g.config.contains("ratio")) a.ratio = g.config.at("ratio").get<double>();
  genent::require(!a.input.empty(), ErrorKind::InvalidArgument, "fit: --input is required");
  effective = {{"input", a.input}, {"x", a.x}, {"y", a.y}, {"edge_trimmed", a.trimmed}, {"min_count", a.min_count},
               {"ratio", a.ratio ? Json(*a.ratio) : Json(nullptr)}};
  std::ifstream in(a.input);
  genent::require(in.good(), ErrorKind::InvalidArgument, "fit: cannot open '" + a.input + "'");
  std::string line;
  genent::require(static_cast<bool>(std::getline(in, line)), ErrorKind::InvalidArgument, "fit: empty input");
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int cx = column(a.x), cy = column(a.y);
  genent::require(cx >= 0 && cy >= 0, ErrorKind::InvalidArgument, "fit: input lacks columns '" + a.x + "' and '" + a.y + "'");
  const int c_ratio = column("ratio"), c_trim = column("edge_trimmed"), c_count = column("count");
  std::vector<double> xs, ys;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    genent::require(cells.size() == header.size(), ErrorKind::InvalidArgument,
                    "fit: line " + std::to_string(lineno) + " has the wrong number of cells");
    auto num = [&](int c) {
      try {
        return std::stod(cells[static_cast<std::size_t>(c)]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "fit: line " + std::to_string(lineno) + ": not a number");
      }
    };
    if (a.ratio && c_ratio >= 0 && std::abs(num(c_ratio) - *a.ratio) > 1e-12) continue;
    if (c_trim >= 0 && static_cast<int>(num(c_trim)) != a.trimmed) continue;
    if (c_count >= 0 && num(c_count) < static_cast<double>(a.min_count)) continue;
    xs.push_back(num(cx));
    ys.push_back(num(cy));
  }
  const auto f = genent::fit_hyperbola(xs, ys);
  Json out{{"a", f.a}, {"b", f.b}, {"c", f.c}, {"residual_norm", f.residual_norm}, {"points", f.points}};
  if (f.at_bracket_edge) out["warning"] = f.warning;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Generalized-entanglement purities, random-state expectations and disordered-chain experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the command name
  Global g;
  app.add_option("--config", g.config_file, "JSON file with option values; command-line flags take precedence");
  g.seed_opt = app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)");
  app.add_option("--out-dir", g.out_dir, "Write outputs and a manifest here instead of printing");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  PurityArgs pa;
  auto* purity = app.add_subcommand("purity", "Purity of a state relative to an observable set");
  pa.state_opt = purity->add_option("--state", pa.state, "State JSON file");
  pa.set_opt = purity->add_option("--set", pa.set, "all | diag | local | bilocal | spin");
  pa.set_file_opt = purity->add_option("--set-file", pa.set_file, "Observable set JSON (Pauli strings)");

  NpcArgs na;
  auto* npc = app.add_subcommand("npc", "Number of principal components in the z (and x, y) product bases");
  na.state_opt = npc->add_option("--state", na.state, "State JSON file");

  ProfileArgs hp;
  auto* prof = app.add_subcommand("hamming-profile", "Pair averages A_f by Hamming distance");
  hp.state_opt = prof->add_option("--state", hp.state, "State JSON file");
  hp.basis_opt = prof->add_option("--basis", hp.basis, "x | y | z");

  RandomArgs ra;
  auto* rnd = app.add_subcommand("random-expect", "Closed-form expected purity with a Monte Carlo check");
  ra.set_opt = rnd->add_option("--set", ra.set, "local | bilocal | spin | diag | all");
  ra.ensemble_opt = rnd->add_option("--ensemble", ra.ensemble, "complex | real");
  ra.n_opt = rnd->add_option("--n", ra.n, "Number of qubits");
  ra.two_j_opt = rnd->add_option("--two-j", ra.two_j, "2J for the spin set");
  ra.dim_opt = rnd->add_option("--dim", ra.dim, "Hilbert-space dimension for diag/all");
  ra.sector_opt = rnd->add_option("--sector-m", ra.sector_m, "Restrict to the sector of this magnetization");
  ra.samples_opt = rnd->add_option("--samples", ra.samples, "Monte Carlo samples");

  ChainArgs ca;
  auto* chain = app.add_subcommand("chain", "Disordered Heisenberg chain ensemble (config via --config)");
  ca.n_opt = chain->add_option("--n", ca.n, "Sites");
  ca.realizations_opt = chain->add_option("--realizations", ca.realizations, "Disorder realizations per ratio");
  ca.bins_opt = chain->add_option("--bins", ca.bins, "NPC histogram bins");
  ca.ratios_opt = chain->add_option("--ratios", ca.ratios, "J / disorder_width values");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit P = a / (x + b) + c to CSV columns");
  fa.input_opt = fit->add_option("--input", fa.input, "CSV file");
  fa.x_opt = fit->add_option("--x", fa.x, "x column");
  fa.y_opt = fit->add_option("--y", fa.y, "y column");
  fa.ratio_opt = fit->add_option("--ratio", fa.ratio, "Keep rows with this ratio");
  fa.trimmed_opt = fit->add_option("--edge-trimmed", fa.trimmed, "Keep rows with this edge_trimmed flag");
  fa.min_count_opt = fit->add_option("--min-count", fa.min_count, "Minimum bin count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!g.config_file.empty()) g.config = genent::read_json_file(g.config_file);
    genent::require(g.config.is_object(), ErrorKind::InvalidArgument, "config file must hold a JSON object");
    if (g.seed_opt->count() == 0 && g.config.contains("seed")) g.seed = g.config.at("seed").get<std::uint64_t>();

    auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    Json effective;
    if (purity->parsed()) {
      const auto out = cmd_purity(g, pa, effective);
      emit(g, "purity", effective, {{"purity", out.dump(2) + "\n", std::nullopt}}, seconds());
    } else if (npc->parsed()) {
      const auto out = cmd_npc(g, na, effective);
      emit(g, "npc", effective, {{"npc", out.dump(2) + "\n", std::nullopt}}, seconds());
    } else if (prof->parsed()) {
      const auto out = cmd_profile(g, hp, effective);
      emit(g, "hamming-profile", effective, {out}, seconds());
    } else if (rnd->parsed()) {
      const auto out = cmd_random_expect(g, ra, effective);
      emit(g, "random-expect", effective, {{"random_expect", out.dump(2) + "\n", std::nullopt}}, seconds());
    } else if (chain->parsed()) {
      return cmd_chain(g, ca, start);
    } else if (fit->parsed()) {
      const auto out = cmd_fit(g, fa, effective);
      emit(g, "fit", effective, {{"fit", out.dump(2) + "\n", std::nullopt}}, seconds());
    }
  } catch (const Error& e) {
    std::cerr << "genent: " << e.what() << "\n";
    return e.is_numerical() ? kExitNumerical : kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "genent: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "genent: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "genent: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
