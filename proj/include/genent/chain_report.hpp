#pragma once

// Reductions of a chain dataset into plot-ready tables (NPC histograms, the
// P_loc-vs-NPC scatter and binned curve with its hyperbolic fit, binned A_f,
// spacing histograms) and their CSV/JSON serialization.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "genent/format.hpp"
#include "genent/io.hpp"
#include "genent/spin_chain.hpp"

namespace genent {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct ChainReportOptions {
  std::size_t fit_min_count = 5;       // bins with fewer eigenvectors are left out of the fit
  std::size_t peak_min_count = 20;     // same, for locating the A_2 peak
  double monotone_sigma = 3.0;         // allowed upward step between neighbouring bins, in combined stderr
  double spacing_max = 5.0;
  double spacing_bin = 0.1;
  int inset_bins = 40;
};

inline ChainExperiment chain_experiment_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::InvalidArgument, "chain config must be a JSON object");
  static const std::vector<std::string> known{"n",          "ratios",        "realizations", "master_seed",
                                              "eps",        "bins",          "disorder_width", "edge_fraction",
                                              "inset_ratio", "inset_lo",     "inset_hi",     "max_attempts"};
  for (auto it = j.begin(); it != j.end(); ++it)
    require(std::find(known.begin(), known.end(), it.key()) != known.end(), ErrorKind::InvalidArgument,
            "chain config: unknown key '" + it.key() + "'");
  ChainExperiment c;
  try {
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("ratios")) c.ratios = j.at("ratios").get<std::vector<double>>();
    if (j.contains("realizations")) c.realizations = j.at("realizations").get<int>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("bins")) c.bins = j.at("bins").get<int>();
    if (j.contains("disorder_width")) c.disorder_width = j.at("disorder_width").get<double>();
    if (j.contains("edge_fraction")) c.edge_fraction = j.at("edge_fraction").get<double>();
    if (j.contains("inset_ratio")) c.inset_ratio = j.at("inset_ratio").get<double>();
    if (j.contains("inset_lo")) c.inset_lo = j.at("inset_lo").get<double>();
    if (j.contains("inset_hi")) c.inset_hi = j.at("inset_hi").get<double>();
    if (j.contains("max_attempts")) c.max_attempts = j.at("max_attempts").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("chain config: ") + e.what());
  }
  c.validate();
  return c;
}

inline Json chain_experiment_to_json(const ChainExperiment& c) {
  return Json{{"n", c.n},
              {"ratios", c.ratios},
              {"realizations", c.realizations},
              {"master_seed", c.master_seed},
              {"eps", c.eps},
              {"bins", c.bins},
              {"disorder_width", c.disorder_width},
              {"edge_fraction", c.edge_fraction},
              {"inset_ratio", c.inset_ratio},
              {"inset_lo", c.inset_lo},
              {"inset_hi", c.inset_hi},
              {"max_attempts", c.max_attempts}};
}

/// FNV-1a of the canonical (sorted-key) JSON form.
inline std::string config_hash(const Json& config) { return hex64(fnv1a64(config.dump())); }

// ---------------------------------------------------------------------------
// Analysis

struct MomentCheck {
  std::size_t vectors = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double reference_variance = 0.0;
  double relative_variance_error = 0.0;
  double excess_kurtosis = 0.0;
  std::vector<double> histogram;  // density on [-4 sigma_ref, 4 sigma_ref)
  double histogram_lo = 0.0;
  double histogram_width = 0.0;
};

inline MomentCheck gaussian_moment_check(const std::vector<std::vector<double>>& vectors, double reference_variance,
                                         int bins) {
  MomentCheck m;
  m.vectors = vectors.size();
  m.reference_variance = reference_variance;
  std::vector<double> all;
  for (const auto& v : vectors) all.insert(all.end(), v.begin(), v.end());
  m.samples = all.size();
  const double sigma = std::sqrt(reference_variance);
  m.histogram_lo = -4 * sigma;
  m.histogram_width = 8 * sigma / bins;
  m.histogram.assign(static_cast<std::size_t>(bins), 0.0);
  if (all.empty()) return m;
  const double count = static_cast<double>(all.size());
  m.mean = pairwise_sum(all) / count;
  std::vector<double> d2(all.size()), d4(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double d = all[i] - m.mean;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
    const double pos = (all[i] - m.histogram_lo) / m.histogram_width;
    if (pos >= 0 && pos < bins) m.histogram[static_cast<std::size_t>(pos)] += 1.0;
  }
  m.variance = pairwise_sum(d2) / count;
  m.relative_variance_error = (m.variance - reference_variance) / reference_variance;
  m.excess_kurtosis = (pairwise_sum(d4) / count) / (m.variance * m.variance) - 3.0;
  for (double& h : m.histogram) h /= count * m.histogram_width;
  return m;
}

struct MonotoneCheck {
  bool passed = true;
  std::size_t compared = 0;
  std::size_t strict_increases = 0;  // informational
  double worst_sigma = -std::numeric_limits<double>::infinity();  // largest upward step in units of stderr
  int worst_bin = -1;
};

/// Decreasing within noise: no step up between neighbouring populated bins
/// exceeds `sigma` combined standard errors.
inline MonotoneCheck check_monotone(const std::vector<NpcBin>& bins, std::size_t min_count, double sigma) {
  MonotoneCheck m;
  const NpcBin* prev = nullptr;
  for (const auto& b : bins) {
    if (b.count < min_count) continue;
    if (prev) {
      ++m.compared;
      const double step = b.mean_p_loc - prev->mean_p_loc;
      if (step > 0) ++m.strict_increases;
      const double se = std::hypot(b.stderr_p_loc, prev->stderr_p_loc);
      const double z = se > 0 ? step / se : (step > 0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (z > m.worst_sigma) {
        m.worst_sigma = z;
        m.worst_bin = b.lower;
      }
      if (z > sigma) m.passed = false;
    }
    prev = &b;
  }
  return m;
}

struct PeakCheck {
  int bin = -1;            // NPC bin holding the largest mean A_2
  double A2 = 0.0;
  double next_largest = 0.0;  // largest other A_f in that bin
  int next_f = -1;
};

inline PeakCheck locate_A2_peak(const std::vector<NpcBin>& bins, std::size_t min_count) {
  PeakCheck p;
  for (const auto& b : bins)
    if (b.count >= min_count && b.mean_A_f.size() > 2 && b.mean_A_f[2] > p.A2) {
      p.A2 = b.mean_A_f[2];
      p.bin = b.lower;
      p.next_largest = 0.0;
      p.next_f = -1;
      for (std::size_t f = 1; f < b.mean_A_f.size(); ++f)
        if (f != 2 && b.mean_A_f[f] > p.next_largest) {
          p.next_largest = b.mean_A_f[f];
          p.next_f = static_cast<int>(f);
        }
    }
  return p;
}

struct RatioAnalysis {
  double ratio = 0.0;
  std::vector<NpcBin> bins;          // all eigenvectors
  std::vector<NpcBin> bins_trimmed;  // spectral edges removed
  std::optional<HyperbolaFit> fit, fit_trimmed;
  std::string fit_error;
  MonotoneCheck monotone;
  PeakCheck peak;
  std::vector<double> npc_histogram;  // fraction of eigenvectors per bin
  std::vector<double> spacing_density;
  std::size_t eigenvectors = 0;
  double mean_npc = 0.0;
};

struct ChainAnalysis {
  ChainReportOptions options;
  double npc_hist_lo = 0.0;
  double npc_hist_width = 1.0;
  std::vector<RatioAnalysis> ratios;
  std::optional<MomentCheck> inset;
};

inline ChainAnalysis analyze_dataset(const ChainDataset& d, const ChainReportOptions& opt = {}) {
  ChainAnalysis a;
  a.options = opt;
  const double n0 = static_cast<double>(d.sector_dim);
  double max_npc = 1.0;
  for (const auto& rr : d.ratios)
    for (const auto* r : select_records(rr, false, 0.0)) max_npc = std::max(max_npc, r->npc_z);
  a.npc_hist_lo = 0.0;
  a.npc_hist_width = std::ceil(max_npc) / d.config.bins;
  const int spacing_bins = static_cast<int>(std::lround(opt.spacing_max / opt.spacing_bin));
  std::vector<std::vector<double>> inset;
  for (const auto& rr : d.ratios) {
    RatioAnalysis ra;
    ra.ratio = rr.ratio;
    const auto all = select_records(rr, false, 0.0);
    ra.eigenvectors = all.size();
    ra.bins = bin_by_npc(all, n0);
    ra.bins_trimmed = bin_by_npc(select_records(rr, true, d.config.edge_fraction), n0);
    try {
      ra.fit = fit_binned(ra.bins, opt.fit_min_count);
      ra.fit_trimmed = fit_binned(ra.bins_trimmed, opt.fit_min_count);
    } catch (const Error& e) {
      ra.fit_error = e.what();
    }
    ra.monotone = check_monotone(ra.bins, opt.fit_min_count, opt.monotone_sigma);
    ra.peak = locate_A2_peak(ra.bins, opt.peak_min_count);
    ra.npc_histogram.assign(static_cast<std::size_t>(d.config.bins), 0.0);
    std::vector<double> npcs;
    for (const auto* r : all) {
      npcs.push_back(r->npc_z);
      const auto b = std::min(static_cast<std::size_t>((r->npc_z - a.npc_hist_lo) / a.npc_hist_width),
                              ra.npc_histogram.size() - 1);
      ra.npc_histogram[b] += 1.0;
    }
    if (!all.empty()) {
      for (double& h : ra.npc_histogram) h /= static_cast<double>(all.size());
      ra.mean_npc = pairwise_sum(npcs) / static_cast<double>(npcs.size());
    }
    std::vector<double> spacings;
    for (const auto& real : rr.realizations) {
      if (!real.ok) continue;
      spacings.insert(spacings.end(), real.levels.unfolded_spacings.begin(), real.levels.unfolded_spacings.end());
      if (std::abs(rr.ratio - d.config.inset_ratio) < 1e-12)
        inset.insert(inset.end(), real.inset_components.begin(), real.inset_components.end());
    }
    ra.spacing_density = density_histogram(spacings, opt.spacing_max, spacing_bins);
    a.ratios.push_back(std::move(ra));
  }
  const bool has_inset_ratio = std::any_of(d.config.ratios.begin(), d.config.ratios.end(),
                                           [&](double r) { return std::abs(r - d.config.inset_ratio) < 1e-12; });
  if (has_inset_ratio) a.inset = gaussian_moment_check(inset, 1.0 / n0, opt.inset_bins);
  return a;
}

// ---------------------------------------------------------------------------
// Serialization

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row_strings(header); }

  CsvWriter& row(const std::vector<double>& values) {
    require(values.size() == columns_, ErrorKind::DimensionMismatch, "csv: column count");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
    return *this;
  }

  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
  }
  std::size_t columns_;
  std::ostringstream out_;
};

struct ReportFile {
  std::string name;
  std::string contents;
};

inline Json fit_to_json(const std::optional<HyperbolaFit>& f) {
  if (!f) return nullptr;
  Json j{{"a", f->a}, {"b", f->b}, {"c", f->c}, {"residual_norm", f->residual_norm}, {"points", f->points}};
  if (f->at_bracket_edge) j["warning"] = f->warning;
  return j;
}

/// Every table and the summary; names embed the config hash. Contents are a
/// pure function of the dataset.
inline std::vector<ReportFile> chain_report_files(const ChainDataset& d, const ChainAnalysis& a, const std::string& hash) {
  const int n = d.config.n;
  const double n0 = static_cast<double>(d.sector_dim);
  std::vector<ReportFile> files;
  auto name = [&](const std::string& stem, const char* ext) { return stem + "_" + hash + ext; };

  CsvWriter hist({"ratio", "npc_lo", "npc_hi", "fraction"});
  for (const auto& ra : a.ratios)
    for (std::size_t b = 0; b < ra.npc_histogram.size(); ++b) {
      const double lo = a.npc_hist_lo + a.npc_hist_width * static_cast<double>(b);
      hist.row({ra.ratio, lo, lo + a.npc_hist_width, ra.npc_histogram[b]});
    }
  files.push_back({name("npc_histogram", ".csv"), hist.str()});

  if (a.inset) {
    CsvWriter inset({"component_lo", "component_hi", "density", "gaussian_density"});
    const double var = a.inset->reference_variance;
    for (std::size_t b = 0; b < a.inset->histogram.size(); ++b) {
      const double lo = a.inset->histogram_lo + a.inset->histogram_width * static_cast<double>(b);
      const double mid = lo + 0.5 * a.inset->histogram_width;
      inset.row({lo, lo + a.inset->histogram_width, a.inset->histogram[b],
                 std::exp(-mid * mid / (2 * var)) / std::sqrt(2 * std::numbers::pi * var)});
    }
    files.push_back({name("inset_components", ".csv"), inset.str()});
  }

  CsvWriter scatter({"ratio", "realization", "level", "energy", "npc_z", "p_loc", "prediction"});
  for (const auto& rr : d.ratios)
    for (const auto& real : rr.realizations)
      if (real.ok)
        for (const auto& r : real.records)
          scatter.row({rr.ratio, static_cast<double>(r.realization_id), static_cast<double>(r.level), r.energy, r.npc_z,
                       r.p_loc, sector_prediction_sz0(r.npc_z, n0)});
  files.push_back({name("ploc_npc_scatter", ".csv"), scatter.str()});

  CsvWriter binned({"ratio", "edge_trimmed", "npc_lo", "count", "mean_npc", "mean_p_loc", "stderr_p_loc",
                    "mean_prediction", "fit"});
  for (const auto& ra : a.ratios)
    for (int trimmed = 0; trimmed < 2; ++trimmed) {
      const auto& bins = trimmed ? ra.bins_trimmed : ra.bins;
      const auto& fit = trimmed ? ra.fit_trimmed : ra.fit;
      for (const auto& b : bins)
        binned.row({ra.ratio, static_cast<double>(trimmed), static_cast<double>(b.lower), static_cast<double>(b.count),
                    b.mean_npc, b.mean_p_loc, b.stderr_p_loc, b.mean_prediction,
                    fit ? fit->a / (b.mean_npc + fit->b) + fit->c : std::nan("")});
    }
  files.push_back({name("ploc_npc_binned", ".csv"), binned.str()});

  std::vector<std::string> af_header{"ratio", "npc_lo", "count", "mean_npc"};
  for (int f = 2; f <= n; f += 2) af_header.push_back("A_" + std::to_string(f));
  CsvWriter af(af_header);
  for (const auto& ra : a.ratios)
    for (const auto& b : ra.bins) {
      std::vector<double> row{ra.ratio, static_cast<double>(b.lower), static_cast<double>(b.count), b.mean_npc};
      for (int f = 2; f <= n; f += 2) row.push_back(b.mean_A_f[static_cast<std::size_t>(f)]);
      af.row(row);
    }
  files.push_back({name("hamming_npc_binned", ".csv"), af.str()});

  CsvWriter spacing({"ratio", "s_lo", "s_hi", "density", "poisson", "wigner_goe"});
  for (const auto& ra : a.ratios)
    for (std::size_t b = 0; b < ra.spacing_density.size(); ++b) {
      const double lo = a.options.spacing_bin * static_cast<double>(b), hi = lo + a.options.spacing_bin;
      spacing.row({ra.ratio, lo, hi, ra.spacing_density[b],
                   (std::exp(-lo) - std::exp(-hi)) / a.options.spacing_bin,
                   (std::exp(-std::numbers::pi * lo * lo / 4) - std::exp(-std::numbers::pi * hi * hi / 4)) /
                       a.options.spacing_bin});
    }
  files.push_back({name("level_spacing", ".csv"), spacing.str()});

  CsvWriter gaps({"ratio", "J", "mean_gap_ratio", "stderr", "realizations", "failures", "resampled",
                  "excluded_degenerate_spacings"});
  for (const auto& rr : d.ratios)
    gaps.row({rr.ratio, rr.J, rr.gap_ratio.mean, rr.gap_ratio.std_error, static_cast<double>(rr.gap_ratio.count),
              static_cast<double>(rr.failures), static_cast<double>(rr.resampled),
              static_cast<double>(rr.excluded_degenerate_spacings)});
  files.push_back({name("level_statistics", ".csv"), gaps.str()});

  Json summary;
  summary["config_hash"] = hash;
  summary["config"] = chain_experiment_to_json(d.config);
  summary["sector"] = {{"n", n}, {"magnetization", 0}, {"dim", d.sector_dim}};
  summary["metadata"] = {
      {"parameterization", "disorder_width fixed, J = ratio * disorder_width"},
      {"disorder", "eps_i = eps + U[-disorder_width/2, disorder_width/2]"},
      {"level_statistics", "mean consecutive-gap ratio over the central band, averaged per realization"},
      {"unfolding", "degree-7 polynomial fit of the staircase on the central band"},
      {"edge_fraction", d.config.edge_fraction},
      {"npc_binning", "unit-width bins [k, k+1)"},
      {"fit", "P_loc = a / (NPC_z + b) + c on binned means, bins with count >= fit_min_count"},
      {"fit_min_count", a.options.fit_min_count},
      {"monotone_rule", "no upward step between neighbouring fitted bins above monotone_sigma combined stderr"},
      {"monotone_sigma", a.options.monotone_sigma},
      {"peak_min_count", a.options.peak_min_count},
      {"eigensolver", eigensolver_backend()}};
  Json ratios = Json::array();
  for (std::size_t i = 0; i < a.ratios.size(); ++i) {
    const auto& ra = a.ratios[i];
    const auto& rr = d.ratios[i];
    Json r{{"ratio", ra.ratio},
           {"J", rr.J},
           {"mean_gap_ratio", rr.gap_ratio.mean},
           {"gap_ratio_stderr", rr.gap_ratio.std_error},
           {"realizations_ok", rr.realizations.size() - rr.failures},
           {"failures", rr.failures},
           {"resampled", rr.resampled},
           {"eigenvectors", ra.eigenvectors},
           {"mean_npc", ra.mean_npc},
           {"fit", fit_to_json(ra.fit)},
           {"fit_edge_trimmed", fit_to_json(ra.fit_trimmed)},
           {"monotone", {{"passed", ra.monotone.passed},
                         {"compared", ra.monotone.compared},
                         {"strict_increases", ra.monotone.strict_increases},
                         {"worst_sigma", ra.monotone.compared ? Json(ra.monotone.worst_sigma) : Json(nullptr)},
                         {"worst_bin", ra.monotone.worst_bin}}},
           {"A2_peak", {{"npc_bin", ra.peak.bin}, {"A2", ra.peak.A2}, {"next_largest", ra.peak.next_largest},
                        {"next_f", ra.peak.next_f}}}};
    if (!ra.fit_error.empty()) r["fit_error"] = ra.fit_error;
    Json failures = Json::array();
    for (const auto& real : rr.realizations)
      if (!real.ok) failures.push_back({{"realization", real.realization_id}, {"error", real.failure}});
    r["failure_log"] = failures;
    ratios.push_back(r);
  }
  summary["ratios"] = ratios;
  if (a.inset)
    summary["inset"] = {{"ratio", d.config.inset_ratio},
                        {"npc_window", {d.config.inset_lo, d.config.inset_hi}},
                        {"vectors", a.inset->vectors},
                        {"components", a.inset->samples},
                        {"mean", a.inset->mean},
                        {"variance", a.inset->variance},
                        {"reference_variance", a.inset->reference_variance},
                        {"relative_variance_error", a.inset->relative_variance_error},
                        {"excess_kurtosis", a.inset->excess_kurtosis}};
  files.push_back({name("summary", ".json"), summary.dump(2) + "\n"});
  return files;
}

inline void write_files(const std::filesystem::path& dir, const std::vector<ReportFile>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    out << f.contents;
    require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write " + (dir / f.name).string());
  }
}

}  // namespace genent
