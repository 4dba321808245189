#include "rlg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rlg/graph_io.hpp"
#include "rlg/model_spectrum.hpp"
#include "rlg/rank_metrics.hpp"
#include "rlg/rng.hpp"

namespace rlg {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

template <class T>
T parse_value(const std::string& text, const std::string& key) {
  T out{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: bad value '" + text + "' for " + key);
  }
  return out;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

} // namespace

Index DkrGridPoint::k(Index n) const {
  return static_cast<Index>(std::llround(std::pow(static_cast<double>(n), beta)));
}

Index DkrGridPoint::r(Index n) const {
  return std::max<Index>(1, static_cast<Index>(std::llround(std::pow(static_cast<double>(n), alpha))));
}

std::string DkrGridPoint::column() const { return "dkr_a" + fmt(alpha) + "_b" + fmt(beta); }

std::vector<DkrGridPoint> default_dkr_grid() {
  std::vector<DkrGridPoint> grid;
  for (double a : {0.0, 0.25, 0.5, 0.75})
    for (double b : {0.5, 0.75, 0.8, 0.95}) grid.push_back({a, b});
  return grid;
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("config: n_list is empty");
  std::set<Index> seen;
  for (Index n : n_list) {
    if (n < 8 || n % 2 != 0) {
      throw std::invalid_argument("config: sizes must be even and >= 8, got " + std::to_string(n));
    }
    if (!seen.insert(n).second) throw std::invalid_argument("config: repeated size " + std::to_string(n));
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("config: p must lie in (0, 1]");
  for (const auto& g : dkr_grid) {
    if (!(g.alpha >= 0.0 && g.alpha <= 1.0 && g.beta >= 0.0 && g.beta <= 1.0)) {
      throw std::invalid_argument("config: dkr exponents must lie in [0, 1]");
    }
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "n_list") {
      cfg.n_list.clear();
      for (const auto& t : split(val, ',')) cfg.n_list.push_back(parse_value<Index>(t, key));
    } else if (key == "p") {
      cfg.p = parse_value<double>(val, key);
    } else if (key == "trials") {
      cfg.trials = parse_value<Index>(val, key);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_value<std::uint64_t>(val, key);
    } else if (key == "dkr_grid") {
      cfg.dkr_grid.clear();
      for (const auto& t : split(val, ',')) {
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("config: dkr_grid wants alpha:beta");
        cfg.dkr_grid.push_back({parse_value<double>(trim(t.substr(0, colon)), key),
                                parse_value<double>(trim(t.substr(colon + 1)), key)});
      }
    } else if (key == "tie_policy") {
      if (val == "ascending_index") cfg.tie_policy = TiePolicy::ascending_index;
      else if (val == "descending_index") cfg.tie_policy = TiePolicy::descending_index;
      else throw std::invalid_argument("config: unknown tie_policy '" + val + "'");
    } else if (key == "spectral_order") {
      if (val == "algebraic") cfg.spectral_order = SpectralOrder::algebraic;
      else if (val == "magnitude") cfg.spectral_order = SpectralOrder::magnitude;
      else throw std::invalid_argument("config: unknown spectral_order '" + val + "'");
    } else if (key == "output") {
      cfg.output = val;
    } else if (key == "threads") {
      cfg.threads = parse_value<unsigned>(val, key);
    } else if (key == "record_timing") {
      if (val == "true" || val == "1") cfg.record_timing = true;
      else if (val == "false" || val == "0") cfg.record_timing = false;
      else throw std::invalid_argument("config: record_timing wants true or false");
    } else if (key == "plot_n") {
      cfg.plot_n = parse_value<Index>(val, key);
    } else if (key == "plot_trial") {
      cfg.plot_trial = parse_value<Index>(val, key);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_config(in);
}

std::uint64_t trial_seed(std::uint64_t master_seed, Index n, Index trial) {
  return derive_seed({master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

TrialRecord run_trial(const ExperimentConfig& config, Index n, Index trial, TrialVectors* vectors) {
  TrialRecord rec;
  rec.n = n;
  rec.p = config.p;
  rec.trial = trial;
  rec.seed = trial_seed(config.master_seed, n, trial);

  const auto params = ModelParams::make(n, config.p);
  const auto latent = sample_graph(params, derive_seed({rec.seed, kGraphStream}));
  const auto graph =
      scramble(latent, random_permutation(static_cast<std::size_t>(n), derive_seed({rec.seed, kPermStream})));
  const Permutation truth = truth_ordering(graph);
  const Permutation to_latent = truth.inverse();

  auto position_map = [&](const Permutation& order) { return to_latent.compose(order); };

  const auto baseline = align_up_to_reversal(degree_baseline_order(graph), truth).first;
  const auto base_sigma = position_map(baseline);
  rec.baseline_D = kendall_distance(base_sigma);
  rec.baseline_F = spearman_footrule(base_sigma);

  RecoveryOptions opts;
  opts.solver.seed = derive_seed({rec.seed, kSolverStream});
  opts.order = config.spectral_order;
  opts.ties = config.tie_policy;

  const auto start = std::chrono::steady_clock::now();
  OrderingResult result;
  try {
    result = recover_order(graph, opts);
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.lambda2_hat = nan();
    rec.eigvec_distance = nan();
    rec.tau_paper = nan();
    rec.tau_standard = nan();
    rec.dkr.assign(config.dkr_grid.size(), 0);
    return rec;
  }
  if (config.record_timing) {
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  auto [aligned, reversed] = align_up_to_reversal(result.order, truth);
  result.reversed_applied = reversed;
  const auto sigma = position_map(aligned);

  std::vector<std::pair<Index, Index>> requests;
  for (const auto& g : config.dkr_grid) requests.emplace_back(g.k(n), g.r(n));
  const auto report = metric_report(sigma, requests);
  rec.kendall_D = report.kendall_D;
  rec.footrule_F = report.footrule_F;
  rec.tau_paper = report.tau_paper;
  rec.tau_standard = report.tau_standard;
  for (const auto& e : report.dkr_table) rec.dkr.push_back(e.count);

  rec.lambda2_hat = result.eigen.value;
  const Eigen::VectorXd model = eigvec2_A_unit(n);
  Eigen::VectorXd recovered(n);
  for (Index v = 0; v < n; ++v) recovered(graph.true_order[static_cast<std::size_t>(v)]) = result.eigen.vector(v);
  if (recovered.dot(model) < 0) recovered = -recovered;
  rec.eigvec_distance = (model - recovered).norm();
  if (vectors) {
    vectors->model = model;
    vectors->recovered = std::move(recovered);
  }
  return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::pair<Index, Index>> jobs;
  for (Index n : config.n_list)
    for (Index t = 0; t < config.trials; ++t) jobs.emplace_back(n, t);

  std::vector<TrialRecord> records(jobs.size());
  unsigned workers = config.threads > 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(jobs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        records[i] = run_trial(config, jobs[i].first, jobs[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return a.n != b.n ? a.n < b.n : a.trial < b.trial;
  });
  return records;
}

ScalingFit estimate_scaling_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("estimate_scaling_exponent: need at least 3 points");
  ScalingFit fit;
  for (const auto& [n, stat] : points) {
    if (!(n > 0.0) || !(stat > 0.0)) {
      throw std::invalid_argument("estimate_scaling_exponent: n and statistic must be positive");
    }
    fit.points.emplace_back(std::log(n), std::log(stat));
  }
  const double m = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : fit.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("estimate_scaling_exponent: all n are equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

std::vector<std::pair<double, double>>
median_by_n(std::span<const TrialRecord> records, double (*field)(const TrialRecord&)) {
  std::map<Index, std::vector<double>> groups;
  for (const auto& r : records)
    if (r.ok()) groups[r.n].push_back(field(r));
  std::vector<std::pair<double, double>> out;
  for (auto& [n, vals] : groups) out.emplace_back(static_cast<double>(n), median(std::move(vals)));
  return out;
}

std::string csv_header(std::span<const DkrGridPoint> grid) {
  std::string h = "n,p,trial,seed,lambda2_hat,eigvec_dist,kendall_D,footrule_F,tau_paper,"
                  "tau_standard,baseline_D,runtime_ms";
  for (const auto& g : grid) h += "," + g.column();
  return h;
}

void emit_csv(std::ostream& out, std::span<const TrialRecord> records,
              std::span<const DkrGridPoint> grid) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  out << csv_header(grid) << '\n';
  for (const auto& r : records) {
    const bool ok = r.ok();
    auto integer = [&](std::int64_t v) { return ok ? std::to_string(v) : std::string("nan"); };
    out << r.n << ',' << fmt(r.p) << ',' << r.trial << ',' << r.seed << ',' << fmt(r.lambda2_hat) << ','
        << fmt(r.eigvec_distance) << ',' << integer(r.kendall_D) << ',' << integer(r.footrule_F) << ','
        << fmt(r.tau_paper) << ',' << fmt(r.tau_standard) << ',' << r.baseline_D << ','
        << fmt(r.runtime_ms);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << ',' << (i < r.dkr.size() ? integer(r.dkr[i]) : std::string("nan"));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: stream error");
}

void emit_csv(const std::filesystem::path& path, std::span<const TrialRecord> records,
              std::span<const DkrGridPoint> grid) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
  emit_csv(out, records, grid);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

void emit_plot_data(std::ostream& out, const TrialVectors& vectors) {
  if (vectors.model.size() != vectors.recovered.size()) {
    throw std::invalid_argument("emit_plot_data: vector sizes differ");
  }
  out << "index\tmodel\trecovered\n";
  for (Eigen::Index i = 0; i < vectors.model.size(); ++i) {
    out << (i + 1) << '\t' << fmt(vectors.model(i)) << '\t' << fmt(vectors.recovered(i)) << '\n';
  }
}

void emit_plot_data(const std::filesystem::path& path, const TrialVectors& vectors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_plot_data: cannot open " + path.string());
  emit_plot_data(out, vectors);
  out.flush();
  if (!out) throw std::runtime_error("emit_plot_data: write failed for " + path.string());
}

} // namespace rlg
