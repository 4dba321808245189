// rlg: generate, order and evaluate random linear graphs.

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlg/experiment.hpp"
#include "rlg/graph_io.hpp"
#include "rlg/graph_model.hpp"
#include "rlg/model_spectrum.hpp"
#include "rlg/rank_metrics.hpp"
#include "rlg/rng.hpp"
#include "rlg/seriation.hpp"

namespace fs = std::filesystem;
using namespace rlg;

namespace {

std::vector<std::pair<Index, Index>> parse_dkr_list(const std::string& text) {
  std::vector<std::pair<Index, Index>> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--dkr", "expected k:r, got " + item);
    out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
  }
  return out;
}

const std::map<std::string, TiePolicy> kTies{{"ascending_index", TiePolicy::ascending_index},
                                              {"descending_index", TiePolicy::descending_index}};
const std::map<std::string, SpectralOrder> kOrders{{"algebraic", SpectralOrder::algebraic},
                                                   {"magnitude", SpectralOrder::magnitude}};

struct GenerateArgs {
  Index n = 0;
  double p = 0.5;
  Index band = 0;
  std::uint64_t seed = 1;
  bool scramble = false;
  std::string out;
  std::string truth;
};

int cmd_generate(const GenerateArgs& a) {
  ModelParams params = ModelParams::make(a.n, a.p);
  if (a.band > 0) params.band = a.band;
  auto g = sample_graph(params, derive_seed({a.seed, kGraphStream}));
  if (a.scramble) {
    g = scramble(g, random_permutation(static_cast<std::size_t>(a.n), derive_seed({a.seed, kPermStream})));
  }
  write_edge_list(fs::path(a.out), g);
  if (!a.truth.empty()) write_ordering(fs::path(a.truth), truth_ordering(g));
  std::cerr << "n=" << g.size() << " edges=" << g.edge_count() << '\n';
  return 0;
}

struct OrderArgs {
  std::string graph;
  std::string out;
  std::string baseline;
  TiePolicy ties = TiePolicy::ascending_index;
  SpectralOrder order = SpectralOrder::algebraic;
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

int cmd_order(const OrderArgs& a) {
  const auto g = read_edge_list(fs::path(a.graph));
  Permutation order;
  if (a.baseline == "degree") {
    order = degree_baseline_order(g);
  } else {
    RecoveryOptions opts;
    opts.solver.seed = a.seed;
    opts.solver.tol = a.tol;
    opts.order = a.order;
    opts.ties = a.ties;
    const auto res = recover_order(g, opts);
    order = res.order;
    std::cout << std::setprecision(12) << "lambda2_hat=" << res.eigen.value
              << " residual=" << res.eigen.residual << " products=" << res.eigen.iterations
              << " ties=" << res.tie_count << '\n';
  }
  if (a.out.empty()) {
    write_ordering(std::cout, order);
  } else {
    write_ordering(fs::path(a.out), order);
  }
  return 0;
}

struct EvalArgs {
  std::string ordering;
  std::string truth;
  std::string dkr;
  bool no_align = false;
};

int cmd_eval(const EvalArgs& a) {
  const auto candidate = read_ordering(fs::path(a.ordering));
  const auto truth = read_ordering(fs::path(a.truth));
  if (candidate.size() != truth.size()) {
    std::cerr << "eval: ordering has " << candidate.size() << " entries, truth has " << truth.size()
              << '\n';
    return 2;
  }
  bool reversed = false;
  Permutation aligned = candidate;
  if (!a.no_align) std::tie(aligned, reversed) = align_up_to_reversal(candidate, truth);
  const auto requests = parse_dkr_list(a.dkr);
  const auto rep = metric_report(truth.inverse().compose(aligned), requests);

  std::cout << "n,reversed,kendall_D,footrule_F,tau_paper,tau_standard";
  for (const auto& e : rep.dkr_table) std::cout << ",dkr_k" << e.k << "_r" << e.r;
  std::cout << '\n' << std::setprecision(12) << candidate.size() << ',' << (reversed ? 1 : 0) << ','
            << rep.kendall_D << ',' << rep.footrule_F << ',' << rep.tau_paper << ',' << rep.tau_standard;
  for (const auto& e : rep.dkr_table) std::cout << ',' << e.count;
  std::cout << '\n';
  return 0;
}

struct SpectrumArgs {
  Index n = 0;
  double p = 1.0;
  bool roots = false;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto params = ModelParams::make(a.n, a.p);
  params.validate();
  const Index s = params.half();
  const auto pair = eig2_A(a.n);
  std::cout << std::setprecision(15);
  std::cout << "n=" << a.n << " s=" << s << " p=" << a.p << '\n';
  std::cout << "lambda2_abs_A=" << lambda2_abs_A(s) << '\n';
  std::cout << "lambda2_A_signed=" << pair.value << '\n';
  std::cout << "lambda1_A=" << lambda1_A(s) << '\n';
  std::cout << "lambda3_abs_A_upper=" << lambda3_abs_upper_bound(s) << '\n';
  std::cout << "lambda2_M=" << a.p * (pair.value - 1.0) << '\n';
  if (s >= 5) {
    const auto gaps = gap_bounds_M(params);
    std::cout << "gap12_lower=" << gaps.gap12_lower << '\n';
    std::cout << "gap23_lower=" << gaps.gap23_lower << '\n';
    std::cout << "omega_sq=" << gaps.omega_sq << '\n';
  }
  if (a.roots) {
    // The last row is the root off the real axis; theta and its bracket are
    // printed as pi+<phi>i.
    std::cout << "k,theta,lambda,bracket_lo,bracket_hi\n";
    const auto roots = theta_roots_D(s);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const auto& r = roots[k];
      std::cout << (k + 1) << ',';
      if (r.continued) {
        std::cout << std::numbers::pi << '+' << r.theta << "i," << r.eigenvalue() << ','
                  << std::numbers::pi << '+' << r.lo << "i," << std::numbers::pi << '+' << r.hi << "i\n";
      } else {
        std::cout << r.theta << ',' << r.eigenvalue() << ',' << r.lo << ',' << r.hi << '\n';
      }
    }
  }
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  unsigned threads = 0;
};

double field_eigvec_scaled(const TrialRecord& r) { return r.eigvec_distance * std::sqrt(double(r.n)); }
double field_eigvec(const TrialRecord& r) { return r.eigvec_distance; }
double field_kendall(const TrialRecord& r) { return static_cast<double>(r.kendall_D); }

int cmd_experiment(const ExperimentArgs& a) {
  auto cfg = load_config(fs::path(a.config));
  if (!a.out.empty()) cfg.output = a.out;
  if (cfg.output.empty()) cfg.output = ".";
  if (a.threads > 0) cfg.threads = a.threads;
  fs::create_directories(cfg.output);

  const auto records = run_experiment(cfg);
  emit_csv(cfg.output / "trials.csv", records, cfg.dkr_grid);

  const Index plot_n = cfg.plot_n > 0 ? cfg.plot_n : cfg.n_list.front();
  TrialVectors vectors;
  const auto plot_rec = run_trial(cfg, plot_n, cfg.plot_trial, &vectors);
  if (plot_rec.ok()) emit_plot_data(cfg.output / "eigenvector.tsv", vectors);

  std::size_t failed = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "trial n=" << r.n << " #" << r.trial << " failed: " << r.error << '\n';
    }
  }

  std::cout << std::setprecision(6);
  std::cout << "n,median_eigvec_dist_sqrt_n,median_kendall_D\n";
  const auto scaled = median_by_n(records, field_eigvec_scaled);
  const auto kd = median_by_n(records, field_kendall);
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    std::cout << scaled[i].first << ',' << scaled[i].second << ',' << kd[i].second << '\n';
  }
  if (scaled.size() >= 3) {
    const auto e = estimate_scaling_exponent(median_by_n(records, field_eigvec));
    std::cout << "slope eigvec_dist: " << e.slope << " (r^2 " << e.r_squared << ")\n";
    bool positive = true;
    for (const auto& [n, d] : kd) positive = positive && d > 0;
    if (positive) {
      const auto k = estimate_scaling_exponent(kd);
      std::cout << "slope kendall_D: " << k.slope << " (r^2 " << k.r_squared << ")\n";
    }
  }
  std::cout << "wrote " << records.size() << " rows to " << (cfg.output / "trials.csv").string() << '\n';
  return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random linear graphs and spectral seriation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample a random linear graph");
  g->add_option("--n", gen.n, "Vertex count (even, >= 4)")->required();
  g->add_option("--p", gen.p, "Edge probability");
  g->add_option("--band", gen.band, "Band half-width (default n/2 - 1)");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_flag("--scramble", gen.scramble, "Relabel vertices by a seeded random permutation");
  g->add_option("--out", gen.out, "Edge-list file")->required();
  g->add_option("--truth", gen.truth, "Write the true ordering here");

  OrderArgs ord;
  auto* o = app.add_subcommand("order", "Recover a vertex ordering");
  o->add_option("graph", ord.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  o->add_option("--out", ord.out, "Ordering file (stdout if omitted)");
  o->add_option("--baseline", ord.baseline, "Use a baseline method instead")->check(CLI::IsMember({"degree"}));
  o->add_option("--tie-policy", ord.ties, "ascending_index | descending_index")
      ->transform(CLI::CheckedTransformer(kTies));
  o->add_option("--spectral-order", ord.order, "algebraic | magnitude")
      ->transform(CLI::CheckedTransformer(kOrders));
  o->add_option("--seed", ord.seed, "Solver start-vector seed");
  o->add_option("--tol", ord.tol, "Residual tolerance");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Compare an ordering with the truth");
  e->add_option("ordering", ev.ordering, "Ordering file")->required()->check(CLI::ExistingFile);
  e->add_option("truth", ev.truth, "True ordering file")->required()->check(CLI::ExistingFile);
  e->add_option("--dkr", ev.dkr, "k:r pairs, comma separated");
  e->add_flag("--no-align", ev.no_align, "Do not try the reversed ordering");

  SpectrumArgs sp;
  auto* s = app.add_subcommand("spectrum", "Closed-form spectral quantities of the model");
  s->add_option("--n", sp.n, "Vertex count (even, >= 4)")->required();
  s->add_option("--p", sp.p, "Edge probability");
  s->add_flag("--roots", sp.roots, "Print the theta-root table as CSV");

  ExperimentArgs ex;
  auto* x = app.add_subcommand("experiment", "Run a seeded Monte-Carlo sweep");
  x->add_option("--config", ex.config, "key=value config file")->required()->check(CLI::ExistingFile);
  x->add_option("--out", ex.out, "Output directory");
  x->add_option("--threads", ex.threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_generate(gen);
    if (*o) return cmd_order(ord);
    if (*e) return cmd_eval(ev);
    if (*s) return cmd_spectrum(sp);
    if (*x) return cmd_experiment(ex);
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
