#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tvsample/graph.hpp"
#include "tvsample/rng.hpp"
#include "tvsample/sampling.hpp"
#include "tvsample/slp.hpp"
#include "tvsample/synth.hpp"

namespace tvsample {

struct TrialSpec {
  AppmSpec appm = default_appm_spec();
  WalkConfig walk{10, 10};
  SlpConfig slp;
  std::size_t runs = 1000;
  RngSeed master_seed{42, 0};
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

/// Outcome of one generate -> sample -> recover pipeline run.
struct TrialOutcome {
  std::size_t trial_index = 0;
  bool failed = false;
  std::string failure;
  double nmse = 0.0;
  std::size_t iterations = 0;
  std::vector<std::size_t> cluster_samples;
  std::vector<std::size_t> cluster_cuts;
};

struct TrialSummary {
  /// Swept parameter value (budget M or walk length L); 0 when nothing is swept.
  double parameter = 0.0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean_nmse = 0.0;
  /// Population standard deviation (divisor n) over successful trials.
  double std_nmse = 0.0;
  std::vector<double> per_cluster_mean_samples;
  std::vector<double> per_cluster_mean_cut;
  /// Standard error of the per-cluster mean cut size.
  std::vector<double> per_cluster_cut_stderr;
  std::vector<TrialOutcome> trials;
};

/// Trial `trial_index` draws everything from master_seed.derive(trial_index):
/// APPM graph, then cluster values, then the sampling walks. Graph and
/// signal therefore coincide across sweeps that only change walk settings.
TrialOutcome run_trial(const TrialSpec& spec, std::size_t trial_index);

/// Runs spec.runs trials across a worker pool and aggregates them.
TrialSummary run_trials(const TrialSpec& spec, double parameter = 0.0);

/// Summary statistics from a list of outcomes. Sums are taken over sorted
/// values so the result does not depend on trial order.
TrialSummary summarize(std::vector<TrialOutcome> trials, std::size_t clusters, double parameter);

/// Sum of values in ascending order.
double ordered_sum(std::vector<double> values);

/// Base setup of the budget sweep: sizes 10/20/30/40, p = 0.3, q = 0.05, L = 10.
TrialSpec table1_spec(std::size_t runs, std::uint64_t seed);
/// Base setup of the walk-length sweep: as table1_spec with M = 10.
TrialSpec table2_spec(std::size_t runs, std::uint64_t seed);
/// Base setup of the cluster statistics run: M = 50, L = 10.
TrialSpec cluster_stats_spec(std::size_t runs, std::uint64_t seed);

inline const std::vector<std::size_t> kTable1Budgets{10, 20, 30, 40, 50};
inline const std::vector<std::size_t> kTable2Lengths{20, 40, 80, 160, 320};

/// One summary per budget; everything else held at `base`.
std::vector<TrialSummary> run_table1(const TrialSpec& base, const std::vector<std::size_t>& budgets);

/// One summary per walk length, with the budget of `base` (10 in table2_spec).
std::vector<TrialSummary> run_table2(const TrialSpec& base, const std::vector<std::size_t>& lengths);

TrialSummary run_cluster_stats(const TrialSpec& base);

/// Pearson correlation coefficient; NaN if either side is constant.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Per-trial CSV: parameter,trial_index,failed,nmse,iterations,samples_c*,cut_c*.
void write_trials_csv(std::ostream& out, const std::string& parameter_name,
                      const std::vector<TrialSummary>& summaries);

/// Summary CSV, one row per swept value.
void write_summary_csv(std::ostream& out, const std::string& parameter_name,
                       const std::vector<TrialSummary>& summaries);

/// Result of the ingestion pipeline on a single extracted subgraph.
struct SubgraphPipelineResult {
  std::size_t subgraph_nodes = 0;
  std::size_t subgraph_edges = 0;
  std::size_t budget = 0;
  std::size_t iterations = 0;
  double nmse = 0.0;
};

/// Extract a walk-neighborhood subgraph, sample a fraction of it by random
/// walks, recover the signal, and score it against `truth`.
SubgraphPipelineResult run_subgraph_pipeline(const Graph& g, const GraphSignal& truth,
                                             std::size_t extract_walk_length, double sample_ratio,
                                             std::size_t walk_length, const SlpConfig& slp,
                                             const RngSeed& seed);

}  // namespace tvsample
