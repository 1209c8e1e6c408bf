#include "tvsample/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "tvsample/io.hpp"

namespace tvsample {

void TrialSpec::validate() const {
  appm.validate();
  slp.validate();
  if (runs < 1) throw std::invalid_argument("TrialSpec: runs must be >= 1");
  if (walk.length < 1) throw std::invalid_argument("TrialSpec: walk length must be >= 1");
  if (walk.budget < 1 || walk.budget > appm.node_count()) {
    throw std::invalid_argument("TrialSpec: budget must lie in [1, " +
                                std::to_string(appm.node_count()) + "]");
  }
}

TrialOutcome run_trial(const TrialSpec& spec, std::size_t trial_index) {
  spec.validate();
  Rng rng = spec.master_seed.derive(trial_index).engine();
  const AppmDraw draw = generate_appm(spec.appm, rng);
  const GraphSignal truth = random_clustered_signal(draw.partition, rng);

  TrialOutcome out;
  out.trial_index = trial_index;
  out.cluster_cuts = cut_sizes(draw.graph, draw.partition);
  out.cluster_samples.assign(draw.partition.cluster_count(), 0);
  try {
    const SamplingSet m = random_walk_sampling(draw.graph, spec.walk, rng);
    for (NodeId i : m.nodes()) ++out.cluster_samples[draw.partition.cluster_of(i)];
    const SlpResult result = slp_recover_from_signal(draw.graph, m, truth, spec.slp);
    out.iterations = result.iterations_run;
    out.nmse = nmse(result.recovered, truth);
  } catch (const SamplingError& e) {
    out.failed = true;
    out.failure = e.what();
    out.nmse = std::numeric_limits<double>::quiet_NaN();
    std::fill(out.cluster_samples.begin(), out.cluster_samples.end(), 0);
  }
  return out;
}

double ordered_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

TrialSummary summarize(std::vector<TrialOutcome> trials, std::size_t clusters, double parameter) {
  TrialSummary s;
  s.parameter = parameter;
  s.runs = trials.size();
  std::vector<double> errors;
  std::vector<std::vector<double>> samples(clusters), cuts(clusters);
  for (const auto& t : trials) {
    if (t.failed) {
      ++s.failures;
      continue;
    }
    errors.push_back(t.nmse);
    for (std::size_t c = 0; c < clusters; ++c) {
      samples[c].push_back(static_cast<double>(t.cluster_samples.at(c)));
      cuts[c].push_back(static_cast<double>(t.cluster_cuts.at(c)));
    }
  }
  const double n = static_cast<double>(errors.size());
  if (!errors.empty()) {
    s.mean_nmse = ordered_sum(errors) / n;
    std::vector<double> sq;
    sq.reserve(errors.size());
    for (double e : errors) sq.push_back((e - s.mean_nmse) * (e - s.mean_nmse));
    s.std_nmse = std::sqrt(ordered_sum(std::move(sq)) / n);
  } else {
    s.mean_nmse = s.std_nmse = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t c = 0; c < clusters; ++c) {
    const double mean_samples = errors.empty() ? 0.0 : ordered_sum(samples[c]) / n;
    const double mean_cut = errors.empty() ? 0.0 : ordered_sum(cuts[c]) / n;
    std::vector<double> sq;
    for (double v : cuts[c]) sq.push_back((v - mean_cut) * (v - mean_cut));
    // sample standard deviation for the standard error of the mean
    const double var = n > 1 ? ordered_sum(std::move(sq)) / (n - 1) : 0.0;
    s.per_cluster_mean_samples.push_back(mean_samples);
    s.per_cluster_mean_cut.push_back(mean_cut);
    s.per_cluster_cut_stderr.push_back(n > 0 ? std::sqrt(var / n) : 0.0);
  }
  s.trials = std::move(trials);
  return s;
}

TrialSummary run_trials(const TrialSpec& spec, double parameter) {
  spec.validate();
  std::vector<TrialOutcome> outcomes(spec.runs);
  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.runs));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> errored{false};
  auto work = [&] {
    for (std::size_t i = next++; i < spec.runs && !errored; i = next++) {
      try {
        outcomes[i] = run_trial(spec, i);
      } catch (...) {
        if (!errored.exchange(true)) first_error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (first_error) std::rethrow_exception(first_error);
  return summarize(std::move(outcomes), spec.appm.cluster_sizes.size(), parameter);
}

TrialSpec table1_spec(std::size_t runs, std::uint64_t seed) {
  TrialSpec spec;
  spec.appm = default_appm_spec();
  spec.walk = WalkConfig{10, 10};
  spec.runs = runs;
  spec.master_seed = RngSeed{seed, 0};
  return spec;
}

TrialSpec table2_spec(std::size_t runs, std::uint64_t seed) {
  TrialSpec spec = table1_spec(runs, seed);
  spec.walk.budget = 10;
  return spec;
}

TrialSpec cluster_stats_spec(std::size_t runs, std::uint64_t seed) {
  TrialSpec spec = table1_spec(runs, seed);
  spec.walk = WalkConfig{10, 50};
  return spec;
}

std::vector<TrialSummary> run_table1(const TrialSpec& base, const std::vector<std::size_t>& budgets) {
  if (budgets.empty()) throw std::invalid_argument("run_table1: no budgets given");
  std::vector<TrialSummary> out;
  for (auto budget : budgets) {
    TrialSpec spec = base;
    spec.walk.budget = budget;
    out.push_back(run_trials(spec, static_cast<double>(budget)));
  }
  return out;
}

std::vector<TrialSummary> run_table2(const TrialSpec& base, const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("run_table2: no walk lengths given");
  std::vector<TrialSummary> out;
  for (auto length : lengths) {
    TrialSpec spec = base;
    spec.walk.length = length;
    out.push_back(run_trials(spec, static_cast<double>(length)));
  }
  return out;
}

TrialSummary run_cluster_stats(const TrialSpec& base) { return run_trials(base, 0.0); }

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pearson: size mismatch");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

void write_trials_csv(std::ostream& out, const std::string& parameter_name,
                      const std::vector<TrialSummary>& summaries) {
  const std::size_t clusters =
      summaries.empty() ? 0 : summaries.front().per_cluster_mean_samples.size();
  out << parameter_name << ",trial_index,failed,nmse,iterations";
  for (std::size_t c = 0; c < clusters; ++c) out << ",samples_c" << c;
  for (std::size_t c = 0; c < clusters; ++c) out << ",cut_c" << c;
  out << '\n';
  for (const auto& s : summaries) {
    for (const auto& t : s.trials) {
      out << format_double(s.parameter) << ',' << t.trial_index << ',' << (t.failed ? 1 : 0) << ','
          << format_double(t.nmse) << ',' << t.iterations;
      for (auto v : t.cluster_samples) out << ',' << v;
      for (auto v : t.cluster_cuts) out << ',' << v;
      out << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const std::string& parameter_name,
                       const std::vector<TrialSummary>& summaries) {
  const std::size_t clusters =
      summaries.empty() ? 0 : summaries.front().per_cluster_mean_samples.size();
  out << "# std_nmse: population standard deviation (divisor n) over successful trials\n";
  out << parameter_name << ",runs,failures,mean_nmse,std_nmse";
  for (std::size_t c = 0; c < clusters; ++c) out << ",mean_samples_c" << c;
  for (std::size_t c = 0; c < clusters; ++c) out << ",mean_cut_c" << c;
  out << '\n';
  for (const auto& s : summaries) {
    out << format_double(s.parameter) << ',' << s.runs << ',' << s.failures << ','
        << format_double(s.mean_nmse) << ',' << format_double(s.std_nmse);
    for (double v : s.per_cluster_mean_samples) out << ',' << format_double(v);
    for (double v : s.per_cluster_mean_cut) out << ',' << format_double(v);
    out << '\n';
  }
}

SubgraphPipelineResult run_subgraph_pipeline(const Graph& g, const GraphSignal& truth,
                                             std::size_t extract_walk_length, double sample_ratio,
                                             std::size_t walk_length, const SlpConfig& slp,
                                             const RngSeed& seed) {
  detail::check_length(truth.size(), g.node_count(), "run_subgraph_pipeline");
  if (!(sample_ratio > 0.0 && sample_ratio <= 1.0)) {
    throw std::invalid_argument("run_subgraph_pipeline: sample ratio must lie in (0, 1]");
  }
  Rng rng = seed.engine();
  const Subgraph sub = extract_subgraph(g, extract_walk_length, rng);
  GraphSignal sub_truth(static_cast<Eigen::Index>(sub.graph.node_count()));
  for (std::size_t i = 0; i < sub.original.size(); ++i) {
    sub_truth[static_cast<Eigen::Index>(i)] = truth[sub.original[i]];
  }
  const auto n = sub.graph.node_count();
  const auto budget = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(sample_ratio * static_cast<double>(n))));
  const SamplingSet m = random_walk_sampling(sub.graph, WalkConfig{walk_length, budget}, rng);
  const SlpResult result = slp_recover_from_signal(sub.graph, m, sub_truth, slp);

  SubgraphPipelineResult out;
  out.subgraph_nodes = n;
  out.subgraph_edges = sub.graph.edge_count();
  out.budget = budget;
  out.iterations = result.iterations_run;
  out.nmse = nmse(result.recovered, sub_truth);
  return out;
}

}  // namespace tvsample
