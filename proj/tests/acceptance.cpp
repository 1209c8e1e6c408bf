// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "oracle/tv_lp.hpp"
#include "tvsample/experiments.hpp"
#include "tvsample/io.hpp"
#include "tvsample/sampling.hpp"
#include "tvsample/slp.hpp"
#include "tvsample/synth.hpp"

using namespace tvsample;

namespace {

constexpr std::size_t kRuns = 1000;
constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string join(const std::vector<double>& values, const char* format = "%.4f") {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : " ") + fmt(format, v);
  return out;
}

std::vector<double> means(const std::vector<TrialSummary>& summaries) {
  std::vector<double> out;
  for (const auto& s : summaries) out.push_back(s.mean_nmse);
  return out;
}

std::string failures(const std::vector<TrialSummary>& summaries) {
  std::size_t total = 0;
  for (const auto& s : summaries) total += s.failures;
  return " failed_trials=" + std::to_string(total);
}

Verdict table1_trend() {
  const auto summaries = run_table1(table1_spec(kRuns, kSeed), kTable1Budgets);
  const auto eps = means(summaries);
  std::size_t inversions = 0;
  double worst = 0.0;
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (eps[i] > eps[i - 1]) {
      ++inversions;
      worst = std::max(worst, eps[i] - eps[i - 1]);
    }
  }
  const bool trend = inversions == 0 || (inversions == 1 && worst <= 0.01);
  const bool last = eps.back() <= 0.15;
  return {trend && last, "mean_nmse(M=10..50)=[" + join(eps) + "] inversions=" + std::to_string(inversions) +
                             " limit: nonincreasing up to one inversion <= 0.01, last <= 0.15" +
                             failures(summaries)};
}

Verdict table2_flatness() {
  const auto summaries = run_table2(table2_spec(kRuns, kSeed), kTable2Lengths);
  const auto eps = means(summaries);
  const double spread = *std::max_element(eps.begin(), eps.end()) - *std::min_element(eps.begin(), eps.end());
  return {spread <= 0.10, "mean_nmse(L=20..320)=[" + join(eps) + "] spread=" + fmt("%.4f", spread) +
                              " limit 0.10" + failures(summaries)};
}

Verdict cluster_proportionality() {
  const TrialSummary s = run_cluster_stats(cluster_stats_spec(kRuns, kSeed));
  const double r = pearson(s.per_cluster_mean_samples, s.per_cluster_mean_cut);
  const AppmSpec spec = default_appm_spec();
  bool cuts_ok = true;
  for (ClusterId c = 0; c < 4; ++c) {
    const double z = std::abs(s.per_cluster_mean_cut[c] - expected_cut_size(spec, c));
    cuts_ok = cuts_ok && z <= 3.0 * s.per_cluster_cut_stderr[c];
  }
  return {r >= 0.9 && cuts_ok, "pearson=" + fmt("%.4f", r) + " (limit 0.9) mean_samples=[" +
                                   join(s.per_cluster_mean_samples, "%.2f") + "] mean_cut=[" +
                                   join(s.per_cluster_mean_cut, "%.2f") + "] stderr=[" +
                                   join(s.per_cluster_cut_stderr, "%.2f") + "] expected=[45 80 105 120]" +
                                   failures({s})};
}

bool clusters_connected(const Graph& g, const Partition& part) {
  for (ClusterId c = 0; c < part.cluster_count(); ++c) {
    const auto& members = part.members(c);
    std::vector<char> seen(g.node_count(), 0);
    std::queue<NodeId> frontier;
    frontier.push(members.front());
    seen[members.front()] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w] && part.cluster_of(w) == c) {
          seen[w] = 1;
          ++reached;
          frontier.push(w);
        }
      }
    }
    if (reached != members.size()) return false;
  }
  return true;
}

// Full iteration budget: the relative-change rule can stop a run early while
// the averaged iterate is still moving slowly.
const SlpConfig kFullBudget{50000, 0.0};

Verdict exact_recovery() {
  // Two-cluster instances with internally connected clusters and at least one
  // boundary edge; sampling sets from random walks.
  Rng rng = RngSeed{kSeed, 4}.engine();
  std::uniform_int_distribution<std::size_t> size_dist(4, 20);
  std::uniform_real_distribution<double> p_dist(0.4, 0.9), q_dist(0.02, 0.15), frac(0.3, 0.8);
  std::size_t satisfied = 0, recovered = 0, drawn = 0;
  std::size_t not_minimizer = 0, not_unique = 0, solver = 0;
  double worst = 0.0;
  while (satisfied < 150 && drawn < 100000) {
    ++drawn;
    const AppmSpec spec{{size_dist(rng), size_dist(rng)}, p_dist(rng), q_dist(rng)};
    const AppmDraw draw = generate_appm(spec, rng);
    if (!clusters_connected(draw.graph, draw.partition) || boundary_edges(draw.graph, draw.partition).empty()) {
      continue;
    }
    const auto n = draw.graph.node_count();
    const auto budget = std::max<std::size_t>(1, static_cast<std::size_t>(frac(rng) * static_cast<double>(n)));
    const SamplingSet m = random_walk_sampling(draw.graph, WalkConfig{10, budget}, rng);
    if (!check_nullspace_condition(draw.graph, draw.partition, m).satisfied) continue;
    ++satisfied;
    const GraphSignal truth = random_clustered_signal(draw.partition, rng);
    const SlpResult r = slp_recover_from_signal(draw.graph, m, truth, kFullBudget);
    const double e = nmse(r.recovered, truth);
    worst = std::max(worst, e);
    if (e <= 1e-4) {
      ++recovered;
      continue;
    }
    // Classify the miss against the LP optimum.
    std::map<NodeId, double> samples;
    for (NodeId i : m.nodes()) samples[i] = truth[i];
    const double optimum = oracle::min_tv_lp(draw.graph, samples).optimum;
    const double tv_truth = total_variation(draw.graph, truth);
    if (optimum < tv_truth - 1e-6) {
      ++not_minimizer;
    } else if (std::abs(total_variation(draw.graph, r.recovered) - tv_truth) <= 1e-3 * std::max(1.0, tv_truth)) {
      ++not_unique;
    } else {
      ++solver;
    }
  }
  return {satisfied >= 100 && recovered == satisfied,
          "instances=" + std::to_string(satisfied) + " recovered=" + std::to_string(recovered) +
              " worst_nmse=" + fmt("%.3g", worst) + " (limit 1e-4, 50000 iterations); misses: truth_not_tv_minimizer=" +
              std::to_string(not_minimizer) + " tv_minimizer_not_unique=" + std::to_string(not_unique) +
              " solver=" + std::to_string(solver)};
}

Verdict lp_equivalence() {
  Rng rng = RngSeed{kSeed, 5}.engine();
  std::uniform_int_distribution<std::size_t> n_dist(3, 10);
  std::uniform_real_distribution<double> density(0.2, 0.8), unit(0.0, 1.0);
  std::size_t graphs = 0, matched = 0;
  double worst = 0.0;
  while (graphs < 60) {
    const std::size_t n = n_dist(rng);
    std::bernoulli_distribution coin(density(rng));
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (coin(rng)) pairs.emplace_back(i, j);
    const Graph g(n, pairs);
    if (g.edge_count() == 0) continue;
    std::uniform_int_distribution<std::size_t> budget_dist(1, n);
    const SamplingSet m = uniform_sampling(g, budget_dist(rng), rng);
    std::map<NodeId, double> samples;
    GraphSignal values(static_cast<Eigen::Index>(m.size()));
    for (std::size_t s = 0; s < m.size(); ++s) {
      const double v = unit(rng);
      samples[m.nodes()[s]] = v;
      values[static_cast<Eigen::Index>(s)] = v;
    }
    ++graphs;
    const double optimum = oracle::min_tv_lp(g, samples).optimum;
    const SlpResult r = slp_recover(g, m, values, kFullBudget);
    const double gap = std::abs(total_variation(g, r.recovered) - optimum);
    worst = std::max(worst, gap);
    matched += gap <= 1e-3;
  }
  return {graphs >= 50 && matched == graphs, "graphs=" + std::to_string(graphs) + " matched=" +
                                                  std::to_string(matched) + " worst_gap=" + fmt("%.3g", worst) +
                                                  " (limit 1e-3, 50000 iterations)"};
}

bool is_bipartite(const Graph& g) {
  std::vector<int> color(g.node_count(), -1);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<NodeId> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          frontier.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

Verdict stationary_distribution_check() {
  Rng rng = RngSeed{kSeed, 6}.engine();
  const AppmSpec spec{{10, 15, 25}, 0.3, 0.05};
  AppmDraw draw = generate_connected_appm(spec, rng);
  while (is_bipartite(draw.graph)) draw = generate_connected_appm(spec, rng);
  const std::size_t steps = 1000000;
  const auto path = random_walk(draw.graph, 0, steps, rng);
  std::vector<double> visits(draw.graph.node_count(), 0.0);
  for (NodeId v : path) visits[v] += 1.0;
  const Eigen::VectorXd pi = stationary_distribution(draw.graph);
  double tv = 0.0;
  for (NodeId i = 0; i < draw.graph.node_count(); ++i) tv += std::abs(visits[i] / steps - pi[i]);
  tv *= 0.5;
  return {tv <= 0.02, "nodes=50 edges=" + std::to_string(draw.graph.edge_count()) + " tv_distance=" +
                          fmt("%.5f", tv) + " (limit 0.02)"};
}

Verdict solver_invariants() {
  Rng rng = RngSeed{kSeed, 7}.engine();
  std::normal_distribution<double> normal(0.0, 2.0);
  bool clip_ok = true, feasible = true, dual_ok = true, adjoint_ok = true, tv_ok = true;
  double worst_adjoint = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const AppmDraw draw = generate_appm(AppmSpec{{8, 12, 10}, 0.4, 0.08}, rng);
    const Graph& g = draw.graph;
    if (g.edge_count() == 0) continue;
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto e = static_cast<Eigen::Index>(g.edge_count());

    EdgeSignal y(e);
    for (auto& v : y) v = normal(rng);
    const EdgeSignal c = clip(y);
    clip_ok = clip_ok && c.cwiseAbs().maxCoeff() <= 1.0 && clip(c) == c;

    GraphSignal x(n);
    for (auto& v : x) v = normal(rng);
    const double lhs = y.dot(incidence_apply(g, x));
    const double rhs = incidence_transpose_apply(g, y).dot(x);
    const double rel = std::abs(lhs - rhs) / std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
    worst_adjoint = std::max(worst_adjoint, rel);
    adjoint_ok = adjoint_ok && rel <= 1e-9;
    double l1 = 0.0;
    for (double v : incidence_apply(g, x)) l1 += std::abs(v);
    tv_ok = tv_ok && total_variation(g, x) == l1;

    const SamplingSet m = uniform_sampling(g, 8, rng);
    GraphSignal samples(8);
    for (std::size_t s = 0; s < 8; ++s) samples[static_cast<Eigen::Index>(s)] = x[m.nodes()[s]];
    const SlpObserver<double> watch = [&](const SlpIterate<double>& it) {
      for (std::size_t s = 0; s < m.size(); ++s) {
        feasible = feasible && it.primal[m.nodes()[s]] == samples[static_cast<Eigen::Index>(s)];
      }
      dual_ok = dual_ok && it.dual.cwiseAbs().maxCoeff() <= 1.0;
    };
    slp_recover(g, m, samples, SlpConfig{500, 0.0}, watch);
  }
  auto flag = [](bool ok) { return ok ? "ok" : "FAILED"; };
  return {clip_ok && feasible && dual_ok && adjoint_ok && tv_ok,
          std::string("clip=") + flag(clip_ok) + " feasibility=" + flag(feasible) + " dual_bound=" + flag(dual_ok) +
              " adjoint=" + flag(adjoint_ok) + " (worst rel " + fmt("%.2g", worst_adjoint) + ", limit 1e-9)" +
              " tv_equals_l1=" + flag(tv_ok)};
}

Verdict fixture_pipeline() {
  const std::string dir = TVSAMPLE_FIXTURE_DIR;
  const ParsedGraph pg = load_edge_list(dir + "/synthetic_1000.txt");
  std::ifstream signal_in(dir + "/synthetic_1000_signal.csv");
  const GraphSignal truth = read_signal(signal_in, pg.ids);
  bool ok = pg.graph.node_count() == 1000;
  std::string detail = "nodes=" + std::to_string(pg.graph.node_count()) +
                       " edges=" + std::to_string(pg.graph.edge_count());
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = run_subgraph_pipeline(pg.graph, truth, 50, 0.1, 20, SlpConfig{}, RngSeed{seed, 0});
    const auto b = run_subgraph_pipeline(pg.graph, truth, 50, 0.1, 20, SlpConfig{}, RngSeed{seed, 0});
    const bool good = std::isfinite(a.nmse) && a.nmse <= 1.0 && a.nmse == b.nmse;
    ok = ok && good;
    detail += " | seed " + std::to_string(seed) + ": sub_nodes=" + std::to_string(a.subgraph_nodes) +
              " M=" + std::to_string(a.budget) + " nmse=" + fmt("%.4f", a.nmse) +
              (a.nmse == b.nmse ? " repeatable" : " NOT repeatable");
  }
  return {ok, detail + " (limit: finite, <= 1, repeatable)"};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number, e.g. "acceptance 4 5".
  std::vector<std::string> selected(argv + 1, argv + argc);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 table1 trend", table1_trend},
      {"2 table2 flatness", table2_flatness},
      {"3 cluster sampling vs cut size", cluster_proportionality},
      {"4 exact recovery under the nullspace condition", exact_recovery},
      {"5 LP oracle equivalence", lp_equivalence},
      {"6 walk stationary distribution", stationary_distribution_check},
      {"7 solver invariants", solver_invariants},
      {"8 fixture pipeline", fixture_pipeline},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (const auto& [name, check] : criteria) {
    const std::string number = name.substr(0, name.find(' '));
    if (!selected.empty() && std::find(selected.begin(), selected.end(), number) == selected.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%s] %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ran) - failed, ran);
  return failed ? 1 : 0;
}
