#include "tvsample/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tvsample/experiments.hpp"
#include "tvsample/io.hpp"
#include "tvsample/sampling.hpp"
#include "tvsample/slp.hpp"
#include "tvsample/synth.hpp"

namespace tvsample {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

ParsedGraph load_graph(const std::string& path, bool drop_isolated, std::ostream& err) {
  ParsedGraph parsed = load_edge_list(path, EdgeListOptions{drop_isolated});
  if (parsed.self_loops_dropped > 0) {
    err << "warning: dropped " << parsed.self_loops_dropped << " self-loop(s) from " << path << '\n';
  }
  if (parsed.isolated_dropped > 0) {
    err << "warning: dropped " << parsed.isolated_dropped << " isolated node(s) from " << path << '\n';
  }
  return parsed;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

struct GenerateArgs {
  std::vector<std::size_t> sizes;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  std::string out_graph, out_partition, out_signal;
  bool require_connected = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const AppmSpec spec{a.sizes, a.p, a.q};
  spec.validate();
  Rng rng = RngSeed{a.seed, 0}.engine();
  const AppmDraw draw = a.require_connected ? generate_connected_appm(spec, rng) : generate_appm(spec, rng);
  const GraphSignal x = random_clustered_signal(draw.partition, rng);
  const NodeIdMap ids = NodeIdMap::identity(draw.graph.node_count());

  OutputBatch batch;
  batch.add(a.out_graph, render([&](std::ostream& os) { write_edge_list(os, draw.graph, ids); }));
  batch.add(a.out_partition, render([&](std::ostream& os) { write_partition(os, draw.partition, ids); }));
  batch.add(a.out_signal, render([&](std::ostream& os) { write_signal(os, x, ids); }));
  batch.commit();
  out << "nodes: " << draw.graph.node_count() << "\nedges: " << draw.graph.edge_count() << '\n';
  return kExitOk;
}

struct SampleArgs {
  std::string graph, method = "walk", out;
  std::size_t budget = 0;
  std::size_t walk_length = 10;
  std::uint64_t seed = 0;
  bool drop_isolated = false;
};

int cmd_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  const ParsedGraph pg = load_graph(a.graph, a.drop_isolated, err);
  Rng rng = RngSeed{a.seed, 0}.engine();
  const SamplingSet m = a.method == "walk"
                            ? random_walk_sampling(pg.graph, WalkConfig{a.walk_length, a.budget}, rng)
                            : uniform_sampling(pg.graph, a.budget, rng);
  OutputBatch batch;
  batch.add(a.out, render([&](std::ostream& os) { write_sampling_set(os, m, pg.ids); }));
  batch.commit();
  out << "sampled: " << m.size() << '\n';
  return kExitOk;
}

struct CheckArgs {
  std::string graph, partition, samples;
  bool drop_isolated = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const ParsedGraph pg = load_graph(a.graph, a.drop_isolated, err);
  auto part_in = open_input(a.partition);
  const Partition part = read_partition(part_in, pg.ids);
  auto samples_in = open_input(a.samples);
  const SamplingSet m = read_sampling_set(samples_in, pg.ids);
  const NullspaceReport report = check_nullspace_condition(pg.graph, part, m);

  out << "satisfied: " << (report.satisfied ? "yes" : "no") << '\n';
  out << "violations: " << report.violations.size() << '\n';
  for (const auto& v : report.violations) {
    const Edge& e = pg.graph.edge(v.edge);
    out << "  edge " << pg.ids.external(e.tail) << '-' << pg.ids.external(e.head) << " node "
        << pg.ids.external(v.node) << " cluster " << v.cluster << " sampled_neighbors " << v.achieved
        << (v.structural ? " (structural)" : "") << '\n';
  }
  return report.satisfied ? kExitOk : kExitValidation;
}

struct RecoverArgs {
  std::string graph, samples, signal, out;
  std::size_t max_iter = SlpConfig{}.max_iterations;
  double tol = SlpConfig{}.rel_change_tol;
  bool drop_isolated = false;
};

int cmd_recover(const RecoverArgs& a, std::ostream& out, std::ostream& err) {
  const ParsedGraph pg = load_graph(a.graph, a.drop_isolated, err);
  auto samples_in = open_input(a.samples);
  const SamplingSet m = read_sampling_set(samples_in, pg.ids);
  auto signal_in = open_input(a.signal);
  const auto values = read_signal_values(signal_in, pg.ids);

  GraphSignal observed(static_cast<Eigen::Index>(m.size()));
  for (std::size_t s = 0; s < m.size(); ++s) {
    const NodeId node = m.nodes()[s];
    auto it = std::lower_bound(values.begin(), values.end(), std::pair<NodeId, double>{node, -HUGE_VAL});
    if (it == values.end() || it->first != node) {
      throw std::invalid_argument("signal file has no value for sampled node " +
                                  std::to_string(pg.ids.external(node)));
    }
    observed[static_cast<Eigen::Index>(s)] = it->second;
  }
  const SlpResult result = slp_recover(pg.graph, m, observed, SlpConfig{a.max_iter, a.tol});

  OutputBatch batch;
  batch.add(a.out, render([&](std::ostream& os) { write_signal(os, result.recovered, pg.ids); }));
  batch.commit();
  out << "iterations: " << result.iterations_run << '\n';
  if (values.size() == pg.graph.node_count()) {
    GraphSignal truth(static_cast<Eigen::Index>(values.size()));
    for (const auto& [i, v] : values) truth[i] = v;
    out << "nmse: " << format_double(nmse(result.recovered, truth)) << '\n';
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string kind;
  std::size_t runs = 1000;
  std::uint64_t seed = 42;
  std::string out_dir;
  unsigned threads = 0;
  std::size_t max_iter = SlpConfig{}.max_iterations;
  double tol = SlpConfig{}.rel_change_tol;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  std::vector<TrialSummary> summaries;
  std::string parameter;
  TrialSpec spec;
  if (a.kind == "table1") {
    spec = table1_spec(a.runs, a.seed);
    parameter = "budget";
  } else if (a.kind == "table2") {
    spec = table2_spec(a.runs, a.seed);
    parameter = "walk_length";
  } else {
    spec = cluster_stats_spec(a.runs, a.seed);
    parameter = "none";
  }
  spec.threads = a.threads;
  spec.slp = SlpConfig{a.max_iter, a.tol};
  spec.validate();

  if (a.kind == "table1") {
    summaries = run_table1(spec, kTable1Budgets);
  } else if (a.kind == "table2") {
    summaries = run_table2(spec, kTable2Lengths);
  } else {
    summaries.push_back(run_cluster_stats(spec));
  }

  fs::create_directories(a.out_dir);
  OutputBatch batch;
  batch.add(fs::path(a.out_dir) / (a.kind + "_trials.csv"),
            render([&](std::ostream& os) { write_trials_csv(os, parameter, summaries); }));
  batch.add(fs::path(a.out_dir) / (a.kind + "_summary.csv"),
            render([&](std::ostream& os) { write_summary_csv(os, parameter, summaries); }));
  batch.commit();

  for (const auto& s : summaries) {
    out << parameter << '=' << format_double(s.parameter) << " mean_nmse=" << format_double(s.mean_nmse)
        << " std_nmse=" << format_double(s.std_nmse) << " failures=" << s.failures << '\n';
  }
  if (a.kind == "clusterstats") {
    const auto& s = summaries.front();
    out << "pearson(samples, cut)=" << format_double(pearson(s.per_cluster_mean_samples, s.per_cluster_mean_cut))
        << '\n';
  }
  return kExitOk;
}

struct ExtractArgs {
  std::string graph, out;
  std::size_t walk_length = 0;
  std::uint64_t seed = 0;
  bool drop_isolated = false;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const ParsedGraph pg = load_graph(a.graph, a.drop_isolated, err);
  const Subgraph sub = extract_subgraph(pg.graph, a.walk_length, RngSeed{a.seed, 0});
  std::vector<ExternalId> ext;
  ext.reserve(sub.original.size());
  for (NodeId i : sub.original) ext.push_back(pg.ids.external(i));
  const NodeIdMap ids(std::move(ext));

  OutputBatch batch;
  batch.add(a.out, render([&](std::ostream& os) { write_edge_list(os, sub.graph, ids); }));
  batch.commit();
  out << "nodes: " << sub.graph.node_count() << "\nedges: " << sub.graph.edge_count() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-walk sampling and total-variation recovery of graph signals", "tvsample"};
  app.require_subcommand(1);
  int code = kExitOk;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate-appm", "Draw a planted-partition graph and clustered signal");
  generate->add_option("--sizes", gen.sizes, "Cluster sizes, comma separated")->required()->delimiter(',');
  generate->add_option("--p", gen.p, "Intra-cluster edge probability")->required();
  generate->add_option("--q", gen.q, "Inter-cluster edge probability")->required();
  generate->add_option("--seed", gen.seed, "RNG seed")->required();
  generate->add_option("--out-graph", gen.out_graph)->required();
  generate->add_option("--out-partition", gen.out_partition)->required();
  generate->add_option("--out-signal", gen.out_signal)->required();
  generate->add_flag("--require-connected", gen.require_connected,
                     "Redraw (up to 1000 times) until the graph is connected");

  SampleArgs smp;
  auto* sample = app.add_subcommand("sample", "Select a sampling set");
  sample->add_option("--graph", smp.graph)->required();
  sample->add_option("--method", smp.method)->check(CLI::IsMember({"walk", "uniform"}));
  sample->add_option("--budget", smp.budget)->required();
  sample->add_option("--walk-length", smp.walk_length);
  sample->add_option("--seed", smp.seed)->required();
  sample->add_option("--out", smp.out)->required();
  sample->add_flag("--drop-isolated", smp.drop_isolated);

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "Check the two-sampled-neighbors condition on boundary edges");
  check->add_option("--graph", chk.graph)->required();
  check->add_option("--partition", chk.partition)->required();
  check->add_option("--samples", chk.samples)->required();
  check->add_flag("--drop-isolated", chk.drop_isolated);

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Recover a signal from samples by TV minimization");
  recover->add_option("--graph", rec.graph)->required();
  recover->add_option("--samples", rec.samples)->required();
  recover->add_option("--signal", rec.signal, "Signal values; must cover the sampled nodes")->required();
  recover->add_option("--max-iter", rec.max_iter);
  recover->add_option("--tol", rec.tol);
  recover->add_option("--out", rec.out)->required();
  recover->add_flag("--drop-isolated", rec.drop_isolated);

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo experiments");
  experiment->add_option("kind", exp.kind)->required()->check(CLI::IsMember({"table1", "table2", "clusterstats"}));
  experiment->add_option("--runs", exp.runs);
  experiment->add_option("--seed", exp.seed);
  experiment->add_option("--out-dir", exp.out_dir)->required();
  experiment->add_option("--threads", exp.threads);
  experiment->add_option("--max-iter", exp.max_iter);
  experiment->add_option("--tol", exp.tol);

  ExtractArgs ext;
  auto* extract = app.add_subcommand("extract-subgraph", "Walk-neighborhood subgraph of a large graph");
  extract->add_option("--graph", ext.graph)->required();
  extract->add_option("--walk-length", ext.walk_length)->required();
  extract->add_option("--seed", ext.seed)->required();
  extract->add_option("--out", ext.out)->required();
  extract->add_flag("--drop-isolated", ext.drop_isolated);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*generate) code = cmd_generate(gen, out);
    else if (*sample) code = cmd_sample(smp, out, err);
    else if (*check) code = cmd_check(chk, out, err);
    else if (*recover) code = cmd_recover(rec, out, err);
    else if (*experiment) code = cmd_experiment(exp, out);
    else if (*extract) code = cmd_extract(ext, out, err);
  } catch (const SamplingError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return code;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace tvsample
