#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvsample/synth.hpp"

using namespace tvsample;

TEST_CASE("generate_appm deterministic limits") {
  const AppmDraw full = generate_appm(AppmSpec{{3, 3}, 1.0, 0.0}, RngSeed{1, 0});
  const Graph two_triangles(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(full.graph == two_triangles);
  CHECK(full.partition.cluster_of(2) == 0);
  CHECK(full.partition.cluster_of(3) == 1);

  const AppmDraw empty = generate_appm(AppmSpec{{4, 5}, 0.0, 0.0}, RngSeed{1, 0});
  CHECK(empty.graph.node_count() == 9);
  CHECK(empty.graph.edge_count() == 0);
}

TEST_CASE("AppmSpec validation") {
  Rng rng(0);
  CHECK_THROWS_AS(generate_appm(AppmSpec{{}, 0.5, 0.5}, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_appm(AppmSpec{{3, 0}, 0.5, 0.5}, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_appm(AppmSpec{{3}, 1.5, 0.5}, rng), std::invalid_argument);
  CHECK_THROWS_AS(generate_appm(AppmSpec{{3}, 0.5, -0.1}, rng), std::invalid_argument);
}

TEST_CASE("generate_appm is reproducible per seed and stream") {
  const AppmSpec spec = default_appm_spec();
  CHECK(generate_appm(spec, RngSeed{5, 3}).graph == generate_appm(spec, RngSeed{5, 3}).graph);
  CHECK_FALSE(generate_appm(spec, RngSeed{5, 3}).graph == generate_appm(spec, RngSeed{5, 4}).graph);
  CHECK_FALSE(generate_appm(spec, RngSeed{6, 3}).graph == generate_appm(spec, RngSeed{5, 3}).graph);
}

TEST_CASE("empirical intra/inter edge frequencies match p and q") {
  const AppmSpec spec = default_appm_spec();
  const Partition part = Partition::from_sizes(spec.cluster_sizes);
  double intra_pairs = 0.0, inter_pairs = 0.0;
  for (auto nr : spec.cluster_sizes) intra_pairs += nr * (nr - 1) / 2.0;
  inter_pairs = 100.0 * 99.0 / 2.0 - intra_pairs;

  const int draws = 2000;
  double intra_edges = 0.0, inter_edges = 0.0;
  for (int d = 0; d < draws; ++d) {
    const AppmDraw draw = generate_appm(spec, RngSeed{99, static_cast<std::uint64_t>(d)});
    for (const auto& e : draw.graph.edges()) {
      (part.cluster_of(e.tail) == part.cluster_of(e.head) ? intra_edges : inter_edges) += 1.0;
    }
  }
  CHECK(std::abs(intra_edges / (draws * intra_pairs) - 0.3) <= 0.01);
  CHECK(std::abs(inter_edges / (draws * inter_pairs) - 0.05) <= 0.01);
}

TEST_CASE("expected_degree") {
  const AppmSpec spec = default_appm_spec();
  CHECK(expected_degree(spec, 0) == doctest::Approx(7.2));
  CHECK(expected_degree(AppmSpec{{12}, 0.4, 0.0}, 0) == doctest::Approx(0.4 * 11));
  const AppmSpec flat{{10, 20, 30, 40}, 0.2, 0.2};
  for (ClusterId c = 0; c < 4; ++c) CHECK(expected_degree(flat, c) == doctest::Approx(0.2 * 99));
  CHECK_THROWS_AS(expected_degree(spec, 4), std::out_of_range);
}

TEST_CASE("expected_cut_size") {
  CHECK(expected_cut_size(AppmSpec{{10, 90}, 0.3, 0.0}, 0) == 0.0);
  const AppmSpec spec = default_appm_spec();
  CHECK(expected_cut_size(spec, 0) == doctest::Approx(45.0));
  CHECK(expected_cut_size(spec, 1) == doctest::Approx(80.0));
  CHECK(expected_cut_size(spec, 2) == doctest::Approx(105.0));
  CHECK(expected_cut_size(spec, 3) == doctest::Approx(120.0));
  CHECK_THROWS_AS(expected_cut_size(spec, 7), std::out_of_range);
}

TEST_CASE("empirical degrees and cut sizes agree with closed forms within 3 standard errors") {
  const AppmSpec spec = default_appm_spec();
  const int draws = 1000;
  const std::size_t k = spec.cluster_sizes.size();
  std::vector<double> deg_sum(k, 0.0), deg_sq(k, 0.0), cut_sum(k, 0.0), cut_sq(k, 0.0);
  for (int d = 0; d < draws; ++d) {
    const AppmDraw draw = generate_appm(spec, RngSeed{2024, static_cast<std::uint64_t>(d)});
    const auto cuts = cut_sizes(draw.graph, draw.partition);
    for (ClusterId c = 0; c < k; ++c) {
      // per-draw mean degree of the cluster
      double mean_deg = 0.0;
      for (NodeId i : draw.partition.members(c)) mean_deg += static_cast<double>(draw.graph.degree(i));
      mean_deg /= static_cast<double>(draw.partition.cluster_size(c));
      deg_sum[c] += mean_deg;
      deg_sq[c] += mean_deg * mean_deg;
      cut_sum[c] += static_cast<double>(cuts[c]);
      cut_sq[c] += static_cast<double>(cuts[c]) * static_cast<double>(cuts[c]);
    }
    for (const auto& e : draw.graph.edges()) CHECK(e.tail < e.head);
  }
  for (ClusterId c = 0; c < k; ++c) {
    const double n = draws;
    const double deg_mean = deg_sum[c] / n;
    const double deg_se = std::sqrt((deg_sq[c] / n - deg_mean * deg_mean) / (n - 1));
    CHECK(std::abs(deg_mean - expected_degree(spec, c)) <= 3.0 * deg_se);
    const double cut_mean = cut_sum[c] / n;
    const double cut_se = std::sqrt((cut_sq[c] / n - cut_mean * cut_mean) / (n - 1));
    CHECK(std::abs(cut_mean - expected_cut_size(spec, c)) <= 3.0 * cut_se);
  }
}

TEST_CASE("expected_edge_count") {
  // 0.3 * (45 + 190 + 435 + 780) + 0.05 * (10000 - 3000) / 2
  CHECK(expected_edge_count(default_appm_spec()) == doctest::Approx(435.0 + 175.0));
}

TEST_CASE("random_clustered_signal") {
  const std::vector<std::size_t> sizes{10, 20, 30, 40};
  const Partition part = Partition::from_sizes(sizes);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const GraphSignal x = random_clustered_signal(part, RngSeed{s, 0});
    CHECK(x.minCoeff() >= 0.0);
    CHECK(x.maxCoeff() < 1.0);
    for (ClusterId c = 0; c < part.cluster_count(); ++c) {
      const auto& members = part.members(c);
      for (NodeId i : members) CHECK(x[i] == x[members.front()]);
    }
  }
  CHECK(random_clustered_signal(part, RngSeed{8, 1}) == random_clustered_signal(part, RngSeed{8, 1}));
}

TEST_CASE("generate_connected_appm") {
  Rng rng = RngSeed{3, 0}.engine();
  const AppmDraw draw = generate_connected_appm(AppmSpec{{25, 25}, 0.3, 0.05}, rng);
  CHECK(is_connected(draw.graph));
  CHECK_THROWS_AS(generate_connected_appm(AppmSpec{{3, 3}, 0.0, 0.0}, rng, 5), std::runtime_error);
}

TEST_CASE("is_connected") {
  CHECK(is_connected(Graph(3, {{0, 1}, {1, 2}})));
  CHECK_FALSE(is_connected(Graph(3, {{0, 1}})));
  CHECK(is_connected(Graph(1, {})));
}
