#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvsample/graph.hpp"
#include "tvsample/sampling.hpp"

namespace tvsample {

struct SlpConfig {
  std::size_t max_iterations = 50000;
  /// Stop once ||avg_k - avg_{k-1}|| / max(||avg_k||, 1e-12) drops below this.
  double rel_change_tol = 1e-7;

  void validate() const {
    if (max_iterations < 1) throw std::invalid_argument("SlpConfig: max_iterations must be >= 1");
    if (!(rel_change_tol >= 0.0)) throw std::invalid_argument("SlpConfig: rel_change_tol must be >= 0");
  }
};

template <typename Scalar>
struct SlpResultT {
  Signal<Scalar> recovered;
  std::size_t iterations_run = 0;
  /// TV of the running average after each iteration.
  std::vector<Scalar> objective_trace;
};

using SlpResult = SlpResultT<double>;

/// Read-only view of the solver state handed to an observer after every
/// iteration.
template <typename Scalar>
struct SlpIterate {
  std::size_t iteration;
  const Signal<Scalar>& primal;
  const Signal<Scalar>& dual;
  const Signal<Scalar>& average;
};

template <typename Scalar>
using SlpObserver = std::function<void(const SlpIterate<Scalar>&)>;

/// Entrywise projection onto [-1, 1]: z / max(|z|, 1).
template <typename Derived>
Signal<typename Derived::Scalar> clip(const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  return y.unaryExpr([](Scalar v) { return v / std::max(Scalar(std::abs(v)), Scalar(1)); });
}

/// ||x_hat - x_true||^2 / ||x_true||^2
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar nmse(const Eigen::MatrixBase<DerivedA>& x_hat,
                               const Eigen::MatrixBase<DerivedB>& x_true) {
  if (x_hat.size() != x_true.size()) {
    throw std::invalid_argument("nmse: length mismatch (" + std::to_string(x_hat.size()) + " vs " +
                                std::to_string(x_true.size()) + ")");
  }
  const auto denom = x_true.squaredNorm();
  if (!(denom > 0)) throw std::invalid_argument("nmse: true signal is zero");
  return (x_hat - x_true).squaredNorm() / denom;
}

/// Sparse label propagation: primal-dual iteration for
///   minimize TV(x)  subject to  x[i] = samples[i] on the sampling set.
///
/// With step 1/(2 sqrt(d_max)) on both sides and D the incidence operator,
/// each iteration performs
///   y <- clip(y + step * D z)
///   r <- x - step * D^T y
///   x <- samples on M, r elsewhere
///   z <- 2 x_new - x_old
/// and the output is the running mean of the primal iterates. `samples[k]`
/// is the observed value at m.nodes()[k].
template <typename Scalar = double>
SlpResultT<Scalar> slp_recover(const Graph& g, const SamplingSet& m, const Signal<Scalar>& samples,
                               const SlpConfig& cfg, const SlpObserver<Scalar>& observer = {}) {
  cfg.validate();
  if (m.empty()) throw std::invalid_argument("slp_recover: empty sampling set");
  m.check_against(g);
  detail::check_length(samples.size(), m.size(), "slp_recover samples");
  if (g.edge_count() == 0) throw std::invalid_argument("slp_recover: graph has no edges");

  const auto n = static_cast<Eigen::Index>(g.node_count());
  const auto& edges = g.edges();
  const std::size_t edge_count = edges.size();
  const Scalar step = Scalar(1) / (Scalar(2) * std::sqrt(Scalar(g.max_degree())));
  const auto& sampled = m.nodes();

  Signal<Scalar> x = Signal<Scalar>::Zero(n);
  Signal<Scalar> x_prev = Signal<Scalar>::Zero(n);
  Signal<Scalar> z = Signal<Scalar>::Zero(n);
  Signal<Scalar> y = Signal<Scalar>::Zero(static_cast<Eigen::Index>(edge_count));
  Signal<Scalar> avg = Signal<Scalar>::Zero(n);

  SlpResultT<Scalar> result;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    for (std::size_t e = 0; e < edge_count; ++e) {
      const Scalar v = y[static_cast<Eigen::Index>(e)] + step * (z[edges[e].head] - z[edges[e].tail]);
      y[static_cast<Eigen::Index>(e)] = v / std::max(Scalar(std::abs(v)), Scalar(1));
    }
    x_prev.swap(x);
    x = x_prev;
    for (std::size_t e = 0; e < edge_count; ++e) {
      const Scalar v = step * y[static_cast<Eigen::Index>(e)];
      x[edges[e].head] -= v;
      x[edges[e].tail] += v;
    }
    for (std::size_t s = 0; s < sampled.size(); ++s) {
      x[sampled[s]] = samples[static_cast<Eigen::Index>(s)];
    }
    z = Scalar(2) * x - x_prev;

    // avg_k = avg_{k-1} + (x_k - avg_{k-1}) / k
    Scalar change_sq(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar delta = (x[i] - avg[i]) / Scalar(k);
      avg[i] += delta;
      change_sq += delta * delta;
    }
    result.objective_trace.push_back(total_variation(g, avg));
    result.iterations_run = k;
    if (observer) observer(SlpIterate<Scalar>{k, x, y, avg});

    const Scalar scale = std::max(avg.norm(), Scalar(1e-12));
    if (std::sqrt(change_sq) / scale < Scalar(cfg.rel_change_tol)) break;
  }
  result.recovered = std::move(avg);
  return result;
}

/// Convenience overload: read the samples off a full signal.
template <typename Derived>
SlpResultT<typename Derived::Scalar> slp_recover_from_signal(const Graph& g, const SamplingSet& m,
                                                             const Eigen::MatrixBase<Derived>& truth,
                                                             const SlpConfig& cfg) {
  detail::check_length(truth.size(), g.node_count(), "slp_recover_from_signal");
  m.check_against(g);
  Signal<typename Derived::Scalar> samples(static_cast<Eigen::Index>(m.size()));
  for (std::size_t s = 0; s < m.size(); ++s) samples[static_cast<Eigen::Index>(s)] = truth[m.nodes()[s]];
  return slp_recover<typename Derived::Scalar>(g, m, samples, cfg);
}

}  // namespace tvsample
