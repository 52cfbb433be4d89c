#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "elearn/error.hpp"

namespace elearn {

/// Points are the rows of a dense matrix.
template <typename Scalar>
struct ClusterModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Eigen::Index k = 0;
  Matrix centroids;  // k x dim
  std::vector<Eigen::Index> assignments;
  Scalar objective = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  /// Objective after every assignment step; non-increasing.
  std::vector<Scalar> objective_history;

  friend bool operator==(const ClusterModel& a, const ClusterModel& b) {
    return a.k == b.k && a.centroids == b.centroids && a.assignments == b.assignments &&
           a.objective == b.objective && a.iterations == b.iterations && a.seed == b.seed;
  }
};

/// Cluster id -> label. The three best-understood groups are simple, medium
/// and hard; further groups are `group-4`, `group-5`, ...
using DifficultyLabels = std::map<Eigen::Index, std::string>;

struct KMeansOptions {
  int max_iter = 100;
};

/// Uniform double in [0, 1) built from the top 53 bits, so the sequence
/// depends only on the engine, which the standard pins.
inline double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

namespace detail {

template <typename Derived>
Eigen::Index count_distinct_rows(const Eigen::MatrixBase<Derived>& pts) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < pts.cols(); ++c) {
      if (pts(a, c) != pts(b, c)) return pts(a, c) < pts(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  Eigen::Index distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) distinct += less(order[i - 1], order[i]) ? 1 : 0;
  return distinct;
}

// Nearest centroid per row, lowest id on ties. Returns the objective.
template <typename Derived, typename Scalar>
Scalar assign_nearest(const Eigen::MatrixBase<Derived>& pts,
                      const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& centroids,
                      std::vector<Eigen::Index>& assignments, std::vector<Scalar>& dist) {
  Scalar total = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    Eigen::Index best = 0;
    Scalar best_d = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const Scalar d = (pts.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assignments[static_cast<std::size_t>(i)] = best;
    dist[static_cast<std::size_t>(i)] = best_d;
    total += best_d;
  }
  return total;
}

}  // namespace detail

/// Sum of squared distances from each point to its assigned centroid,
/// accumulated in point order.
template <typename Derived, typename Scalar>
Scalar clustering_objective(const Eigen::MatrixBase<Derived>& pts,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& centroids,
                            const std::vector<Eigen::Index>& assignments) {
  Scalar total = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    total += (pts.row(i) - centroids.row(assignments[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

/// k-means++ seeding driven by a seeded mt19937_64; returns row indices.
template <typename Derived>
std::vector<Eigen::Index> kmeans_plus_plus(const Eigen::MatrixBase<Derived>& pts, Eigen::Index k,
                                           std::mt19937_64& gen) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = pts.rows();
  std::vector<Eigen::Index> seeds;
  seeds.reserve(static_cast<std::size_t>(k));
  seeds.push_back(std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>(unit_uniform(gen) * n)));
  std::vector<Scalar> d2(static_cast<std::size_t>(n), std::numeric_limits<Scalar>::infinity());
  std::vector<Scalar> cumulative(static_cast<std::size_t>(n));
  while (static_cast<Eigen::Index>(seeds.size()) < k) {
    const auto last = seeds.back();
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& d = d2[static_cast<std::size_t>(i)];
      d = std::min(d, Scalar((pts.row(i) - pts.row(last)).squaredNorm()));
      sum += d;
      cumulative[static_cast<std::size_t>(i)] = sum;
    }
    const Scalar u = static_cast<Scalar>(unit_uniform(gen)) * sum;
    // First index whose cumulative weight exceeds u; it has positive weight.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      it = std::find_if(cumulative.begin(), cumulative.end(), [&](Scalar c) { return c >= sum; });
    }
    seeds.push_back(static_cast<Eigen::Index>(it - cumulative.begin()));
  }
  return seeds;
}

/// Lloyd iterations from k-means++ seeds. Stops when assignments repeat or
/// after `max_iter` assignment steps. An emptied cluster takes over the point
/// farthest from its own centroid.
template <typename Derived>
ClusterModel<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& pts, Eigen::Index k,
                                              std::uint64_t seed, const KMeansOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename ClusterModel<Scalar>::Matrix;

  if (!pts.allFinite()) throw Error(ErrorCode::NonFinite, "points hold NaN or infinity");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (opts.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  const Eigen::Index distinct = detail::count_distinct_rows(pts);
  if (k > distinct) {
    throw Error(ErrorCode::TooFewPoints, "k=" + std::to_string(k) + " exceeds " + std::to_string(distinct) +
                                             " distinct points");
  }

  const Eigen::Index n = pts.rows();
  const Eigen::Index dim = pts.cols();
  std::mt19937_64 gen(seed);

  ClusterModel<Scalar> model;
  model.k = k;
  model.seed = seed;
  model.centroids.resize(k, dim);
  const auto seeds = kmeans_plus_plus(pts, k, gen);
  for (Eigen::Index c = 0; c < k; ++c) model.centroids.row(c) = pts.row(seeds[static_cast<std::size_t>(c)]);

  std::vector<Eigen::Index> assignments(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> previous;
  std::vector<Scalar> dist(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k));

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    model.iterations = iter;
    Scalar objective = detail::assign_nearest(pts, model.centroids, assignments, dist);

    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto a : assignments) ++sizes[static_cast<std::size_t>(a)];
    for (Eigen::Index c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] != 0) continue;
      // Farthest point that does not leave its own cluster empty; one exists
      // because there are at least k distinct points.
      std::size_t far = 0;
      Scalar far_d = -1;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        if (sizes[static_cast<std::size_t>(assignments[i])] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      objective -= dist[far];
      --sizes[static_cast<std::size_t>(assignments[far])];
      assignments[far] = c;
      dist[far] = 0;
      sizes[static_cast<std::size_t>(c)] = 1;
      model.centroids.row(c) = pts.row(static_cast<Eigen::Index>(far));
    }
    model.objective_history.push_back(objective);

    if (assignments == previous) break;
    previous = assignments;

    Matrix sums = Matrix::Zero(k, dim);
    for (Eigen::Index i = 0; i < n; ++i) sums.row(assignments[static_cast<std::size_t>(i)]) += pts.row(i);
    for (Eigen::Index c = 0; c < k; ++c) {
      model.centroids.row(c) = sums.row(c) / static_cast<Scalar>(sizes[static_cast<std::size_t>(c)]);
    }
  }

  model.assignments = std::move(assignments);
  model.objective = clustering_objective(pts, model.centroids, model.assignments);
  return model;
}

/// Ranks clusters by mean reference similarity (descending, ties to the
/// lower id) and names them simple, medium, hard, group-4, ...
template <typename Scalar>
DifficultyLabels label_difficulty(const ClusterModel<Scalar>& model, std::span<const double> ref_similarity) {
  if (ref_similarity.size() < model.assignments.size()) {
    throw Error(ErrorCode::MissingSimilarity, std::to_string(model.assignments.size()) + " documents but " +
                                                  std::to_string(ref_similarity.size()) + " similarity scores");
  }
  const auto k = static_cast<std::size_t>(model.k);
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t d = 0; d < model.assignments.size(); ++d) {
    const auto c = static_cast<std::size_t>(model.assignments[d]);
    sum[c] += ref_similarity[d];
    ++count[c];
  }
  std::vector<double> mean(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) mean[c] = count[c] ? sum[c] / static_cast<double>(count[c]) : 0.0;

  std::vector<std::size_t> rank(k);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });

  static const char* const kNames[] = {"simple", "medium", "hard"};
  DifficultyLabels labels;
  for (std::size_t r = 0; r < k; ++r) {
    labels[static_cast<Eigen::Index>(rank[r])] = r < 3 ? kNames[r] : "group-" + std::to_string(r + 1);
  }
  return labels;
}

}  // namespace elearn
