#include "qubols/m2sp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

#include "qubols/errors.hpp"

namespace qubols {

Rational two_sum_objective(const WeightedGraph& g, const Permutation& ordering) {
  if (ordering.size() != g.num_vertices())
    throw DimensionError("two_sum_objective: ordering size mismatch");
  Rational total(0);
  for (const auto& e : g.edges()) {
    auto diff = Rational(static_cast<long long>(ordering(e.u))) -
                Rational(static_cast<long long>(ordering(e.v)));
    total += e.weight * diff * diff;
  }
  return total;
}

QapInstance m2sp_to_qap(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Rational> laplacian(n * n, Rational(0));
  for (const auto& e : g.edges()) {
    laplacian[e.u * n + e.v] -= e.weight;
    laplacian[e.v * n + e.u] -= e.weight;
    laplacian[e.u * n + e.u] += e.weight;
    laplacian[e.v * n + e.v] += e.weight;
  }
  std::vector<Rational> dist(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      dist[k * n + l] = Rational(static_cast<long long>((k + 1) * (l + 1)));
  return QapInstance(n, std::move(laplacian), std::move(dist));
}

std::vector<double> fiedler_vector(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 4096) throw ConfigError("fiedler_vector: dense eigensolver capped at n = 4096");
  if (n == 0) return {};
  if (n == 1) return {0.0};
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  for (const auto& e : g.edges()) {
    const double w = e.weight.to_double();
    laplacian(e.u, e.v) -= w;
    laplacian(e.v, e.u) -= w;
    laplacian(e.u, e.u) += w;
    laplacian(e.v, e.v) += w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) throw Error("fiedler_vector: eigendecomposition failed");
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);  // eigenvalues ascending
  return {fiedler.data(), fiedler.data() + n};
}

Permutation ordering_from_scores(const std::vector<double>& scores) {
  std::vector<std::uint32_t> by_score(scores.size());
  std::iota(by_score.begin(), by_score.end(), 0u);
  std::sort(by_score.begin(), by_score.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return a < b;
  });
  std::vector<std::uint32_t> position(scores.size());
  for (std::uint32_t rank = 0; rank < by_score.size(); ++rank) position[by_score[rank]] = rank;
  return Permutation(std::move(position));
}

Permutation spectral_ordering(const WeightedGraph& g) {
  if (g.num_vertices() == 0) return Permutation();
  if (g.num_vertices() == 1) return Permutation::identity(1);
  return ordering_from_scores(fiedler_vector(g));
}

}  // namespace qubols
