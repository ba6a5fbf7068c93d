#pragma once

#include <vector>

#include "qubols/graph.hpp"
#include "qubols/permutation.hpp"
#include "qubols/qap.hpp"

namespace qubols {

/// Minimum 2-sum objective: sum over edges of w_uv (pos(u) - pos(v))^2, where
/// pos is the vertex's position under the ordering. Invariant under shifting
/// or reversing positions.
Rational two_sum_objective(const WeightedGraph& g, const Permutation& ordering);

/// QAP instance whose objective equals the 2-sum for every ordering: flow is
/// the graph Laplacian, dist(k, l) = (k+1)(l+1) (positions are 1-based in the
/// product so position 0 cannot annihilate terms).
QapInstance m2sp_to_qap(const WeightedGraph& g);

/// Fiedler vector (eigenvector of the second-smallest Laplacian eigenvalue)
/// via dense symmetric eigendecomposition; requires n <= 4096.
std::vector<double> fiedler_vector(const WeightedGraph& g);

/// Ordering that sorts vertices by ascending score, ties by vertex index.
Permutation ordering_from_scores(const std::vector<double>& scores);

/// Spectral initial ordering: vertices sorted by Fiedler component. For
/// disconnected graphs the whole-Laplacian Fiedler vector is used as-is.
Permutation spectral_ordering(const WeightedGraph& g);

}  // namespace qubols
