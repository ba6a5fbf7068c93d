#include "qubols/problems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qubols {

namespace {

Permutation parse_permutation(std::string_view text, std::size_t n, const char* what) {
  std::istringstream in{std::string(text)};
  std::vector<std::uint32_t> image;
  long long v;
  while (in >> v) {
    if (v < 0) throw ParseError(std::string(what) + ": negative index");
    image.push_back(static_cast<std::uint32_t>(v));
  }
  if (image.size() != n)
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " entries, got " +
                     std::to_string(image.size()));
  return Permutation(std::move(image));
}

/// Shared by QAP and the 2-sum reduction: one bit per ranked disjoint pair.
UnconstrainedMove<Permutation> qap_unconstrained_move(const QapInstance& inst,
                                                      const Permutation& s,
                                                      const SubproblemParams& p) {
  const std::size_t n = inst.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  if (n >= 2) {
    const std::size_t m_max = std::min(p.capacity, n / 2);
    pairs = greedy_select_pairs(inst, s, m_max).pairs;
  }
  ExchangePlan plan(std::move(pairs), s);
  QuboModel model = build_uqubols_qubo(inst, plan);
  BitString current = BitString::zeros(model.num_vars());
  return {std::move(model), std::move(current),
          [plan](const BitString& y) { return decode_uqubols(plan, y); }};
}

ConstrainedMove<Permutation> qap_constrained_move(const QapInstance& inst, const Permutation& s,
                                                  const SubproblemParams& p,
                                                  std::mt19937_64& rng) {
  const std::size_t n = inst.size();
  std::size_t k = std::max<std::size_t>(1, std::min(p.k, n));
  if (k * k > p.capacity)
    throw ConfigError("cqubols: k^2 = " + std::to_string(k * k) +
                      " exceeds the annealer capacity " + std::to_string(p.capacity));
  std::size_t m = std::max<std::size_t>(1, std::min({p.m, n / k, p.capacity / (k * k)}));

  SubsetFamily family = p.selection == SubsetSelection::greedy
                            ? make_subset_family(inst, s, k, m)
                            : random_subset_family(n, k, m, rng);
  QuboModel objective_part = build_cqubols_objective(inst, family, s);
  Rational lambda = default_penalty(objective_part) * p.penalty_scale;
  CquboLayout layout = cqubols_layout(family, s);
  QuboModel model = add_one_hot_penalties(objective_part, cqubols_one_hot_groups(layout),
                                          PenaltyConfig::uniform(lambda));
  BitString current = encode_cqubols(family, s);
  return {std::move(model), std::move(current),
          [family, s](const BitString& bits) { return decode_cqubols(family, s, bits); }};
}

Permutation transposition_neighbor(const Permutation& s, std::mt19937_64& rng) {
  const std::size_t n = s.size();
  if (n < 2) return s;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  while (b == a) b = pick(rng);
  Permutation next = s;
  next.swap_images(a, b);
  return next;
}

}  // namespace

Permutation QapProblem::neighbor(const Solution& s, std::mt19937_64& rng) const {
  return transposition_neighbor(s, rng);
}

UnconstrainedMove<Permutation> QapProblem::unconstrained_move(const Solution& s,
                                                              const SubproblemParams& p,
                                                              std::mt19937_64&) const {
  return qap_unconstrained_move(inst_, s, p);
}

ConstrainedMove<Permutation> QapProblem::constrained_move(const Solution& s,
                                                          const SubproblemParams& p,
                                                          std::mt19937_64& rng) const {
  return qap_constrained_move(inst_, s, p, rng);
}

Permutation QapProblem::parse_solution(std::string_view text) const {
  return parse_permutation(text, inst_.size(), "qap solution");
}

Permutation M2spProblem::neighbor(const Solution& s, std::mt19937_64& rng) const {
  return transposition_neighbor(s, rng);
}

UnconstrainedMove<Permutation> M2spProblem::unconstrained_move(const Solution& s,
                                                               const SubproblemParams& p,
                                                               std::mt19937_64&) const {
  return qap_unconstrained_move(reduced_, s, p);
}

ConstrainedMove<Permutation> M2spProblem::constrained_move(const Solution& s,
                                                           const SubproblemParams& p,
                                                           std::mt19937_64& rng) const {
  return qap_constrained_move(reduced_, s, p, rng);
}

Permutation M2spProblem::parse_solution(std::string_view text) const {
  return parse_permutation(text, graph_.num_vertices(), "ordering");
}

Tour TspProblem::neighbor(const Solution& s, std::mt19937_64& rng) const {
  const std::size_t n = s.size();
  if (n < 3) return s;
  auto cuts = random_cut_positions(n, 2, rng);
  return apply_reversals(decompose(s, std::move(cuts)), BitString{1, 0});
}

UnconstrainedMove<Tour> TspProblem::unconstrained_move(const Solution& s,
                                                       const SubproblemParams& p,
                                                       std::mt19937_64& rng) const {
  const std::size_t n = inst_.size();
  if (n < 2) {
    QuboModel empty(0, {}, {}, objective(s));
    return {std::move(empty), BitString(), [s](const BitString&) { return s; }};
  }
  std::size_t k = p.k > 0 ? p.k : std::max<std::size_t>(2, n / 2);
  k = std::min({k, n, p.capacity});
  k = std::max<std::size_t>(2, k);
  auto decomp = decompose(s, random_cut_positions(n, k, rng));
  KReversalQubo kq = build_k_reversal_qubo(inst_, decomp);

  // Fold the constant internal weight in so energies are full tour lengths.
  QuboBuilder b(kq.model.num_vars());
  b.add_offset(kq.model.offset() + kq.internal_weight);
  for (std::size_t i = 0; i < kq.model.num_vars(); ++i) b.add_linear(i, kq.model.linear(i));
  for (const auto& t : kq.model.quadratic_terms()) b.add_quadratic(t.i, t.j, t.coeff);
  QuboModel model = b.build();

  BitString current = BitString::zeros(model.num_vars());
  return {std::move(model), std::move(current),
          [decomp](const BitString& y) { return apply_reversals(decomp, y); }};
}

ConstrainedMove<Tour> TspProblem::constrained_move(const Solution&, const SubproblemParams&,
                                                   std::mt19937_64&) const {
  throw ConfigError("cqubols/qls are not defined for TSP; use uqubols or sa");
}

Tour TspProblem::parse_solution(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::vector<std::uint32_t> order;
  long long v;
  while (in >> v) {
    if (v < 0) throw ParseError("tour: negative city");
    order.push_back(static_cast<std::uint32_t>(v));
  }
  if (order.size() != inst_.size())
    throw ParseError("tour: expected " + std::to_string(inst_.size()) + " cities");
  return Tour(std::move(order));
}

GpProblem::GpProblem(WeightedGraph g, std::uint32_t num_parts)
    : graph_(std::move(g)), num_parts_(num_parts) {
  if (num_parts_ < 1) throw ConfigError("gp: need at least one part");
  if (graph_.num_vertices() % num_parts_ != 0)
    throw ConfigError("gp: vertex count not divisible by part count");
}

Partition GpProblem::neighbor(const Solution& s, std::mt19937_64& rng) const {
  const std::size_t n = s.size();
  if (n < 2 || num_parts_ < 2) return s;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t u = pick(rng);
  std::size_t v = pick(rng);
  while (s.part(v) == s.part(u)) v = pick(rng);
  Partition next = s;
  next.swap_parts(u, v);
  return next;
}

UnconstrainedMove<Partition> GpProblem::unconstrained_move(const Solution& s,
                                                           const SubproblemParams& p,
                                                           std::mt19937_64&) const {
  const std::size_t m_max = std::min(p.capacity, graph_.num_vertices() / 2);
  SwapMatching matching = select_swap_matching(graph_, s, m_max);
  QuboModel model = build_swap_qubo(graph_, s, matching);
  BitString current = BitString::zeros(model.num_vars());
  return {std::move(model), std::move(current),
          [s, matching](const BitString& y) { return apply_swaps(s, matching, y); }};
}

ConstrainedMove<Partition> GpProblem::constrained_move(const Solution&, const SubproblemParams&,
                                                       std::mt19937_64&) const {
  throw ConfigError("cqubols/qls are not defined for graph partitioning; use uqubols or sa");
}

Partition GpProblem::parse_solution(std::string_view text) const {
  Partition p = parse_partition(text, num_parts_);
  if (p.size() != graph_.num_vertices())
    throw ParseError("partition: expected " + std::to_string(graph_.num_vertices()) +
                     " vertices");
  if (p.num_parts() != num_parts_)
    throw ParseError("partition: part index exceeds configured K");
  return Partition::balanced(p.assignment(), num_parts_);
}

}  // namespace qubols
