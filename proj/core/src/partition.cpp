#include "qubols/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qubols/errors.hpp"

namespace qubols {

Partition::Partition(std::vector<std::uint32_t> assignment, std::uint32_t num_parts)
    : assignment_(std::move(assignment)), num_parts_(num_parts) {
  if (num_parts_ < 1) throw FormulationError("Partition: need at least one part");
  for (auto p : assignment_)
    if (p >= num_parts_) throw FormulationError("Partition: part index out of range");
}

Partition Partition::balanced(std::vector<std::uint32_t> assignment, std::uint32_t num_parts) {
  Partition p(std::move(assignment), num_parts);
  if (!p.is_balanced()) throw FormulationError("Partition: part sizes are not equal");
  return p;
}

Partition Partition::random_balanced(std::size_t n, std::uint32_t num_parts,
                                     std::mt19937_64& rng) {
  if (num_parts < 1 || n % num_parts != 0)
    throw FormulationError("Partition: vertex count not divisible by part count");
  std::vector<std::uint32_t> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0u);
  std::shuffle(vertices.begin(), vertices.end(), rng);
  std::vector<std::uint32_t> assignment(n);
  const std::size_t per = n / num_parts;
  for (std::size_t t = 0; t < n; ++t)
    assignment[vertices[t]] = static_cast<std::uint32_t>(t / per);
  return Partition::balanced(std::move(assignment), num_parts);
}

std::vector<std::size_t> Partition::part_sizes() const {
  std::vector<std::size_t> sizes(num_parts_, 0);
  for (auto p : assignment_) ++sizes[p];
  return sizes;
}

bool Partition::is_balanced() const {
  if (assignment_.size() % num_parts_ != 0) return false;
  auto sizes = part_sizes();
  return std::all_of(sizes.begin(), sizes.end(),
                     [&](std::size_t s) { return s == assignment_.size() / num_parts_; });
}

void Partition::swap_parts(std::size_t u, std::size_t v) {
  std::swap(assignment_[u], assignment_[v]);
}

std::string Partition::str() const {
  std::string s;
  for (auto p : assignment_) {
    s += std::to_string(p);
    s += '\n';
  }
  return s;
}

Partition parse_partition(std::string_view text, std::uint32_t min_parts) {
  std::vector<std::uint32_t> assignment;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long p;
    if (!(ls >> p)) continue;
    std::string rest;
    if ((ls >> rest) || p < 0)
      throw ParseError("partition line " + std::to_string(line_no) +
                       ": expected one non-negative part index");
    assignment.push_back(static_cast<std::uint32_t>(p));
  }
  std::uint32_t num_parts = min_parts;
  for (auto p : assignment) num_parts = std::max(num_parts, p + 1);
  if (num_parts == 0) num_parts = 1;
  return Partition(std::move(assignment), num_parts);
}

Rational cut_value(const WeightedGraph& g, const Partition& p) {
  if (p.size() != g.num_vertices()) throw DimensionError("cut_value: partition size mismatch");
  Rational cut(0);
  for (const auto& e : g.edges())
    if (p.part(e.u) != p.part(e.v)) cut += e.weight;
  return cut;
}

Rational kl_gain(const WeightedGraph& g, const Partition& p, std::size_t u, std::size_t v) {
  if (u >= g.num_vertices() || v >= g.num_vertices())
    throw DimensionError("kl_gain: vertex out of range");
  if (p.part(u) == p.part(v)) throw FormulationError("kl_gain: vertices share a part");
  auto d_value = [&](std::size_t x) {
    Rational external(0), internal(0);
    for (const auto& [y, w] : g.neighbors(x)) {
      if (p.part(y) == p.part(x))
        internal += w;
      else
        external += w;
    }
    return external - internal;
  };
  return d_value(u) + d_value(v) - Rational(2) * g.weight(u, v);
}

SwapMatching select_swap_matching(const WeightedGraph& g, const Partition& p,
                                  std::size_t m_max) {
  const std::size_t n = g.num_vertices();
  if (p.size() != n) throw DimensionError("select_swap_matching: partition size mismatch");
  if (!p.is_balanced()) throw FormulationError("select_swap_matching: partition not balanced");

  // D-values once, then gains for every cross-part pair.
  std::vector<Rational> d_value(n, Rational(0));
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& [v, w] : g.neighbors(u)) {
      if (p.part(v) == p.part(u))
        d_value[u] -= w;
      else
        d_value[u] += w;
    }

  std::vector<std::tuple<Rational, std::uint32_t, std::uint32_t>> ranked;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (p.part(u) == p.part(v)) continue;
      ranked.emplace_back(d_value[u] + d_value[v] - Rational(2) * g.weight(u, v), u, v);
    }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });

  SwapMatching matching;
  std::vector<bool> used(n, false);
  for (const auto& [gain, u, v] : ranked) {
    (void)gain;
    if (matching.pairs.size() == m_max) break;
    if (used[u] || used[v]) continue;
    used[u] = used[v] = true;
    matching.pairs.emplace_back(u, v);
  }
  return matching;
}

namespace {

void check_matching(const Partition& p, const SwapMatching& matching) {
  std::vector<bool> used(p.size(), false);
  for (const auto& [u, v] : matching.pairs) {
    if (u >= p.size() || v >= p.size())
      throw DimensionError("swap matching: vertex out of range");
    if (p.part(u) == p.part(v))
      throw FormulationError("swap matching: pair must span two parts");
    if (used[u] || used[v]) throw FormulationError("swap matching: pairs overlap");
    used[u] = used[v] = true;
  }
}

}  // namespace

QuboModel build_swap_qubo(const WeightedGraph& g, const Partition& p,
                          const SwapMatching& matching) {
  if (p.size() != g.num_vertices())
    throw DimensionError("build_swap_qubo: partition size mismatch");
  check_matching(p, matching);
  const std::size_t n = g.num_vertices();
  const std::size_t m = matching.pairs.size();

  std::vector<int> pair_of(n, -1);
  std::vector<std::uint32_t> partner(n, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& [u, v] = matching.pairs[j];
    pair_of[u] = pair_of[v] = static_cast<int>(j);
    partner[u] = v;
    partner[v] = u;
  }
  // Where vertex x lives after decoding: its own part, or its partner's when
  // the pair's bit is set. Cut status of an edge is a function of at most two
  // bits, so 2*cut expands to an exact QUBO.
  auto part_after = [&](std::size_t x, int bit) {
    return bit && pair_of[x] >= 0 ? p.part(partner[x]) : p.part(x);
  };

  QuboBuilder builder(m);
  const Rational two(2);
  for (const auto& e : g.edges()) {
    const int pu = pair_of[e.u], pv = pair_of[e.v];
    const Rational w2 = two * e.weight;
    auto cut = [&](int bu, int bv) {
      return part_after(e.u, bu) != part_after(e.v, bv);
    };
    if (pu < 0 && pv < 0) {
      if (cut(0, 0)) builder.add_offset(w2);
    } else if (pu >= 0 && pv >= 0 && pu == pv) {
      // same pair: one shared bit
      if (cut(0, 0)) builder.add_offset(w2);
      if (cut(1, 1) != cut(0, 0))
        builder.add_linear(pu, cut(1, 1) ? w2 : -w2);
    } else if (pv < 0) {
      if (cut(0, 0)) builder.add_offset(w2);
      if (cut(1, 0) != cut(0, 0)) builder.add_linear(pu, cut(1, 0) ? w2 : -w2);
    } else if (pu < 0) {
      if (cut(0, 0)) builder.add_offset(w2);
      if (cut(0, 1) != cut(0, 0)) builder.add_linear(pv, cut(0, 1) ? w2 : -w2);
    } else {
      const int c00 = cut(0, 0), c10 = cut(1, 0), c01 = cut(0, 1), c11 = cut(1, 1);
      if (c00) builder.add_offset(w2);
      if (c10 != c00) builder.add_linear(pu, Rational(c10 - c00) * w2);
      if (c01 != c00) builder.add_linear(pv, Rational(c01 - c00) * w2);
      const int quad = c11 - c10 - c01 + c00;
      if (quad != 0) builder.add_quadratic(pu, pv, Rational(quad) * w2);
    }
  }
  return builder.build();
}

Partition apply_swaps(const Partition& p, const SwapMatching& matching, const BitString& y) {
  if (y.size() != matching.pairs.size())
    throw DimensionError("apply_swaps: bit count != matching size");
  check_matching(p, matching);
  Partition result = p;
  for (std::size_t j = 0; j < matching.pairs.size(); ++j)
    if (y[j]) result.swap_parts(matching.pairs[j].first, matching.pairs[j].second);
  return result;
}

QuboModel full_gp_qubo(const WeightedGraph& g, std::uint32_t num_parts,
                       const PenaltyConfig& penalties) {
  const std::size_t n = g.num_vertices();
  const std::size_t K = num_parts;
  if (K < 1) throw FormulationError("full_gp_qubo: need at least one part");
  if (n % K != 0) throw FormulationError("full_gp_qubo: |V| not divisible by K");
  const std::size_t group_count = n + K;
  auto var = [&](std::size_t v, std::size_t l) { return v * K + l; };

  QuboBuilder b(n * K);
  // Cut term: sum_edges sum_l w (x_ul - x_vl)^2, each cut edge counted twice.
  for (const auto& e : g.edges())
    for (std::size_t l = 0; l < K; ++l) {
      b.add_linear(var(e.u, l), e.weight);
      b.add_linear(var(e.v, l), e.weight);
      b.add_quadratic(var(e.u, l), var(e.v, l), Rational(-2) * e.weight);
    }
  // Vertex exactly-one penalties (groups 0..n-1).
  for (std::size_t v = 0; v < n; ++v) {
    Rational lambda = penalties.weight(v, group_count);
    b.add_offset(lambda);
    for (std::size_t l = 0; l < K; ++l) {
      b.add_linear(var(v, l), -lambda);
      for (std::size_t l2 = l + 1; l2 < K; ++l2)
        b.add_quadratic(var(v, l), var(v, l2), lambda + lambda);
    }
  }
  // Balance penalties (groups n..n+K-1): (sum_v x_vl - n/K)^2.
  const Rational target(static_cast<long long>(n / K));
  for (std::size_t l = 0; l < K; ++l) {
    Rational lambda = penalties.weight(n + l, group_count);
    b.add_offset(lambda * target * target);
    for (std::size_t v = 0; v < n; ++v) {
      b.add_linear(var(v, l), lambda * (Rational(1) - Rational(2) * target));
      for (std::size_t v2 = v + 1; v2 < n; ++v2)
        b.add_quadratic(var(v, l), var(v2, l), lambda + lambda);
    }
  }
  return b.build();
}

}  // namespace qubols
