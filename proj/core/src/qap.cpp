#include "qubols/qap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qubols/errors.hpp"

namespace qubols {

namespace {

void check_disjoint_pairs(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                          std::size_t n) {
  std::vector<bool> used(n, false);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw DimensionError("exchange pair index out of range");
    if (a == b) throw FormulationError("exchange pair must have distinct facilities");
    if (used[a] || used[b]) throw FormulationError("exchange pairs overlap");
    used[a] = used[b] = true;
  }
}

std::vector<long long> parse_integer_tokens(std::string_view text, std::string_view what) {
  std::vector<long long> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      tokens.push_back(v);
    } catch (const std::invalid_argument&) {
      throw ParseError(std::string(what) + ": non-numeric token '" + tok + "'");
    } catch (const std::out_of_range&) {
      throw ParseError(std::string(what) + ": token out of range '" + tok + "'");
    }
  }
  return tokens;
}

}  // namespace

QapInstance::QapInstance(std::size_t n, std::vector<Rational> flow_row_major,
                         std::vector<Rational> dist_row_major)
    : n_(n), flow_(std::move(flow_row_major)), dist_(std::move(dist_row_major)) {
  if (flow_.size() != n_ * n_ || dist_.size() != n_ * n_)
    throw DimensionError("QapInstance: matrices must be n x n");
}

QapInstance parse_qaplib(std::string_view text) {
  auto tokens = parse_integer_tokens(text, "qaplib");
  if (tokens.empty()) throw ParseError("qaplib: empty input");
  if (tokens[0] < 1 || tokens[0] > (1 << 20))
    throw ParseError("qaplib: implausible instance size");
  const auto n = static_cast<std::size_t>(tokens[0]);
  if (tokens.size() != 1 + 2 * n * n)
    throw ParseError("qaplib: expected " + std::to_string(1 + 2 * n * n) + " tokens, got " +
                     std::to_string(tokens.size()));
  std::vector<Rational> flow, dist;
  flow.reserve(n * n);
  dist.reserve(n * n);
  for (std::size_t t = 0; t < n * n; ++t) flow.emplace_back(tokens[1 + t]);
  for (std::size_t t = 0; t < n * n; ++t) dist.emplace_back(tokens[1 + n * n + t]);
  return QapInstance(n, std::move(flow), std::move(dist));
}

std::string write_qaplib(const QapInstance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.size();
  out << n << "\n\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << inst.flow(i, j).str();
    out << "\n";
  }
  out << "\n";
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) out << (l ? " " : "") << inst.dist(k, l).str();
    out << "\n";
  }
  return out.str();
}

Rational qap_objective(const QapInstance& inst, const Permutation& pi) {
  const std::size_t n = inst.size();
  if (pi.size() != n) throw DimensionError("qap_objective: permutation size mismatch");
  Rational total(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& w = inst.flow(i, j);
      if (!w.is_zero()) total += w * inst.dist(pi(i), pi(j));
    }
  return total;
}

QuboModel qap_objective_qubo(const QapInstance& inst) {
  const std::size_t n = inst.size();
  QuboBuilder b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t v = i * n + k;
      if (!inst.flow(i, i).is_zero()) b.add_linear(v, inst.flow(i, i) * inst.dist(k, k));
      for (std::size_t u = v + 1; u < n * n; ++u) {
        const std::size_t j = u / n, l = u % n;
        Rational c = inst.flow(i, j) * inst.dist(k, l) + inst.flow(j, i) * inst.dist(l, k);
        if (!c.is_zero()) b.add_quadratic(v, u, c);
      }
    }
  return b.build();
}

std::vector<std::vector<std::uint32_t>> qap_one_hot_groups(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> groups;
  groups.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = static_cast<std::uint32_t>(i * n + k);
    groups.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::uint32_t> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = static_cast<std::uint32_t>(i * n + k);
    groups.push_back(std::move(col));
  }
  return groups;
}

QuboModel full_qubo(const QapInstance& inst, const PenaltyConfig& penalties) {
  return add_one_hot_penalties(qap_objective_qubo(inst), qap_one_hot_groups(inst.size()),
                               penalties);
}

Rational pair_exchange_delta(const QapInstance& inst, const Permutation& pi, std::size_t a,
                             std::size_t b) {
  const std::size_t n = inst.size();
  if (a >= n || b >= n) throw DimensionError("pair_exchange_delta: index out of range");
  if (a == b) throw FormulationError("pair_exchange_delta: facilities must differ");
  const std::size_t p = pi(a), q = pi(b);
  Rational delta(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == a || j == b) continue;
    const std::size_t r = pi(j);
    delta += inst.flow(a, j) * (inst.dist(q, r) - inst.dist(p, r));
    delta += inst.flow(b, j) * (inst.dist(p, r) - inst.dist(q, r));
    delta += inst.flow(j, a) * (inst.dist(r, q) - inst.dist(r, p));
    delta += inst.flow(j, b) * (inst.dist(r, p) - inst.dist(r, q));
  }
  delta += inst.flow(a, a) * (inst.dist(q, q) - inst.dist(p, p));
  delta += inst.flow(b, b) * (inst.dist(p, p) - inst.dist(q, q));
  delta += inst.flow(a, b) * (inst.dist(q, p) - inst.dist(p, q));
  delta += inst.flow(b, a) * (inst.dist(p, q) - inst.dist(q, p));
  return delta;
}

ExchangePlan::ExchangePlan(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_,
                           Permutation base_)
    : pairs(std::move(pairs_)), base(std::move(base_)) {
  check_disjoint_pairs(pairs, base.size());
}

ExchangePlan greedy_select_pairs(const QapInstance& inst, const Permutation& pi,
                                 std::size_t m_max) {
  const std::size_t n = inst.size();
  if (m_max < 1) throw ConfigError("greedy_select_pairs: m_max must be >= 1");
  if (pi.size() != n) throw DimensionError("greedy_select_pairs: permutation size mismatch");

  std::vector<std::tuple<Rational, std::uint32_t, std::uint32_t>> ranked;
  ranked.reserve(n * (n - 1) / 2);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      ranked.emplace_back(pair_exchange_delta(inst, pi, a, b), a, b);
  std::sort(ranked.begin(), ranked.end());

  const std::size_t limit = std::min(m_max, n / 2);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
  std::vector<bool> used(n, false);
  for (const auto& [delta, a, b] : ranked) {
    (void)delta;
    if (chosen.size() == limit) break;
    if (used[a] || used[b]) continue;
    used[a] = used[b] = true;
    chosen.emplace_back(a, b);
  }
  return ExchangePlan(std::move(chosen), pi);
}

QuboModel build_uqubols_qubo(const QapInstance& inst, const ExchangePlan& plan) {
  const std::size_t n = inst.size();
  if (plan.base.size() != n) throw DimensionError("build_uqubols_qubo: base size mismatch");
  check_disjoint_pairs(plan.pairs, n);
  const std::size_t m = plan.pairs.size();

  // Location of facility u under "pair j swapped" (s = 1) or not (s = 0).
  auto loc = [&](std::size_t j, std::size_t u, int s) -> std::size_t {
    const auto& [a, b] = plan.pairs[j];
    if (s == 0) return plan.base(u);
    return plan.base(u == a ? b : a);
  };

  QuboBuilder builder(m);
  builder.add_offset(qap_objective(inst, plan.base));
  for (std::size_t j = 0; j < m; ++j)
    builder.add_linear(j, pair_exchange_delta(inst, plan.base, plan.pairs[j].first,
                                              plan.pairs[j].second));

  // The objective is multilinear of degree <= 2 in the decision bits: each
  // d_(pi(u), pi(v)) term depends only on the bits of u's and v's pairs. The
  // pair-pair interaction is the second mixed difference of the four
  // facility-pair cross sums.
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto fi = {plan.pairs[i].first, plan.pairs[i].second};
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto fj = {plan.pairs[j].first, plan.pairs[j].second};
      auto cross = [&](int si, int sj) {
        Rational sum(0);
        for (std::uint32_t u : fi)
          for (std::uint32_t v : fj) {
            sum += inst.flow(u, v) * inst.dist(loc(i, u, si), loc(j, v, sj));
            sum += inst.flow(v, u) * inst.dist(loc(j, v, sj), loc(i, u, si));
          }
        return sum;
      };
      Rational gamma = cross(1, 1) - cross(1, 0) - cross(0, 1) + cross(0, 0);
      if (!gamma.is_zero()) builder.add_quadratic(i, j, gamma);
    }
  }
  return builder.build();
}

Permutation decode_uqubols(const ExchangePlan& plan, const BitString& y) {
  if (y.size() != plan.pairs.size())
    throw DimensionError("decode_uqubols: bit count != pair count");
  Permutation pi = plan.base;
  for (std::size_t j = 0; j < plan.pairs.size(); ++j)
    if (y[j]) pi.swap_images(plan.pairs[j].first, plan.pairs[j].second);
  return pi;
}

SubsetFamily::SubsetFamily(std::vector<std::vector<std::uint32_t>> subsets_, std::size_t k_)
    : subsets(std::move(subsets_)), k(k_) {
  if (k < 1) throw FormulationError("SubsetFamily: subset size must be >= 1");
  std::vector<std::uint32_t> all;
  for (const auto& s : subsets) {
    if (s.size() != k) throw FormulationError("SubsetFamily: subsets must share size k");
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw FormulationError("SubsetFamily: subsets must be pairwise disjoint");
}

SubsetFamily make_subset_family(const QapInstance& inst, const Permutation& pi, std::size_t k,
                                std::size_t m) {
  const std::size_t n = inst.size();
  if (k < 1 || m < 1) throw ConfigError("make_subset_family: need k >= 1 and m >= 1");
  if (m * k > n)
    throw ConfigError("make_subset_family: m*k exceeds the number of facilities");

  // Facilities in greedy order: ranked disjoint pairs first, leftovers after.
  ExchangePlan plan = greedy_select_pairs(inst, pi, n / 2);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::vector<bool> used(n, false);
  for (const auto& [a, b] : plan.pairs) {
    order.push_back(a);
    order.push_back(b);
    used[a] = used[b] = true;
  }
  for (std::uint32_t f = 0; f < n; ++f)
    if (!used[f]) order.push_back(f);

  std::vector<std::vector<std::uint32_t>> subsets(m);
  for (std::size_t b = 0; b < m; ++b)
    subsets[b].assign(order.begin() + b * k, order.begin() + (b + 1) * k);
  return SubsetFamily(std::move(subsets), k);
}

SubsetFamily random_subset_family(std::size_t n, std::size_t k, std::size_t m,
                                  std::mt19937_64& rng) {
  if (k < 1 || m < 1) throw ConfigError("random_subset_family: need k >= 1 and m >= 1");
  if (m * k > n) throw ConfigError("random_subset_family: m*k exceeds n");
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::uint32_t>> subsets(m);
  for (std::size_t b = 0; b < m; ++b)
    subsets[b].assign(order.begin() + b * k, order.begin() + (b + 1) * k);
  return SubsetFamily(std::move(subsets), k);
}

CquboLayout cqubols_layout(const SubsetFamily& family, const Permutation& pi) {
  CquboLayout layout;
  layout.k = family.k;
  for (const auto& subset : family.subsets) {
    std::vector<std::uint32_t> facilities = subset;
    std::sort(facilities.begin(), facilities.end());
    std::vector<std::uint32_t> locations;
    locations.reserve(facilities.size());
    for (auto f : facilities) {
      if (f >= pi.size()) throw DimensionError("cqubols_layout: facility out of range");
      locations.push_back(pi(f));
    }
    std::sort(locations.begin(), locations.end());
    layout.facilities.push_back(std::move(facilities));
    layout.locations.push_back(std::move(locations));
  }
  return layout;
}

QuboModel build_cqubols_objective(const QapInstance& inst, const SubsetFamily& family,
                                  const Permutation& pi) {
  const std::size_t n = inst.size();
  if (pi.size() != n) throw DimensionError("build_cqubols_objective: permutation size mismatch");
  CquboLayout layout = cqubols_layout(family, pi);

  // facility -> (block, position); outside facilities stay at pi(f).
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < layout.facilities.size(); ++b)
    for (auto f : layout.facilities[b]) block_of[f] = static_cast<int>(b);
  std::vector<std::uint32_t> fixed;
  for (std::uint32_t f = 0; f < n; ++f)
    if (block_of[f] < 0) fixed.push_back(f);

  // Flat list of free variables (facility, location) in layout order.
  struct FreeVar {
    std::uint32_t facility;
    std::uint32_t location;
  };
  std::vector<FreeVar> vars;
  vars.reserve(layout.num_vars());
  for (std::size_t b = 0; b < layout.facilities.size(); ++b)
    for (auto f : layout.facilities[b])
      for (auto l : layout.locations[b]) vars.push_back({f, l});

  QuboBuilder builder(vars.size());

  Rational constant(0);
  for (auto i : fixed)
    for (auto j : fixed) {
      const Rational& w = inst.flow(i, j);
      if (!w.is_zero()) constant += w * inst.dist(pi(i), pi(j));
    }
  builder.add_offset(constant);

  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto [f, l] = vars[v];
    Rational lin = inst.flow(f, f) * inst.dist(l, l);
    for (auto j : fixed) {
      lin += inst.flow(f, j) * inst.dist(l, pi(j));
      lin += inst.flow(j, f) * inst.dist(pi(j), l);
    }
    if (!lin.is_zero()) builder.add_linear(v, lin);

    for (std::size_t u = v + 1; u < vars.size(); ++u) {
      const auto [g, t] = vars[u];
      Rational c = f == g ? inst.flow(f, f) * (inst.dist(l, t) + inst.dist(t, l))
                          : inst.flow(f, g) * inst.dist(l, t) + inst.flow(g, f) * inst.dist(t, l);
      if (!c.is_zero()) builder.add_quadratic(v, u, c);
    }
  }
  return builder.build();
}

std::vector<std::vector<std::uint32_t>> cqubols_one_hot_groups(const CquboLayout& layout) {
  const std::size_t k = layout.k;
  std::vector<std::vector<std::uint32_t>> groups;
  groups.reserve(layout.facilities.size() * 2 * k);
  for (std::size_t b = 0; b < layout.facilities.size(); ++b) {
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::uint32_t> row(k);
      for (std::size_t l = 0; l < k; ++l) row[l] = static_cast<std::uint32_t>(layout.var(b, a, l));
      groups.push_back(std::move(row));
    }
    for (std::size_t l = 0; l < k; ++l) {
      std::vector<std::uint32_t> col(k);
      for (std::size_t a = 0; a < k; ++a) col[a] = static_cast<std::uint32_t>(layout.var(b, a, l));
      groups.push_back(std::move(col));
    }
  }
  return groups;
}

BitString encode_cqubols(const SubsetFamily& family, const Permutation& pi) {
  CquboLayout layout = cqubols_layout(family, pi);
  BitString bits = BitString::zeros(layout.num_vars());
  for (std::size_t b = 0; b < layout.facilities.size(); ++b)
    for (std::size_t a = 0; a < layout.k; ++a) {
      const std::uint32_t loc = pi(layout.facilities[b][a]);
      for (std::size_t l = 0; l < layout.k; ++l)
        if (layout.locations[b][l] == loc) bits.set(layout.var(b, a, l), true);
    }
  return bits;
}

QuboModel build_cqubols_qubo(const QapInstance& inst, const SubsetFamily& family,
                             const Permutation& pi, const PenaltyConfig& penalties) {
  QuboModel objective = build_cqubols_objective(inst, family, pi);
  CquboLayout layout = cqubols_layout(family, pi);
  return add_one_hot_penalties(objective, cqubols_one_hot_groups(layout), penalties);
}

std::optional<Permutation> decode_cqubols(const SubsetFamily& family, const Permutation& pi,
                                          const BitString& bits) {
  CquboLayout layout = cqubols_layout(family, pi);
  if (bits.size() != layout.num_vars())
    throw DimensionError("decode_cqubols: bit count != layout size");
  const std::size_t k = layout.k;
  std::vector<std::uint32_t> image(pi.image());
  for (std::size_t b = 0; b < layout.facilities.size(); ++b) {
    std::vector<bool> loc_taken(k, false);
    for (std::size_t a = 0; a < k; ++a) {
      int chosen = -1;
      for (std::size_t l = 0; l < k; ++l) {
        if (!bits[layout.var(b, a, l)]) continue;
        if (chosen >= 0) return std::nullopt;  // facility row has two locations
        chosen = static_cast<int>(l);
      }
      if (chosen < 0) return std::nullopt;  // facility row unassigned
      if (loc_taken[chosen]) return std::nullopt;  // location column doubly used
      loc_taken[chosen] = true;
      image[layout.facilities[b][a]] = layout.locations[b][chosen];
    }
  }
  return Permutation(std::move(image));
}

}  // namespace qubols
