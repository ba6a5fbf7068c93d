#include "qubols/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "qubols/errors.hpp"

namespace qubols {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw FormulationError("WeightedGraph: self-loop");
    if (e.u >= n_ || e.v >= n_) throw DimensionError("WeightedGraph: vertex out of range");
    if (e.weight.is_negative()) throw FormulationError("WeightedGraph: negative weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t t = 1; t < edges_.size(); ++t)
    if (edges_[t - 1].u == edges_[t].u && edges_[t - 1].v == edges_[t].v)
      throw FormulationError("WeightedGraph: duplicate edge");

  adj_offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++adj_offsets_[e.u + 1];
    ++adj_offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adj_.resize(edges_.size() * 2);
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_[cursor[e.u]++] = {e.v, e.weight};
    adj_[cursor[e.v]++] = {e.u, e.weight};
  }
}

Rational WeightedGraph::weighted_degree(std::size_t u) const {
  Rational d(0);
  for (const auto& [v, w] : neighbors(u)) {
    (void)v;
    d += w;
  }
  return d;
}

Rational WeightedGraph::weight(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw DimensionError("WeightedGraph::weight: vertex out of range");
  if (degree(u) > degree(v)) std::swap(u, v);
  for (const auto& [x, w] : neighbors(u))
    if (x == v) return w;
  return Rational(0);
}

EdgeListParseResult parse_edge_list(std::string_view text) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> acc;
  std::size_t self_loops = 0;
  std::size_t max_vertex = 0;
  bool any = false;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3)
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected 'u v [w]'");
    auto parse_vertex = [&](const std::string& s) -> std::uint32_t {
      Rational r = Rational::parse(s);
      if (!r.is_integer() || r.is_negative())
        throw ParseError("edge list line " + std::to_string(line_no) +
                         ": vertex must be a non-negative integer");
      return static_cast<std::uint32_t>(r.numerator());
    };
    std::uint32_t u = parse_vertex(tokens[0]);
    std::uint32_t v = parse_vertex(tokens[1]);
    Rational w = tokens.size() == 3 ? Rational::parse(tokens[2]) : Rational(1);
    if (w.is_negative())
      throw ParseError("edge list line " + std::to_string(line_no) + ": negative weight");
    any = true;
    max_vertex = std::max<std::size_t>(max_vertex, std::max(u, v));
    if (u == v) {
      ++self_loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    acc[{u, v}] += w;
  }

  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back({key.first, key.second, w});
  std::size_t n = any ? max_vertex + 1 : 0;
  return {WeightedGraph(n, std::move(edges)), self_loops};
}

std::string write_edge_list(const WeightedGraph& g) {
  std::ostringstream out;
  out << "# " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
  for (const auto& e : g.edges()) out << e.u << " " << e.v << " " << e.weight.str() << "\n";
  return out.str();
}

WeightedGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw ConfigError("cycle_graph: need at least 3 vertices");
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, Rational(1)});
  edges.push_back({0, static_cast<std::uint32_t>(n - 1), Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v, Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph ladder_graph(std::size_t n) {
  if (n < 2) throw ConfigError("ladder_graph: need at least 2 rungs");
  const auto nn = static_cast<std::uint32_t>(n);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < nn; ++i) {
    edges.push_back({i, i + 1, Rational(1)});
    edges.push_back({nn + i, nn + i + 1, Rational(1)});
  }
  for (std::uint32_t i = 0; i < nn; ++i) edges.push_back({i, nn + i, Rational(1)});
  return WeightedGraph(2 * n, std::move(edges));
}

WeightedGraph circular_ladder_graph(std::size_t n) {
  if (n < 3) throw ConfigError("circular_ladder_graph: need at least 3 rungs");
  const auto nn = static_cast<std::uint32_t>(n);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < nn; ++i) {
    std::uint32_t next = (i + 1) % nn;
    edges.push_back({i, next, Rational(1)});
    edges.push_back({nn + i, nn + next, Rational(1)});
    edges.push_back({i, nn + i, Rational(1)});
  }
  return WeightedGraph(2 * n, std::move(edges));
}

WeightedGraph balanced_tree(std::size_t branching, std::size_t height) {
  if (branching < 2) throw ConfigError("balanced_tree: branching must be >= 2");
  std::size_t n = 0, level = 1;
  for (std::size_t h = 0; h <= height; ++h) {
    n += level;
    level *= branching;
  }
  return full_rary_tree(branching, n);
}

WeightedGraph full_rary_tree(std::size_t branching, std::size_t n) {
  if (branching < 1) throw ConfigError("full_rary_tree: branching must be >= 1");
  std::vector<Edge> edges;
  for (std::uint32_t i = 1; i < n; ++i)
    edges.push_back({static_cast<std::uint32_t>((i - 1) / branching), i, Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph turan_graph(std::size_t n, std::size_t parts) {
  if (parts < 1 || parts > n) throw ConfigError("turan_graph: need 1 <= parts <= n");
  std::vector<std::uint32_t> part_of(n);
  // Near-equal parts: the first n % parts parts get one extra vertex.
  std::size_t idx = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    std::size_t size = n / parts + (p < n % parts ? 1 : 0);
    for (std::size_t t = 0; t < size; ++t) part_of[idx++] = static_cast<std::uint32_t>(p);
  }
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) edges.push_back({u, v, Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gnp_random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v, Rational(1)});
  return WeightedGraph(n, std::move(edges));
}

}  // namespace qubols
