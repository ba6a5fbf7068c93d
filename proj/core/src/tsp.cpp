#include "qubols/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qubols/errors.hpp"

namespace qubols {

TspInstance::TspInstance(std::size_t n, std::vector<Rational> dist_row_major)
    : n_(n), dist_(std::move(dist_row_major)) {
  if (dist_.size() != n_ * n_) throw DimensionError("TspInstance: matrix must be n x n");
  for (std::size_t u = 0; u < n_; ++u) {
    if (!dist_[u * n_ + u].is_zero()) throw ParseError("TspInstance: diagonal must be zero");
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (dist_[u * n_ + v] != dist_[v * n_ + u])
        throw ParseError("TspInstance: asymmetric distance matrix");
      if (dist_[u * n_ + v].is_negative())
        throw ParseError("TspInstance: negative distance");
    }
  }
}

TspInstance parse_tsp_matrix(std::string_view text) {
  std::vector<Rational> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) tokens.push_back(Rational::parse(tok));
  if (tokens.empty()) throw ParseError("tsp matrix: empty input");
  if (!tokens[0].is_integer() || !tokens[0].is_positive() ||
      tokens[0] > Rational(1 << 20))
    throw ParseError("tsp matrix: first token must be the positive city count");
  const auto n = static_cast<std::size_t>(tokens[0].numerator());
  if (tokens.size() != 1 + n * n)
    throw ParseError("tsp matrix: expected " + std::to_string(1 + n * n) + " tokens, got " +
                     std::to_string(tokens.size()));
  return TspInstance(n, std::vector<Rational>(tokens.begin() + 1, tokens.end()));
}

std::string write_tsp_matrix(const TspInstance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.size();
  out << n << "\n";
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) out << (v ? " " : "") << inst.dist(u, v).str();
    out << "\n";
  }
  return out.str();
}

TspInstance parse_tsp_coords(std::string_view text, DistanceRounding rounding) {
  std::vector<std::pair<double, double>> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x)) continue;  // blank line
    if (!(ls >> y)) throw ParseError("tsp coords line " + std::to_string(line_no) +
                                     ": expected 'x y'");
    std::string rest;
    if (ls >> rest) throw ParseError("tsp coords line " + std::to_string(line_no) +
                                     ": trailing tokens");
    pts.emplace_back(x, y);
  }
  const std::size_t n = pts.size();
  std::vector<Rational> dist(n * n, Rational(0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      double d = std::hypot(pts[u].first - pts[v].first, pts[u].second - pts[v].second);
      Rational w = rounding == DistanceRounding::nearest_integer
                       ? Rational(static_cast<long long>(std::llround(d)))
                       : Rational::from_double(d);
      dist[u * n + v] = dist[v * n + u] = w;
    }
  return TspInstance(n, std::move(dist));
}

Tour::Tour(std::vector<std::uint32_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (auto c : order_) {
    if (c >= order_.size() || seen[c]) throw Error("Tour: order must visit each city once");
    seen[c] = true;
  }
}

Tour Tour::random(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  return Tour(std::move(order));
}

bool Tour::cyclically_equal(const Tour& other) const {
  if (order_.size() != other.order_.size()) return false;
  if (order_.empty()) return true;
  auto at = std::find(other.order_.begin(), other.order_.end(), order_[0]);
  if (at == other.order_.end()) return false;
  std::size_t shift = static_cast<std::size_t>(at - other.order_.begin());
  for (std::size_t t = 0; t < order_.size(); ++t)
    if (order_[t] != other.order_[(shift + t) % order_.size()]) return false;
  return true;
}

std::vector<std::uint32_t> Tour::canonical_cycle() const {
  const std::size_t n = order_.size();
  if (n == 0) return {};
  std::size_t start = static_cast<std::size_t>(
      std::find(order_.begin(), order_.end(), 0u) - order_.begin());
  std::vector<std::uint32_t> fwd(n), bwd(n);
  for (std::size_t t = 0; t < n; ++t) {
    fwd[t] = order_[(start + t) % n];
    bwd[t] = order_[(start + n - t) % n];
  }
  return std::min(fwd, bwd);
}

std::string Tour::str() const {
  std::string s;
  for (std::size_t t = 0; t < order_.size(); ++t) {
    if (t) s += ' ';
    s += std::to_string(order_[t]);
  }
  return s;
}

Rational tour_length(const TspInstance& inst, const Tour& tour) {
  if (tour.size() != inst.size()) throw DimensionError("tour_length: tour size mismatch");
  Rational total(0);
  const std::size_t n = tour.size();
  for (std::size_t t = 0; t < n; ++t) total += inst.dist(tour.city(t), tour.city((t + 1) % n));
  return total;
}

SegmentDecomposition decompose(const Tour& tour, std::vector<std::size_t> cut_positions) {
  const std::size_t n = tour.size();
  if (cut_positions.size() < 2) throw FormulationError("decompose: need at least 2 cuts");
  std::sort(cut_positions.begin(), cut_positions.end());
  if (std::adjacent_find(cut_positions.begin(), cut_positions.end()) != cut_positions.end())
    throw FormulationError("decompose: duplicate cut positions");
  if (cut_positions.back() >= n) throw DimensionError("decompose: cut position out of range");

  SegmentDecomposition decomp;
  const std::size_t k = cut_positions.size();
  for (std::size_t i = 0; i < k; ++i) {
    // Segment i starts after cut i and runs through the position of cut i+1.
    std::size_t from = (cut_positions[i] + 1) % n;
    std::size_t to = cut_positions[(i + 1) % k];
    std::vector<std::uint32_t> seg;
    for (std::size_t t = from; ; t = (t + 1) % n) {
      seg.push_back(tour.city(t));
      if (t == to) break;
    }
    decomp.segments.push_back(std::move(seg));
  }
  return decomp;
}

std::vector<std::size_t> random_cut_positions(std::size_t n, std::size_t k,
                                              std::mt19937_64& rng) {
  if (k > n) throw ConfigError("random_cut_positions: more cuts than edges");
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(k);
  return all;
}

KReversalQubo build_k_reversal_qubo(const TspInstance& inst,
                                    const SegmentDecomposition& decomp) {
  const std::size_t k = decomp.k();
  if (k < 2) throw FormulationError("build_k_reversal_qubo: need at least 2 segments");

  QuboBuilder builder(k);
  // Connecting edge between consecutive segments i -> j (cyclically):
  //   w(tail_i, head_j) with tail_i = u_i when i is reversed, head_j = v_j
  //   when j is reversed. Expanding the four arms gives the pair term.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    const Rational& w_vu = inst.dist(decomp.tail(i), decomp.head(j));
    const Rational& w_uu = inst.dist(decomp.head(i), decomp.head(j));
    const Rational& w_vv = inst.dist(decomp.tail(i), decomp.tail(j));
    const Rational& w_uv = inst.dist(decomp.head(i), decomp.tail(j));
    builder.add_offset(w_vu);
    builder.add_linear(i, w_uu - w_vu);
    builder.add_linear(j, w_vv - w_vu);
    builder.add_quadratic(i, j, w_vu - w_uu - w_vv + w_uv);
  }

  Rational internal(0);
  for (const auto& seg : decomp.segments)
    for (std::size_t t = 0; t + 1 < seg.size(); ++t) internal += inst.dist(seg[t], seg[t + 1]);
  return {builder.build(), internal};
}

Tour apply_reversals(const SegmentDecomposition& decomp, const BitString& y) {
  if (y.size() != decomp.k()) throw DimensionError("apply_reversals: bit count != segments");
  std::vector<std::uint32_t> order;
  for (std::size_t i = 0; i < decomp.k(); ++i) {
    auto seg = decomp.segments[i];
    if (y[i]) std::reverse(seg.begin(), seg.end());
    order.insert(order.end(), seg.begin(), seg.end());
  }
  return Tour(std::move(order));
}

}  // namespace qubols
