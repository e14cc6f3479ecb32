#include "cayspec/cayley.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>
#include <string>

#include "cayspec/error.hpp"

namespace cayspec {

ColorFunction::ColorFunction(FiniteGroup group, std::vector<cd> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order()) {
    throw DimensionMismatch("color function has " + std::to_string(values_.size()) +
                            " values for a group of order " + std::to_string(group_.order()));
  }
}

ColorFunction ColorFunction::zero(const FiniteGroup& group) {
  return ColorFunction(group, std::vector<cd>(group.order()));
}

std::optional<ColorFunction::ClassWitness> ColorFunction::class_function_witness() const {
  // Invariance under conjugation by generators implies invariance under G.
  for (Elem x = 0; x < values_.size(); ++x) {
    for (Elem s : group_.generators()) {
      if (values_[group_.conjugate(s, x)] != values_[x]) return ClassWitness{s, x};
    }
  }
  return std::nullopt;
}

bool ColorFunction::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](cd v) { return v.imag() == 0.0; });
}

bool ColorFunction::is_symmetric() const {
  for (Elem x = 0; x < values_.size(); ++x) {
    if (values_[x] != std::conj(values_[group_.inverse(x)])) return false;
  }
  return true;
}

std::vector<Elem> ColorFunction::support() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < values_.size(); ++x) {
    if (values_[x] != cd{}) out.push_back(x);
  }
  return out;
}

ColorFunction color_from_set(const FiniteGroup& g, const std::vector<Elem>& s) {
  std::vector<cd> values(g.order());
  for (Elem x : s) values.at(x) = 1.0;
  return ColorFunction(g, std::move(values));
}

ColorFunction color_from_layers(const FiniteGroup& g, const std::vector<std::vector<int>>& layers) {
  if (!g.has_split_structure()) throw InvalidParameter("layers need a split group");
  if (layers.size() != static_cast<std::size_t>(g.h_order())) {
    throw InvalidParameter("expected " + std::to_string(g.h_order()) + " layers, got " +
                           std::to_string(layers.size()));
  }
  std::vector<Elem> s;
  for (std::size_t t = 0; t < layers.size(); ++t) {
    for (int e : layers[t]) {
      if (e < 0 || e >= g.k_order()) {
        throw InvalidElement("layer " + std::to_string(t) + " exponent " + std::to_string(e) + " outside [0, " +
                             std::to_string(g.k_order()) + ")");
      }
      s.push_back(g.compose(t, e));
    }
  }
  return color_from_set(g, s);
}

ConnectionSet classify_connection_set(const FiniteGroup& g, const std::vector<Elem>& s) {
  ConnectionSet out;
  std::vector<bool> in_s(g.order(), false);
  for (Elem x : s) in_s.at(x) = true;
  for (Elem x = 0; x < g.order(); ++x) {
    if (in_s[x]) out.elements.push_back(x);
  }

  out.contains_identity = in_s[g.identity()];
  out.inverse_closed = true;
  for (Elem x : out.elements) {
    if (!in_s[g.inverse(x)]) {
      out.inverse_closed = false;
      out.inverse_witness = x;
      break;
    }
  }

  const auto gen = is_generating_set(g, out.elements);
  out.generates = gen.generates;
  out.closure_size = gen.closure_size;

  out.conjugation_closed = true;
  for (Elem x : out.elements) {
    std::set<Elem> seen_images;
    for (Elem c = 0; c < g.order(); ++c) {
      const Elem y = g.conjugate(c, x);
      if (!in_s[y] && seen_images.insert(y).second) out.conjugation_escapes.push_back({c, x, y});
    }
    if (!out.conjugation_escapes.empty()) {
      out.conjugation_closed = false;
      break;
    }
  }
  return out;
}

AdjacencyMatrix adjacency_matrix(const ColorFunction& alpha, const std::vector<Elem>& ordering) {
  const FiniteGroup& g = alpha.group();
  const auto n = static_cast<Eigen::Index>(ordering.size());
  if (ordering.size() != g.order()) throw DimensionMismatch("ordering does not enumerate the group");
  AdjacencyMatrix adj{Eigen::MatrixXcd::Zero(n, n), ordering};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Elem vi_inv = g.inverse(ordering[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      adj.matrix(i, j) = alpha(g.multiply(ordering[static_cast<std::size_t>(j)], vi_inv));
    }
  }
  return adj;
}

AdjacencyMatrix adjacency_matrix(const ColorFunction& alpha) {
  return adjacency_matrix(alpha, canonical_ordering(alpha.group()));
}

Eigen::MatrixXcd BlockDecomposition::assemble() const {
  const auto m = static_cast<Eigen::Index>(transversal.m);
  const auto l = static_cast<Eigen::Index>(transversal.l);
  Eigen::MatrixXcd out(l * m, l * m);
  for (Eigen::Index i = 0; i < l; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) {
      out.block(i * m, j * m, m, m) = blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

BlockDecomposition beta_blocks(const SplitExtension& ext, const ColorFunction& alpha) {
  const FiniteGroup& g = ext.group;
  BlockDecomposition out{left_transversal_ordering(ext), {}, {}};
  const auto& t = out.transversal;
  const std::size_t m = t.m, l = t.l;

  std::vector<std::size_t> k_pos(g.order(), 0);
  for (std::size_t c = 0; c < m; ++c) k_pos[t.k_elements[c]] = c;
  std::vector<Elem> k_inv(m);
  for (std::size_t c = 0; c < m; ++c) k_inv[c] = g.inverse(t.k_elements[c]);

  out.beta.assign(l, std::vector<std::vector<cd>>(l, std::vector<cd>(m)));
  out.blocks.assign(l, std::vector<Eigen::MatrixXcd>(l));
  for (std::size_t i = 0; i < l; ++i) {
    const Elem hi_inv = g.inverse(t.h_elements[i]);
    for (std::size_t j = 0; j < l; ++j) {
      auto& beta = out.beta[i][j];
      for (std::size_t c = 0; c < m; ++c) {
        beta[c] = alpha(g.multiply(g.multiply(t.h_elements[j], t.k_elements[c]), hi_inv));
      }
      auto& block = out.blocks[i][j];
      block.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          block(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
              beta[k_pos[g.multiply(t.k_elements[q], k_inv[p])]];
        }
      }
    }
  }
  return out;
}

NonNormalFamily family_nonnormal(int m, int l, int r) {
  if (!(1 < r && r < m)) {
    throw InvalidAction("family requires 1 < r < m, got r = " + std::to_string(r) + ", m = " + std::to_string(m));
  }
  FiniteGroup g = FiniteGroup::metacyclic(m, l, r);
  std::vector<std::vector<int>> layers(static_cast<std::size_t>(l));
  for (int b = 1; b < m; ++b) layers[0].push_back(b);
  layers[1].push_back(0);
  if (l > 2) layers[static_cast<std::size_t>(l - 1)].push_back(0);

  std::vector<Elem> s;
  for (std::size_t t = 0; t < layers.size(); ++t) {
    for (int b : layers[t]) s.push_back(g.compose(t, b));
  }
  auto connection = classify_connection_set(g, s);
  return {std::move(g), std::move(connection), std::move(layers)};
}

void write_edge_list(std::ostream& os, const AdjacencyMatrix& adj, const FiniteGroup& g) {
  if (g.has_split_structure()) {
    os << "# vertex v = h^(v div m) k^(v mod m)\n";
    os << "# n " << adj.matrix.rows() << " m " << g.k_order() << "\n";
  } else {
    os << "# vertex v = element with canonical index v\n";
    os << "# n " << adj.matrix.rows() << "\n";
  }
  char buf[96];
  for (Eigen::Index i = 0; i < adj.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < adj.matrix.cols(); ++j) {
      const cd v = adj.matrix(i, j);
      if (v == cd{}) continue;
      std::snprintf(buf, sizeof buf, "%ld %ld %.15g %.15g\n", static_cast<long>(i), static_cast<long>(j),
                    v.real(), v.imag());
      os << buf;
    }
  }
}

Eigen::MatrixXcd read_edge_list(std::istream& is, std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size, size);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> i >> j >> re >> im) || i < 0 || j < 0 || i >= size || j >= size) {
      throw DimensionMismatch("edge list line " + std::to_string(line_no) + " is malformed or out of range");
    }
    out(i, j) = cd{re, im};
  }
  return out;
}

}  // namespace cayspec
