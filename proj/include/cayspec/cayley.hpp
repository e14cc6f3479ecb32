#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <vector>

#include "cayspec/group.hpp"
#include "cayspec/numeric.hpp"

namespace cayspec {

/// A complex-valued function alpha on a group, stored per element index.
class ColorFunction {
 public:
  ColorFunction(FiniteGroup group, std::vector<cd> values);
  static ColorFunction zero(const FiniteGroup& group);

  const FiniteGroup& group() const { return group_; }
  const std::vector<cd>& values() const { return values_; }
  cd operator()(Elem x) const { return values_[x]; }

  /// Pair (g, x) with alpha(g x g^{-1}) != alpha(x), if any.
  struct ClassWitness {
    Elem conjugator;
    Elem element;
  };
  std::optional<ClassWitness> class_function_witness() const;
  bool is_class_function() const { return !class_function_witness(); }
  bool is_real() const;
  /// alpha(g) == conj(alpha(g^{-1})) for all g, compared exactly.
  bool is_symmetric() const;
  bool vanishes_at_identity() const { return values_[group_.identity()] == cd{}; }
  std::vector<Elem> support() const;

 private:
  FiniteGroup group_;
  std::vector<cd> values_;
};

/// Indicator function of s.
ColorFunction color_from_set(const FiniteGroup& g, const std::vector<Elem>& s);

/// Indicator of S = S_0 u h S_1 u ... u h^{l-1} S_{l-1} in a split group,
/// layer t holding exponents of k.
ColorFunction color_from_layers(const FiniteGroup& g, const std::vector<std::vector<int>>& layers);

struct ConjugationEscape {
  Elem conjugator;
  Elem element;  ///< member of S
  Elem image;    ///< conjugator * element * conjugator^{-1}, not in S
};

struct ConnectionSet {
  std::vector<Elem> elements;  ///< ascending
  bool inverse_closed = false;
  bool contains_identity = false;
  bool generates = false;
  bool conjugation_closed = false;
  std::size_t closure_size = 0;

  std::optional<Elem> inverse_witness;  ///< s in S with s^{-1} not in S
  /// Every image outside S of the first offending element of S, each with
  /// the smallest conjugator producing it. The first entry is the witness.
  std::vector<ConjugationEscape> conjugation_escapes;
};

ConnectionSet classify_connection_set(const FiniteGroup& g, const std::vector<Elem>& s);

struct AdjacencyMatrix {
  Eigen::MatrixXcd matrix;
  std::vector<Elem> ordering;  ///< vertex t holds element ordering[t]
};

/// Entry (i, j) = alpha(v_j v_i^{-1}); edges point row -> column.
AdjacencyMatrix adjacency_matrix(const ColorFunction& alpha, const std::vector<Elem>& ordering);
AdjacencyMatrix adjacency_matrix(const ColorFunction& alpha);

/// Block (i, j) is adj(Gamma(K; beta_ij)) with beta_ij(k) = alpha(h_j k h_i^{-1}).
struct BlockDecomposition {
  Transversal transversal;
  /// beta[i][j][c] = beta_ij(k_c), c indexing transversal.k_elements.
  std::vector<std::vector<std::vector<cd>>> beta;
  std::vector<std::vector<Eigen::MatrixXcd>> blocks;

  const std::vector<cd>& beta_1t(std::size_t t) const { return beta[0][t]; }
  Eigen::MatrixXcd assemble() const;
};

BlockDecomposition beta_blocks(const SplitExtension& ext, const ColorFunction& alpha);

struct NonNormalFamily {
  FiniteGroup group;
  ConnectionSet connection;
  std::vector<std::vector<int>> layers;
};

/// G = metacyclic(m, l, r) with S = (C_m \ {e}) u {h} u {h^{-1}}. Requires
/// 1 < r < m; throws InvalidAction otherwise.
NonNormalFamily family_nonnormal(int m, int l, int r);

/// Lines "i j re im" for every nonzero entry, preceded by a comment line
/// describing the vertex ordering.
void write_edge_list(std::ostream& os, const AdjacencyMatrix& adj, const FiniteGroup& g);

/// Reads an edge list back into a dense n x n matrix.
Eigen::MatrixXcd read_edge_list(std::istream& is, std::size_t n);

}  // namespace cayspec
