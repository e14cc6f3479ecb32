#pragma once

// Finite groups with canonical element indices.
//
// Every element of a group of order n is identified by an index in [0, n).
// The identity is always index 0. For the split kinds (cyclic, abelian,
// dihedral, metacyclic, semidirect) the group is C_m x| H and the element
// h_a k^b has index a*m + b, where a is the index of h_a in H and k
// generates C_m. This is the vertex ordering
//   e, k, ..., k^{m-1}; h_1, h_1 k, ..., h_1 k^{m-1}; ...
// used for adjacency matrices and eigenvectors throughout the library.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cayspec {

using Elem = std::size_t;
using Encoding = std::vector<int>;

enum class GroupKind { cyclic, abelian, dihedral, metacyclic, semidirect, permutation };

std::string to_string(GroupKind kind);

struct GroupLimits {
  std::size_t max_order = 10000;
};

class FiniteGroup {
 public:
  static FiniteGroup cyclic(int n, GroupLimits limits = {});
  /// Direct product C_{n_1} x ... x C_{n_k}; encoding (x_1, ..., x_k).
  static FiniteGroup abelian(std::vector<int> orders, GroupLimits limits = {});
  /// D_n of order 2n; encoding (reflection bit, rotation exponent).
  static FiniteGroup dihedral(int n, GroupLimits limits = {});
  /// C_m x| C_l with h k h^{-1} = k^r; encoding (a, b) for h^a k^b.
  static FiniteGroup metacyclic(int m, int l, int r, GroupLimits limits = {});
  /// C_m x| H where generator i of H acts on C_m as k -> k^{action[i]}.
  /// H must be cyclic, dihedral or abelian. Encoding is H's encoding
  /// followed by the exponent of k.
  static FiniteGroup semidirect(int m, const FiniteGroup& h, std::vector<int> action,
                                GroupLimits limits = {});
  /// Closure of the given permutations of {0, ..., degree-1}. Products
  /// compose right to left: (g*g')(x) = g(g'(x)).
  static FiniteGroup permutation(int degree, const std::vector<std::vector<int>>& generators,
                                 GroupLimits limits = {});

  GroupKind kind() const;
  std::size_t order() const;
  Elem identity() const { return 0; }

  Elem multiply(Elem x, Elem y) const;
  Elem inverse(Elem x) const;
  Elem power(Elem x, long long exponent) const;
  Elem conjugate(Elem by, Elem x) const { return multiply(multiply(by, x), inverse(by)); }

  /// Generating set, identity excluded. Order per kind: cyclic [k];
  /// abelian [e_1, ..., e_k]; dihedral [rotation, reflection];
  /// metacyclic [k, h]; semidirect [k, H generators...]; permutation as given.
  const std::vector<Elem>& generators() const;

  Encoding encode(Elem x) const;
  /// Throws InvalidElement for encodings outside the group.
  Elem decode(std::span<const int> encoding) const;
  std::string format(Elem x) const;

  // Split structure C_m x| H, present for every kind except permutation.
  bool has_split_structure() const;
  int k_order() const;  ///< m
  int h_order() const;  ///< l = |H|
  /// The complement H as a group in its own right; H's index a is the
  /// transversal index of h_a.
  FiniteGroup complement() const;
  /// Index of h_a k^b.
  Elem compose(Elem h_index, int k_exponent) const;
  Elem h_part(Elem x) const;
  int k_part(Elem x) const;
  /// u with h_a k h_a^{-1} = k^u.
  int action_unit(Elem h_index) const;

  /// Conjugation exponent r for metacyclic groups (n - 1 for dihedral).
  std::optional<int> metacyclic_r() const;
  /// Parameters: cyclic {n}; abelian orders; dihedral {n}; metacyclic {m, l, r};
  /// semidirect {m} followed by the action; permutation {degree}.
  std::vector<int> parameters() const;

  bool operator==(const FiniteGroup& other) const { return impl_ == other.impl_; }

  struct Impl;

 private:
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static FiniteGroup make_split(GroupKind kind, int m, std::shared_ptr<const Impl> h,
                                std::vector<int> action, std::vector<int> params,
                                std::optional<int> r, GroupLimits limits);
  std::shared_ptr<const Impl> impl_;
};

struct ConjugacyClass {
  Elem representative;        ///< smallest index in the class
  std::vector<Elem> members;  ///< ascending
  std::size_t size() const { return members.size(); }
};

/// Conjugation orbits, sorted by representative.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);

/// For every element x, the index into conjugacy_classes(g) of its class.
std::vector<std::size_t> class_index(const FiniteGroup& g,
                                     const std::vector<ConjugacyClass>& classes);

/// A group G with a normal subgroup K and a complement H (G = K x| H).
/// Both element lists begin with the identity.
struct SplitExtension {
  FiniteGroup group;
  std::vector<Elem> k_elements;
  std::vector<Elem> h_elements;

  /// The canonical structure of a split kind: K = <k>, H = complement.
  static SplitExtension of(const FiniteGroup& g);
  /// K and H generated inside g; validates normality of K, K cap H = {e}
  /// and |K||H| = |G|. Throws InvalidAction otherwise.
  static SplitExtension from_subgroups(const FiniteGroup& g, std::span<const Elem> k_generators,
                                       std::span<const Elem> h_generators);
};

/// One orbit of the G-conjugation action on K. conjugators[i] maps the root
/// members[0] to members[i]: conjugators[i] * members[0] * conjugators[i]^{-1}.
struct ConjugationOrbit {
  std::vector<Elem> members;
  std::vector<Elem> conjugators;
};

std::vector<ConjugationOrbit> conjugation_orbits_on_k(const SplitExtension& ext);

struct Transversal {
  std::size_t m = 0;
  std::size_t l = 0;
  std::vector<Elem> h_elements;  ///< h_0 = e, ..., h_{l-1}
  std::vector<Elem> k_elements;  ///< k_0 = e, ..., k_{m-1}
  std::vector<Elem> vertices;    ///< vertex i*m + j holds h_i k_j
  std::vector<std::size_t> positions;  ///< inverse of vertices

  std::size_t vertex_of(Elem x) const { return positions.at(x); }
};

Transversal left_transversal_ordering(const SplitExtension& ext);

/// Vertex order 0, 1, ..., n-1.
std::vector<Elem> canonical_ordering(const FiniteGroup& g);

struct GenerationResult {
  bool generates = false;
  std::size_t closure_size = 0;
};

GenerationResult is_generating_set(const FiniteGroup& g, std::span<const Elem> s);

/// Subgroup generated by the given elements, ascending.
std::vector<Elem> subgroup_closure(const FiniteGroup& g, std::span<const Elem> generators);

}  // namespace cayspec
