#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cayspec/group.hpp"
#include "cayspec/numeric.hpp"

namespace cayspec {

/// A unitary matrix representation of a group, one d x d matrix per element
/// index. Matrices live in one contiguous column-major buffer.
class UnitaryIrrep {
 public:
  using MatrixView = Eigen::Map<const Eigen::MatrixXcd>;

  UnitaryIrrep(std::string label, int degree, std::vector<int> params, std::vector<cd> data);

  const std::string& label() const { return label_; }
  int degree() const { return degree_; }
  /// Construction parameters: v for characters, (v_1..v_k) for abelian
  /// groups, j for dihedral planes, (v, c) for metacyclic inductions.
  const std::vector<int>& params() const { return params_; }
  std::size_t group_order() const { return data_.size() / static_cast<std::size_t>(degree_ * degree_); }

  MatrixView matrix(Elem g) const {
    return MatrixView(data_.data() + g * static_cast<std::size_t>(degree_ * degree_), degree_, degree_);
  }
  cd coefficient(Elem g, int i, int j) const {
    return data_[g * static_cast<std::size_t>(degree_ * degree_) + static_cast<std::size_t>(j * degree_ + i)];
  }
  cd character(Elem g) const { return matrix(g).trace(); }

 private:
  std::string label_;
  int degree_;
  std::vector<int> params_;
  std::vector<cd> data_;
};

/// Irreps of one group, ascending degree, then by parameters.
using IrrepSet = std::vector<UnitaryIrrep>;

/// Characters of C_n: chi_v(k^s) = e^{2 pi i v s / n}.
IrrepSet irreps_cyclic(int n);
/// Characters of FiniteGroup::abelian(orders), products of per-factor characters.
IrrepSet irreps_abelian(const std::vector<int>& orders);
/// Irreps of FiniteGroup::dihedral(n). Two-dimensional irrep j sends the
/// rotation to diag(w^j, w^-j) and the reflection to the exchange matrix.
IrrepSet irreps_dihedral(int n);
/// Irreps of FiniteGroup::metacyclic(m, l, r), induced from the stabilizer
/// of each K-character. Every matrix is monomial with root-of-unity entries.
IrrepSet irreps_metacyclic(int m, int l, int r);

/// Built-in irreps for cyclic, abelian, dihedral and metacyclic groups.
std::optional<IrrepSet> builtin_irreps(const FiniteGroup& g);

struct ValidationFailure {
  std::string invariant;  ///< homomorphism | unitarity | irreducibility | completeness | orthogonality | shape
  std::string irrep;
  std::string witness;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;
  bool passed() const { return failures.empty(); }
  std::string summary() const;
};

struct ValidationTolerances {
  double homomorphism = 1e-10;
  double unitarity = 1e-10;
  double irreducibility = 1e-9;
  double orthogonality = 1e-9;
};

/// Checks the homomorphism property (on generators, which suffices),
/// unitarity, irreducibility, completeness and character orthogonality.
ValidationReport validate_irrep_set(const FiniteGroup& g, const IrrepSet& irreps,
                                    const ValidationTolerances& tol = {});

/// d x d matrix sum_g f(g) rho(g).
struct FourierBlock {
  std::string irrep;
  Eigen::MatrixXcd matrix;
};

FourierBlock fourier_transform(const std::vector<cd>& f, const UnitaryIrrep& rho);

/// Columns are sqrt(d_k/n) (rho_k(g_1)_{ij}, ..., rho_k(g_n)_{ij}), irreps in
/// order and, within an irrep, column-major over (i, j). Row t is element
/// ordering[t].
struct PMatrix {
  Eigen::MatrixXcd matrix;
  std::vector<Elem> ordering;
  struct Column {
    std::size_t irrep;
    int i;
    int j;
  };
  std::vector<Column> columns;
};

/// Throws IrrepValidationFailed when the irreps do not validate.
PMatrix build_p_matrix(const FiniteGroup& g, const IrrepSet& irreps, const std::vector<Elem>& ordering);

}  // namespace cayspec
