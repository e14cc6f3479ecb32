#pragma once

// Certification of claimed spectra against the adjacency matrix built
// directly from alpha(v_j v_i^{-1}). Nothing here consults irreps or the
// closed forms except verify_block_reconstruction, which checks the block
// diagonalization itself.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/repr.hpp"
#include "cayspec/spectra.hpp"

namespace cayspec {

/// Left translation by one element: sends basis vector e_x to e_{g x}.
/// image[t] is the vertex that vertex t is moved to.
struct RegularRepMatrix {
  std::vector<std::size_t> image;

  Eigen::MatrixXd dense() const;
  RegularRepMatrix compose(const RegularRepMatrix& rhs) const;  ///< this * rhs
  bool operator==(const RegularRepMatrix&) const = default;
};

RegularRepMatrix regular_rep_matrix(const FiniteGroup& g, Elem x, const std::vector<Elem>& ordering);

struct LineResidual {
  int u = 0;
  int v = 0;
  double residual = 0.0;
};

struct TraceDeviations {
  double trace = 0.0;          ///< |tr A - n alpha(e)|
  double trace_square = 0.0;   ///< |tr A^2 - n sum_g alpha(g) alpha(g^{-1})|
  cd trace_value;
  cd trace_square_value;
};

struct VerificationReport {
  double tolerance = 1e-9;
  double matrix_scale = 1.0;      ///< max(1, ||A||_inf)
  double max_residual = 0.0;
  double residual_limit = 0.0;    ///< tolerance * matrix_scale
  double gram_deviation = 0.0;
  bool complete = false;
  std::size_t eigenvector_count = 0;
  std::vector<LineResidual> line_residuals;
  TraceDeviations traces;
  double spectral_trace_deviation = 0.0;         ///< |sum lambda mult - tr A|
  double spectral_trace_square_deviation = 0.0;  ///< |sum lambda^2 mult - tr A^2|
  bool passed = false;
};

/// Residual check only; pass iff every ||A x - lambda x||_inf <= tol * max(1, ||A||_inf).
/// Throws DimensionMismatch when eigenvector lengths differ from A.
VerificationReport verify_eigenpairs(const AdjacencyMatrix& adj, const Spectrum& spectrum, double tol = 1e-9);

struct BasisCheck {
  double gram_deviation = 0.0;  ///< max |U^* U - I|
  bool complete = false;        ///< eigenvector count == dimension
  std::size_t count = 0;
};

BasisCheck verify_basis(const Spectrum& spectrum);

struct SpectrumComparison {
  bool equal = false;
  /// First differing pair of the two sorted clustered lists.
  std::optional<std::pair<cd, cd>> mismatch;
};

/// Multiset equality after joint clustering at radius tol.
SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol = 1e-9);
SpectrumComparison compare_multisets(const std::vector<cd>& a, const std::vector<cd>& b, double tol = 1e-9);

TraceDeviations trace_identities(const AdjacencyMatrix& adj, const ColorFunction& alpha);

/// max deviation between sum_g alpha(g) rho_reg(g) and conj(P) diag(I (x) F_k) conj(P)^{-1},
/// and between their transposes and the adjacency matrix. Throws
/// CapacityExceeded for n > 500.
double verify_block_reconstruction(const ColorFunction& alpha, const IrrepSet& irreps);

/// Residuals, basis, trace identities and spectral traces at tolerance tol:
/// residual limit tol * max(1, ||A||_inf), Gram limit tol, traces tol * n.
VerificationReport certify(const AdjacencyMatrix& adj, const ColorFunction& alpha, const Spectrum& spectrum,
                           double tol = 1e-9);

}  // namespace cayspec
