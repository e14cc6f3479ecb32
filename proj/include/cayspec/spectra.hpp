#pragma once

// Closed-form spectra of Cayley color graphs.
//
// Three routes are provided:
//  * spectrum_normal: class functions, one eigenvalue per irrep k,
//      lambda_k = (1/chi_k(1)) sum_g alpha(g) chi_k(g),
//    with the matrix coefficients of rho_k as eigenvectors.
//  * spectrum_split: G = K x| H and alpha invariant in the sense of
//    check_split_hypotheses. Line (u, v) has eigenvalue
//      sum_i lambda_ui sigma_vi,
//      lambda_ui = |C_i| chi^H_u(h_Ci) / d^H_u,
//      sigma_vi  = (1/d^K_v) sum_k alpha(h_Ci k) chi^K_v(k),
//    over the conjugacy classes C_i of H, and eigenvectors the tensor
//    products of matrix coefficients of rho^H_u and rho^K_v.
//  * spectrum_metacyclic: split metacyclic groups with h-invariant layers,
//      lambda_uv = sum_t e^{2 pi i u t / l} sum_{s in S_t} e^{2 pi i v s / m},
//    with tensor-of-DFT eigenvectors.
// block_diagonalize exposes the regular-representation block
// diagonalization that underlies all three.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/error.hpp"
#include "cayspec/group.hpp"
#include "cayspec/repr.hpp"

namespace cayspec {

enum class SpectrumMethod { normal, split, metacyclic, blocks };

std::string to_string(SpectrumMethod method);

/// Matrix-coefficient label of an eigenvector: (i, j) of the first irrep and
/// (i', j') of the second; the second pair is (-1, -1) for single-irrep routes.
struct CoefficientLabel {
  int i = 0;
  int j = 0;
  int ip = -1;
  int jp = -1;
};

struct SpectralLine {
  int u = 0;  ///< H-irrep index (split, metacyclic) or irrep index (normal, blocks)
  int v = 0;  ///< K-irrep index (split, metacyclic) or eigenvalue index within a block
  cd eigenvalue;
  int multiplicity = 0;
  std::vector<Eigen::VectorXcd> eigenvectors;  ///< empty when not requested
  std::vector<CoefficientLabel> labels;
  std::vector<cd> lambda_h;  ///< per H-class, split only
  std::vector<cd> sigma_k;   ///< per H-class, split only
};

struct Spectrum {
  std::vector<SpectralLine> lines;
  std::size_t dimension = 0;
  SpectrumMethod method = SpectrumMethod::normal;
  /// False when computed with hypothesis override.
  bool hypotheses_verified = true;

  std::size_t total_multiplicity() const;
  /// sum over lines of eigenvalue * multiplicity
  cd eigenvalue_sum() const;
};

struct MultisetEntry {
  cd value;
  std::size_t count = 0;
};

/// Greedy clustering: a value joins the first cluster whose seed lies
/// within radius. Clusters are reported by mean, sorted by (Re, Im).
std::vector<MultisetEntry> cluster_values(const std::vector<cd>& values, double radius);
std::vector<cd> expanded_eigenvalues(const Spectrum& spectrum);
std::vector<MultisetEntry> merged_multiset(const Spectrum& spectrum, double radius = 1e-9);

struct HypothesisWitnessA {
  Elem h, g, k;
  cd lhs;  ///< alpha(h g k g^{-1})
  cd rhs;  ///< alpha(h k)
};

struct HypothesisWitnessB {
  Elem h_prime, h, k;
  cd lhs;  ///< alpha(h' h h'^{-1} k)
  cd rhs;  ///< alpha(h k)
};

struct HypothesisReport {
  bool condition_a = true;  ///< alpha(h g k g^{-1}) = alpha(h k) for h in H, g in G, k in K
  bool condition_b = true;  ///< alpha(h' h h'^{-1} k) = alpha(h k) for h, h' in H, k in K
  std::optional<HypothesisWitnessA> witness_a;
  std::optional<HypothesisWitnessB> witness_b;
  bool passed() const { return condition_a && condition_b; }
};

class HypothesesViolated : public Error {
 public:
  explicit HypothesesViolated(HypothesisReport report);
  const HypothesisReport& report() const { return report_; }

 private:
  HypothesisReport report_;
};

/// Exhaustive check, comparing alpha values exactly. Condition A runs over
/// the G-conjugation orbits on K, condition B over the conjugacy classes of H.
HypothesisReport check_split_hypotheses(const SplitExtension& ext, const ColorFunction& alpha);

struct SpectrumOptions {
  bool eigenvectors = true;
  /// Compute split spectra even when the hypotheses fail; the result is then
  /// marked hypotheses-overridden.
  bool override_hypotheses = false;
  /// Re-evaluate every sigma with a second class representative.
  bool check_representatives = false;
};

/// Throws NotClassFunction when alpha is not constant on conjugacy classes.
Spectrum spectrum_normal(const ColorFunction& alpha, const IrrepSet& irreps, const SpectrumOptions& options = {});

/// alpha must live on a split group (C_m x| H). irreps_h belong to
/// alpha.group().complement(), irreps_k to C_m.
Spectrum spectrum_split(const ColorFunction& alpha, const IrrepSet& irreps_h, const IrrepSet& irreps_k,
                        const SpectrumOptions& options = {});
/// Same with built-in irreps of H and K.
Spectrum spectrum_split(const ColorFunction& alpha, const SpectrumOptions& options = {});

/// Throws LayerNotInvariant when some layer is not closed under s -> s r.
void check_layers(int m, int l, int r, const std::vector<std::vector<int>>& layers);

Spectrum spectrum_metacyclic(int m, int l, int r, const std::vector<std::vector<int>>& layers,
                        const SpectrumOptions& options = {});

/// Eigen-data of the transposed Fourier block F^T, the matrix by which A
/// acts on the span of {rho(.)_{pj}}_p for each fixed j.
struct BlockEigen {
  std::vector<cd> values;
  /// Unit eigenvectors of F^T, parallel to values; empty if not diagonalizable.
  std::vector<Eigen::VectorXcd> vectors;
};

struct BlockDiagonalization {
  std::vector<FourierBlock> blocks;
  std::vector<std::optional<BlockEigen>> eigen;  ///< set for degree <= 2
  /// max |A - P diag(I_d (x) F_k^T) P^*| entrywise
  double reconstruction_deviation = 0.0;
};

BlockDiagonalization block_diagonalize(const ColorFunction& alpha, const IrrepSet& irreps);

/// Spectrum read off the Fourier blocks; every irrep must have degree <= 2.
Spectrum spectrum_blocks(const ColorFunction& alpha, const IrrepSet& irreps, const SpectrumOptions& options = {});

}  // namespace cayspec
