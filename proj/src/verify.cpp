#include "cayspec/verify.hpp"

#include <algorithm>
#include <cmath>

#include "cayspec/error.hpp"

namespace cayspec {

Eigen::MatrixXd RegularRepMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(image.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < image.size(); ++t) out(static_cast<Eigen::Index>(image[t]), static_cast<Eigen::Index>(t)) = 1.0;
  return out;
}

RegularRepMatrix RegularRepMatrix::compose(const RegularRepMatrix& rhs) const {
  RegularRepMatrix out;
  out.image.resize(rhs.image.size());
  for (std::size_t t = 0; t < rhs.image.size(); ++t) out.image[t] = image[rhs.image[t]];
  return out;
}

RegularRepMatrix regular_rep_matrix(const FiniteGroup& g, Elem x, const std::vector<Elem>& ordering) {
  std::vector<std::size_t> pos(g.order());
  for (std::size_t t = 0; t < ordering.size(); ++t) pos[ordering[t]] = t;
  RegularRepMatrix out;
  out.image.resize(ordering.size());
  for (std::size_t t = 0; t < ordering.size(); ++t) out.image[t] = pos[g.multiply(x, ordering[t])];
  return out;
}

namespace {

double infinity_norm(const Eigen::MatrixXcd& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

VerificationReport verify_eigenpairs(const AdjacencyMatrix& adj, const Spectrum& spectrum, double tol) {
  const auto n = adj.matrix.rows();
  if (static_cast<std::size_t>(n) != spectrum.dimension) {
    throw DimensionMismatch("spectrum dimension " + std::to_string(spectrum.dimension) + " differs from matrix size " +
                            std::to_string(n));
  }
  VerificationReport report;
  report.tolerance = tol;
  report.matrix_scale = std::max(1.0, infinity_norm(adj.matrix));
  report.residual_limit = tol * report.matrix_scale;
  for (const auto& line : spectrum.lines) {
    double worst = 0.0;
    for (const auto& x : line.eigenvectors) {
      if (x.size() != n) throw DimensionMismatch("eigenvector length differs from matrix size");
      const double r = n == 0 ? 0.0 : (adj.matrix * x - line.eigenvalue * x).cwiseAbs().maxCoeff();
      worst = std::max(worst, r);
      ++report.eigenvector_count;
    }
    report.line_residuals.push_back({line.u, line.v, worst});
    report.max_residual = std::max(report.max_residual, worst);
  }
  report.passed = report.max_residual <= report.residual_limit;
  return report;
}

BasisCheck verify_basis(const Spectrum& spectrum) {
  BasisCheck out;
  std::vector<const Eigen::VectorXcd*> vectors;
  for (const auto& line : spectrum.lines) {
    for (const auto& x : line.eigenvectors) vectors.push_back(&x);
  }
  out.count = vectors.size();
  out.complete = out.count == spectrum.dimension;
  if (vectors.empty()) return out;
  const auto n = vectors.front()->size();
  Eigen::MatrixXcd u(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c]->size() != n) throw DimensionMismatch("eigenvectors have different lengths");
    u.col(static_cast<Eigen::Index>(c)) = *vectors[c];
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  out.gram_deviation = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  return out;
}

SpectrumComparison compare_multisets(const std::vector<cd>& a, const std::vector<cd>& b, double tol) {
  struct Cluster {
    cd seed;
    cd sum;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
  };
  std::vector<Cluster> clusters;
  auto add = [&](const cd& x, bool from_a) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) { return std::abs(c.seed - x) <= tol; });
    if (it == clusters.end()) {
      clusters.push_back({x, {}, 0, 0});
      it = clusters.end() - 1;
    }
    it->sum += x;
    (from_a ? it->count_a : it->count_b) += 1;
  };
  for (const cd& x : a) add(x, true);
  for (const cd& x : b) add(x, false);

  SpectrumComparison out;
  out.equal = std::all_of(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.count_a == c.count_b; });
  if (out.equal) return out;

  for (auto& c : clusters) c.seed = c.sum / static_cast<double>(c.count_a + c.count_b);
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& x, const Cluster& y) {
    const double rx = std::round(x.seed.real() * 1e8), ry = std::round(y.seed.real() * 1e8);
    if (rx != ry) return rx < ry;
    return x.seed.imag() < y.seed.imag();
  });
  std::vector<cd> ea, eb;
  for (const auto& c : clusters) {
    ea.insert(ea.end(), c.count_a, c.seed);
    eb.insert(eb.end(), c.count_b, c.seed);
  }
  for (std::size_t i = 0; i < std::max(ea.size(), eb.size()); ++i) {
    const bool has_a = i < ea.size(), has_b = i < eb.size();
    if (!has_a || !has_b || std::abs(ea[i] - eb[i]) > tol) {
      out.mismatch = std::pair<cd, cd>{has_a ? ea[i] : cd{NAN, NAN}, has_b ? eb[i] : cd{NAN, NAN}};
      break;
    }
  }
  return out;
}

SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol) {
  if (a.dimension != b.dimension) {
    throw DimensionMismatch("spectra of dimension " + std::to_string(a.dimension) + " and " +
                            std::to_string(b.dimension));
  }
  return compare_multisets(expanded_eigenvalues(a), expanded_eigenvalues(b), tol);
}

TraceDeviations trace_identities(const AdjacencyMatrix& adj, const ColorFunction& alpha) {
  const FiniteGroup& g = alpha.group();
  const auto n = static_cast<double>(g.order());
  TraceDeviations out;
  out.trace_value = adj.matrix.trace();
  out.trace_square_value = adj.matrix.cwiseProduct(adj.matrix.transpose()).sum();
  cd pair_sum{};
  for (Elem x = 0; x < g.order(); ++x) pair_sum += alpha(x) * alpha(g.inverse(x));
  out.trace = std::abs(out.trace_value - n * alpha(g.identity()));
  out.trace_square = std::abs(out.trace_square_value - n * pair_sum);
  return out;
}

double verify_block_reconstruction(const ColorFunction& alpha, const IrrepSet& irreps) {
  const FiniteGroup& g = alpha.group();
  if (g.order() > 500) {
    throw CapacityExceeded("dense reconstruction is limited to order 500, got " + std::to_string(g.order()));
  }
  const auto ordering = canonical_ordering(g);
  const auto n = static_cast<Eigen::Index>(g.order());

  Eigen::MatrixXcd regular = Eigen::MatrixXcd::Zero(n, n);
  for (Elem x = 0; x < g.order(); ++x) {
    if (alpha(x) == cd{}) continue;
    const auto m = regular_rep_matrix(g, x, ordering);
    for (std::size_t t = 0; t < m.image.size(); ++t) {
      regular(static_cast<Eigen::Index>(m.image[t]), static_cast<Eigen::Index>(t)) += alpha(x);
    }
  }

  const PMatrix p = build_p_matrix(g, irreps, ordering);
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& rho : irreps) {
    const auto f = fourier_transform(alpha.values(), rho).matrix;
    for (int j = 0; j < rho.degree(); ++j) {
      diag.block(offset, offset, rho.degree(), rho.degree()) = f;
      offset += rho.degree();
    }
  }
  const Eigen::MatrixXcd p_bar = p.matrix.conjugate();
  const Eigen::MatrixXcd reconstructed = p_bar * diag * p_bar.inverse();
  const auto adj = adjacency_matrix(alpha, ordering);
  if (n == 0) return 0.0;
  return std::max((regular - reconstructed).cwiseAbs().maxCoeff(),
                  (regular.transpose() - adj.matrix).cwiseAbs().maxCoeff());
}

VerificationReport certify(const AdjacencyMatrix& adj, const ColorFunction& alpha, const Spectrum& spectrum,
                           double tol) {
  VerificationReport report = verify_eigenpairs(adj, spectrum, tol);
  const auto basis = verify_basis(spectrum);
  report.gram_deviation = basis.gram_deviation;
  report.complete = basis.complete;
  report.traces = trace_identities(adj, alpha);

  cd first{}, second{};
  for (const auto& line : spectrum.lines) {
    first += line.eigenvalue * static_cast<double>(line.multiplicity);
    second += line.eigenvalue * line.eigenvalue * static_cast<double>(line.multiplicity);
  }
  report.spectral_trace_deviation = std::abs(first - report.traces.trace_value);
  report.spectral_trace_square_deviation = std::abs(second - report.traces.trace_square_value);

  const double n = static_cast<double>(spectrum.dimension);
  const double s = report.matrix_scale;
  report.passed = report.passed && report.complete && report.gram_deviation <= tol &&
                  report.traces.trace <= tol * n && report.traces.trace_square <= tol * n &&
                  report.spectral_trace_deviation <= tol * n * s &&
                  report.spectral_trace_square_deviation <= tol * n * s * s;
  return report;
}

}  // namespace cayspec
