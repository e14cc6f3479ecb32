#include "cayspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cayspec {

std::string to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::normal: return "normal";
    case SpectrumMethod::split: return "split";
    case SpectrumMethod::metacyclic: return "metacyclic";
    case SpectrumMethod::blocks: return "blocks";
  }
  return "unknown";
}

std::size_t Spectrum::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& line : lines) total += static_cast<std::size_t>(line.multiplicity);
  return total;
}

cd Spectrum::eigenvalue_sum() const {
  cd total{};
  for (const auto& line : lines) total += line.eigenvalue * static_cast<double>(line.multiplicity);
  return total;
}

std::vector<MultisetEntry> cluster_values(const std::vector<cd>& values, double radius) {
  struct Cluster {
    cd seed;
    cd sum;
    std::size_t count;
  };
  std::vector<Cluster> clusters;
  for (const cd& x : values) {
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const Cluster& c) { return std::abs(c.seed - x) <= radius; });
    if (it == clusters.end()) {
      clusters.push_back({x, x, 1});
    } else {
      it->sum += x;
      ++it->count;
    }
  }
  std::vector<MultisetEntry> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back({c.sum / static_cast<double>(c.count), c.count});
  // Real parts are compared on a 1e-8 grid so that clusters differing only
  // by rounding in Re order by Im.
  std::sort(out.begin(), out.end(), [](const MultisetEntry& a, const MultisetEntry& b) {
    const double ra = std::round(a.value.real() * 1e8), rb = std::round(b.value.real() * 1e8);
    if (ra != rb) return ra < rb;
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<cd> expanded_eigenvalues(const Spectrum& spectrum) {
  std::vector<cd> out;
  out.reserve(spectrum.total_multiplicity());
  for (const auto& line : spectrum.lines) out.insert(out.end(), static_cast<std::size_t>(line.multiplicity), line.eigenvalue);
  return out;
}

std::vector<MultisetEntry> merged_multiset(const Spectrum& spectrum, double radius) {
  return cluster_values(expanded_eigenvalues(spectrum), radius);
}

namespace {

std::string hypothesis_message(const HypothesisReport& r) {
  std::ostringstream os;
  os << "hypotheses violated:";
  if (!r.condition_a) os << " condition A";
  if (!r.condition_b) os << " condition B";
  return os.str();
}

void require_valid(const FiniteGroup& g, const IrrepSet& irreps, const char* which) {
  const auto report = validate_irrep_set(g, irreps);
  if (!report.passed()) throw IrrepValidationFailed(std::string(which) + ": " + report.summary());
}

/// Unscaled matrix-coefficient columns rho(.)_{ij} of one irrep, column-major over (i, j).
std::vector<Eigen::VectorXcd> coefficient_columns(const UnitaryIrrep& rho) {
  const auto n = static_cast<Eigen::Index>(rho.group_order());
  std::vector<Eigen::VectorXcd> cols;
  for (int j = 0; j < rho.degree(); ++j) {
    for (int i = 0; i < rho.degree(); ++i) {
      Eigen::VectorXcd c(n);
      for (Eigen::Index t = 0; t < n; ++t) c(t) = rho.coefficient(static_cast<Elem>(t), i, j);
      cols.push_back(std::move(c));
    }
  }
  return cols;
}

}  // namespace

HypothesesViolated::HypothesesViolated(HypothesisReport report)
    : Error(hypothesis_message(report)), report_(std::move(report)) {}

HypothesisReport check_split_hypotheses(const SplitExtension& ext, const ColorFunction& alpha) {
  const FiniteGroup& g = ext.group;
  HypothesisReport report;

  const auto orbits = conjugation_orbits_on_k(ext);
  for (Elem h : ext.h_elements) {
    for (const auto& orbit : orbits) {
      const Elem root = orbit.members[0];
      const cd rhs = alpha(g.multiply(h, root));
      for (std::size_t i = 1; i < orbit.members.size(); ++i) {
        const cd lhs = alpha(g.multiply(h, orbit.members[i]));
        if (lhs != rhs) {
          report.condition_a = false;
          report.witness_a = HypothesisWitnessA{h, orbit.conjugators[i], root, lhs, rhs};
          break;
        }
      }
      if (!report.condition_a) break;
    }
    if (!report.condition_a) break;
  }

  std::vector<bool> assigned(g.order(), false);
  for (Elem h : ext.h_elements) {
    if (assigned[h]) continue;
    for (Elem hp : ext.h_elements) {
      const Elem c = g.conjugate(hp, h);
      if (assigned[c]) continue;
      assigned[c] = true;
      for (Elem k : ext.k_elements) {
        const cd lhs = alpha(g.multiply(c, k));
        const cd rhs = alpha(g.multiply(h, k));
        if (lhs != rhs) {
          report.condition_b = false;
          report.witness_b = HypothesisWitnessB{hp, h, k, lhs, rhs};
          return report;
        }
      }
    }
  }
  return report;
}

Spectrum spectrum_normal(const ColorFunction& alpha, const IrrepSet& irreps, const SpectrumOptions& options) {
  const FiniteGroup& g = alpha.group();
  if (auto w = alpha.class_function_witness()) {
    throw NotClassFunction("alpha is not a class function: alpha(" + g.format(g.conjugate(w->conjugator, w->element)) +
                           ") != alpha(" + g.format(w->element) + ") under conjugation by " + g.format(w->conjugator));
  }
  require_valid(g, irreps, "irreps of G");
  const std::size_t n = g.order();

  Spectrum spectrum;
  spectrum.dimension = n;
  spectrum.method = SpectrumMethod::normal;
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    const auto& rho = irreps[k];
    const int d = rho.degree();
    cd sum{};
    for (Elem x = 0; x < n; ++x) {
      if (alpha(x) != cd{}) sum += alpha(x) * rho.character(x);
    }
    SpectralLine line;
    line.u = static_cast<int>(k);
    line.v = 0;
    line.eigenvalue = sum / static_cast<double>(d);
    line.multiplicity = d * d;
    const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) {
        line.labels.push_back({i, j, -1, -1});
        if (options.eigenvectors) {
          Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
          for (Elem t = 0; t < n; ++t) x(static_cast<Eigen::Index>(t)) = scale * rho.coefficient(t, i, j);
          line.eigenvectors.push_back(std::move(x));
        }
      }
    }
    spectrum.lines.push_back(std::move(line));
  }
  return spectrum;
}

Spectrum spectrum_split(const ColorFunction& alpha, const IrrepSet& irreps_h, const IrrepSet& irreps_k,
                        const SpectrumOptions& options) {
  const FiniteGroup& g = alpha.group();
  if (!g.has_split_structure()) throw InvalidParameter("structural formula needs a split group C_m x| H");
  const FiniteGroup h_group = g.complement();
  const int m = g.k_order();
  const int l = g.h_order();
  require_valid(h_group, irreps_h, "irreps of H");
  require_valid(FiniteGroup::cyclic(m), irreps_k, "irreps of K");

  const auto report = check_split_hypotheses(SplitExtension::of(g), alpha);
  if (!report.passed() && !options.override_hypotheses) throw HypothesesViolated(report);

  const auto classes = conjugacy_classes(h_group);
  const std::size_t r = classes.size();

  auto sigma = [&](const UnitaryIrrep& rho_k, Elem h_rep) {
    cd sum{};
    for (int b = 0; b < m; ++b) {
      const cd a = alpha(g.compose(h_rep, b));
      if (a != cd{}) sum += a * rho_k.character(static_cast<Elem>(b));
    }
    return sum / static_cast<double>(rho_k.degree());
  };

  // sigma[v][i] and lambda[u][i]
  std::vector<std::vector<cd>> sigmas(irreps_k.size(), std::vector<cd>(r));
  for (std::size_t v = 0; v < irreps_k.size(); ++v) {
    for (std::size_t i = 0; i < r; ++i) {
      sigmas[v][i] = sigma(irreps_k[v], classes[i].representative);
      if (options.check_representatives && report.passed() && classes[i].size() > 1) {
        const cd other = sigma(irreps_k[v], classes[i].members.back());
        if (std::abs(other - sigmas[v][i]) > 1e-10) {
          throw Error("sigma depends on the class representative for class " + std::to_string(i) +
                      " and K-irrep " + std::to_string(v));
        }
      }
    }
  }
  std::vector<std::vector<cd>> lambdas(irreps_h.size(), std::vector<cd>(r));
  for (std::size_t u = 0; u < irreps_h.size(); ++u) {
    for (std::size_t i = 0; i < r; ++i) {
      lambdas[u][i] = static_cast<double>(classes[i].size()) * irreps_h[u].character(classes[i].representative) /
                      static_cast<double>(irreps_h[u].degree());
    }
  }

  std::vector<std::vector<Eigen::VectorXcd>> h_cols, k_cols;
  if (options.eigenvectors) {
    for (const auto& rho : irreps_h) h_cols.push_back(coefficient_columns(rho));
    for (const auto& rho : irreps_k) k_cols.push_back(coefficient_columns(rho));
  }

  Spectrum spectrum;
  spectrum.dimension = g.order();
  spectrum.method = SpectrumMethod::split;
  spectrum.hypotheses_verified = report.passed();
  for (std::size_t u = 0; u < irreps_h.size(); ++u) {
    const int du = irreps_h[u].degree();
    for (std::size_t v = 0; v < irreps_k.size(); ++v) {
      const int dv = irreps_k[v].degree();
      SpectralLine line;
      line.u = static_cast<int>(u);
      line.v = static_cast<int>(v);
      line.lambda_h = lambdas[u];
      line.sigma_k = sigmas[v];
      for (std::size_t i = 0; i < r; ++i) line.eigenvalue += lambdas[u][i] * sigmas[v][i];
      line.multiplicity = du * du * dv * dv;

      const double scale = std::sqrt(static_cast<double>(du * dv) / static_cast<double>(l * m));
      for (int jh = 0; jh < du; ++jh) {
        for (int ih = 0; ih < du; ++ih) {
          for (int jk = 0; jk < dv; ++jk) {
            for (int ik = 0; ik < dv; ++ik) {
              line.labels.push_back({ih, jh, ik, jk});
              if (!options.eigenvectors) continue;
              const auto& hc = h_cols[u][static_cast<std::size_t>(jh * du + ih)];
              const auto& kc = k_cols[v][static_cast<std::size_t>(jk * dv + ik)];
              Eigen::VectorXcd x(static_cast<Eigen::Index>(g.order()));
              for (int a = 0; a < l; ++a) {
                x.segment(static_cast<Eigen::Index>(a) * m, m) = (scale * hc(a)) * kc;
              }
              line.eigenvectors.push_back(std::move(x));
            }
          }
        }
      }
      spectrum.lines.push_back(std::move(line));
    }
  }
  return spectrum;
}

Spectrum spectrum_split(const ColorFunction& alpha, const SpectrumOptions& options) {
  const FiniteGroup& g = alpha.group();
  if (!g.has_split_structure()) throw InvalidParameter("structural formula needs a split group C_m x| H");
  const auto irreps_h = builtin_irreps(g.complement());
  if (!irreps_h) throw InvalidParameter("no built-in irreps for the complement H");
  return spectrum_split(alpha, *irreps_h, irreps_cyclic(g.k_order()), options);
}

void check_layers(int m, int l, int r, const std::vector<std::vector<int>>& layers) {
  if (layers.size() != static_cast<std::size_t>(l)) {
    throw InvalidParameter("expected " + std::to_string(l) + " layers, got " + std::to_string(layers.size()));
  }
  for (std::size_t t = 0; t < layers.size(); ++t) {
    std::set<int> members;
    for (int s : layers[t]) {
      if (s < 0 || s >= m) {
        throw InvalidElement("layer " + std::to_string(t) + " exponent " + std::to_string(s) + " outside [0, " +
                             std::to_string(m) + ")");
      }
      members.insert(s);
    }
    for (int s : members) {
      const auto image = static_cast<int>(mod(static_cast<std::int64_t>(s) * r, m));
      if (!members.count(image)) {
        throw LayerNotInvariant("layer " + std::to_string(t) + " is not closed under conjugation by h: k^" +
                                    std::to_string(s) + " maps to k^" + std::to_string(image),
                                static_cast<int>(t), s);
      }
    }
  }
}

Spectrum spectrum_metacyclic(int m, int l, int r, const std::vector<std::vector<int>>& layers,
                        const SpectrumOptions& options) {
  FiniteGroup::metacyclic(m, l, r);  // parameter validation
  check_layers(m, l, r, layers);

  std::vector<std::set<int>> sets;
  for (const auto& layer : layers) sets.emplace_back(layer.begin(), layer.end());

  Spectrum spectrum;
  spectrum.dimension = static_cast<std::size_t>(l) * static_cast<std::size_t>(m);
  spectrum.method = SpectrumMethod::metacyclic;
  const double scale = 1.0 / std::sqrt(static_cast<double>(l) * static_cast<double>(m));
  for (int u = 0; u < l; ++u) {
    for (int v = 0; v < m; ++v) {
      SpectralLine line;
      line.u = u;
      line.v = v;
      for (int t = 0; t < l; ++t) {
        cd inner{};
        for (int s : sets[static_cast<std::size_t>(t)]) inner += root_of_unity(static_cast<std::int64_t>(v) * s, m);
        line.eigenvalue += root_of_unity(static_cast<std::int64_t>(u) * t, l) * inner;
      }
      line.multiplicity = 1;
      line.labels.push_back({0, 0, 0, 0});
      if (options.eigenvectors) {
        Eigen::VectorXcd x(static_cast<Eigen::Index>(spectrum.dimension));
        for (int a = 0; a < l; ++a) {
          const cd ha = scale * root_of_unity(static_cast<std::int64_t>(u) * a, l);
          for (int b = 0; b < m; ++b) {
            x(static_cast<Eigen::Index>(a) * m + b) = ha * root_of_unity(static_cast<std::int64_t>(v) * b, m);
          }
        }
        line.eigenvectors.push_back(std::move(x));
      }
      spectrum.lines.push_back(std::move(line));
    }
  }
  return spectrum;
}

namespace {

/// Closed-form eigen-data of a 1x1 or 2x2 matrix.
BlockEigen small_eigen(const Eigen::MatrixXcd& mat) {
  BlockEigen out;
  if (mat.rows() == 1) {
    out.values = {mat(0, 0)};
    out.vectors = {Eigen::VectorXcd::Ones(1)};
    return out;
  }
  const cd a = mat(0, 0), b = mat(0, 1), c = mat(1, 0), d = mat(1, 1);
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  const cd tr = a + d;
  const cd disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  out.values = {(tr + disc) / 2.0, (tr - disc) / 2.0};

  const bool scalar = std::abs(b) <= 1e-14 * scale && std::abs(c) <= 1e-14 * scale && std::abs(a - d) <= 1e-14 * scale;
  if (scalar) {
    out.values = {a, d};
    out.vectors = {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
    return out;
  }
  if (std::abs(disc) <= 1e-12 * scale) return out;  // defective
  for (const cd mu : out.values) {
    // Null vector of mat - mu I from whichever row is larger.
    Eigen::Vector2cd w1(b, mu - a), w2(mu - d, c);
    Eigen::Vector2cd w = w1.norm() >= w2.norm() ? w1 : w2;
    out.vectors.push_back(w / w.norm());
  }
  return out;
}

}  // namespace

BlockDiagonalization block_diagonalize(const ColorFunction& alpha, const IrrepSet& irreps) {
  const FiniteGroup& g = alpha.group();
  const auto ordering = canonical_ordering(g);
  const PMatrix p = build_p_matrix(g, irreps, ordering);  // validates
  const auto n = static_cast<Eigen::Index>(g.order());

  BlockDiagonalization out;
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& rho : irreps) {
    auto block = fourier_transform(alpha.values(), rho);
    const int d = rho.degree();
    const Eigen::MatrixXcd ft = block.matrix.transpose();
    for (int j = 0; j < d; ++j) {
      diag.block(offset, offset, d, d) = ft;
      offset += d;
    }
    out.eigen.push_back(d <= 2 ? std::optional<BlockEigen>(small_eigen(ft)) : std::nullopt);
    out.blocks.push_back(std::move(block));
  }
  const Eigen::MatrixXcd reconstructed = p.matrix * diag * p.matrix.adjoint();
  const auto adj = adjacency_matrix(alpha, ordering);
  out.reconstruction_deviation = n == 0 ? 0.0 : (reconstructed - adj.matrix).cwiseAbs().maxCoeff();
  return out;
}

Spectrum spectrum_blocks(const ColorFunction& alpha, const IrrepSet& irreps, const SpectrumOptions& options) {
  for (const auto& rho : irreps) {
    if (rho.degree() > 2) {
      throw InvalidParameter("block route extracts eigenvalues only for irreps of degree <= 2; " + rho.label() +
                             " has degree " + std::to_string(rho.degree()));
    }
  }
  const auto bd = block_diagonalize(alpha, irreps);
  const FiniteGroup& g = alpha.group();
  const std::size_t n = g.order();

  Spectrum spectrum;
  spectrum.dimension = n;
  spectrum.method = SpectrumMethod::blocks;
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    const auto& rho = irreps[k];
    const int d = rho.degree();
    const auto& eig = *bd.eigen[k];
    const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    for (std::size_t e = 0; e < eig.values.size(); ++e) {
      SpectralLine line;
      line.u = static_cast<int>(k);
      line.v = static_cast<int>(e);
      line.eigenvalue = eig.values[e];
      line.multiplicity = d;
      for (int j = 0; j < d; ++j) {
        line.labels.push_back({-1, j, -1, -1});
        if (!options.eigenvectors || eig.vectors.empty()) continue;
        // sum_p w_p rho(.)_{pj}
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
        for (Elem t = 0; t < n; ++t) {
          cd sum{};
          for (int pi = 0; pi < d; ++pi) sum += eig.vectors[e](pi) * rho.coefficient(t, pi, j);
          x(static_cast<Eigen::Index>(t)) = scale * sum;
        }
        line.eigenvectors.push_back(std::move(x));
      }
      spectrum.lines.push_back(std::move(line));
    }
  }
  return spectrum;
}

}  // namespace cayspec
