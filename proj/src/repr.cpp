#include "cayspec/repr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cayspec/error.hpp"

namespace cayspec {

UnitaryIrrep::UnitaryIrrep(std::string label, int degree, std::vector<int> params, std::vector<cd> data)
    : label_(std::move(label)), degree_(degree), params_(std::move(params)), data_(std::move(data)) {
  if (degree_ < 1) throw InvalidParameter("irrep degree must be at least 1");
  if (data_.size() % static_cast<std::size_t>(degree_ * degree_) != 0) {
    throw InvalidParameter("irrep data size is not a multiple of degree^2");
  }
}

namespace {

void sort_irreps(IrrepSet& set) {
  std::stable_sort(set.begin(), set.end(), [](const UnitaryIrrep& a, const UnitaryIrrep& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.params() < b.params();
  });
}

std::string tuple_label(const std::string& prefix, const std::vector<int>& v) {
  std::ostringstream os;
  os << prefix << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

IrrepSet irreps_cyclic(int n) {
  if (n < 1) throw InvalidParameter("cyclic order must be at least 1");
  IrrepSet out;
  out.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    std::vector<cd> data(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) data[static_cast<std::size_t>(s)] = root_of_unity(static_cast<std::int64_t>(v) * s, n);
    out.emplace_back("chi" + std::to_string(v), 1, std::vector<int>{v}, std::move(data));
  }
  return out;
}

IrrepSet irreps_abelian(const std::vector<int>& orders) {
  if (orders.empty()) throw InvalidParameter("abelian group needs at least one factor");
  std::size_t n = 1;
  for (int o : orders) {
    if (o < 1) throw InvalidParameter("factor order must be at least 1");
    n *= static_cast<std::size_t>(o);
    if (n > GroupLimits{}.max_order) throw CapacityExceeded("abelian group order exceeds the cap");
  }
  const std::size_t k = orders.size();
  auto digits = [&](std::size_t index) {
    std::vector<int> x(k);
    for (std::size_t i = k; i-- > 0;) {
      x[i] = static_cast<int>(index % static_cast<std::size_t>(orders[i]));
      index /= static_cast<std::size_t>(orders[i]);
    }
    return x;
  };
  IrrepSet out;
  out.reserve(n);
  for (std::size_t vi = 0; vi < n; ++vi) {  // mixed radix order is lexicographic in v
    const auto v = digits(vi);
    std::vector<cd> data(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
      const auto x = digits(xi);
      cd value{1.0, 0.0};
      for (std::size_t i = 0; i < k; ++i) {
        value *= root_of_unity(static_cast<std::int64_t>(v[i]) * x[i], orders[i]);
      }
      data[xi] = value;
    }
    out.emplace_back(tuple_label("chi", v), 1, v, std::move(data));
  }
  return out;
}

IrrepSet irreps_dihedral(int n) {
  if (n < 3) throw InvalidParameter("dihedral group D_n needs n >= 3");
  const auto order = static_cast<std::size_t>(2 * n);
  IrrepSet out;

  // One-dimensional: rotation -> +-1, reflection -> +-1; rotation -> -1
  // needs n even.
  const int rotation_signs = n % 2 == 0 ? 2 : 1;
  const char* names[2][2] = {{"trivial", "sign"}, {"alt+", "alt-"}};
  for (int rs = 0; rs < rotation_signs; ++rs) {
    for (int ss = 0; ss < 2; ++ss) {
      std::vector<cd> data(order);
      for (int a = 0; a < 2; ++a) {
        for (int x = 0; x < n; ++x) {
          const int exponent = rs * x + ss * a;
          data[static_cast<std::size_t>(a * n + x)] = exponent % 2 == 0 ? 1.0 : -1.0;
        }
      }
      out.emplace_back(names[rs][ss], 1, std::vector<int>{rs, ss}, std::move(data));
    }
  }

  for (int j = 1; 2 * j < n; ++j) {
    std::vector<cd> data(order * 4);
    for (int a = 0; a < 2; ++a) {
      for (int x = 0; x < n; ++x) {
        const cd p = root_of_unity(static_cast<std::int64_t>(j) * x, n);
        const cd q = root_of_unity(-static_cast<std::int64_t>(j) * x, n);
        cd* mat = data.data() + static_cast<std::size_t>(a * n + x) * 4;  // column-major
        if (a == 0) {
          mat[0] = p;  // (0,0)
          mat[3] = q;  // (1,1)
        } else {
          // [[0,1],[1,0]] * diag(p, q)
          mat[1] = p;  // (1,0)
          mat[2] = q;  // (0,1)
        }
      }
    }
    out.emplace_back("rho" + std::to_string(j), 2, std::vector<int>{j}, std::move(data));
  }
  return out;
}

IrrepSet irreps_metacyclic(int m, int l, int r) {
  const FiniteGroup g = FiniteGroup::metacyclic(m, l, r);  // validates the parameters
  const std::int64_t rr = mod(r, m);
  const std::int64_t s = mod_inverse(rr, m);
  const std::size_t n = g.order();

  IrrepSet out;
  std::vector<bool> covered(static_cast<std::size_t>(m), false);
  for (int v = 0; v < m; ++v) {
    if (covered[static_cast<std::size_t>(v)]) continue;
    // Orbit of the K-character v under h; its size o divides l.
    int o = 0;
    std::int64_t w = v;
    do {
      covered[static_cast<std::size_t>(w)] = true;
      w = w * rr % m;
      ++o;
    } while (w != v);
    const int q = l / o;

    // s^j mod m for j < o.
    std::vector<std::int64_t> s_pow(static_cast<std::size_t>(o), 1 % m);
    for (int j = 1; j < o; ++j) s_pow[static_cast<std::size_t>(j)] = s_pow[static_cast<std::size_t>(j - 1)] * s % m;

    for (int c = 0; c < q; ++c) {
      // Induced from h^{o x} k^y -> zeta_q^{c x} w_m^{v y} on <h^o> K.
      // With g = h^a k^b: g h^j = h^{j'} (h^{o t} k^{b s^j}) where
      // a + j = o t + j' (mod l).
      std::vector<cd> data(n * static_cast<std::size_t>(o * o));
      for (int a = 0; a < l; ++a) {
        for (int b = 0; b < m; ++b) {
          cd* mat = data.data() + g.compose(static_cast<Elem>(a), b) * static_cast<std::size_t>(o * o);
          for (int j = 0; j < o; ++j) {
            const int shifted = (a + j) % l;
            const int jp = shifted % o;
            const int t = shifted / o;
            const std::int64_t k_exp = static_cast<std::int64_t>(v) * b % m * s_pow[static_cast<std::size_t>(j)] % m;
            mat[j * o + jp] = root_of_unity(static_cast<std::int64_t>(c) * t, q) * root_of_unity(k_exp, m);
          }
        }
      }
      out.emplace_back(tuple_label("ind", {v, c}), o, std::vector<int>{v, c}, std::move(data));
    }
  }
  sort_irreps(out);
  return out;
}

std::optional<IrrepSet> builtin_irreps(const FiniteGroup& g) {
  const auto p = g.parameters();
  switch (g.kind()) {
    case GroupKind::cyclic: return irreps_cyclic(p[0]);
    case GroupKind::abelian: return irreps_abelian(p);
    case GroupKind::dihedral: return irreps_dihedral(p[0]);
    case GroupKind::metacyclic: return irreps_metacyclic(p[0], p[1], p[2]);
    default: return std::nullopt;
  }
}

std::string ValidationReport::summary() const {
  if (failures.empty()) return "pass";
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    const auto& f = failures[i];
    if (i) os << "; ";
    os << f.invariant << " failed";
    if (!f.irrep.empty()) os << " for " << f.irrep;
    if (!f.witness.empty()) os << " at " << f.witness;
    os << " (value " << f.value << ")";
  }
  return os.str();
}

ValidationReport validate_irrep_set(const FiniteGroup& g, const IrrepSet& irreps, const ValidationTolerances& tol) {
  ValidationReport report;
  const std::size_t n = g.order();
  std::size_t degree_square_sum = 0;
  std::vector<const UnitaryIrrep*> well_formed;

  for (const auto& rho : irreps) {
    const int d = rho.degree();
    degree_square_sum += static_cast<std::size_t>(d * d);
    if (rho.group_order() != n) {
      report.failures.push_back({"shape", rho.label(),
                                 std::to_string(rho.group_order()) + " matrices for " + std::to_string(n) + " elements",
                                 static_cast<double>(rho.group_order())});
      continue;
    }
    well_formed.push_back(&rho);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

    // rho(e) = I and rho(x s) = rho(x) rho(s) on generators s.
    bool hom_ok = true;
    const double at_identity = (rho.matrix(g.identity()) - id).cwiseAbs().maxCoeff();
    if (at_identity > tol.homomorphism) {
      report.failures.push_back({"homomorphism", rho.label(), "identity", at_identity});
      hom_ok = false;
    }
    for (Elem x = 0; x < n && hom_ok; ++x) {
      for (Elem s : g.generators()) {
        const double dev = (rho.matrix(g.multiply(x, s)) - rho.matrix(x) * rho.matrix(s)).cwiseAbs().maxCoeff();
        if (dev > tol.homomorphism) {
          report.failures.push_back({"homomorphism", rho.label(), "(" + g.format(x) + ", " + g.format(s) + ")", dev});
          hom_ok = false;
          break;
        }
      }
    }

    for (Elem x = 0; x < n; ++x) {
      const auto mat = rho.matrix(x);
      const double dev = (mat * mat.adjoint() - id).cwiseAbs().maxCoeff();
      if (dev > tol.unitarity) {
        report.failures.push_back({"unitarity", rho.label(), g.format(x), dev});
        break;
      }
    }

    double norm = 0.0;
    for (Elem x = 0; x < n; ++x) norm += std::norm(rho.character(x));
    norm /= static_cast<double>(n);
    if (std::abs(norm - 1.0) > tol.irreducibility) {
      report.failures.push_back({"irreducibility", rho.label(), "(1/n) sum |chi|^2", norm});
    }
  }

  if (degree_square_sum != n) {
    report.failures.push_back({"completeness", "", "sum of squared degrees " + std::to_string(degree_square_sum) +
                                                       " for order " + std::to_string(n),
                               static_cast<double>(degree_square_sum)});
  }

  for (std::size_t u = 0; u < well_formed.size(); ++u) {
    for (std::size_t w = u + 1; w < well_formed.size(); ++w) {
      cd inner{0.0, 0.0};
      for (Elem x = 0; x < n; ++x) inner += well_formed[u]->character(x) * std::conj(well_formed[w]->character(x));
      inner /= static_cast<double>(n);
      if (std::abs(inner) > tol.orthogonality) {
        report.failures.push_back({"orthogonality", well_formed[u]->label() + " vs " + well_formed[w]->label(),
                                   "<chi_u, chi_w>", std::abs(inner)});
      }
    }
  }
  return report;
}

FourierBlock fourier_transform(const std::vector<cd>& f, const UnitaryIrrep& rho) {
  if (f.size() != rho.group_order()) throw DimensionMismatch("function and representation sizes differ");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rho.degree(), rho.degree());
  for (Elem x = 0; x < f.size(); ++x) {
    if (f[x] != cd{}) sum += f[x] * rho.matrix(x);
  }
  return {rho.label(), std::move(sum)};
}

PMatrix build_p_matrix(const FiniteGroup& g, const IrrepSet& irreps, const std::vector<Elem>& ordering) {
  const auto report = validate_irrep_set(g, irreps);
  if (!report.passed()) throw IrrepValidationFailed(report.summary());
  const std::size_t n = g.order();
  if (ordering.size() != n) throw DimensionMismatch("ordering does not enumerate the group");

  PMatrix p;
  p.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  p.ordering = ordering;
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    const auto& rho = irreps[k];
    const int d = rho.degree();
    const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) {
        for (std::size_t t = 0; t < n; ++t) {
          p.matrix(static_cast<Eigen::Index>(t), col) = scale * rho.coefficient(ordering[t], i, j);
        }
        p.columns.push_back({k, i, j});
        ++col;
      }
    }
  }
  return p;
}

}  // namespace cayspec
