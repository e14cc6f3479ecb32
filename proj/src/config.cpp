#include "cayspec/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cayspec/error.hpp"

namespace cayspec {

using nlohmann::json;

namespace {

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(path + ": integer out of range");
  return static_cast<int>(v);
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path + ": expected a boolean");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

cd as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ConfigError(path + ": expected [re, im]");
  return {as_double(j[0], path + "[0]"), as_double(j[1], path + "[1]")};
}

Elem element(const FiniteGroup& g, const json& j, const std::string& path) {
  const auto enc = int_list(j, path);
  try {
    return g.decode(enc);
  } catch (const InvalidElement& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<Elem> permutation_list(const FiniteGroup& g, const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of permutations");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element(g, j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

UnitaryIrrep parse_irrep(const json& j, std::size_t n, const std::string& path) {
  const int d = as_int(field(j, "degree", path), path + ".degree");
  if (d < 1) throw ConfigError(path + ".degree: must be at least 1");
  const std::string label = j.contains("label") ? as_string(j["label"], path + ".label") : path;
  const json& mats = field(j, "matrices", path);
  if (!mats.is_array() || mats.size() != n) {
    throw ConfigError(path + ".matrices: expected one matrix per element (" + std::to_string(n) + ")");
  }
  const auto dd = static_cast<std::size_t>(d * d);
  std::vector<cd> data(n * dd);
  for (std::size_t x = 0; x < n; ++x) {
    const std::string mp = path + ".matrices[" + std::to_string(x) + "]";
    if (!mats[x].is_array() || mats[x].size() != dd) {
      throw ConfigError(mp + ": expected " + std::to_string(dd) + " [re, im] entries");
    }
    for (int row = 0; row < d; ++row) {
      for (int col = 0; col < d; ++col) {
        const auto src = static_cast<std::size_t>(row * d + col);
        data[x * dd + static_cast<std::size_t>(col * d + row)] = as_complex(mats[x][src], mp + "[" + std::to_string(src) + "]");
      }
    }
  }
  return UnitaryIrrep(label, d, {}, std::move(data));
}

}  // namespace

FiniteGroup parse_group(const json& j, const std::string& path) {
  const std::string type = as_string(field(j, "type", path), path + ".type");
  GroupLimits limits;
  if (j.contains("max_order")) {
    const int cap = as_int(j["max_order"], path + ".max_order");
    if (cap < 1) throw ConfigError(path + ".max_order: must be positive");
    limits.max_order = static_cast<std::size_t>(cap);
  }
  auto get = [&](const char* key) { return as_int(field(j, key, path), path + "." + key); };
  try {
    if (type == "cyclic") return FiniteGroup::cyclic(get("n"), limits);
    if (type == "abelian") return FiniteGroup::abelian(int_list(field(j, "orders", path), path + ".orders"), limits);
    if (type == "dihedral") return FiniteGroup::dihedral(get("n"), limits);
    if (type == "metacyclic") return FiniteGroup::metacyclic(get("m"), get("l"), get("r"), limits);
    if (type == "semidirect") {
      const FiniteGroup h = parse_group(field(j, "h", path), path + ".h");
      return FiniteGroup::semidirect(get("m"), h, int_list(field(j, "action", path), path + ".action"), limits);
    }
    if (type == "permutation") {
      const json& gens = field(j, "generators", path);
      if (!gens.is_array()) throw ConfigError(path + ".generators: expected an array");
      std::vector<std::vector<int>> perms;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        perms.push_back(int_list(gens[i], path + ".generators[" + std::to_string(i) + "]"));
      }
      return FiniteGroup::permutation(get("degree"), perms, limits);
    }
  } catch (const InvalidElement& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const InvalidParameter& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".type: unknown group type '" + type + "'");
}

JobConfig parse_job_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected an object");
  JobConfig cfg{parse_group(field(j, "group", "config"), "group"), std::nullopt, std::nullopt, {}, std::nullopt,
                std::nullopt, {}};
  const FiniteGroup& g = cfg.group;

  if (g.has_split_structure()) {
    cfg.split = SplitExtension::of(g);
  } else if (j["group"].contains("split")) {
    const json& s = j["group"]["split"];
    const auto k_gens = permutation_list(g, field(s, "k_generators", "group.split"), "group.split.k_generators");
    const auto h_gens = permutation_list(g, field(s, "h_generators", "group.split"), "group.split.h_generators");
    cfg.split = SplitExtension::from_subgroups(g, k_gens, h_gens);
  }

  if (j.contains("connection")) {
    const json& c = j["connection"];
    const std::string mode = as_string(field(c, "mode", "connection"), "connection.mode");
    const int present = static_cast<int>(c.contains("elements")) + static_cast<int>(c.contains("layers")) +
                        static_cast<int>(c.contains("entries"));
    if (present != 1) throw ConfigError("connection: exactly one of elements, layers, entries must be present");
    if (mode == "set") {
      cfg.mode = ConnectionMode::set;
      const json& elems = field(c, "elements", "connection");
      if (!elems.is_array()) throw ConfigError("connection.elements: expected an array");
      std::vector<Elem> s;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        s.push_back(element(g, elems[i], "connection.elements[" + std::to_string(i) + "]"));
      }
      cfg.alpha = color_from_set(g, s);
    } else if (mode == "layers") {
      if (g.kind() != GroupKind::metacyclic) throw ConfigError("connection.layers: layers mode needs a metacyclic group");
      cfg.mode = ConnectionMode::layers;
      const json& layers = field(c, "layers", "connection");
      if (!layers.is_array()) throw ConfigError("connection.layers: expected an array of arrays");
      for (std::size_t t = 0; t < layers.size(); ++t) {
        cfg.layers.push_back(int_list(layers[t], "connection.layers[" + std::to_string(t) + "]"));
      }
      try {
        cfg.alpha = color_from_layers(g, cfg.layers);
      } catch (const Error& e) {
        throw ConfigError(std::string("connection.layers: ") + e.what());
      }
    } else if (mode == "color") {
      cfg.mode = ConnectionMode::color;
      const json& entries = field(c, "entries", "connection");
      if (!entries.is_array()) throw ConfigError("connection.entries: expected an array");
      std::vector<cd> values(g.order());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = "connection.entries[" + std::to_string(i) + "]";
        const Elem x = element(g, field(entries[i], "element", p), p + ".element");
        values[x] = as_complex(field(entries[i], "value", p), p + ".value");
      }
      cfg.alpha = ColorFunction(g, std::move(values));
    } else {
      throw ConfigError("connection.mode: unknown mode '" + mode + "'");
    }
  }

  if (j.contains("irreps")) {
    const json& irr = j["irreps"];
    if (!irr.is_array()) throw ConfigError("irreps: expected an array");
    IrrepSet set;
    for (std::size_t i = 0; i < irr.size(); ++i) set.push_back(parse_irrep(irr[i], g.order(), "irreps[" + std::to_string(i) + "]"));
    cfg.irreps = std::move(set);
  }

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) throw ConfigError("options: expected an object");
    auto& opt = cfg.options;
    if (o.contains("eigenvectors")) opt.eigenvectors = as_bool(o["eigenvectors"], "options.eigenvectors");
    if (o.contains("verify")) opt.verify = as_bool(o["verify"], "options.verify");
    if (o.contains("tolerance")) {
      opt.tolerance = as_double(o["tolerance"], "options.tolerance");
      if (!(opt.tolerance > 0.0)) throw ConfigError("options.tolerance: must be positive");
    }
    if (o.contains("format")) {
      opt.format = as_string(o["format"], "options.format");
      if (opt.format != "json" && opt.format != "csv") throw ConfigError("options.format: expected json or csv");
    }
    if (o.contains("method")) opt.method = as_string(o["method"], "options.method");
    if (o.contains("override_hypotheses")) {
      opt.override_hypotheses = as_bool(o["override_hypotheses"], "options.override_hypotheses");
    }
    if (o.contains("export_graph")) opt.export_graph = as_string(o["export_graph"], "options.export_graph");
  }
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_job_config(j);
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // drops the sign of zero
}

ordered_json complex_json(cd z) {
  auto chop = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : round15(x); };
  return ordered_json::array({chop(z.real()), chop(z.imag())});
}

ordered_json verification_json(const VerificationReport& r) {
  ordered_json j;
  j["passed"] = r.passed;
  j["tolerance"] = round15(r.tolerance);
  j["matrix_scale"] = round15(r.matrix_scale);
  j["max_residual"] = round15(r.max_residual);
  j["residual_limit"] = round15(r.residual_limit);
  j["gram_deviation"] = round15(r.gram_deviation);
  j["complete"] = r.complete;
  j["eigenvector_count"] = r.eigenvector_count;
  j["trace"] = complex_json(r.traces.trace_value);
  j["trace_square"] = complex_json(r.traces.trace_square_value);
  j["trace_deviation"] = round15(r.traces.trace);
  j["trace_square_deviation"] = round15(r.traces.trace_square);
  j["spectral_trace_deviation"] = round15(r.spectral_trace_deviation);
  j["spectral_trace_square_deviation"] = round15(r.spectral_trace_square_deviation);
  ordered_json lines = ordered_json::array();
  for (const auto& l : r.line_residuals) {
    ordered_json e;
    e["u"] = l.u;
    e["v"] = l.v;
    e["residual"] = round15(l.residual);
    lines.push_back(std::move(e));
  }
  j["line_residuals"] = std::move(lines);
  return j;
}

ordered_json spectrum_json(const Spectrum& spectrum, const FiniteGroup& g, bool with_eigenvectors,
                           const VerificationReport* verification, double cluster_radius) {
  (void)g;
  ordered_json j;
  j["n"] = spectrum.dimension;
  j["method"] = to_string(spectrum.method);
  j["status"] = spectrum.hypotheses_verified ? "hypotheses-verified" : "hypotheses-overridden";
  ordered_json lines = ordered_json::array();
  for (const auto& line : spectrum.lines) {
    ordered_json e;
    e["u"] = line.u;
    e["v"] = line.v;
    e["eigenvalue"] = complex_json(line.eigenvalue);
    e["multiplicity"] = line.multiplicity;
    if (!line.lambda_h.empty()) {
      ordered_json lh = ordered_json::array(), sk = ordered_json::array();
      for (const cd& x : line.lambda_h) lh.push_back(complex_json(x));
      for (const cd& x : line.sigma_k) sk.push_back(complex_json(x));
      e["lambda_h"] = std::move(lh);
      e["sigma_k"] = std::move(sk);
    }
    if (with_eigenvectors && !line.eigenvectors.empty()) {
      ordered_json vecs = ordered_json::array();
      for (const auto& x : line.eigenvectors) {
        ordered_json vec = ordered_json::array();
        for (Eigen::Index t = 0; t < x.size(); ++t) vec.push_back(complex_json(x(t)));
        vecs.push_back(std::move(vec));
      }
      e["eigenvectors"] = std::move(vecs);
    }
    lines.push_back(std::move(e));
  }
  j["lines"] = std::move(lines);
  ordered_json ms = ordered_json::array();
  for (const auto& entry : merged_multiset(spectrum, cluster_radius)) {
    const auto value = complex_json(entry.value);
    ms.push_back(ordered_json::array({value[0], value[1], entry.count}));
  }
  j["multiset"] = std::move(ms);
  if (verification) j["verification"] = verification_json(*verification);
  return j;
}

namespace {

ordered_json element_json(const FiniteGroup& g, Elem x) {
  ordered_json j;
  j["encoding"] = g.encode(x);
  j["name"] = g.format(x);
  return j;
}

}  // namespace

ordered_json hypothesis_json(const HypothesisReport& r, const FiniteGroup& g) {
  ordered_json j;
  j["passed"] = r.passed();
  j["condition_a"] = r.condition_a;
  j["condition_b"] = r.condition_b;
  if (r.witness_a) {
    const auto& w = *r.witness_a;
    ordered_json e;
    e["h"] = element_json(g, w.h);
    e["g"] = element_json(g, w.g);
    e["k"] = element_json(g, w.k);
    e["h_g_k_g_inverse"] = element_json(g, g.multiply(w.h, g.conjugate(w.g, w.k)));
    e["h_k"] = element_json(g, g.multiply(w.h, w.k));
    e["lhs"] = complex_json(w.lhs);
    e["rhs"] = complex_json(w.rhs);
    j["witness_a"] = std::move(e);
  }
  if (r.witness_b) {
    const auto& w = *r.witness_b;
    ordered_json e;
    e["h_prime"] = element_json(g, w.h_prime);
    e["h"] = element_json(g, w.h);
    e["k"] = element_json(g, w.k);
    e["lhs"] = complex_json(w.lhs);
    e["rhs"] = complex_json(w.rhs);
    j["witness_b"] = std::move(e);
  }
  return j;
}

ordered_json connection_json(const ConnectionSet& c, const FiniteGroup& g) {
  ordered_json j;
  j["size"] = c.elements.size();
  j["inverse_closed"] = c.inverse_closed;
  j["contains_identity"] = c.contains_identity;
  j["generates"] = c.generates;
  j["closure_size"] = c.closure_size;
  j["conjugation_closed"] = c.conjugation_closed;
  if (c.inverse_witness) j["inverse_witness"] = element_json(g, *c.inverse_witness);
  if (!c.conjugation_escapes.empty()) {
    ordered_json esc = ordered_json::array();
    for (const auto& e : c.conjugation_escapes) {
      ordered_json x;
      x["conjugator"] = element_json(g, e.conjugator);
      x["element"] = element_json(g, e.element);
      x["image"] = element_json(g, e.image);
      esc.push_back(std::move(x));
    }
    j["conjugation_escapes"] = std::move(esc);
  }
  return j;
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream os;
  os << "u,v,re,im,multiplicity\n";
  char buf[128];
  for (const auto& line : spectrum.lines) {
    const auto value = complex_json(line.eigenvalue);
    std::snprintf(buf, sizeof buf, "%d,%d,%.15g,%.15g,%d\n", line.u, line.v, value[0].get<double>(),
                  value[1].get<double>(), line.multiplicity);
    os << buf;
  }
  return os.str();
}

ordered_json family_config(int m, int l, int r) {
  const auto family = family_nonnormal(m, l, r);
  ordered_json j;
  j["group"] = {{"type", "metacyclic"}, {"m", m}, {"l", l}, {"r", r}};
  j["connection"] = {{"mode", "layers"}, {"layers", family.layers}};
  j["options"] = {{"verify", true}};
  return j;
}

}  // namespace cayspec
