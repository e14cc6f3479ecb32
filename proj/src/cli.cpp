#include "cayspec/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "cayspec/config.hpp"
#include "cayspec/error.hpp"

namespace cayspec {

namespace {

struct RunOptions {
  std::string config;
  std::string method;
  bool verify = false;
  std::string format;
  bool eigenvectors = false;
  bool no_eigenvectors = false;
  double tolerance = 0.0;
  bool override_hypotheses = false;
  std::string out;
  std::string edges;
};

/// Applies command-line flags on top of the options block of the config.
void merge_options(JobOptions& opts, const RunOptions& ro, const CLI::App& sub) {
  auto given = [&](const std::string& name) {
    const CLI::Option* o = sub.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--method")) opts.method = ro.method;
  if (given("--verify")) opts.verify = true;
  if (given("--format")) opts.format = ro.format;
  if (given("--eigenvectors")) opts.eigenvectors = true;
  if (given("--no-eigenvectors")) opts.eigenvectors = false;
  if (given("--tolerance")) {
    if (!(ro.tolerance > 0.0)) throw ConfigError("--tolerance: must be positive");
    opts.tolerance = ro.tolerance;
  }
  if (given("--override-hypotheses")) opts.override_hypotheses = true;
}

const ColorFunction& require_alpha(const JobConfig& cfg) {
  if (!cfg.alpha) throw ConfigError("connection: missing");
  return *cfg.alpha;
}

std::optional<IrrepSet> available_irreps(const JobConfig& cfg) {
  if (cfg.irreps) return cfg.irreps;
  return builtin_irreps(cfg.group);
}

/// Layers of a 0/1 color function on a metacyclic group.
std::vector<std::vector<int>> layers_of(const ColorFunction& alpha) {
  const FiniteGroup& g = alpha.group();
  std::vector<std::vector<int>> layers(static_cast<std::size_t>(g.h_order()));
  for (Elem x = 0; x < g.order(); ++x) {
    const cd v = alpha(x);
    if (v == cd{}) continue;
    if (v != cd{1.0, 0.0}) throw ConfigError("method metacyclic: connection must be an unweighted set");
    layers[static_cast<std::size_t>(g.h_part(x))].push_back(g.k_part(x));
  }
  return layers;
}

SpectrumMethod parse_method(const std::string& s) {
  if (s == "normal") return SpectrumMethod::normal;
  if (s == "split") return SpectrumMethod::split;
  if (s == "metacyclic") return SpectrumMethod::metacyclic;
  if (s == "blocks") return SpectrumMethod::blocks;
  throw ConfigError("method: unknown method '" + s + "'");
}

SpectrumMethod choose_method(const JobConfig& cfg) {
  if (cfg.options.method != "auto") return parse_method(cfg.options.method);
  if (cfg.mode == ConnectionMode::layers) return SpectrumMethod::metacyclic;
  const ColorFunction& alpha = require_alpha(cfg);
  const FiniteGroup& g = cfg.group;
  const bool split = g.has_split_structure();
  std::optional<HypothesisReport> report;
  if (split) report = check_split_hypotheses(*cfg.split, alpha);
  const bool nonabelian_split = g.kind() == GroupKind::metacyclic || g.kind() == GroupKind::semidirect;
  if (split && nonabelian_split && report->passed()) return SpectrumMethod::split;
  if (alpha.is_class_function() && available_irreps(cfg)) return SpectrumMethod::normal;
  if (split) {
    if (report->passed()) return SpectrumMethod::split;
    if (!cfg.options.override_hypotheses) throw HypothesesViolated(*report);
    return SpectrumMethod::split;
  }
  if (!alpha.is_class_function()) {
    throw NotClassFunction("alpha is not a class function and the group has no split structure");
  }
  throw ConfigError("irreps: no irreducible representations available for a " + to_string(g.kind()) + " group");
}

Spectrum compute_spectrum(const JobConfig& cfg, SpectrumMethod method, bool eigenvectors) {
  SpectrumOptions so;
  so.eigenvectors = eigenvectors;
  so.override_hypotheses = cfg.options.override_hypotheses;
  const FiniteGroup& g = cfg.group;
  switch (method) {
    case SpectrumMethod::metacyclic: {
      if (g.kind() != GroupKind::metacyclic) throw ConfigError("method metacyclic: needs a metacyclic group");
      const auto p = g.parameters();
      const auto layers = cfg.mode == ConnectionMode::layers ? cfg.layers : layers_of(require_alpha(cfg));
      return spectrum_metacyclic(p.at(0), p.at(1), p.at(2), layers, so);
    }
    case SpectrumMethod::split:
      if (!g.has_split_structure()) throw ConfigError("method split: needs a split group");
      return spectrum_split(require_alpha(cfg), so);
    case SpectrumMethod::normal:
    case SpectrumMethod::blocks: {
      const auto irreps = available_irreps(cfg);
      if (!irreps) throw ConfigError("irreps: no irreducible representations available for this group");
      return method == SpectrumMethod::normal ? spectrum_normal(require_alpha(cfg), *irreps, so)
                                              : spectrum_blocks(require_alpha(cfg), *irreps, so);
    }
  }
  throw ConfigError("method: unsupported");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open for writing");
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void export_graph(const JobConfig& cfg, const std::string& path, std::ostream& out) {
  std::ostringstream os;
  write_edge_list(os, adjacency_matrix(require_alpha(cfg)), cfg.group);
  emit(os.str(), path, out);
}

ordered_json describe_json(const JobConfig& cfg) {
  const FiniteGroup& g = cfg.group;
  ordered_json j;
  j["kind"] = to_string(g.kind());
  j["order"] = g.order();
  j["parameters"] = g.parameters();
  ordered_json gens = ordered_json::array();
  for (Elem x : g.generators()) gens.push_back(g.format(x));
  j["generators"] = std::move(gens);
  if (cfg.split) {
    j["split"] = {{"m", cfg.split->k_elements.size()}, {"l", cfg.split->h_elements.size()}};
  }
  ordered_json classes = ordered_json::array();
  for (const auto& c : conjugacy_classes(g)) {
    ordered_json e;
    e["representative"] = g.format(c.representative);
    e["size"] = c.size();
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  if (const auto irreps = available_irreps(cfg)) {
    ordered_json degrees = ordered_json::array();
    for (const auto& rho : *irreps) degrees.push_back(rho.degree());
    j["irrep_degrees"] = std::move(degrees);
  }
  if (cfg.alpha) {
    const ColorFunction& alpha = *cfg.alpha;
    ordered_json c = connection_json(classify_connection_set(g, alpha.support()), g);
    c["class_function"] = alpha.is_class_function();
    c["real"] = alpha.is_real();
    c["symmetric"] = alpha.is_symmetric();
    j["connection"] = std::move(c);
    if (cfg.split) j["hypotheses"] = hypothesis_json(check_split_hypotheses(*cfg.split, alpha), g);
  }
  return j;
}

int spectrum_command(const JobConfig& cfg, const std::string& out_path, const std::string& edges, bool always_verify,
                     std::ostream& out, std::ostream& err) {
  const auto& opts = cfg.options;
  const bool verify = always_verify || opts.verify;
  const SpectrumMethod method = choose_method(cfg);
  const Spectrum spectrum = compute_spectrum(cfg, method, opts.eigenvectors || verify);
  if (!spectrum.hypotheses_verified) err << "warning: hypotheses fail; spectrum is hypotheses-overridden\n";

  std::optional<VerificationReport> report;
  if (verify) {
    const ColorFunction& alpha = require_alpha(cfg);
    AdjacencyMatrix adj = adjacency_matrix(alpha);
    if (!edges.empty()) {
      std::ifstream in(edges);
      if (!in) throw ConfigError(edges + ": cannot open");
      adj.matrix = read_edge_list(in, cfg.group.order());
    }
    report = certify(adj, alpha, spectrum, opts.tolerance);
  }
  if (opts.export_graph) export_graph(cfg, *opts.export_graph, out);

  if (opts.format == "csv") {
    emit(spectrum_csv(spectrum), out_path, out);
  } else {
    emit(dump(spectrum_json(spectrum, cfg.group, opts.eigenvectors, report ? &*report : nullptr, opts.tolerance)),
         out_path, out);
  }
  if (report && !report->passed) {
    err << "verification failed: max residual " << report->max_residual << " (limit " << report->residual_limit
        << "), gram deviation " << report->gram_deviation << "\n";
    return exit_verification_failed;
  }
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of Cayley color graphs on split extensions"};
  app.require_subcommand(1);
  RunOptions ro;
  int fm = 0, fl = 0, fr = 0;

  auto add_config = [&](CLI::App* sub) { sub->add_option("--config,-c", ro.config, "job config (JSON)")->required(); };
  auto add_compute = [&](CLI::App* sub) {
    sub->add_option("--method", ro.method, "auto, normal, split, metacyclic or blocks")
        ->check(CLI::IsMember({"auto", "normal", "split", "metacyclic", "blocks"}));
    sub->add_option("--format", ro.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--eigenvectors", ro.eigenvectors, "include eigenvectors in the output");
    sub->add_flag("--no-eigenvectors", ro.no_eigenvectors, "omit eigenvectors from the output");
    sub->add_option("--tolerance", ro.tolerance, "verification tolerance");
    sub->add_flag("--override-hypotheses", ro.override_hypotheses, "compute even when hypotheses fail");
    sub->add_option("--out,-o", ro.out, "output file (default stdout)");
  };

  auto* describe = app.add_subcommand("describe", "group, classes and connection-set properties");
  add_config(describe);
  describe->add_option("--out,-o", ro.out, "output file");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum");
  add_config(spectrum);
  add_compute(spectrum);
  spectrum->add_flag("--verify", ro.verify, "certify against the adjacency matrix");

  auto* verify = app.add_subcommand("verify", "spectrum certified against the adjacency matrix");
  add_config(verify);
  add_compute(verify);
  verify->add_option("--edges", ro.edges, "certify against this edge list instead");

  auto* hyp = app.add_subcommand("check-hypotheses", "check the split-extension hypotheses");
  add_config(hyp);
  hyp->add_option("--out,-o", ro.out, "output file");

  auto* family = app.add_subcommand("family", "emit a config for the non-normal metacyclic family");
  family->add_option("--m", fm, "order of K")->required();
  family->add_option("--l", fl, "order of H")->required();
  family->add_option("--r", fr, "action exponent")->required();
  family->add_option("--out,-o", ro.out, "output file");

  auto* graph = app.add_subcommand("export-graph", "write the weighted edge list");
  add_config(graph);
  graph->add_option("--out,-o", ro.out, "output file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (family->parsed()) {
      emit(dump(family_config(fm, fl, fr)), ro.out, out);
      return exit_ok;
    }
    JobConfig cfg = load_job_config(ro.config);
    if (describe->parsed()) {
      emit(dump(describe_json(cfg)), ro.out, out);
      return exit_ok;
    }
    if (graph->parsed()) {
      export_graph(cfg, ro.out, out);
      return exit_ok;
    }
    if (hyp->parsed()) {
      if (!cfg.split) throw ConfigError("group: no split structure (add group.split for permutation groups)");
      const auto report = check_split_hypotheses(*cfg.split, require_alpha(cfg));
      emit(dump(hypothesis_json(report, cfg.group)), ro.out, out);
      return report.passed() ? exit_ok : exit_hypothesis_violated;
    }
    CLI::App* sub = spectrum->parsed() ? spectrum : verify;
    merge_options(cfg.options, ro, *sub);
    return spectrum_command(cfg, ro.out, ro.edges, verify->parsed(), out, err);
  } catch (const HypothesesViolated& e) {
    err << "error: " << e.what() << "\n";
    return exit_hypothesis_violated;
  } catch (const NotClassFunction& e) {
    err << "error: " << e.what() << "\n";
    return exit_hypothesis_violated;
  } catch (const LayerNotInvariant& e) {
    err << "error: " << e.what() << "\n";
    return exit_hypothesis_violated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

}  // namespace cayspec
