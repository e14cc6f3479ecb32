#pragma once

// Job configuration files and result serialization.
//
// Config schema:
//   {"group": {"type": "cyclic", "n": 6}
//           | {"type": "abelian", "orders": [2, 3]}
//           | {"type": "dihedral", "n": 3}
//           | {"type": "metacyclic", "m": 7, "l": 3, "r": 2}
//           | {"type": "semidirect", "m": 7, "h": <cyclic|dihedral|abelian group>, "action": [1, 6]}
//           | {"type": "permutation", "degree": 4, "generators": [[1,0,2,3], ...],
//              "split": {"k_generators": [...], "h_generators": [...]}},
//    "connection": {"mode": "set", "elements": [[a, b], ...]}
//                | {"mode": "layers", "layers": [[1, 2], [0]]}
//                | {"mode": "color", "entries": [{"element": [a, b], "value": [re, im]}, ...]},
//    "irreps": [{"label": "...", "degree": d, "matrices": [[[re, im] x d^2 row-major] per element]}],
//    "options": {"eigenvectors": false, "verify": false, "tolerance": 1e-9, "format": "json",
//                "method": "auto", "override_hypotheses": false, "export_graph": "path"}}
// Elements are given by their encodings (see FiniteGroup::encode).

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayspec/cayley.hpp"
#include "cayspec/group.hpp"
#include "cayspec/repr.hpp"
#include "cayspec/spectra.hpp"
#include "cayspec/verify.hpp"

namespace cayspec {

using ordered_json = nlohmann::ordered_json;

enum class ConnectionMode { set, layers, color };

struct JobOptions {
  bool eigenvectors = false;
  bool verify = false;
  double tolerance = 1e-9;
  std::string format = "json";
  std::string method = "auto";
  bool override_hypotheses = false;
  std::optional<std::string> export_graph;
};

struct JobConfig {
  FiniteGroup group;
  std::optional<SplitExtension> split;
  std::optional<ConnectionMode> mode;
  std::vector<std::vector<int>> layers;
  std::optional<ColorFunction> alpha;
  std::optional<IrrepSet> irreps;  ///< user-supplied table for G
  JobOptions options;
};

/// Throws ConfigError with the offending field path.
FiniteGroup parse_group(const nlohmann::json& j, const std::string& path = "group");
JobConfig parse_job_config(const nlohmann::json& j);
/// Reads and parses a config file; JSON syntax errors carry line and column.
JobConfig load_job_config(const std::string& path);

/// Decimal with 15 significant digits, then the shortest double reproducing it.
double round15(double x);
/// [re, im], each rounded by round15; components below 1e-12 in magnitude become 0.
ordered_json complex_json(cd z);

ordered_json spectrum_json(const Spectrum& spectrum, const FiniteGroup& g, bool with_eigenvectors,
                           const VerificationReport* verification, double cluster_radius);
ordered_json verification_json(const VerificationReport& report);
ordered_json hypothesis_json(const HypothesisReport& report, const FiniteGroup& g);
ordered_json connection_json(const ConnectionSet& c, const FiniteGroup& g);
std::string spectrum_csv(const Spectrum& spectrum);

/// Config for the non-normal family (C_m \ {e}) u {h} u {h^{-1}} on metacyclic(m, l, r).
ordered_json family_config(int m, int l, int r);

}  // namespace cayspec
