#ifndef SPECLAB_REPORT_HPP
#define SPECLAB_REPORT_HPP

// Experiment configuration, certification reports, and their serialization.
//
// Reports are reproducible: identical config + seed produce byte-identical
// JSON after stripping metadata.volatile (timestamp and wall-clock runtimes,
// which cannot be deterministic).  All hashing is FNV-1a over the canonical
// dump.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "speclab/weights.hpp"
#include "speclab/hardy.hpp"

namespace speclab {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// CSV ingestion

// Two-column CSV "j,rho" (header line optional); indices must be contiguous.
inline std::pair<std::int64_t, std::vector<double>> load_weight_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("weights.csv", "cannot open '" + path + "'");
  std::vector<std::pair<std::int64_t, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::int64_t j;
    double v;
    if (!(ls >> j >> v)) {
      if (rows.empty()) continue;  // tolerate one header line
      throw ConfigError("weights.csv", "malformed row '" + line + "'");
    }
    rows.emplace_back(j, v);
  }
  if (rows.empty()) throw ConfigError("weights.csv", "no data rows");
  std::sort(rows.begin(), rows.end());
  std::vector<double> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].first != rows[i - 1].first + 1) {
      throw ConfigError("weights.csv", "indices must be contiguous");
    }
    values.push_back(rows[i].second);
  }
  return {rows.front().first, values};
}

// Two-column CSV "x,q(x)" on a uniform grid.
inline std::pair<RealGrid, std::vector<double>> load_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("line.potential_csv", "cannot open '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, v;
    if (!(ls >> x >> v)) {
      if (rows.empty()) continue;
      throw ConfigError("line.potential_csv", "malformed row '" + line + "'");
    }
    rows.emplace_back(x, v);
  }
  if (rows.size() < 2) throw ConfigError("line.potential_csv", "need at least two samples");
  std::sort(rows.begin(), rows.end());
  const double h = rows[1].first - rows[0].first;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = rows[i].first - rows[i - 1].first;
    if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw ConfigError("line.potential_csv", "grid must be uniform");
    }
  }
  RealGrid grid{rows.front().first, h, rows.size()};
  std::vector<double> values;
  for (const auto& [x, v] : rows) values.push_back(v);
  return {grid, values};
}

// ---------------------------------------------------------------------------
// Weight-family configuration

inline WeightSequence weight_family_from_json(const json& w, const std::string& prefix) {
  if (!w.is_object()) throw ConfigError(prefix, "must be an object");
  if (!w.contains("family")) throw ConfigError(prefix + ".family", "missing");
  const std::string fam = w.at("family").get<std::string>();
  try {
    if (fam == "constant") {
      return WeightSequence::constant(w.value("value", 1.0));
    }
    if (fam == "theorem1") {
      return theorem1_weights();
    }
    if (fam == "harmonic") {
      return WeightSequence::harmonic(w.value("offset", std::int64_t{0}));
    }
    if (fam == "pi_dominated") {
      if (!w.contains("pi")) throw ConfigError(prefix + ".pi", "missing");
      const json& p = w.at("pi");
      const std::string kind = p.value("kind", "harmonic");
      if (kind == "harmonic") return pi_dominated_weights(PiTable::harmonic());
      if (kind == "constant") return pi_dominated_weights(PiTable::constant(p.value("value", 2.0)));
      if (kind == "geometric")
        return pi_dominated_weights(PiTable::geometric(p.value("ratio", 0.5)));
      throw ConfigError(prefix + ".pi.kind", "unknown kind '" + kind + "'");
    }
    if (fam == "user_table") {
      if (w.contains("csv")) {
        auto [lo, values] = load_weight_csv(w.at("csv").get<std::string>());
        return WeightSequence::user_table(lo, std::move(values), w.value("fill", 1.0));
      }
      if (!w.contains("values")) throw ConfigError(prefix + ".values", "missing");
      return WeightSequence::user_table(w.value("lo", std::int64_t{0}),
                                        w.at("values").get<std::vector<double>>(),
                                        w.value("fill", 1.0));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(prefix, e.what());
  }
  throw ConfigError(prefix + ".family", "unknown family '" + fam + "'");
}

// ---------------------------------------------------------------------------
// Experiment configuration

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"theorem1", "theorem2",     "theorem3",
                                             "hardy-props", "oracle-suite", "all"};
  return s;
}

struct ExperimentConfig {
  std::string suite = "all";
  std::uint64_t seed = 20250808;
  int workers = 2;
  std::string out_dir = "speclab-out";
  json raw;  // full parameter set, defaults filled in

  double num(const std::string& section, const std::string& key) const {
    return raw.at(section).at(key).get<double>();
  }
  std::int64_t integer(const std::string& section, const std::string& key) const {
    return raw.at(section).at(key).get<std::int64_t>();
  }
  std::vector<double> numbers(const std::string& section, const std::string& key) const {
    return raw.at(section).at(key).get<std::vector<double>>();
  }
  // Hash of the experiment-defining parameters.  The output path and worker
  // count steer execution, not results, and are excluded.
  std::string config_hash() const {
    json c = raw;
    c.erase("out_dir");
    c.erase("workers");
    return fnv1a_hex(c.dump());
  }
};

// Reference configuration.  Every default is documented inline through the
// "_doc" entries; consumers ignore keys starting with '_'.
inline json default_config_json() {
  json c;
  c["_doc"] = "certification-suite configuration; all tolerances are the frozen acceptance thresholds";
  c["suite"] = "all";
  c["seed"] = 20250808;
  c["workers"] = 2;
  c["out_dir"] = "speclab-out";
  c["weights"] = {{"_doc",
                   "exploratory weight family used by the family-inspection tables; claim suites "
                   "pin their own families. families: constant{value}, theorem1, harmonic{offset}, "
                   "pi_dominated{pi:{kind:harmonic|constant|geometric,...}}, "
                   "user_table{lo,values,fill} or user_table{csv,fill}"},
                  {"family", "theorem1"}};
  c["resolvent"] = {{"_doc",
                     "closed form vs periodized dense solve: lambda_count seeded points with "
                     "gap >= min_gap, window N, interior margin, pass if max relative coordinate "
                     "error <= tol within budget_s seconds"},
                    {"N", 256},
                    {"margin", 64},
                    {"lambda_count", 20},
                    {"min_gap", 0.1},
                    {"tol", 1e-8},
                    {"budget_s", 60.0}};
  c["similarity"] = {{"_doc", "conjugation onto the unweighted shift over |j| <= window"},
                     {"window", 100},
                     {"tol", 1e-12}};
  c["weak"] = {{"_doc",
                "sup of H2 norms of both matrix-element families over |j| <= window; bound is "
                "||W|| ||W^-1|| for the interleaved family"},
               {"window", 200},
               {"bound", 2.0},
               {"slack", 1e-6}};
  c["strong"] = {{"_doc",
                  "defect-weighted series partial sums S_{2J}; lower bound lower_coeff*ln(J) and "
                  "slope vs ln(J) in slope_center +- slope_band (center frozen from the oracle "
                  "partial-sum run: even and odd interleaved terms both contribute ~2/j)"},
                 {"J_values", {1000, 10000, 100000}},
                 {"lower_coeff", 1.5},
                 {"slope_center", 4.0},
                 {"slope_band", 0.1}};
  c["schatten"] = {{"_doc",
                    "defect spectrum over |j| <= window: p=1.5 certified convergence, p=1 "
                    "log-divergence slope (center frozen from the oracle run), and the "
                    "pi-domination scan for pi_n = 1/(n+1)"},
                   {"window", 100000},
                   {"p1_slope_center", 4.0},
                   {"p1_slope_band", 0.2}};
  c["perturbation"] = {{"_doc",
                        "block perturbation singular values: dense SVD at window N vs the "
                        "analytic multiset, and the floor inequality mu_n <= rho_{floor(n/2)}"},
                       {"N", 128},
                       {"svd_tol", 1e-10}};
  c["duality"] = {{"_doc",
                   "chained-element H2 series: exact single-term value at probe_j against the "
                   "closed-form harmonic sum, and the c*(ln|j|)^2 growth fit over j_values"},
                  {"probe_j", -12},
                  {"exact_tol", 1e-10},
                  {"j_values", {-100, -1000, -10000}},
                  {"min_r2", 0.99}};
  c["jump"] = {{"_doc",
                "boundary-jump probe: angles tested, detection at jump >= ratio * extrapolation "
                "error, pass when detected on >= min_detected angles"},
               {"angles", 32},
               {"min_detected", 16},
               {"ratio", 10.0}};
  c["line"] = {{"_doc",
                "line model: growth-functional slope vs ln X within slope_rel_tol of 4/pi, "
                "translation identity within parseval_tol for the box density, cell-wise "
                "summation certificate at delta, and the weight envelope scan"},
               {"X_values", {100.0, 1000.0, 10000.0}},
               {"slope_rel_tol", 0.05},
               {"parseval_tol", 1e-6},
               {"T_max", 200.0},
               {"delta", 1.5},
               {"bs_window", 1000},
               {"grid_spacing", 0.015625},
               {"grid_halfwidth", 256.0},
               {"weight_scan_halfwidth", 1000.0},
               {"weight_tol", 1e-3}};
  c["dissipative"] = {{"_doc",
                       "random dissipative identity trials at lambda = i and the strong "
                       "convergence probe slope on the tau schedule"},
                      {"dim", 8},
                      {"trials", 50},
                      {"residual_tol", 1e-10},
                      {"taus", {100.0, 1000.0, 10000.0}},
                      {"slope_band", 0.1}};
  c["hardy"] = {{"_doc",
                 "closed-form H2 cross-checks (coefficient vs circle quadrature), integral-mean "
                 "monotonicity, and the boundary-jump density recovery"},
                {"radial_levels", 32},
                {"crosscheck_tol", 1e-8},
                {"plemelj_tol", 1e-4}};
  c["lrg"] = {{"_doc",
               "resolvent-growth table gap * ||(B-z)^{-1}|| on the periodized window 2^window_exp "
               "+1, power iteration; evidence claim requires monotone growth"},
              {"window_exp", 13},
              {"gaps", {0.1, 0.03, 0.01, 0.003}}};
  return c;
}

namespace detail {

inline void strip_docs(json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (it.key().rfind("_", 0) == 0) {
        it = j.erase(it);
      } else {
        strip_docs(it.value());
        ++it;
      }
    }
  }
}

inline void merge_defaults(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "must be an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.key().rfind("_", 0) == 0) continue;
    if (!base.contains(it.key())) throw ConfigError(path, "unknown key");
    // "weights" is replaced wholesale: its keys depend on the family chosen
    if (base[it.key()].is_object() && it->is_object() && it.key() != "weights") {
      merge_defaults(base[it.key()], *it, path);
    } else {
      base[it.key()] = *it;
    }
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& user) {
  json base = default_config_json();
  detail::strip_docs(base);
  json user_clean = user;
  detail::strip_docs(user_clean);
  detail::merge_defaults(base, user_clean, "");
  ExperimentConfig cfg;
  cfg.raw = base;
  cfg.suite = base.at("suite").get<std::string>();
  bool suite_ok = false;
  for (const auto& s : known_suites()) suite_ok = suite_ok || s == cfg.suite;
  if (!suite_ok) throw ConfigError("suite", "unknown suite '" + cfg.suite + "'");
  if (!base.at("seed").is_number_unsigned() && !base.at("seed").is_number_integer()) {
    throw ConfigError("seed", "must be an integer");
  }
  cfg.seed = base.at("seed").get<std::uint64_t>();
  cfg.workers = base.at("workers").get<int>();
  if (cfg.workers < 1 || cfg.workers > 256) throw ConfigError("workers", "must be in [1, 256]");
  cfg.out_dir = base.at("out_dir").get<std::string>();
  if (cfg.out_dir.empty()) throw ConfigError("out_dir", "must be nonempty");
  // validate every tolerance is positive
  for (const auto& [section, payload] : base.items()) {
    if (!payload.is_object()) continue;
    for (const auto& [key, value] : payload.items()) {
      if (value.is_number() &&
          (key.find("tol") != std::string::npos || key.find("band") != std::string::npos ||
           key.find("slack") != std::string::npos)) {
        if (!(value.get<double>() > 0)) throw ConfigError(section + "." + key, "must be positive");
      }
    }
  }
  // the weight family must construct
  (void)weight_family_from_json(base.at("weights"), "weights");
  return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// Report structure

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ClaimResult {
  std::string id;
  std::string suite;
  std::string verdict;  // pass | fail | evidence-with-fit
  json inputs = json::object();
  json witness = json::object();
  double runtime_ms = 0.0;
  std::map<std::string, Table> tables;

  bool ok() const { return verdict != "fail"; }
};

struct CertificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string timestamp;
  std::vector<ClaimResult> claims;
  std::map<std::string, Table> tables;

  bool all_ok() const {
    for (const auto& c : claims) {
      if (!c.ok()) return false;
    }
    return true;
  }
};

inline json table_to_json(const Table& t) {
  return json{{"columns", t.columns}, {"rows", t.rows}};
}

inline json report_to_json(const CertificationReport& r) {
  json j;
  j["metadata"]["tool"] = "speclab";
  j["metadata"]["version"] = "0.1.0";
  j["metadata"]["suite"] = r.suite;
  j["metadata"]["seed"] = r.seed;
  j["metadata"]["config_hash"] = r.config_hash;
  j["metadata"]["notes"] = json::array(
      {"interleaved weight families use a_j = 1 - 1/(j+1), so every weight is strictly positive "
       "and adjacent pair products rho_{2j} rho_{2j+1} equal 1 exactly"});
  json runtimes = json::object();
  for (const auto& c : r.claims) runtimes[c.id] = c.runtime_ms;
  j["metadata"]["volatile"] = {{"timestamp", r.timestamp}, {"runtime_ms", runtimes}};
  j["claims"] = json::array();
  for (const auto& c : r.claims) {
    j["claims"].push_back({{"id", c.id},
                           {"suite", c.suite},
                           {"verdict", c.verdict},
                           {"inputs", c.inputs},
                           {"witness", c.witness}});
  }
  j["tables"] = json::object();
  for (const auto& [name, t] : r.tables) j["tables"][name] = table_to_json(t);
  return j;
}

// Deterministic content: the full report minus the volatile subtree.
inline json canonical_report(json report) {
  if (report.contains("metadata") && report["metadata"].contains("volatile")) {
    report["metadata"].erase("volatile");
  }
  return report;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << "\n";
  char buf[40];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

// Writes report.json plus one CSV per table into out_dir (created if needed);
// returns the list of files written.
inline std::vector<std::string> emit_report(const CertificationReport& report,
                                            const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");
  std::vector<std::string> written;
  const std::string report_path = out_dir + "/report.json";
  write_text_file(report_path, report_to_json(report).dump(2) + "\n");
  written.push_back(report_path);
  for (const auto& [name, t] : report.tables) {
    const std::string path = out_dir + "/" + name + ".csv";
    write_text_file(path, table_to_csv(t));
    written.push_back(path);
  }
  return written;
}

}  // namespace speclab

#endif  // SPECLAB_REPORT_HPP
