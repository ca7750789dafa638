#pragma once

// Photon-number sweeps, table and figure data, and their CSV/JSON serialization.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "parity/detection.hpp"
#include "parity/states.hpp"

namespace parity {

// ---------------------------------------------------------------------------------------------
// State registry

enum class ParityClass { Any, Even, Odd };

struct StateFamily {
  const char* label;
  ParityClass parity_class;
};

inline const std::vector<StateFamily>& state_families() {
  static const std::vector<StateFamily> families = {
      {labels::kCoherent, ParityClass::Any},     {labels::kSingleFock, ParityClass::Any},
      {labels::kDualFock, ParityClass::Even},    {labels::kNoon, ParityClass::Any},
      {labels::kNoonInternal, ParityClass::Any}, {labels::kYurke, ParityClass::Even},
      {labels::kYuen, ParityClass::Odd},         {labels::kModifiedYuen, ParityClass::Odd},
      {labels::kPezzeSmerzi, ParityClass::Even}, {labels::kBerryWiseman, ParityClass::Any},
      {labels::kCombined, ParityClass::Even},
  };
  return families;
}

inline const StateFamily& find_family(const std::string& label) {
  for (const auto& f : state_families()) {
    if (label == f.label) return f;
  }
  throw DomainError("unknown state label '" + label + "'");
}

inline bool accepts(const StateFamily& family, int n) {
  if (n < 1) return false;
  switch (family.parity_class) {
    case ParityClass::Even: return n % 2 == 0;
    case ParityClass::Odd: return n % 2 == 1;
    case ParityClass::Any: return true;
  }
  return false;
}

/// Builds the member of a family with total photon number n (mean photon number for coherent).
inline TwoModeState make_state(const std::string& label, int n,
                               const std::optional<CombinedStateParams>& params = std::nullopt) {
  const StateFamily& family = find_family(label);
  if (!accepts(family, n)) {
    throw DomainError("state '" + label + "' is not defined for N = " + std::to_string(n));
  }
  if (label == labels::kCoherent) return coherent_input(n);
  if (label == labels::kSingleFock) return single_fock_input(n);
  if (label == labels::kDualFock) return dual_fock_input(n / 2);
  if (label == labels::kNoon) return noon_input(n);
  if (label == labels::kNoonInternal) return noon_internal(n);
  if (label == labels::kYurke) return yurke_input(n);
  if (label == labels::kYuen) return yuen_input(n, false);
  if (label == labels::kModifiedYuen) return yuen_input(n, true);
  if (label == labels::kPezzeSmerzi) return pezze_smerzi_input(n);
  if (label == labels::kBerryWiseman) return berry_wiseman_internal(n);
  return combined_input(n, params.value_or(CombinedStateParams{}));
}

// ---------------------------------------------------------------------------------------------
// Sweep configuration

enum class OutputFormat { Csv, Json };

inline constexpr double kDefaultFixedPhi = 1e-4;

struct SweepConfig {
  std::string state_label = labels::kNoon;
  int n_min = 1;
  int n_max = 20;
  std::optional<double> fixed_phi;  // empty: small-phase limit
  std::optional<CombinedStateParams> combined_params;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    find_family(state_label);
    if (n_min < 1 || n_max < n_min) {
      throw DomainError("need 1 <= n_min <= n_max, got " + std::to_string(n_min) + ".." + std::to_string(n_max));
    }
    const bool combined = state_label == labels::kCombined;
    if (combined != combined_params.has_value()) {
      throw DomainError("combined-state parameters are required for, and only for, state 'combined'");
    }
    if (combined_params) combined_params->validate();
    if (fixed_phi && !std::isfinite(*fixed_phi)) throw DomainError("phi must be finite");
  }
};

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw DomainError("unknown output format '" + s + "' (csv or json)");
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) throw DomainError("'" + key + "' is not a number: '" + value + "'");
  return v;
}

inline int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("'" + key + "' is not an integer: '" + value + "'");
  return static_cast<int>(v);
}

}  // namespace detail

/// Flat "key = value" text, one entry per line, '#' starts a comment. Keys mirror SweepConfig:
/// state_label, n_min, n_max, phi_mode (limit | fixed), phi, alpha_mag, beta_mag, theta,
/// output_path, format. Returns the raw entries; apply_config_entries() interprets them.
inline std::map<std::string, std::string> parse_config_text(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + " is not 'key = value'");
    }
    entries[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  return entries;
}

inline void apply_config_entries(const std::map<std::string, std::string>& entries, SweepConfig& config) {
  std::optional<std::string> phi_mode;
  std::optional<double> phi;
  std::optional<double> alpha, beta, theta;
  for (const auto& [key, value] : entries) {
    if (key == "state_label") config.state_label = value;
    else if (key == "n_min") config.n_min = detail::to_int(key, value);
    else if (key == "n_max") config.n_max = detail::to_int(key, value);
    else if (key == "phi_mode") phi_mode = value;
    else if (key == "phi") phi = detail::to_double(key, value);
    else if (key == "alpha_mag") alpha = detail::to_double(key, value);
    else if (key == "beta_mag") beta = detail::to_double(key, value);
    else if (key == "theta") theta = detail::to_double(key, value);
    else if (key == "output_path") config.output_path = value;
    else if (key == "format") config.format = parse_format(value);
    else throw DomainError("unknown config key '" + key + "'");
  }
  if (phi_mode) {
    if (*phi_mode == "limit") {
      if (phi) throw DomainError("'phi' given with phi_mode = limit");
      config.fixed_phi.reset();
    } else if (*phi_mode == "fixed") {
      config.fixed_phi = phi.value_or(kDefaultFixedPhi);
    } else {
      throw DomainError("phi_mode must be 'limit' or 'fixed', got '" + *phi_mode + "'");
    }
  } else if (phi) {
    config.fixed_phi = *phi;
  }
  if (alpha || beta || theta) {
    CombinedStateParams p = config.combined_params.value_or(CombinedStateParams{});
    if (alpha) p.alpha_mag = *alpha;
    if (beta) p.beta_mag = *beta;
    if (theta) p.theta = *theta;
    config.combined_params = p;
  }
}

inline SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  SweepConfig config;
  apply_config_entries(parse_config_text(in), config);
  return config;
}

// ---------------------------------------------------------------------------------------------
// Sweeps

namespace detail {

/// results[i] = f(i) for i < count, evaluated in batches of hardware_concurrency() threads.
template <typename F>
auto parallel_map(std::size_t count, F f) {
  using R = decltype(f(std::size_t{}));
  std::vector<R> results(count);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < count; start += workers) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < std::min(count, start + workers); ++i) {
      batch.push_back(std::async(std::launch::async, f, i));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  return results;
}

}  // namespace detail

struct SweepRecord {
  int n = 0;
  std::optional<double> phi;
  std::optional<double> expectation;
  std::optional<double> derivative;
  std::optional<double> variance;
  double delta_phi = 0.0;
  double shot_noise = 0.0;
  double heisenberg = 0.0;
  std::optional<double> bw_povm;

  bool operator==(const SweepRecord&) const = default;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<std::string> warnings;  // one per skipped N
};

inline SweepRecord evaluate_point(const std::string& label, int n, const std::optional<double>& fixed_phi,
                                  const std::optional<CombinedStateParams>& params) {
  const TwoModeState state = make_state(label, n, params);
  const BenchmarkLimits limits = benchmark_limits(n);
  SweepRecord r;
  r.n = n;
  r.shot_noise = limits.shot_noise;
  r.heisenberg = limits.heisenberg;
  r.bw_povm = limits.bw_povm;
  if (fixed_phi) {
    const DetectionResult d = phase_uncertainty(state, *fixed_phi);
    r.phi = d.phi;
    r.expectation = d.expectation;
    r.derivative = d.derivative;
    r.variance = d.variance;
    r.delta_phi = d.delta_phi;
  } else {
    r.delta_phi = phase_uncertainty_limit(state);
  }
  return r;
}

/// One record per N in [n_min, n_max] that belongs to the family's parity class, ordered by N.
/// Points are evaluated concurrently; the result does not depend on scheduling.
inline SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const StateFamily& family = find_family(config.state_label);
  SweepResult result;
  std::vector<int> ns;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    if (accepts(family, n)) {
      ns.push_back(n);
    } else {
      result.warnings.push_back("skipping N = " + std::to_string(n) + ": state '" + config.state_label +
                                "' is not defined for this photon number");
    }
  }
  result.records = detail::parallel_map(ns.size(), [&](std::size_t i) {
    return evaluate_point(config.state_label, ns[i], config.fixed_phi, config.combined_params);
  });
  return result;
}

// ---------------------------------------------------------------------------------------------
// Serialization

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

inline constexpr const char* kSweepHeader =
    "N,phi,expectation,derivative,variance,delta_phi,shot_noise,heisenberg,bw_povm";

inline void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << format_optional(r.phi) << ',' << format_optional(r.expectation) << ','
        << format_optional(r.derivative) << ',' << format_optional(r.variance) << ',' << format_number(r.delta_phi)
        << ',' << format_number(r.shot_noise) << ',' << format_number(r.heisenberg) << ','
        << format_optional(r.bw_povm) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace detail

inline std::vector<SweepRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) throw DomainError("missing or unexpected sweep CSV header");
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 9) throw DomainError("sweep CSV row has " + std::to_string(f.size()) + " fields");
    SweepRecord r;
    r.n = std::stoi(f[0]);
    r.phi = detail::parse_optional(f[1]);
    r.expectation = detail::parse_optional(f[2]);
    r.derivative = detail::parse_optional(f[3]);
    r.variance = detail::parse_optional(f[4]);
    r.delta_phi = std::strtod(f[5].c_str(), nullptr);
    r.shot_noise = std::strtod(f[6].c_str(), nullptr);
    r.heisenberg = std::strtod(f[7].c_str(), nullptr);
    r.bw_povm = detail::parse_optional(f[8]);
    records.push_back(r);
  }
  return records;
}

namespace detail {

// JSON has no infinity; it is written as the string "inf".
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

inline nlohmann::json json_optional(const std::optional<double>& v) {
  return v ? json_number(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"N", r.n},
                    {"phi", detail::json_optional(r.phi)},
                    {"expectation", detail::json_optional(r.expectation)},
                    {"derivative", detail::json_optional(r.derivative)},
                    {"variance", detail::json_optional(r.variance)},
                    {"delta_phi", detail::json_number(r.delta_phi)},
                    {"shot_noise", detail::json_number(r.shot_noise)},
                    {"heisenberg", detail::json_number(r.heisenberg)},
                    {"bw_povm", detail::json_optional(r.bw_povm)}});
  }
  return rows;
}

inline void write_records(const std::vector<SweepRecord>& records, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    write_csv(records, out);
  } else {
    out << to_json(records).dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------------------------
// Table of phase estimates

struct TableRow {
  int row = 0;
  std::string label;
  std::string fock_notation;
  int n = 0;
  double delta_phi = 0.0;
  std::optional<double> closed_form;
  std::optional<double> abs_difference;
  double shot_noise = 0.0;
};

/// Renders a state in two-mode Fock notation, e.g. "0.70710678|5,3> + 0.70710678|3,5>".
/// Inside-interferometer states carry primed labels. Long expansions keep the largest terms.
inline std::string fock_notation(const TwoModeState& state, std::size_t max_terms = 4) {
  auto terms = fock_terms(state, 1e-12);
  if (terms.size() > max_terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const FockTerm& x, const FockTerm& y) { return std::abs(x.amplitude) > std::abs(y.amplitude); });
  }
  const char* prime = state.frame() == Frame::InsideInterferometer ? "'" : "";
  std::ostringstream out;
  out.precision(8);
  for (std::size_t i = 0; i < terms.size() && i < max_terms; ++i) {
    const Complex a = terms[i].amplitude;
    if (i > 0) out << " + ";
    if (std::abs(a.imag()) < 1e-14) {
      out << a.real();
    } else {
      out << '(' << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)";
    }
    out << '|' << terms[i].n_a << ',' << terms[i].n_b << '>' << prime;
  }
  if (terms.size() > max_terms) out << " + ... (" << terms.size() << " terms)";
  return out.str();
}

/// The eight table rows at N = 8 (N = 9 for the odd-only modified Yuen state; mean photon
/// number 8 for the coherent state), each with the closed-form delta_phi where one exists.
inline std::vector<TableRow> reproduce_table() {
  struct RowDef {
    const char* label;
    int n;
    std::optional<double> closed;
  };
  const double n8 = 8.0;
  const std::vector<RowDef> defs = {
      {labels::kCoherent, 8, 1.0 / std::sqrt(n8)},
      {labels::kSingleFock, 8, 1.0 / std::sqrt(n8)},
      {labels::kDualFock, 8, std::sqrt(2.0) / std::sqrt(n8 * (n8 + 2.0))},
      {labels::kYurke, 8, 1.0 / std::sqrt(4.0 * 5.0)},
      {labels::kModifiedYuen, 9, std::nullopt},
      {labels::kPezzeSmerzi, 8, std::nullopt},
      {labels::kBerryWiseman, 8, std::nullopt},
      {labels::kNoonInternal, 8, 1.0 / n8},
  };
  std::vector<TableRow> rows;
  int index = 0;
  for (const auto& s : defs) {
    const TwoModeState state = make_state(s.label, s.n);
    TableRow row;
    row.row = ++index;
    row.label = s.label;
    row.fock_notation = fock_notation(state);
    row.n = s.n;
    row.delta_phi = phase_uncertainty_limit(state);
    row.closed_form = s.closed;
    if (s.closed) row.abs_difference = std::abs(row.delta_phi - *s.closed);
    row.shot_noise = 1.0 / std::sqrt(static_cast<double>(s.n));
    rows.push_back(row);
  }
  return rows;
}

inline void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out) {
  out << "row,state,fock_notation,N,delta_phi,closed_form,abs_difference,shot_noise\n";
  for (const auto& r : rows) {
    out << r.row << ',' << r.label << ",\"" << r.fock_notation << "\"," << r.n << ',' << format_number(r.delta_phi)
        << ',' << format_optional(r.closed_form) << ',' << format_optional(r.abs_difference) << ','
        << format_number(r.shot_noise) << '\n';
  }
}

inline nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"row", r.row},
                   {"state", r.label},
                   {"fock_notation", r.fock_notation},
                   {"N", r.n},
                   {"delta_phi", detail::json_number(r.delta_phi)},
                   {"closed_form", detail::json_optional(r.closed_form)},
                   {"abs_difference", detail::json_optional(r.abs_difference)},
                   {"shot_noise", detail::json_number(r.shot_noise)}});
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Figure data: one CSV per figure with one column per curve; empty cells where a curve is not
// defined for that N.

struct FigureData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

inline void write_figure_csv(const FigureData& fig, std::ostream& out) {
  for (std::size_t c = 0; c < fig.columns.size(); ++c) out << (c ? "," : "") << fig.columns[c];
  out << '\n';
  for (const auto& row : fig.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_optional(row[c]);
    out << '\n';
  }
}

inline constexpr int kFigureMaxN = 100;

struct Curve {
  std::string name;
  std::string label;
  std::optional<CombinedStateParams> params;
};

namespace detail {

inline FigureData limit_curves(const std::vector<Curve>& curves, int n_min, int step) {
  FigureData fig;
  fig.columns.push_back("N");
  for (const auto& c : curves) fig.columns.push_back(c.name);
  for (const char* ref : {"shot_noise", "heisenberg", "bw_povm"}) fig.columns.push_back(ref);

  std::vector<int> ns;
  for (int n = n_min; n <= kFigureMaxN; n += step) ns.push_back(n);
  fig.rows = parallel_map(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    std::vector<std::optional<double>> row{static_cast<double>(n)};
    for (const auto& c : curves) {
      if (accepts(find_family(c.label), n)) {
        row.push_back(phase_uncertainty_limit(make_state(c.label, n, c.params)));
      } else {
        row.push_back(std::nullopt);
      }
    }
    const BenchmarkLimits b = benchmark_limits(n);
    row.insert(row.end(), {b.shot_noise, b.heisenberg, b.bw_povm});
    return row;
  });
  return fig;
}

}  // namespace detail

inline FigureData figure_data(const std::string& figure_id) {
  if (figure_id == "fig2") {
    const int n = kFigureMaxN;
    const TwoModeState s = noon_input(n);
    const HalfInt j = HalfInt::from_twice(n);
    FigureData fig;
    fig.columns = {"mu", "re_A", "im_A"};
    const Amplitudes& a = s.components().begin()->second;
    for (int i = 0; i <= n; ++i) {
      fig.rows.push_back({projection_at(j, i).value(), a[static_cast<std::size_t>(i)].real(),
                          a[static_cast<std::size_t>(i)].imag()});
    }
    return fig;
  }
  if (figure_id == "fig3") {
    const double r = std::sqrt(0.5);
    const double pi = std::numbers::pi;
    return detail::limit_curves(
        {{"dual_fock", labels::kDualFock, std::nullopt},
         {"combined_II_a", labels::kCombined, CombinedStateParams{std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0), 0.0}},
         {"combined_II_b", labels::kCombined, CombinedStateParams{std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0), 0.0}},
         {"combined_III_a", labels::kCombined, CombinedStateParams{r, r, 0.0}},
         {"combined_III_b", labels::kCombined, CombinedStateParams{r, r, pi}},
         {"combined_III_c", labels::kCombined, CombinedStateParams{r, r, pi / 4.0}}},
        2, 2);
  }
  if (figure_id == "fig4") {
    return detail::limit_curves({{"modified_yuen", labels::kModifiedYuen, std::nullopt},
                                 {"pezze_smerzi", labels::kPezzeSmerzi, std::nullopt},
                                 {"berry_wiseman", labels::kBerryWiseman, std::nullopt}},
                                1, 1);
  }
  throw DomainError("unknown figure id '" + figure_id + "' (fig2, fig3 or fig4)");
}

}  // namespace parity
