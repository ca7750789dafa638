// Command-line front end: sweeps, the table of phase estimates, figure data and single-point
// dumps. Exit codes: 0 success, 2 invalid arguments, 3 numerical-limit failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "parity/sweep.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

// Opens the destination before any computation so that an unwritable path fails fast.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw parity::DomainError("cannot write to '" + path + "'");
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (!stream()) throw parity::DomainError("write to '" + (path_.empty() ? "stdout" : path_) + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

struct Flags {
  std::string state;
  std::optional<int> n_min, n_max, n;
  std::optional<double> phi;
  bool limit = false;
  std::optional<double> alpha, beta, theta;
  std::string out;
  std::optional<std::string> format;
  std::string config;
  std::string figure;
};

std::optional<parity::CombinedStateParams> combined_from_flags(const Flags& f,
                                                               std::optional<parity::CombinedStateParams> base) {
  if (!f.alpha && !f.beta && !f.theta) return base;
  parity::CombinedStateParams p = base.value_or(parity::CombinedStateParams{});
  if (f.alpha) p.alpha_mag = *f.alpha;
  if (f.beta) p.beta_mag = *f.beta;
  if (f.theta) p.theta = *f.theta;
  return p;
}

parity::SweepConfig sweep_config(const Flags& f) {
  parity::SweepConfig c = f.config.empty() ? parity::SweepConfig{} : parity::load_config(f.config);
  if (!f.state.empty()) c.state_label = f.state;
  if (f.n_min) c.n_min = *f.n_min;
  if (f.n_max) c.n_max = *f.n_max;
  if (f.limit) c.fixed_phi.reset();
  if (f.phi) c.fixed_phi = *f.phi;
  c.combined_params = combined_from_flags(f, c.combined_params);
  if (c.state_label == parity::labels::kCombined && !c.combined_params) c.combined_params = parity::CombinedStateParams{};
  if (!f.out.empty()) c.output_path = f.out;
  if (f.format) c.format = parity::parse_format(*f.format);
  c.validate();
  return c;
}

int run_sweep(const Flags& f) {
  const parity::SweepConfig config = sweep_config(f);
  Output out(config.output_path);
  const parity::SweepResult result = parity::run_sweep(config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  parity::write_records(result.records, config.format, out.stream());
  out.finish();
  return 0;
}

int run_table(const Flags& f) {
  Output out(f.out);
  const auto rows = parity::reproduce_table();
  if (parity::parse_format(f.format.value_or("csv")) == parity::OutputFormat::Csv) {
    parity::write_table_csv(rows, out.stream());
  } else {
    out.stream() << parity::table_to_json(rows).dump(2) << '\n';
  }
  out.finish();
  return 0;
}

int run_figure(const Flags& f) {
  if (f.format && *f.format != "csv") throw parity::DomainError("figure data is written as csv only");
  Output out(f.out);
  parity::write_figure_csv(parity::figure_data(f.figure), out.stream());
  out.finish();
  return 0;
}

int run_expectation(const Flags& f) {
  if (f.state.empty()) throw parity::DomainError("--state is required");
  const int n = f.n.value_or(f.n_min.value_or(0));
  const double phi = f.phi.value_or(parity::kDefaultFixedPhi);
  std::optional<parity::CombinedStateParams> params = combined_from_flags(f, std::nullopt);
  if (params && f.state != parity::labels::kCombined) {
    throw parity::DomainError("--alpha/--beta/--theta apply only to state 'combined'");
  }
  Output out(f.out);
  const parity::TwoModeState state = parity::make_state(f.state, n, params);
  const parity::DetectionResult r = parity::phase_uncertainty(state, phi);
  nlohmann::json j = {{"state", f.state},
                      {"N", n},
                      {"frame", parity::frame_name(state.frame())},
                      {"phi", r.phi},
                      {"expectation", r.expectation},
                      {"derivative", r.derivative},
                      {"variance", r.variance},
                      {"delta_phi", parity::detail::json_number(r.delta_phi)}};
  try {
    const parity::ClosedForm cf = parity::closed_form_expectation(f.state, n, phi, params);
    j["closed_form"] = {{"value", cf.value}, {"imag_residue", cf.imag_residue}};
  } catch (const parity::DomainError&) {
    j["closed_form"] = nullptr;
  }
  if (parity::parse_format(f.format.value_or("json")) == parity::OutputFormat::Json) {
    out.stream() << j.dump(2) << '\n';
  } else {
    out.stream() << "state,N,phi,expectation,derivative,variance,delta_phi\n"
                 << f.state << ',' << n << ',' << parity::format_number(r.phi) << ','
                 << parity::format_number(r.expectation) << ',' << parity::format_number(r.derivative) << ','
                 << parity::format_number(r.variance) << ',' << parity::format_number(r.delta_phi) << '\n';
  }
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity-detection phase estimation for two-mode interferometry"};
  app.require_subcommand(1);
  Flags f;

  auto add_state_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--state", f.state, "State family label");
    cmd->add_option("--alpha", f.alpha, "Combined state |alpha|");
    cmd->add_option("--beta", f.beta, "Combined state |beta|");
    cmd->add_option("--theta", f.theta, "Combined state relative phase");
  };
  auto add_output_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--out", f.out, "Output file (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "delta_phi over a range of photon numbers");
  add_state_flags(sweep);
  add_output_flags(sweep);
  sweep->add_option("--n-min", f.n_min, "Smallest photon number");
  sweep->add_option("--n-max", f.n_max, "Largest photon number");
  auto* phi_opt = sweep->add_option("--phi", f.phi, "Evaluate at this fixed phase");
  sweep->add_flag("--limit", f.limit, "Use the phi -> 0 limit (default)")->excludes(phi_opt);
  sweep->add_option("--config", f.config, "Flat key = value config file; flags override it");

  CLI::App* table = app.add_subcommand("table", "Phase estimates for the eight reference states");
  add_output_flags(table);

  CLI::App* figure = app.add_subcommand("figure", "Curve data for figures fig2, fig3, fig4");
  figure->add_option("figure", f.figure, "fig2, fig3 or fig4")->required();
  add_output_flags(figure);

  CLI::App* expectation = app.add_subcommand("expectation", "Single-point detection result");
  add_state_flags(expectation);
  add_output_flags(expectation);
  expectation->add_option("-n,--n,--n-min", f.n, "Photon number (mean photon number for coherent)")->required();
  expectation->add_option("--phi", f.phi, "Phase");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (sweep->parsed()) return run_sweep(f);
    if (table->parsed()) return run_table(f);
    if (figure->parsed()) return run_figure(f);
    return run_expectation(f);
  } catch (const parity::NumericalLimitError& e) {
    std::cerr << "numerical limit failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const parity::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const parity::FrameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
