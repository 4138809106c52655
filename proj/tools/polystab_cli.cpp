// Command-line front end: loads system specs, runs stability analyses,
// reproduces the bundled scenarios by name, and emits JSON reports, CSV
// sweeps, and SVG plots.
//
// Exit codes: 0 success, 1 expectation failure, 2 input error,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polystab/analysis.hpp"
#include "polystab/grid.hpp"
#include "polystab/io.hpp"
#include "polystab/svg.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailure = 1;
constexpr int kInputError = 2;
constexpr int kNumericalFailure = 3;

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw polystab::InvariantError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw polystab::InvariantError(std::string("JSON parse error in ") + path + ": " + err.what());
  }
}

void print_summary(const polystab::AnalysisReport& report) {
  if (report.verdict) {
    const auto& v = *report.verdict;
    if (v.applicable) {
      std::cout << "verdict: " << polystab::theorem_name(*v.applicable)
                << "  alpha = " << v.predicted_alpha->str()
                << (v.conditional_on_delta ? "  (conditional on delta)" : "") << '\n';
    } else {
      std::cout << "verdict: none (" << v.notes << ")\n";
    }
  }
  if (report.spectral) {
    std::cout << "spectral abscissa: " << report.spectral->abscissa
              << (report.spectral->imaginary_axis_eigenvalue ? "  [imaginary-axis eigenvalue]"
                                                             : "")
              << '\n';
  }
  for (const auto& [name, samples] : report.sweeps) {
    std::cout << "sweep " << name << ": " << samples.points.size() << " samples";
    if (samples.fit) std::cout << ", fitted slope " << samples.fit->slope;
    std::cout << '\n';
  }
  for (const polystab::Expectation& e : report.expectations) {
    std::cout << (e.pass ? "[PASS] " : "[FAIL] ") << e.name << " (" << e.detail << ")\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"polystab: numerical polynomial-stability analysis of 2x2 block operator systems"};
  app.require_subcommand(1);

  std::string spec_path, out_dir = ".", resolvent_spec, decay_spec;
  auto* analyze = app.add_subcommand("analyze", "analyze a system spec (JSON)");
  analyze->add_option("spec", spec_path, "system spec file")->required();
  analyze->add_option("--resolvent", resolvent_spec, "frequency sweep lo:hi:n");
  analyze->add_option("--decay", decay_spec, "time sweep lo:hi:n");
  analyze->add_option("--out", out_dir, "output directory");

  std::string repro_id;
  std::vector<std::string> param_kv;
  std::string repro_out = ".";
  auto* repro = app.add_subcommand("repro", "run a bundled scenario by name");
  std::string ids;
  for (const std::string& id : polystab::repro_ids()) ids += (ids.empty() ? "" : ", ") + id;
  repro->add_option("id", repro_id, "one of: " + ids)->required();
  repro->add_option("--param", param_kv, "override a parameter, key=value");
  repro->add_option("--out", repro_out, "output directory");

  std::string csv_path, svg_path;
  auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG line chart");
  plot->add_option("csv", csv_path, "sweep CSV file")->required();
  plot->add_option("--out", svg_path, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  if (analyze->parsed()) {
    polystab::AnalyzeOptions opts;
    if (!resolvent_spec.empty()) opts.resolvent = polystab::parse_grid(resolvent_spec);
    if (!decay_spec.empty()) opts.decay = polystab::parse_grid(decay_spec);
    polystab::AnalysisReport report = polystab::run_analyze(load_json_file(spec_path), opts);
    polystab::write_report_files(report, out_dir);
    print_summary(report);
    std::cout << "report written to " << (std::filesystem::path(out_dir) / "report.json").string()
              << '\n';
    return report.all_pass() ? kOk : kExpectationFailure;
  }

  if (repro->parsed()) {
    std::map<std::string, std::string> params;
    for (const std::string& kv : param_kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw polystab::InvariantError("--param expects key=value, got '" + kv + "'");
      }
      params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    polystab::AnalysisReport report = polystab::run_repro(repro_id, params);
    polystab::write_report_files(report, repro_out);
    print_summary(report);
    return report.all_pass() ? kOk : kExpectationFailure;
  }

  if (plot->parsed()) {
    std::ifstream in(csv_path);
    if (!in) throw polystab::InvariantError("cannot open " + csv_path);
    polystab::SweepSamples samples = polystab::read_sweep_csv(in);
    std::ofstream out(svg_path);
    if (!out) throw polystab::InvariantError("cannot write " + svg_path);
    polystab::write_svg_plot(out, samples, std::filesystem::path(csv_path).stem().string());
    std::cout << "wrote " << svg_path << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const polystab::InvariantError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const polystab::DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const polystab::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const polystab::SpectralPointError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const polystab::LoopSingularError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
