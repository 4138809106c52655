#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polystab/grid.hpp"
#include "polystab/io.hpp"
#include "polystab/verdict.hpp"

namespace polystab {

/// One machine-checked claim of a repro scenario.
struct Expectation {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AnalysisReport {
  std::string system_digest;
  std::optional<StabilityVerdict> verdict;
  std::optional<SpectralReport> spectral;
  std::vector<std::pair<std::string, SweepSamples>> sweeps;
  std::vector<Expectation> expectations;
  std::vector<std::string> notes;
  std::string version = kVersion;
  std::string timestamp;

  bool all_pass() const;
  json to_json() const;
};

/// Writes report.json plus one CSV per sweep into out_dir (created if absent).
void write_report_files(const AnalysisReport& report, const std::string& out_dir);

/// A block system together with the diagonal generators of any blocks that
/// were specified spectrally, and the canonical digest of the input document.
struct LoadedSystem {
  BlockSystem sys;
  std::optional<DiagonalGenerator> gen1, gen2;
  std::string digest;
};

LoadedSystem load_system(const json& spec);

/// Graph norm of a factor against an arbitrary stable block: diagonal blocks
/// use the generator's fractional calculus, dense blocks support integer
/// exponents only. adjoint_side computes ||(-A*)^beta F*|| from the factor F.
double block_graph_norm(const Matrix& a, const std::optional<DiagonalGenerator>& gen,
                        const Rational& beta, const Matrix& factor, bool adjoint_side);

/// Hypothesis check dispatched on the system kind, using declared exponents
/// and computed graph norms. Full systems get a sampled delta certificate on
/// the supplied grid (or a default grid when empty).
StabilityVerdict verdict_for_system(const LoadedSystem& loaded,
                                    const std::vector<Complex>& certificate_grid = {});

struct AnalyzeOptions {
  std::optional<GridSpec> resolvent;  // log-spaced frequency sweep
  std::optional<GridSpec> decay;      // log-spaced time sweep, beta = 1 measure
};

AnalysisReport run_analyze(const json& spec, const AnalyzeOptions& opts);

/// Named scenario registry: "intro-epsilon", "tri-optimal", "exp-pol-rankone",
/// "coupled-wave". Each builds its system with default parameters (overridable
/// through params), runs the relevant analyses, and records pass/fail
/// expectations for the qualitative claim it demonstrates. Unknown ids or
/// parameters throw InvariantError.
AnalysisReport run_repro(const std::string& id, const std::map<std::string, std::string>& params);

std::vector<std::string> repro_ids();

}  // namespace polystab
