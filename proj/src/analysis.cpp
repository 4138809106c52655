#include "polystab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polystab/fitting.hpp"
#include "polystab/resolvent.hpp"
#include "polystab/semigroup.hpp"
#include "polystab/wave.hpp"

namespace polystab {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool AnalysisReport::all_pass() const {
  return std::all_of(expectations.begin(), expectations.end(),
                     [](const Expectation& e) { return e.pass; });
}

json AnalysisReport::to_json() const {
  json j;
  j["digest"] = system_digest;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["verdict"] = verdict ? verdict_to_json(*verdict) : json();
  j["spectral"] = spectral ? spectral_to_json(*spectral) : json();
  json sw = json::object();
  for (const auto& [name, samples] : sweeps) {
    json entry;
    entry["file"] = name + ".csv";
    entry["axis"] = samples.axis == SweepAxis::Time ? "time" : "frequency";
    entry["window"] = json::array({samples.window_lo, samples.window_hi});
    entry["fit"] = samples.fit ? fit_to_json(*samples.fit, samples.window_lo, samples.window_hi)
                               : json();
    sw[name] = std::move(entry);
  }
  j["sweeps"] = std::move(sw);
  json ex = json::array();
  for (const Expectation& e : expectations) {
    ex.push_back(json{{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
  }
  j["expectations"] = std::move(ex);
  j["notes"] = notes;
  return j;
}

void write_report_files(const AnalysisReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, samples] : report.sweeps) {
    std::ofstream csv(std::filesystem::path(out_dir) / (name + ".csv"));
    if (!csv) throw NumericError("cannot write sweep CSV in " + out_dir);
    write_sweep_csv(csv, samples);
  }
  std::ofstream rep(std::filesystem::path(out_dir) / "report.json");
  if (!rep) throw NumericError("cannot write report.json in " + out_dir);
  rep << report.to_json().dump(2) << '\n';
}

LoadedSystem load_system(const json& spec) {
  LoadedSystem loaded{block_system_from_json(spec), std::nullopt, std::nullopt,
                      digest_of(spec)};
  ResolvedBlock b1 = resolve_block(spec.at("a1"));
  ResolvedBlock b2 = resolve_block(spec.at("a2"));
  loaded.gen1 = std::move(b1.generator);
  loaded.gen2 = std::move(b2.generator);
  return loaded;
}

double block_graph_norm(const Matrix& a, const std::optional<DiagonalGenerator>& gen,
                        const Rational& beta, const Matrix& factor, bool adjoint_side) {
  if (beta == Rational(0)) return operator_norm(factor);
  Matrix side_factor = adjoint_side ? Matrix(factor.adjoint()) : factor;
  if (gen) {
    return graph_norm(*gen, beta.value(), OperatorMatrix{std::move(side_factor), "modal"});
  }
  if (beta.den() != 1 || beta.num() < 0) {
    throw InvariantError("graph norms on dense blocks support integer exponents only");
  }
  Matrix power = Matrix::Identity(a.rows(), a.cols());
  Matrix base = adjoint_side ? Matrix((-a).adjoint()) : Matrix(-a);
  for (std::int64_t i = 0; i < beta.num(); ++i) power = power * base;
  return operator_norm(power * side_factor);
}

StabilityVerdict verdict_for_system(const LoadedSystem& loaded,
                                    const std::vector<Complex>& certificate_grid) {
  const BlockSystem& sys = loaded.sys;
  const Exponents& e = sys.exponents();
  if (sys.kind() == BlockKind::Triangular) {
    return check_triangular(e.alpha1, e.alpha2, e.beta.value_or(Rational(0)),
                            e.gamma.value_or(Rational(0)),
                            sys.coupling_12().coupling_dim_finite);
  }

  FullExponents f;
  f.alpha1 = e.alpha1;
  f.alpha2 = e.alpha2;
  f.beta1 = e.beta1.value_or(Rational(0));
  f.gamma1 = e.gamma1.value_or(Rational(0));
  f.beta2 = e.beta2.value_or(Rational(0));
  f.gamma2 = e.gamma2.value_or(Rational(0));

  GraphNorms norms;
  norms.b1 = block_graph_norm(sys.a1(), loaded.gen1, f.beta1, sys.coupling_12().left.entries, false);
  norms.c1 =
      block_graph_norm(sys.a1(), loaded.gen1, f.gamma1, sys.coupling_21()->right.entries, true);
  norms.b2 = block_graph_norm(sys.a2(), loaded.gen2, f.beta2, sys.coupling_21()->left.entries, false);
  norms.c2 =
      block_graph_norm(sys.a2(), loaded.gen2, f.gamma2, sys.coupling_12().right.entries, true);

  std::optional<DeltaEstimate> delta;
  if (sys.coupling_12().dim() > 0 || sys.coupling_21()->dim() > 0) {
    std::vector<Complex> grid = certificate_grid;
    if (grid.empty()) {
      double im_extent = 1.0;
      for (const Complex& ev : spectral_check(sys.a1()).eigenvalues) {
        im_extent = std::max(im_extent, std::abs(ev.imag()));
      }
      for (const Complex& ev : spectral_check(sys.a2()).eigenvalues) {
        im_extent = std::max(im_extent, std::abs(ev.imag()));
      }
      grid = default_certificate_grid(2.0 * im_extent + 10.0, 200);
    }
    DeltaCertificate cert = dlambda_margin(sys, grid);
    delta = DeltaEstimate{cert.delta_value, cert.method};
  }
  return check_full(f, sys.coupling_12().coupling_dim_finite,
                    sys.coupling_21()->coupling_dim_finite, norms, delta);
}

namespace {

void attach_growth_fit(SweepSamples& samples, AnalysisReport& report) {
  try {
    fit_growth_exponent(samples);
  } catch (const NumericError& err) {
    report.notes.push_back(std::string("resolvent fit skipped: ") + err.what());
  }
}

}  // namespace

AnalysisReport run_analyze(const json& spec, const AnalyzeOptions& opts) {
  LoadedSystem loaded = load_system(spec);
  AnalysisReport report;
  report.system_digest = loaded.digest;
  report.timestamp = now_iso8601();

  const Matrix dense = loaded.sys.dense();
  report.spectral = spectral_check(dense);
  report.verdict = verdict_for_system(loaded);

  if (opts.resolvent) {
    SweepSamples sweep =
        resolvent_norm_sweep(dense, logspace(opts.resolvent->lo, opts.resolvent->hi,
                                             opts.resolvent->n));
    attach_growth_fit(sweep, report);
    report.sweeps.emplace_back("resolvent", std::move(sweep));
  }
  if (opts.decay) {
    if (report.spectral->abscissa < 0) {
      SweepSamples sweep = decay_curve(dense, std::nullopt, 1.0,
                                       logspace(opts.decay->lo, opts.decay->hi, opts.decay->n));
      try {
        fit_decay_model(sweep, DecayModel::PurePower);
      } catch (const NumericError& err) {
        report.notes.push_back(std::string("decay fit skipped: ") + err.what());
      }
      report.sweeps.emplace_back("decay", std::move(sweep));
    } else {
      report.notes.push_back("decay sweep skipped: spectrum is not strictly stable");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Repro registry
// ---------------------------------------------------------------------------

namespace {

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& kv) : kv_(kv) {}

  double number(const std::string& key, double fallback) {
    seen_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stod(it->second);
  }

  int integer(const std::string& key, int fallback) {
    seen_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stoi(it->second);
  }

  Rational rational(const std::string& key, Rational fallback) {
    seen_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : Rational::parse(it->second);
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_) {
      if (!seen_.count(key)) throw InvariantError("unknown parameter: " + key);
    }
  }

 private:
  const std::map<std::string, std::string>& kv_;
  std::set<std::string> seen_;
};

Expectation expect(std::string name, bool pass, std::string detail) {
  return Expectation{std::move(name), pass, std::move(detail)};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

DiagonalGenerator polynomial_damped(double alpha, int n, std::optional<double> hint) {
  std::vector<Complex> eigs;
  eigs.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    eigs.emplace_back(-std::pow(static_cast<double>(k), -alpha), k);
  }
  return DiagonalGenerator::from_eigenvalues(std::move(eigs), hint);
}

// Example of the unstable triangular perturbation [[A1, eps I], [0, A1]]:
// t ||T1(t)|| must grow over the truncation horizon unless T1 is
// exponentially stable.
AnalysisReport repro_intro_epsilon(Params& p) {
  const double alpha = p.number("alpha", 1.0);
  const int n = p.integer("n", 100);
  const double eps = p.number("epsilon", 0.1);
  p.reject_unknown();

  DiagonalGenerator gen = polynomial_damped(alpha, n, alpha);
  Matrix a = gen.matrix();
  OperatorMatrix b{Matrix::Identity(n, n) * eps, "modal"};
  OperatorMatrix c{Matrix::Identity(n, n), "modal"};
  Exponents e;
  e.alpha1 = DecayRate::polynomial(Rational::from_double(alpha));
  e.alpha2 = e.alpha1;
  e.beta = Rational(0);
  e.gamma = Rational(0);
  BlockSystem sys = assemble_triangular(a, a, b, c, e, false);

  AnalysisReport report;
  report.system_digest = digest_of(block_system_to_json(sys));
  report.timestamp = now_iso8601();
  report.verdict = check_triangular(e.alpha1, e.alpha2, Rational(0), Rational(0), false);
  report.expectations.push_back(expect(
      "no-theorem-applies", !report.verdict->applicable,
      "beta = gamma = 0 leaves beta/alpha1 + gamma/alpha2 - 1 = -1"));

  const double horizon = gen.truncation_horizon();
  SweepSamples curve = decay_curve(a, gen, 0.0, logspace(1.0, horizon, 120));
  const double m_lo = curve.points.front().param * curve.points.front().value;
  const double m_hi = curve.points.back().param * curve.points.back().value;
  report.expectations.push_back(
      expect("t*||T1(t)|| grows over the valid horizon", m_hi > 5.0 * m_lo,
             "t*v: " + fmt(m_lo) + " at t=1 vs " + fmt(m_hi) + " at t=" + fmt(horizon)));

  // The top-right semigroup block is eps * t * T1(t) for this system; the
  // quadrature route must reproduce it.
  const double t_check = 10.0;
  Matrix s = convolution_block(sys, t_check, 16);
  Matrix closed = eps * t_check * matexp(a, t_check);
  const double rel = (s - closed).norm() / closed.norm();
  report.expectations.push_back(expect("convolution block equals eps*t*T1(t)", rel <= 1e-6,
                                       "relative deviation " + fmt(rel)));

  report.sweeps.emplace_back("decay_t1", std::move(curve));
  return report;
}

// Boundary sharpness of the exponent condition on the optimality example
// [[A1, (-A1)^{-(beta+gamma)}], [0, A1]]: bounded at beta+gamma = alpha,
// growing for beta+gamma < alpha.
AnalysisReport repro_tri_optimal(Params& p) {
  const double alpha = p.number("alpha", 2.0);
  const int n = p.integer("n", 200);
  const Rational beta = p.rational("beta", Rational(1));
  const Rational gamma = p.rational("gamma", Rational(1));
  p.reject_unknown();

  DiagonalGenerator gen = polynomial_damped(alpha, n, alpha);
  Matrix a = gen.matrix();
  const double bg = beta.value() + gamma.value();

  AnalysisReport report;
  report.timestamp = now_iso8601();
  {
    BlockSystem sys = assemble_triangular(a, a, fractional_power_inverse(gen, beta.value()),
                                          fractional_power_inverse(gen, gamma.value()));
    report.system_digest = digest_of(block_system_to_json(sys));
  }
  const Rational alpha_rat = Rational::from_double(alpha);
  report.verdict = check_triangular(DecayRate::polynomial(alpha_rat),
                                    DecayRate::polynomial(alpha_rat), beta, gamma, false);

  const double horizon = gen.truncation_horizon();
  const double t_hi = std::min(1e4, horizon);
  SweepSamples curve = decay_curve(a, gen, bg, logspace(1.0, t_hi, 400));
  double sup = 0;
  for (const SweepPoint& pt : curve.points) sup = std::max(sup, pt.param * pt.value);

  if (bg >= alpha) {
    report.expectations.push_back(
        expect("sup_t t*||T1(t)(-A1)^-(beta+gamma)|| bounded by 1/e",
               sup <= std::exp(-1.0) + 0.01, "sup over grid " + fmt(sup)));
  } else {
    SweepSamples probe = decay_curve(a, gen, bg, {10.0, std::pow(n, alpha) / 2.0});
    const double early = probe.points.front().param * probe.points.front().value;
    const double late = probe.points.back().param * probe.points.back().value;
    report.expectations.push_back(
        expect("t*||T1(t)(-A1)^-(beta+gamma)|| grows (condition violated)", late > 5.0 * early,
               fmt(early) + " at t=10 vs " + fmt(late) + " at t=N^alpha/2"));
  }
  report.sweeps.emplace_back("weighted_decay", std::move(curve));
  return report;
}

// Rank-one exponential/polynomial interconnection with an imaginary-axis
// eigenvalue at i*n for every n, even though all four coupling norms shrink.
AnalysisReport repro_exp_pol_rankone(Params& p) {
  const double sigma = p.number("sigma", 1.0);
  const Rational alpha2 = p.rational("alpha2", Rational(5, 3));
  const int n = p.integer("n", 5);
  const int modes = p.integer("modes", 64);
  p.reject_unknown();
  if (n < 1 || n > modes) throw InvariantError("need 1 <= n <= modes");

  const double a2v = alpha2.value();
  std::vector<Complex> eigs1;
  for (int k = 1; k <= modes; ++k) eigs1.emplace_back(-sigma, k);
  DiagonalGenerator gen1 = DiagonalGenerator::from_eigenvalues(std::move(eigs1));
  DiagonalGenerator gen2 = polynomial_damped(a2v, modes, a2v);

  const double scale = std::pow(static_cast<double>(n), -a2v / 2.0);
  Matrix b1 = Matrix::Zero(modes, 1);
  b1(n - 1, 0) = sigma;
  Matrix c1 = Matrix::Zero(1, modes);
  c1(0, n - 1) = 1.0;
  Matrix b2 = Matrix::Zero(modes, 1);
  b2(n - 1, 0) = scale;
  Matrix c2 = Matrix::Zero(1, modes);
  c2(0, n - 1) = scale;

  Exponents e;
  e.alpha1 = DecayRate::exponential();
  e.alpha2 = DecayRate::polynomial(alpha2);
  e.beta1 = Rational(0);
  e.gamma1 = Rational(0);
  e.beta2 = Rational(0);
  e.gamma2 = Rational(0);
  BlockSystem sys = assemble_full(gen1.matrix(), gen2.matrix(), OperatorMatrix{b1, "modal"},
                                  OperatorMatrix{c1, "modal"}, OperatorMatrix{b2, "modal"},
                                  OperatorMatrix{c2, "modal"}, e);

  AnalysisReport report;
  report.system_digest = digest_of(block_system_to_json(sys));
  report.timestamp = now_iso8601();
  report.spectral = spectral_check(sys.dense());

  double dist = std::numeric_limits<double>::infinity();
  for (const Complex& ev : report.spectral->eigenvalues) {
    dist = std::min(dist, std::abs(ev - Complex(0, n)));
  }
  report.expectations.push_back(expect("eigenvalue at i*n", dist <= 1e-8,
                                       "closest eigenvalue at distance " + fmt(dist)));
  report.expectations.push_back(expect("imaginary-axis flag raised",
                                       report.spectral->imaginary_axis_eigenvalue,
                                       "axis distance " + fmt(report.spectral->axis_distance)));

  GraphNorms norms{graph_norm(gen1, 0.0, OperatorMatrix{b1, "modal"}),
                   graph_norm(gen1, 0.0, OperatorMatrix{c1.adjoint(), "modal"}),
                   graph_norm(gen2, 0.0, OperatorMatrix{b2, "modal"}),
                   graph_norm(gen2, 0.0, OperatorMatrix{c2.adjoint(), "modal"})};
  const double formula = sigma * std::pow(static_cast<double>(n), -a2v);
  report.expectations.push_back(
      expect("four-norm product sigma*n^-alpha2",
             std::abs(norms.product() - formula) <= 1e-10 * formula,
             fmt(norms.product()) + " vs " + fmt(formula)));

  FullExponents fe{e.alpha1, e.alpha2, Rational(0), Rational(0), Rational(0), Rational(0)};
  report.verdict = check_full(fe, true, true, norms, std::nullopt);
  report.expectations.push_back(expect("no stability verdict (beta2+gamma2 < alpha2)",
                                       !report.verdict->applicable, report.verdict->notes));

  std::vector<Complex> grid;
  for (int k = 0; k <= 4 * modes; ++k) grid.emplace_back(0.0, 0.5 * k);
  DeltaCertificate cert = dlambda_margin(sys, grid);
  report.expectations.push_back(expect("loop operator singular at i*n",
                                       cert.dmin_singular <= 1e-10 && cert.loop_norm_max >= 0.99,
                                       "min sigma(D) " + fmt(cert.dmin_singular) +
                                           ", max loop norm " + fmt(cert.loop_norm_max)));
  return report;
}

// Coupled 2D/1D wave system: hypothesis check yields alpha = 2 with margin
// exactly 1/10, the truncation is strictly stable, and the measured resolvent
// growth stays near the predicted exponent.
AnalysisReport repro_coupled_wave(Params& p) {
  WaveSpec spec;
  spec.n_modes_2d = p.integer("n2d", 8);
  spec.n_modes_1d = p.integer("n1d", 64);
  spec.placement_exponent = p.rational("exponent", Rational(5, 3));
  const bool with_sweep = p.integer("sweep", 1) != 0;
  p.reject_unknown();

  BlockSystem sys = build_coupled_wave(spec);
  AnalysisReport report;
  report.system_digest = digest_of(wave_spec_to_json(spec));
  report.timestamp = now_iso8601();

  report.verdict = check_triangular(sys.exponents().alpha1, sys.exponents().alpha2,
                                    *sys.exponents().beta, *sys.exponents().gamma,
                                    sys.coupling_12().coupling_dim_finite);
  const bool thm_ok = report.verdict->applicable &&
                      *report.verdict->applicable == Theorem::Thm3_1 &&
                      *report.verdict->predicted_alpha == Rational(2);
  report.expectations.push_back(expect("verdict Thm3.1 with alpha = 2", thm_ok,
                                       report.verdict->notes));
  if (spec.placement_exponent == Rational(5, 3)) {
    const Rational margin = report.verdict->condition_margins.front().second;
    report.expectations.push_back(expect("margin exactly 1/10", margin == Rational(1, 10),
                                         "margin " + margin.str()));
  }

  const Matrix dense = sys.dense();
  report.spectral = spectral_check(dense);
  report.expectations.push_back(expect("all truncation eigenvalues strictly stable",
                                       report.spectral->abscissa < 0,
                                       "abscissa " + fmt(report.spectral->abscissa)));

  if (with_sweep) {
    std::vector<double> peaks;
    for (int k = 1; k * kPi < 40.0; ++k) peaks.push_back(k * kPi);
    SweepSamples sweep = resolvent_norm_sweep(dense, merge_grids({logspace(3.0, 40.0, 120), peaks}));
    sweep.set_window(3.0, 40.0);
    FitResult fit = fit_growth_exponent(sweep);
    report.expectations.push_back(expect("fitted resolvent exponent <= 2.3", fit.slope <= 2.3,
                                         "fitted slope " + fmt(fit.slope)));
    report.sweeps.emplace_back("resolvent", std::move(sweep));
  }
  return report;
}

}  // namespace

AnalysisReport run_repro(const std::string& id, const std::map<std::string, std::string>& params) {
  Params p(params);
  if (id == "intro-epsilon") return repro_intro_epsilon(p);
  if (id == "tri-optimal") return repro_tri_optimal(p);
  if (id == "exp-pol-rankone") return repro_exp_pol_rankone(p);
  if (id == "coupled-wave") return repro_coupled_wave(p);
  throw InvariantError("unknown repro id: " + id);
}

std::vector<std::string> repro_ids() {
  return {"intro-epsilon", "tri-optimal", "exp-pol-rankone", "coupled-wave"};
}

}  // namespace polystab
