#include "polystab/io.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace polystab {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw InvariantError("complex value must be a number or [re, im]");
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvariantError("matrix must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InvariantError("matrix rows must all have the same length");
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

json generator_to_json(const DiagonalGenerator& gen) {
  json j;
  json eigs = json::array();
  for (const Complex& ev : gen.eigenvalues()) eigs.push_back(complex_to_json(ev));
  j["eigenvalues"] = std::move(eigs);
  j["labels"] = gen.mode_labels();
  if (gen.stability_exponent_hint()) {
    j["alpha_hint"] = *gen.stability_exponent_hint();
  } else {
    j["alpha_hint"] = nullptr;
  }
  return j;
}

DiagonalGenerator generator_from_json(const json& j) {
  if (!j.contains("eigenvalues")) throw InvariantError("generator needs an eigenvalues field");
  std::vector<Complex> eigs;
  for (const json& e : j.at("eigenvalues")) eigs.push_back(complex_from_json(e));
  std::optional<double> hint;
  if (j.contains("alpha_hint") && !j.at("alpha_hint").is_null()) {
    hint = j.at("alpha_hint").get<double>();
  }
  if (j.contains("labels")) {
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    return DiagonalGenerator(std::move(eigs), std::move(labels), hint);
  }
  return DiagonalGenerator::from_eigenvalues(std::move(eigs), hint);
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return Rational::from_double(j.get<double>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvariantError("rational value must be a number or a 'p/q' string");
}

DecayRate decay_rate_from_json(const json& j) {
  if (j.is_string() && (j.get<std::string>() == "exp" || j.get<std::string>() == "exponential")) {
    return DecayRate::exponential();
  }
  return DecayRate::polynomial(rational_from_json(j));
}

json decay_rate_to_json(const DecayRate& r) {
  if (r.is_exponential()) return "exp";
  return r.alpha().str();
}

json wave_spec_to_json(const WaveSpec& spec) {
  json j;
  j["n2d"] = spec.n_modes_2d;
  j["n1d"] = spec.n_modes_1d;
  j["placement_exponent"] = spec.placement_exponent.str();
  j["coupling_decay"] = spec.coupling_decay.str();
  j["strip"] = json::array({spec.strip_lo, spec.strip_hi});
  return j;
}

WaveSpec wave_spec_from_json(const json& j) {
  WaveSpec spec;
  if (j.contains("n2d")) spec.n_modes_2d = j.at("n2d").get<int>();
  if (j.contains("n1d")) spec.n_modes_1d = j.at("n1d").get<int>();
  if (j.contains("placement_exponent")) {
    spec.placement_exponent = rational_from_json(j.at("placement_exponent"));
  }
  if (j.contains("coupling_decay")) spec.coupling_decay = rational_from_json(j.at("coupling_decay"));
  if (j.contains("strip")) {
    spec.strip_lo = j.at("strip").at(0).get<double>();
    spec.strip_hi = j.at("strip").at(1).get<double>();
  }
  spec.validate();
  return spec;
}

namespace {

DiagonalGenerator shifted_imaginary_generator(double sigma, int n) {
  if (!(sigma > 0) || n < 1) throw InvariantError("shifted_imaginary needs sigma > 0 and n >= 1");
  std::vector<Complex> eigs;
  eigs.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) eigs.emplace_back(-sigma, k);
  return DiagonalGenerator::from_eigenvalues(std::move(eigs));
}

DiagonalGenerator polynomial_damped_generator(double alpha, int n) {
  if (!(alpha > 0) || n < 1) throw InvariantError("polynomial_damped needs alpha > 0 and n >= 1");
  std::vector<Complex> eigs;
  eigs.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    eigs.emplace_back(-std::pow(static_cast<double>(k), -alpha), k);
  }
  return DiagonalGenerator::from_eigenvalues(std::move(eigs), alpha);
}

}  // namespace

ResolvedBlock resolve_block(const json& j) {
  if (!j.is_object()) throw InvariantError("block spec must be an object");
  if (j.contains("matrix")) {
    return ResolvedBlock{matrix_from_json(j.at("matrix")), std::nullopt};
  }
  if (j.contains("generator")) {
    DiagonalGenerator gen = generator_from_json(j.at("generator"));
    Matrix m = gen.matrix();
    return ResolvedBlock{std::move(m), std::move(gen)};
  }
  if (!j.contains("name")) {
    throw InvariantError("block spec needs one of: matrix, generator, name");
  }
  const std::string name = j.at("name").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (name == "shifted_imaginary") {
    DiagonalGenerator gen = shifted_imaginary_generator(params.value("sigma", 1.0),
                                                        params.value("n", 64));
    return ResolvedBlock{gen.matrix(), std::move(gen)};
  }
  if (name == "polynomial_damped") {
    double alpha = params.contains("alpha") ? rational_from_json(params.at("alpha")).value() : 1.0;
    DiagonalGenerator gen = polynomial_damped_generator(alpha, params.value("n", 64));
    return ResolvedBlock{gen.matrix(), std::move(gen)};
  }
  if (name == "wave2d") {
    WaveSpec spec;
    spec.n_modes_2d = params.value("n", 8);
    if (params.contains("strip")) {
      spec.strip_lo = params.at("strip").at(0).get<double>();
      spec.strip_hi = params.at("strip").at(1).get<double>();
    }
    spec.validate();
    return ResolvedBlock{assemble_wave2d(spec).cast<Complex>(), std::nullopt};
  }
  if (name == "wave1d_placed") {
    WaveSpec spec;
    spec.n_modes_1d = params.value("n", 64);
    if (params.contains("exponent")) {
      spec.placement_exponent = rational_from_json(params.at("exponent"));
    }
    spec.validate();
    DiagonalGenerator gen = assemble_wave1d_placed(spec);
    return ResolvedBlock{gen.matrix(), std::move(gen)};
  }
  throw InvariantError("unknown generator name: " + name);
}

namespace {

CouplingFactors coupling_from_json(const json& j, Index rows, Index cols) {
  if (j.is_null()) return CouplingFactors::zero(rows, cols);
  CouplingFactors f;
  f.left = OperatorMatrix{matrix_from_json(j.at("left")), j.value("left_basis", "modal")};
  f.right = OperatorMatrix{matrix_from_json(j.at("right")), j.value("right_basis", "modal")};
  f.coupling_dim_finite = j.value("y_finite", true);
  return f;
}

json coupling_to_json(const CouplingFactors& f) {
  json j;
  j["left"] = matrix_to_json(f.left.entries);
  j["right"] = matrix_to_json(f.right.entries);
  j["y_finite"] = f.coupling_dim_finite;
  return j;
}

}  // namespace

BlockSystem block_system_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ResolvedBlock b1 = resolve_block(j.at("a1"));
  ResolvedBlock b2 = resolve_block(j.at("a2"));
  const bool allow_unstable = j.value("allow_unstable", false);

  Exponents e;
  if (j.contains("exponents")) {
    const json& je = j.at("exponents");
    if (je.contains("alpha1")) e.alpha1 = decay_rate_from_json(je.at("alpha1"));
    if (je.contains("alpha2")) e.alpha2 = decay_rate_from_json(je.at("alpha2"));
    auto opt = [&](const char* key) -> std::optional<Rational> {
      if (je.contains(key)) return rational_from_json(je.at(key));
      return std::nullopt;
    };
    e.beta = opt("beta");
    e.gamma = opt("gamma");
    e.beta1 = opt("beta1");
    e.gamma1 = opt("gamma1");
    e.beta2 = opt("beta2");
    e.gamma2 = opt("gamma2");
  }

  const json couplings = j.contains("couplings") ? j.at("couplings") : json::object();
  const json c12 = couplings.contains("c12") ? couplings.at("c12") : json();
  const Index n1 = b1.matrix.rows();
  const Index n2 = b2.matrix.rows();
  if (kind == "triangular") {
    if (couplings.contains("c21") && !couplings.at("c21").is_null()) {
      throw InvariantError("triangular systems have no coupling_21");
    }
    return assemble_triangular(std::move(b1.matrix), std::move(b2.matrix),
                               coupling_from_json(c12, n1, n2), std::move(e), allow_unstable);
  }
  if (kind == "full") {
    const json c21 = couplings.contains("c21") ? couplings.at("c21") : json();
    return assemble_full(std::move(b1.matrix), std::move(b2.matrix),
                         coupling_from_json(c12, n1, n2), coupling_from_json(c21, n2, n1),
                         std::move(e), allow_unstable);
  }
  throw InvariantError("kind must be 'triangular' or 'full'");
}

json block_system_to_json(const BlockSystem& sys) {
  json j;
  j["kind"] = sys.kind() == BlockKind::Triangular ? "triangular" : "full";
  j["a1"] = json{{"matrix", matrix_to_json(sys.a1())}};
  j["a2"] = json{{"matrix", matrix_to_json(sys.a2())}};
  json couplings;
  couplings["c12"] = coupling_to_json(sys.coupling_12());
  couplings["c21"] = sys.coupling_21() ? coupling_to_json(*sys.coupling_21()) : json();
  j["couplings"] = std::move(couplings);
  json e;
  e["alpha1"] = decay_rate_to_json(sys.exponents().alpha1);
  e["alpha2"] = decay_rate_to_json(sys.exponents().alpha2);
  auto put = [&](const char* key, const std::optional<Rational>& r) {
    if (r) e[key] = r->str();
  };
  put("beta", sys.exponents().beta);
  put("gamma", sys.exponents().gamma);
  put("beta1", sys.exponents().beta1);
  put("gamma1", sys.exponents().gamma1);
  put("beta2", sys.exponents().beta2);
  put("gamma2", sys.exponents().gamma2);
  j["exponents"] = std::move(e);
  if (sys.allow_unstable()) j["allow_unstable"] = true;
  return j;
}

json verdict_to_json(const StabilityVerdict& v) {
  json j;
  j["theorem"] = v.applicable ? json(theorem_name(*v.applicable)) : json();
  j["alpha"] = v.predicted_alpha ? json(v.predicted_alpha->value()) : json();
  j["alpha_exact"] = v.predicted_alpha ? json(v.predicted_alpha->str()) : json();
  json margins = json::object();
  for (const auto& [name, m] : v.condition_margins) {
    margins[name] = json{{"value", m.value()}, {"exact", m.str()}};
  }
  j["margins"] = std::move(margins);
  j["norm_product"] = v.graph_norm_product ? json(*v.graph_norm_product) : json();
  j["delta"] = v.delta_estimate
                   ? json{{"value", v.delta_estimate->value}, {"method", v.delta_estimate->method}}
                   : json();
  j["conditional_on_delta"] = v.conditional_on_delta;
  j["notes"] = v.notes;
  return j;
}

json spectral_to_json(const SpectralReport& r) {
  json j;
  json eigs = json::array();
  for (const Complex& ev : r.eigenvalues) eigs.push_back(complex_to_json(ev));
  j["eigenvalues"] = std::move(eigs);
  j["abscissa"] = r.abscissa;
  j["axis_distance"] = r.axis_distance;
  j["imaginary_axis_eigenvalue"] = r.imaginary_axis_eigenvalue;
  return j;
}

json fit_to_json(const FitResult& f, double window_lo, double window_hi) {
  json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual"] = f.residual_rms;
  j["window"] = json::array({window_lo, window_hi});
  return j;
}

void write_sweep_csv(std::ostream& os, const SweepSamples& samples) {
  os << (samples.axis == SweepAxis::Time ? "t" : "param") << ",value,finite\n";
  for (const SweepPoint& p : samples.points) {
    os << fmt17(p.param) << ',' << fmt17(p.value) << ',' << (p.finite ? 1 : 0) << '\n';
  }
}

SweepSamples read_sweep_csv(std::istream& is) {
  SweepSamples s;
  std::string line;
  if (!std::getline(is, line)) throw InvariantError("empty CSV");
  s.axis = line.rfind("t,", 0) == 0 ? SweepAxis::Time : SweepAxis::Frequency;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw InvariantError("malformed CSV row: " + line);
    }
    SweepPoint p;
    p.param = std::stod(a);
    p.value = std::stod(b);
    p.finite = c != "0";
    s.points.push_back(p);
  }
  if (s.points.empty()) throw InvariantError("CSV has no samples");
  s.window_lo = s.points.front().param;
  s.window_hi = s.points.back().param;
  s.validate();
  return s;
}

std::string digest_of(const json& j) {
  const std::string canonical = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace polystab
