#include <doctest.h>

#include <cmath>
#include <random>

#include "polystab/fitting.hpp"
#include "polystab/grid.hpp"
#include "test_support.hpp"

using namespace polystab;
using namespace polystab::testing;

namespace {

SweepSamples synthetic(SweepAxis axis, const std::vector<double>& xs,
                       double (*f)(double)) {
  SweepSamples s;
  s.axis = axis;
  for (double x : xs) s.points.push_back({x, f(x), true});
  s.window_lo = xs.front();
  s.window_hi = xs.back();
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("fitting");

TEST_CASE("exact quadratic growth is recovered to 1e-6") {
  auto s = synthetic(SweepAxis::Frequency, logspace(1.0, 1000.0, 64),
                     +[](double w) { return w * w; });
  FitResult fit = fit_growth_exponent(s);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.residual_rms < 1e-10);
  CHECK(s.fit.has_value());
}

TEST_CASE("power laws with arbitrary scale and exponent") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> aexp(0.0, 4.0), cdist(0.01, 100.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = aexp(rng), c = cdist(rng);
    SweepSamples s;
    s.axis = SweepAxis::Frequency;
    for (double w : logspace(0.5, 2000.0, 120)) s.points.push_back({w, c * std::pow(w, a), true});
    s.window_lo = 0.5;
    s.window_hi = 2000.0;
    FitResult fit = fit_growth_exponent(s);
    CHECK(fit.slope == doctest::Approx(a).epsilon(1e-6));
  }
}

TEST_CASE("envelope ignores troughs of an oscillatory norm") {
  // Peaks w^1.5 on integers, deep troughs elsewhere: the envelope must see
  // only the peaks.
  SweepSamples s;
  s.axis = SweepAxis::Frequency;
  for (int k = 2; k <= 400; ++k) {
    const double w = 0.5 * k;
    const bool peak = k % 2 == 0;
    s.points.push_back({w, peak ? std::pow(w, 1.5) : 1e-3, true});
  }
  s.window_lo = 1.0;
  s.window_hi = 200.0;
  FitResult fit = fit_growth_exponent(s);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("infinite samples are excluded from fits") {
  SweepSamples s;
  s.axis = SweepAxis::Frequency;
  for (double w : logspace(1.0, 100.0, 40)) s.points.push_back({w, w, true});
  s.points[5].finite = false;
  s.points[5].value = std::numeric_limits<double>::infinity();
  FitResult fit = fit_growth_exponent(s);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("insufficient samples raise") {
  SweepSamples s;
  s.axis = SweepAxis::Frequency;
  for (double w : {1.0, 2.0, 3.0, 4.0}) s.points.push_back({w, w, true});
  s.window_lo = 1.0;
  s.window_hi = 4.0;
  CHECK_THROWS_AS(fit_growth_exponent(s), NumericError);
  // Enough samples but a single decade bin is still not fittable.
  SweepSamples one_bin;
  one_bin.axis = SweepAxis::Frequency;
  for (double w : linspace(1.0, 9.0, 20)) one_bin.points.push_back({w, w, true});
  one_bin.window_lo = 1.0;
  one_bin.window_hi = 9.0;
  CHECK_THROWS_AS(fit_growth_exponent(one_bin), NumericError);
}

TEST_CASE("pure-power decay model recovers alpha = 2 from t^-1/2") {
  auto s = synthetic(SweepAxis::Time, logspace(10.0, 1000.0, 60),
                     +[](double t) { return std::pow(t, -0.5); });
  DecayFit fit = fit_decay_model(s, DecayModel::PurePower);
  CHECK(fit.alpha_hat == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.residual_power < 1e-10);
}

TEST_CASE("log-corrected model recovers alpha = 3") {
  auto s = synthetic(SweepAxis::Time, logspace(100.0, 1e6, 80),
                     +[](double t) { return std::pow(std::log(t) / t, 1.0 / 3.0); });
  DecayFit fit = fit_decay_model(s, DecayModel::LogCorrected);
  CHECK(fit.alpha_hat == doctest::Approx(3.0).epsilon(0.05 / 3.0));
  CHECK(fit.residual_log < 1e-10);
  // The pure-power reading of the same data is close to 3 but with a visible
  // residual from the log factor.
  CHECK(fit.residual_power > 10.0 * fit.residual_log);
}

TEST_CASE("model comparison reports both residuals") {
  auto s = synthetic(SweepAxis::Time, logspace(10.0, 1000.0, 60),
                     +[](double t) { return 2.0 * std::pow(t, -0.5); });
  DecayFit fit = fit_decay_model(s, DecayModel::PurePower);
  CHECK(fit.residual_power < fit.residual_log);
}

TEST_SUITE_END();
