#include "polystab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace polystab {

namespace {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw NumericError("degenerate fit: all abscissae coincide");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / n);
  return f;
}

std::vector<SweepPoint> window_samples(const SweepSamples& samples) {
  std::vector<SweepPoint> pts;
  for (const SweepPoint& p : samples.points) {
    if (p.finite && p.value > 0 && p.param >= samples.window_lo && p.param <= samples.window_hi) {
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

FitResult fit_growth_exponent(SweepSamples& samples) {
  samples.validate();
  std::vector<SweepPoint> pts = window_samples(samples);
  if (pts.size() < 8) throw NumericError("insufficient samples: need 8 finite points in window");

  // Per-decade maxima keyed by floor(log10 param), located at their argmax.
  std::map<int, SweepPoint> envelope;
  for (const SweepPoint& p : pts) {
    int bin = static_cast<int>(std::floor(std::log10(p.param)));
    auto it = envelope.find(bin);
    if (it == envelope.end() || p.value > it->second.value) envelope[bin] = p;
  }
  if (envelope.size() < 2) {
    throw NumericError("insufficient samples: window spans fewer than two decade bins");
  }

  std::vector<double> x, y;
  for (const auto& [bin, p] : envelope) {
    x.push_back(std::log(p.param));
    y.push_back(std::log(p.value));
  }
  LineFit lf = least_squares(x, y);
  FitResult fr{lf.slope, lf.intercept, lf.residual_rms};
  samples.fit = fr;
  return fr;
}

DecayFit fit_decay_model(SweepSamples& samples, DecayModel model) {
  samples.validate();
  if (samples.axis != SweepAxis::Time) throw InvariantError("decay fit needs a time sweep");
  std::vector<SweepPoint> pts = window_samples(samples);
  if (pts.size() < 8) throw NumericError("insufficient samples: need 8 finite points in window");

  std::vector<double> lt, lv;
  for (const SweepPoint& p : pts) {
    lt.push_back(std::log(p.param));
    lv.push_back(std::log(p.value));
  }
  LineFit power = least_squares(lt, lv);

  // log((ln t)/t) abscissa; defined only for t > 1.
  std::vector<double> xl, yl;
  for (const SweepPoint& p : pts) {
    if (p.param > 1.0) {
      xl.push_back(std::log(std::log(p.param) / p.param));
      yl.push_back(std::log(p.value));
    }
  }
  LineFit logc;
  bool have_logc = xl.size() >= 8;
  if (have_logc) logc = least_squares(xl, yl);

  DecayFit out;
  out.model = model;
  out.residual_power = power.residual_rms;
  out.residual_log = have_logc ? logc.residual_rms : std::numeric_limits<double>::quiet_NaN();
  if (model == DecayModel::PurePower) {
    out.slope = power.slope;
    out.alpha_hat =
        power.slope < 0 ? -1.0 / power.slope : std::numeric_limits<double>::infinity();
    samples.fit = FitResult{power.slope, power.intercept, power.residual_rms};
  } else {
    if (!have_logc) {
      throw NumericError("insufficient samples: log-corrected fit needs 8 points with t > 1");
    }
    out.slope = logc.slope;
    out.alpha_hat = logc.slope > 0 ? 1.0 / logc.slope : std::numeric_limits<double>::infinity();
    samples.fit = FitResult{logc.slope, logc.intercept, logc.residual_rms};
  }
  return out;
}

}  // namespace polystab
