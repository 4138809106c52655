#pragma once

#include "polystab/sweeps.hpp"
#include "polystab/types.hpp"

namespace polystab {

/// Least-squares slope of log(value) against log(parameter) over the sample
/// window, fitted on the upper envelope: one (argmax, max) point per decade
/// bin. The envelope matches the O(.) reading of a growth bound — peaks of an
/// oscillatory resolvent norm, not its troughs; a plain fit on all points
/// would bias the exponent low. The slope is the growth exponent estimate.
///
/// Requires at least 8 finite samples in the window spanning at least two
/// decade bins; throws NumericError("insufficient samples") otherwise.
/// The result is also stored in samples.fit.
FitResult fit_growth_exponent(SweepSamples& samples);

enum class DecayModel { PurePower, LogCorrected };

struct DecayFit {
  DecayModel model = DecayModel::PurePower;
  double alpha_hat = 0;       // for the chosen model
  double slope = 0;           // raw regression slope of the chosen model
  double residual_power = 0;  // RMS log-residual of the t^{-1/alpha} fit
  double residual_log = 0;    // RMS log-residual of the ((ln t)/t)^{1/alpha} fit
};

/// Fits a decay curve (value ~ ||T(t) A^{-1}||) over the sample window.
/// PurePower regresses log(value) on log(t), giving alpha_hat = -1/slope.
/// LogCorrected regresses log(value) on log((ln t)/t), giving
/// alpha_hat = 1/slope; only samples with t > 1 enter that regression.
/// Both residuals are always computed and reported, so the two decay models
/// can be compared without rerunning.
DecayFit fit_decay_model(SweepSamples& samples, DecayModel model);

}  // namespace polystab
