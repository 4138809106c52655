#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "polystab/block.hpp"
#include "polystab/spectral.hpp"
#include "polystab/sweeps.hpp"
#include "polystab/verdict.hpp"
#include "polystab/wave.hpp"

namespace polystab {

inline constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// Complex scalars serialize as [re, im]; plain numbers are accepted on input
// as purely real. Matrices are nested row arrays of those.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json generator_to_json(const DiagonalGenerator& gen);
DiagonalGenerator generator_from_json(const json& j);

Rational rational_from_json(const json& j);   // number or "p/q" string
DecayRate decay_rate_from_json(const json& j);  // "exp" or a rational
json decay_rate_to_json(const DecayRate& r);

json wave_spec_to_json(const WaveSpec& spec);
WaveSpec wave_spec_from_json(const json& j);

/// A diagonal block resolved from its JSON spec: a dense matrix plus the
/// generator when the block is diagonal. Accepted forms:
///   {"matrix": [[...]]}
///   {"generator": {"eigenvalues": ...}}
///   {"name": "shifted_imaginary"|"polynomial_damped"|"wave2d"|"wave1d_placed",
///    "params": {...}}
struct ResolvedBlock {
  Matrix matrix;
  std::optional<DiagonalGenerator> generator;
};
ResolvedBlock resolve_block(const json& j);

BlockSystem block_system_from_json(const json& j);
json block_system_to_json(const BlockSystem& sys);

json verdict_to_json(const StabilityVerdict& v);
json spectral_to_json(const SpectralReport& r);
json fit_to_json(const FitResult& f, double window_lo, double window_hi);

/// CSV with header "param,value,finite" (frequency sweeps) or "t,value,finite"
/// (time sweeps); one row per sample, %.17g formatting, finite as 0/1.
void write_sweep_csv(std::ostream& os, const SweepSamples& samples);
SweepSamples read_sweep_csv(std::istream& is);

/// FNV-1a 64-bit hash of the canonical (sorted-key) dump, as 16 hex digits.
/// Stable under key reordering of the input document.
std::string digest_of(const json& j);

std::string now_iso8601();

}  // namespace polystab
