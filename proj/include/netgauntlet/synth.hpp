#pragma once

#include <cstdint>

#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

/// Deterministic KDD99-format traffic synthesizer used when no real capture
/// file is supplied. Records follow per-attack templates (flood, syn-scan,
/// sweep, password-guess, ...) with correlated rate groups and a small,
/// size-proportional set of contradictory records so that classifiers face a
/// nonzero error floor. Same (n, seed) always yields the same dataset.
Dataset synth_kdd99(std::size_t n, std::uint64_t seed, const LabelScheme& scheme);

/// The sample size and generator seed the evaluation tooling defaults to.
inline constexpr std::size_t kSynthDefaultRecords = 10000;
inline constexpr std::uint64_t kSynthDefaultSeed = 77;

} // namespace netgauntlet
