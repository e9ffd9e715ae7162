#pragma once

#include <cstddef>

#include "infocap/channels/scenario.hpp"
#include "infocap/mind/decoder.hpp"
#include "infocap/sampling/rng.hpp"

namespace infocap::mind {

/// Symbol error rates of three decoders on the same transmitted symbols and
/// noise realizations, plus the decoder's own entropy/error estimates.
struct SerComparison {
  std::size_t n = 0;
  double ser_mind = 0;
  double ser_map = 0;
  double ser_maxl = 0;
  EntropyEstimate estimate;
};

/// Monte Carlo over n symbols. MAP and MaxL use the channel's exact
/// likelihood; ConfigError if the channel has none.
SerComparison compare_decoders(const MindDecoder& decoder, const channels::Channel& channel,
                               std::size_t n, sampling::Rng& rng);

}  // namespace infocap::mind
