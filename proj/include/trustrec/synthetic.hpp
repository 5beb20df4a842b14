#pragma once

#include <cstddef>
#include <cstdint>

#include "trustrec/dataset.hpp"

namespace trustrec {

/// Shape of a generated dataset. Ratings come from a low-rank model whose
/// user factors are shared within communities, and friendships mostly stay
/// inside communities, so both rating similarity and social proximity carry
/// signal. Feedback counters are long-tailed.
struct SyntheticParams {
  std::size_t users = 200;
  std::size_t items = 100;
  std::size_t ratings = 2000;
  double mean_friends = 6.0;
  std::size_t communities = 8;
  std::size_t categories = 20;
  /// Exponent of the item popularity power law; 0 gives uniform popularity.
  double popularity_skew = 0.8;
  std::uint64_t seed = 1;
};

/// Provenance is Synthetic. Ratings are capped at users * items.
Dataset make_synthetic(const SyntheticParams& params);

}  // namespace trustrec
