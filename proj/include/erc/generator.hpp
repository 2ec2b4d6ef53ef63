#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "erc/core_model.hpp"

namespace erc {

/// Uniform integer in [lo, hi] by rejection on a 64-bit Mersenne Twister.
/// std::uniform_int_distribution is implementation-defined, this is not.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

/// Random single-resource instance. Draw order, all from
/// std::mt19937_64(seed): (p, h) per activity; capacity, uniform in
/// [max h, 2 max h] unless given; horizon H = max(max p, ceil(horizon_factor *
/// sum(p h) / C)); then per activity s_min uniform in [0, H - p] and a window
/// width uniform in [0, H / 2], s_max = min(s_min + width, H - p).
struct GenParams {
  std::size_t n = 10;
  IntRange p_range{1, 10};
  IntRange h_range{1, 5};
  std::optional<Energy> capacity;
  Ratio horizon_factor{3, 2};
  std::uint64_t seed = 1;
};

CuspInstance gen_random(const GenParams& params);

/// PSPLIB-shaped project: a supersource and a supersink of duration 0 around
/// `jobs` real jobs, each with up to three predecessors among the previous
/// ten jobs, `resources` renewable resources where each job requests a
/// resource with probability 1/2 (amount in request_range) and capacity is
/// uniform in [max request, 2 max request]. Horizon = sum of durations.
struct RcpspGenParams {
  std::size_t jobs = 30;
  std::size_t resources = 4;
  IntRange p_range{1, 10};
  IntRange request_range{1, 10};
  std::uint64_t seed = 1;
};

RcpspInstance gen_rcpsp(const RcpspGenParams& params);

}  // namespace erc
