#include "erc/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace erc {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(rng());  // full 64-bit span
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return lo + static_cast<std::int64_t>(x % range);
  }
}

CuspInstance gen_random(const GenParams& params) {
  if (params.n == 0) throw std::invalid_argument("gen_random: n must be positive");
  if (params.p_range.lo > params.p_range.hi || params.h_range.lo > params.h_range.hi)
    throw std::invalid_argument("gen_random: empty parameter range");
  if (params.p_range.lo < 0 || params.h_range.lo < 0) throw std::invalid_argument("gen_random: negative range");
  if (params.horizon_factor.num <= 0 || params.horizon_factor.den <= 0)
    throw std::invalid_argument("gen_random: horizon factor must be positive");

  std::mt19937_64 rng(params.seed);
  std::vector<Time> p(params.n);
  std::vector<Energy> h(params.n);
  for (std::size_t k = 0; k < params.n; ++k) {
    p[k] = uniform_int(rng, params.p_range.lo, params.p_range.hi);
    h[k] = uniform_int(rng, params.h_range.lo, params.h_range.hi);
  }
  const Energy max_h = *std::max_element(h.begin(), h.end());
  const Energy capacity = params.capacity ? *params.capacity : uniform_int(rng, std::max<Energy>(max_h, 1), 2 * std::max<Energy>(max_h, 1));

  Energy energy = 0;
  for (std::size_t k = 0; k < params.n; ++k) energy += p[k] * h[k];
  const Energy scaled = params.horizon_factor.num * energy;
  const Energy denom = params.horizon_factor.den * capacity;
  const Time horizon = std::max(*std::max_element(p.begin(), p.end()), (scaled + denom - 1) / denom);

  std::vector<Activity> acts;
  acts.reserve(params.n);
  for (std::size_t k = 0; k < params.n; ++k) {
    const Time s_min = uniform_int(rng, 0, horizon - p[k]);
    const Time width = uniform_int(rng, 0, horizon / 2);
    const Time s_max = std::min(s_min + width, horizon - p[k]);
    acts.push_back(Activity::make(k, s_min, s_max, p[k], h[k]));
  }
  return CuspInstance::make(std::move(acts), capacity, Horizon{0, horizon});
}

RcpspInstance gen_rcpsp(const RcpspGenParams& params) {
  if (params.jobs == 0) throw std::invalid_argument("gen_rcpsp: at least one job required");
  std::mt19937_64 rng(params.seed);
  const std::size_t n = params.jobs + 2;
  const std::size_t sink = n - 1;

  std::vector<Time> p(n, 0);
  for (std::size_t k = 1; k < sink; ++k) p[k] = uniform_int(rng, params.p_range.lo, params.p_range.hi);

  std::vector<Precedence> prec;
  std::vector<bool> has_pred(n, false), has_succ(n, false);
  for (std::size_t j = 2; j < sink; ++j) {
    const std::size_t first = j > 10 ? j - 10 : 1;
    std::vector<std::size_t> window;
    for (std::size_t c = first; c < j; ++c) window.push_back(c);
    const auto count = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(std::min<std::size_t>(3, window.size()))));
    for (std::size_t k = 0; k < count; ++k) {
      const auto pick = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(k), static_cast<std::int64_t>(window.size() - 1)));
      std::swap(window[k], window[pick]);
      prec.push_back({window[k], j});
      has_pred[j] = true;
      has_succ[window[k]] = true;
    }
  }
  for (std::size_t j = 1; j < sink; ++j) {
    if (!has_pred[j]) prec.push_back({0, j});
    if (!has_succ[j]) prec.push_back({j, sink});
  }
  std::sort(prec.begin(), prec.end(),
            [](const Precedence& a, const Precedence& b) { return a.pred != b.pred ? a.pred < b.pred : a.succ < b.succ; });

  RcpspInstance inst;
  for (std::size_t r = 0; r < params.resources; ++r) {
    Resource res{0, std::vector<Energy>(n, 0)};
    for (std::size_t k = 1; k < sink; ++k)
      if (uniform_int(rng, 0, 1) == 1) res.heights[k] = uniform_int(rng, params.request_range.lo, params.request_range.hi);
    const Energy max_req = std::max<Energy>(1, *std::max_element(res.heights.begin(), res.heights.end()));
    res.capacity = uniform_int(rng, max_req, 2 * max_req);
    inst.resources.push_back(std::move(res));
  }
  Time horizon = 0;
  for (Time d : p) horizon += d;
  inst.horizon = {0, horizon};
  for (std::size_t k = 0; k < n; ++k) {
    const Energy h = inst.resources.empty() ? 0 : inst.resources[0].heights[k];
    inst.activities.push_back(Activity::make(k, 0, horizon - p[k], p[k], h));
  }
  inst.precedences = std::move(prec);
  return inst;
}

}  // namespace erc
