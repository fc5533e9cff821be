#pragma once

// In-place binary-tree inclusive scan for a single thread block.
//
// Upward pass: round js = 2, 4, ... while js <= N adds values[i - js/2] into
// values[i] for i = js-1, 2js-1, ... < N. Downward pass: round js adds
// values[i - js/2] into values[i] for i = js + js/2 - 1, stepping by js, with js
// halving down to 2. The downward pass starts at the largest js whose index set
// is non-empty, so every executed round does work and ends with one barrier.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cellpair {

struct ScanStats {
  std::int64_t sync_count = 0;
  std::int64_t updates_up = 0;
  std::int64_t updates_down = 0;

  friend bool operator==(const ScanStats&, const ScanStats&) = default;
};

enum class ScanPass { up, down };

/// One barrier-delimited round of the block scan, as seen by an observer.
struct ScanRound {
  ScanPass pass = ScanPass::up;
  std::int64_t step = 0;                   // js
  std::vector<std::int64_t> writes;        // indices updated this round
  std::vector<std::int64_t> reads;         // indices read (besides the written ones)
  std::vector<std::int64_t> writer_thread; // parallel to writes
};

namespace detail {

inline std::int64_t first_down_step(std::int64_t up_final_step, std::int64_t n) {
  std::int64_t js = up_final_step / 2;
  while (js > 1 && js + js / 2 - 1 >= n) js /= 2;
  return js;
}

}  // namespace detail

/// Sequential form. `on_round` (optional) sees the array after each round.
template <typename T>
void scan_inplace(std::span<T> values,
                  const std::function<void(ScanPass, std::int64_t, std::span<const T>)>& on_round = {}) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::int64_t js = 2;
  while (js <= n) {
    const std::int64_t half = js / 2;
    for (std::int64_t i = js - 1; i < n; i += js) values[i] += values[i - half];
    if (on_round) on_round(ScanPass::up, js, values);
    js *= 2;
  }
  for (js = detail::first_down_step(js, n); js > 1; js /= 2) {
    const std::int64_t half = js / 2;
    for (std::int64_t i = js + half - 1; i < n; i += js) values[i] += values[i - half];
    if (on_round) on_round(ScanPass::down, js, values);
  }
}

/// Block-parallel form: thread t of `threads` handles indices first + t*js,
/// first + (t + threads)*js, ... in every round, then all threads synchronize.
template <typename T>
ScanStats scan_block_simulated(std::span<T> values, std::int64_t threads,
                               const std::function<void(const ScanRound&)>& on_round = {}) {
  ScanStats stats;
  if (threads < 1) threads = 1;
  const auto n = static_cast<std::int64_t>(values.size());

  auto run_round = [&](ScanPass pass, std::int64_t js, std::int64_t first) {
    const std::int64_t half = js / 2;
    ScanRound trace;
    if (on_round) {
      trace.pass = pass;
      trace.step = js;
    }
    std::int64_t updates = 0;
    for (std::int64_t t = 0; t < threads; ++t) {
      for (std::int64_t i = first + t * js; i < n; i += threads * js) {
        values[i] += values[i - half];
        ++updates;
        if (on_round) {
          trace.writes.push_back(i);
          trace.reads.push_back(i - half);
          trace.writer_thread.push_back(t);
        }
      }
    }
    ++stats.sync_count;
    (pass == ScanPass::up ? stats.updates_up : stats.updates_down) += updates;
    if (on_round) on_round(trace);
  };

  std::int64_t js = 2;
  while (js <= n) {
    run_round(ScanPass::up, js, js - 1);
    js *= 2;
  }
  for (js = detail::first_down_step(js, n); js > 1; js /= 2) {
    run_round(ScanPass::down, js, js + js / 2 - 1);
  }
  return stats;
}

template <typename T>
ScanStats scan_block_simulated(std::vector<T>& values, std::int64_t threads) {
  return scan_block_simulated(std::span<T>(values), threads);
}

}  // namespace cellpair
