#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <type_traits>
#include <vector>

namespace msf {

/// Runs body(acc, i) for i in [0, count), split into contiguous blocks across `threads`
/// workers, each with its own accumulator; accumulators are merged in block order.
/// The result is independent of the thread count whenever merge is associative and body
/// depends only on i.
template <typename MakeAcc, typename Body, typename Merge, typename Acc = std::invoke_result_t<MakeAcc>>
Acc parallel_accumulate(std::uint64_t count, int threads, MakeAcc make_acc, Body body, Merge merge) {
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1 || count < 2 * workers) {
    Acc acc = make_acc();
    for (std::uint64_t i = 0; i < count; ++i) body(acc, i);
    return acc;
  }
  std::vector<Acc> partial;
  partial.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) partial.push_back(make_acc());
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t begin = count * w / workers;
        const std::uint64_t end = count * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) body(partial[w], i);
      });
    }
  }
  Acc acc = std::move(partial[0]);
  for (std::uint64_t w = 1; w < workers; ++w) merge(acc, partial[w]);
  return acc;
}

}  // namespace msf
