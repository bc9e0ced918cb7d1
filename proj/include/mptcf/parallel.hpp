#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace mptcf {

/// Runs fn(begin, end) over contiguous row blocks. Each row's computation must
/// be self-contained and write only that row, which makes the result identical
/// for every worker count.
inline void parallel_rows(long rows, int threads,
                          const std::function<void(long, long)>& fn) {
  if (rows <= 0) return;
  if (threads < 1) threads = 1;
  const long nblocks = std::min<long>(threads, rows);
  if (nblocks == 1) {
    fn(0, rows);
    return;
  }
  const long chunk = (rows + nblocks - 1) / nblocks;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nblocks));
  for (long b = 0; b < nblocks; ++b) {
    const long lo = b * chunk;
    const long hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mptcf
