#include "qcs/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace qcs {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t nw = std::min<std::size_t>(
      count, static_cast<std::size_t>(std::max(workers, 1)));
  if (nw <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nw);
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    // Contiguous blocks: worker w owns [begin, end).
    const std::size_t begin = count * w / nw;
    const std::size_t end = count * (w + 1) / nw;
    pool.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qcs
