#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace ugrowth {

/// Applies `fn` to every item, optionally on several threads. Results keep
/// the input order, so callers that merge them sequentially stay
/// deterministic regardless of `threads`.
template <class T, class Fn>
auto ordered_map(std::span<const T> items, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
  using Result = std::invoke_result_t<Fn&, const T&>;
  std::vector<Result> out(items.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < items.size(); i += threads) out[i] = fn(items[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ugrowth
