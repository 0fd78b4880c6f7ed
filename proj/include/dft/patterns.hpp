#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dft/algebra.hpp"

namespace dft {

// Finite abstraction of a valuation: which variables never occur, and the
// order/equality classes of the rest (earlier block = strictly smaller finite
// time, same block = equal time). Every operator selects one of its inputs,
// 0, or never, based only on comparisons, so a term's value is determined by
// the pattern; checking one representative per pattern decides equivalence
// over all valuations with strictly positive finite times.
struct ComparisonPattern {
  std::vector<std::string> never_set;
  std::vector<std::vector<std::string>> blocks;

  // Block i maps to time i+1, keeping finite times strictly above 0.
  Valuation representative() const {
    Valuation v;
    for (const auto& name : never_set) v[name] = FailureTime::never();
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (const auto& name : blocks[i]) v[name] = FailureTime(static_cast<double>(i + 1));
    return v;
  }
};

namespace detail {

inline void enumerate_ordered_partitions(const std::vector<std::string>& elems, std::size_t idx,
                                         std::vector<std::vector<std::string>>& blocks,
                                         const std::function<bool(const std::vector<std::vector<std::string>>&)>& emit,
                                         bool& stop) {
  if (stop) return;
  if (idx == elems.size()) {
    if (!emit(blocks)) stop = true;
    return;
  }
  const std::string& x = elems[idx];
  for (std::size_t j = 0; j < blocks.size() && !stop; ++j) {
    blocks[j].push_back(x);
    enumerate_ordered_partitions(elems, idx + 1, blocks, emit, stop);
    blocks[j].pop_back();
  }
  // New singleton block, rightmost position first so that strictly increasing
  // assignments come before reversed ones.
  for (std::size_t p = blocks.size() + 1; p-- > 0 && !stop;) {
    blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(p), {x});
    enumerate_ordered_partitions(elems, idx + 1, blocks, emit, stop);
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(p));
  }
}

}  // namespace detail

// Visits every pattern over the given variables; never-sets in increasing
// size, ordered partitions of the rest. The visitor returns false to stop.
inline void enumerate_patterns(const std::vector<std::string>& vars,
                               const std::function<bool(const ComparisonPattern&)>& visit) {
  const std::size_t n = vars.size();
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  bool stop = false;
  for (std::uint64_t mask : masks) {
    if (stop) return;
    ComparisonPattern p;
    std::vector<std::string> finite;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i))
        p.never_set.push_back(vars[i]);
      else
        finite.push_back(vars[i]);
    }
    if (finite.empty()) {
      if (!visit(p)) return;
      continue;
    }
    std::vector<std::vector<std::string>> blocks;
    detail::enumerate_ordered_partitions(
        finite, 0, blocks,
        [&](const std::vector<std::vector<std::string>>& bs) {
          ComparisonPattern q;
          q.never_set = p.never_set;
          q.blocks = bs;
          return visit(q);
        },
        stop);
  }
}

}  // namespace dft
