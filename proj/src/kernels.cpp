#include "besicovitch/kernels.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include <omp.h>

namespace besicovitch::kernels {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kParallelThreshold = 1u << 15;

struct PruneTables {
  std::vector<Key> pow;      // b^p
  std::vector<Key> rem_min;  // min_c * sum_{k<p} b^k
  std::vector<Key> rem_max;  // max_c * sum_{k<p} b^k
};

PruneTables prune_tables(std::span<const Key> contribs, unsigned base,
                         unsigned n) {
  const Key cmin = *std::min_element(contribs.begin(), contribs.end());
  const Key cmax = *std::max_element(contribs.begin(), contribs.end());
  PruneTables t;
  t.pow.resize(n + 1);
  t.rem_min.resize(n + 1);
  t.rem_max.resize(n + 1);
  u128 pw = 1;
  u128 geo = 0;
  for (unsigned p = 0; p <= n; ++p) {
    t.pow[p] = static_cast<Key>(pw);
    t.rem_min[p] = static_cast<Key>(cmin * geo);
    t.rem_max[p] = static_cast<Key>(cmax * geo);
    geo += pw;
    pw *= base;
  }
  return t;
}

// Pruned top-down search over digit positions; calls emit(key, path) for
// every key in [lo, hi).
class WindowSearch {
 public:
  WindowSearch(std::span<const Key> contribs, const PruneTables& tables,
               unsigned n, Key lo, Key hi)
      : contribs_(contribs), t_(tables), n_(n), lo_(lo), hi_(hi), path_(n) {}

  template <typename Emit>
  void run(Emit&& emit) {
    if (n_ == 0) {
      if (lo_ == 0 && hi_ > 0) emit(Key{0}, path_);
      return;
    }
    descend(static_cast<int>(n_) - 1, 0, emit);
  }

 private:
  template <typename Emit>
  void descend(int pos, Key partial, Emit& emit) {
    const Key pw = t_.pow[pos];
    for (std::uint32_t i = 0; i < contribs_.size(); ++i) {
      const Key s = partial + contribs_[i] * pw;
      if (s + t_.rem_min[pos] >= hi_ || s + t_.rem_max[pos] < lo_) continue;
      path_[pos] = i;
      if (pos == 0) {
        emit(s, path_);
      } else {
        descend(pos - 1, s, emit);
      }
    }
  }

  std::span<const Key> contribs_;
  const PruneTables& t_;
  unsigned n_;
  Key lo_;
  Key hi_;
  DigitPath path_;
};

std::vector<Key> window_bounds(Key max_key_value, std::uint64_t windows) {
  windows = std::max<std::uint64_t>(windows, 1);
  std::vector<Key> bounds(windows + 1);
  const u128 span = static_cast<u128>(max_key_value) + 1;
  for (std::uint64_t w = 0; w <= windows; ++w) {
    bounds[w] = static_cast<Key>(span * w / windows);
  }
  return bounds;
}

DistinctStats window_stats(std::span<const Key> contribs,
                           const PruneTables& tables, unsigned n, Key lo,
                           Key hi) {
  std::vector<Key> keys;
  WindowSearch search(contribs, tables, n, lo, hi);
  search.run([&](Key k, const DigitPath&) { keys.push_back(k); });
  std::sort(keys.begin(), keys.end());
  return stats_of_sorted(keys);
}

void accumulate(DistinctStats& into, const DistinctStats& part) {
  into.total += part.total;
  into.distinct += part.distinct;
  for (const auto& [mult, count] : part.multiplicity) {
    into.multiplicity[mult] += count;
  }
}

// Merges `segments[i]` (each sorted, values shifted by offsets[i]) into out.
void merge_segments(std::span<const std::pair<const Key*, const Key*>> segments,
                    std::span<const Key> offsets, Key* out) {
  const std::size_t m = segments.size();
  std::vector<const Key*> head(m);
  std::vector<const Key*> tail(m);
  for (std::size_t i = 0; i < m; ++i) {
    head[i] = segments[i].first;
    tail[i] = segments[i].second;
  }
  if (m <= 8) {
    for (;;) {
      std::size_t best = m;
      Key best_val = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (head[i] == tail[i]) continue;
        const Key v = *head[i] + offsets[i];
        if (best == m || v < best_val) {
          best = i;
          best_val = v;
        }
      }
      if (best == m) return;
      *out++ = best_val;
      ++head[best];
    }
  }
  using Item = std::pair<Key, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < m; ++i) {
    if (head[i] != tail[i]) heap.emplace(*head[i] + offsets[i], i);
  }
  while (!heap.empty()) {
    const auto [v, i] = heap.top();
    heap.pop();
    *out++ = v;
    if (++head[i] != tail[i]) heap.emplace(*head[i] + offsets[i], i);
  }
}

// out = sorted union (with multiplicity) of cur + offsets[i] over all i.
void multiway_merge(const std::vector<Key>& cur, std::span<const Key> offsets,
                    std::vector<Key>& out) {
  const std::size_t m = offsets.size();
  out.resize(cur.size() * m);
  const Key max_off = *std::max_element(offsets.begin(), offsets.end());
  const Key max_val = cur.back() + max_off;

  std::uint64_t chunks = 1;
  if (out.size() >= kParallelThreshold) {
    chunks = static_cast<std::uint64_t>(omp_get_max_threads()) * 8;
  }
  const std::vector<Key> split = window_bounds(max_val, chunks);

  // Index of the first element of run i whose shifted value is >= v.
  auto first_at_least = [&](std::size_t i, Key v) -> std::size_t {
    if (v <= offsets[i]) return 0;
    return static_cast<std::size_t>(
        std::lower_bound(cur.begin(), cur.end(), v - offsets[i]) -
        cur.begin());
  };

  const auto chunk_count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1) if (chunks > 1)
  for (std::int64_t c = 0; c < chunk_count; ++c) {
    const Key lo = split[c];
    const bool last = c + 1 == chunk_count;
    std::vector<std::pair<const Key*, const Key*>> segs(m);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t b = first_at_least(i, lo);
      const std::size_t e = last ? cur.size() : first_at_least(i, split[c + 1]);
      pos += b;
      segs[i] = {cur.data() + b, cur.data() + e};
    }
    merge_segments(segs, offsets, out.data() + pos);
  }
}

}  // namespace

Key max_key(std::span<const Key> contribs, unsigned base, unsigned n,
            bool* overflow) {
  const Key cmax = *std::max_element(contribs.begin(), contribs.end());
  u128 geo = 0;
  u128 pw = 1;
  bool over = false;
  for (unsigned k = 0; k < n; ++k) {
    geo += pw;
    pw *= base;
    if (geo > UINT64_MAX || pw > (static_cast<u128>(1) << 100)) over = true;
  }
  const u128 top = static_cast<u128>(cmax) * geo;
  if (over || top > UINT64_MAX / 2) over = true;
  if (overflow != nullptr) *overflow = over;
  return over ? 0 : static_cast<Key>(top);
}

std::uint64_t point_count(std::size_t m, unsigned n, bool* overflow) {
  u128 total = 1;
  bool over = false;
  for (unsigned k = 0; k < n; ++k) {
    total *= m;
    if (total > UINT64_MAX) {
      over = true;
      break;
    }
  }
  if (overflow != nullptr) *overflow = over;
  return over ? 0 : static_cast<std::uint64_t>(total);
}

DistinctStats stats_of_sorted(std::span<const Key> sorted) {
  DistinctStats st;
  st.total = sorted.size();
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    ++st.distinct;
    ++st.multiplicity[j - i];
    i = j;
  }
  return st;
}

std::vector<DigitPath> paths_to_key(std::span<const Key> contribs,
                                    unsigned base, unsigned n, Key key) {
  const PruneTables tables = prune_tables(contribs, base, n);
  std::vector<DigitPath> out;
  WindowSearch search(contribs, tables, n, key, key + 1);
  search.run([&](Key, const DigitPath& path) { out.push_back(path); });
  return out;
}

std::optional<Key> first_duplicate(std::span<const Key> contribs,
                                   unsigned base, unsigned n,
                                   std::uint64_t windows) {
  const PruneTables tables = prune_tables(contribs, base, n);
  const std::vector<Key> bounds =
      window_bounds(max_key(contribs, base, n, nullptr), windows);
  for (std::size_t w = 0; w + 1 < bounds.size(); ++w) {
    std::vector<Key> keys;
    WindowSearch search(contribs, tables, n, bounds[w], bounds[w + 1]);
    search.run([&](Key k, const DigitPath&) { keys.push_back(k); });
    std::sort(keys.begin(), keys.end());
    const auto dup = std::adjacent_find(keys.begin(), keys.end());
    if (dup != keys.end()) return *dup;
  }
  return std::nullopt;
}

namespace serial {

std::vector<Key> sorted_keys(std::span<const Key> contribs, unsigned base,
                             unsigned n) {
  bool overflow = false;
  const std::uint64_t total = point_count(contribs.size(), n, &overflow);
  if (overflow) throw std::length_error("sorted_keys: point count overflow");
  std::vector<Key> pow(n);
  Key pw = 1;
  for (unsigned k = 0; k < n; ++k) {
    pow[k] = pw;
    pw *= base;
  }
  std::vector<Key> keys;
  keys.reserve(total);
  std::vector<std::uint32_t> digit(n, 0);
  const auto m = static_cast<std::uint32_t>(contribs.size());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Key sum = 0;
    for (unsigned k = 0; k < n; ++k) sum += contribs[digit[k]] * pow[k];
    keys.push_back(sum);
    for (unsigned k = 0; k < n; ++k) {
      if (++digit[k] < m) break;
      digit[k] = 0;
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

DistinctStats windowed_stats(std::span<const Key> contribs, unsigned base,
                             unsigned n, std::uint64_t windows) {
  const PruneTables tables = prune_tables(contribs, base, n);
  const std::vector<Key> bounds =
      window_bounds(max_key(contribs, base, n, nullptr), windows);
  DistinctStats st;
  for (std::size_t w = 0; w + 1 < bounds.size(); ++w) {
    accumulate(st, window_stats(contribs, tables, n, bounds[w], bounds[w + 1]));
  }
  return st;
}

unsigned __int128 union_length(std::span<const Key> lows, Key width) {
  if (lows.empty()) return 0;
  u128 total = 0;
  u128 run_lo = lows.front();
  u128 run_hi = run_lo + width;
  for (std::size_t i = 1; i < lows.size(); ++i) {
    const u128 lo = lows[i];
    const u128 hi = lo + width;
    if (lo > run_hi) {
      total += run_hi - run_lo;
      run_lo = lo;
      run_hi = hi;
    } else {
      run_hi = std::max(run_hi, hi);
    }
  }
  return total + (run_hi - run_lo);
}

}  // namespace serial

namespace omp {

std::vector<Key> sorted_keys(std::span<const Key> contribs, unsigned base,
                             unsigned n) {
  std::vector<Key> cur{0};
  std::vector<Key> next;
  std::vector<Key> offsets(contribs.size());
  Key shift = 1;
  for (unsigned level = 0; level < n; ++level) {
    for (std::size_t i = 0; i < contribs.size(); ++i) {
      offsets[i] = contribs[i] * shift;
    }
    multiway_merge(cur, offsets, next);
    cur.swap(next);
    shift *= base;
  }
  return cur;
}

DistinctStats windowed_stats(std::span<const Key> contribs, unsigned base,
                             unsigned n, std::uint64_t windows) {
  const PruneTables tables = prune_tables(contribs, base, n);
  const std::vector<Key> bounds =
      window_bounds(max_key(contribs, base, n, nullptr), windows);
  const auto count = static_cast<std::int64_t>(bounds.size() - 1);
  std::vector<DistinctStats> parts(bounds.size() - 1);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t w = 0; w < count; ++w) {
    parts[w] = window_stats(contribs, tables, n, bounds[w], bounds[w + 1]);
  }
  DistinctStats st;
  for (const auto& part : parts) accumulate(st, part);
  return st;
}

unsigned __int128 union_length(std::span<const Key> lows, Key width) {
  if (lows.empty()) return 0;
  const std::size_t gaps = lows.size() - 1;
  const std::size_t chunks =
      gaps < kParallelThreshold
          ? 1
          : static_cast<std::size_t>(omp_get_max_threads()) * 4;
  std::vector<u128> partial(chunks, 0);
  const auto chunk_count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (std::int64_t c = 0; c < chunk_count; ++c) {
    const std::size_t b = gaps * c / chunks;
    const std::size_t e = gaps * (c + 1) / chunks;
    u128 sum = 0;
    for (std::size_t i = b; i < e; ++i) {
      sum += std::min<Key>(width, lows[i + 1] - lows[i]);
    }
    partial[c] = sum;
  }
  u128 total = width;
  for (u128 p : partial) total += p;
  return total;
}

}  // namespace omp

}  // namespace besicovitch::kernels
