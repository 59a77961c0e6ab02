#pragma once

// Integer kernels behind lattice enumeration and cover measures.
//
// A level-n lattice is described by its per-position digit contributions
// c_0..c_{m-1} (already scaled to integer keys) and the base b: the keys
// are all sums  sum_{k<n} c_{i_k} b^k  counted with multiplicity. Every
// kernel has a serial reference in `serial::` and an OpenMP version in
// `omp::`; both return bit-identical results for any thread count.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace besicovitch::kernels {

using Key = std::uint64_t;
using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Distinct-key statistics of one lattice level.
struct DistinctStats {
  std::uint64_t total = 0;
  std::uint64_t distinct = 0;
  Histogram multiplicity;  // multiplicity -> number of keys with it
  friend bool operator==(const DistinctStats&, const DistinctStats&) = default;
};

/// Digit-path witness for one key: the contribution index chosen at each
/// position, least significant first.
using DigitPath = std::vector<std::uint32_t>;

/// Largest key of a level-n lattice, or 0 on overflow of 64 bits.
Key max_key(std::span<const Key> contribs, unsigned base, unsigned n,
            bool* overflow);

/// Number of keys, m^n; sets *overflow when it exceeds 64 bits.
std::uint64_t point_count(std::size_t m, unsigned n, bool* overflow);

/// Statistics of a sorted key vector.
DistinctStats stats_of_sorted(std::span<const Key> sorted);

/// All digit paths whose key equals `key` (depth-first, lexicographic in the
/// most significant position).
std::vector<DigitPath> paths_to_key(std::span<const Key> contribs,
                                    unsigned base, unsigned n, Key key);

/// Smallest key with multiplicity > 1, scanning key windows in order.
std::optional<Key> first_duplicate(std::span<const Key> contribs,
                                   unsigned base, unsigned n,
                                   std::uint64_t windows);

namespace serial {

/// Every key of the level-n lattice, sorted ascending, with multiplicity.
/// Odometer enumeration followed by a single sort.
std::vector<Key> sorted_keys(std::span<const Key> contribs, unsigned base,
                             unsigned n);

/// Distinct statistics without materializing the whole lattice: the key
/// range is cut into `windows` slices and each slice is filled by a pruned
/// top-down digit search.
DistinctStats windowed_stats(std::span<const Key> contribs, unsigned base,
                             unsigned n, std::uint64_t windows);

/// Length of the union of the closed intervals [x, x + width] for the sorted
/// left endpoints `lows`, by endpoint sweep.
unsigned __int128 union_length(std::span<const Key> lows, Key width);

}  // namespace serial

namespace omp {

/// Same result as serial::sorted_keys; built level by level as a multiway
/// merge of shifted copies, each merge split across threads by key range.
std::vector<Key> sorted_keys(std::span<const Key> contribs, unsigned base,
                             unsigned n);

DistinctStats windowed_stats(std::span<const Key> contribs, unsigned base,
                             unsigned n, std::uint64_t windows);

/// Same result as serial::union_length, as a gap-sum reduction.
unsigned __int128 union_length(std::span<const Key> lows, Key width);

}  // namespace omp

}  // namespace besicovitch::kernels
