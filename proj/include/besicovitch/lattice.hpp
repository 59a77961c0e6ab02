#pragma once

// Exact enumeration of the digit lattices
//
//   V_n = { sum_{k<n} (alpha_k + u*beta_k) b^k }
//
// for rational u = p/q. Each point is identified by the integer key
// q*A + p*B, where A = sum alpha_k b^k and B = sum beta_k b^k; two points
// have the same value iff they have the same key, so every collision test
// below is exact integer comparison.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "besicovitch/digits.hpp"
#include "besicovitch/kernels.hpp"

namespace besicovitch {

using kernels::Key;

/// Resource caps. Materialized enumeration stores every key; streaming
/// counts distinct keys window by window.
struct EnumLimits {
  unsigned max_level = 12;
  std::uint64_t max_points = std::uint64_t{1} << 24;
  unsigned max_stream_level = 15;
  std::uint64_t max_stream_points = std::uint64_t{1} << 30;
};

/// Which kernel family runs the enumeration.
enum class Backend { Serial, Parallel };

struct LatticePoint {
  std::uint64_t a = 0;  // sum of alpha digits times b^k
  std::uint64_t b = 0;  // sum of beta digits times b^k
  unsigned level = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// q*A + p*B as an exact integer.
BigInt value_key(const Ratio& u, const LatticePoint& point);

/// Per-position integer contributions q*alpha + p*beta of a system at u,
/// in the order of system.pairs(). Throws ResourceError if the level-n key
/// range does not fit in 64 bits.
std::vector<Key> key_contributions(const DigitSystem& system, const Ratio& u,
                                   unsigned n);

/// Sorted distinct keys of V_n with their multiplicities.
struct ValueMultiset {
  unsigned level = 0;
  std::vector<Key> keys;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t distinct() const { return keys.size(); }
  kernels::Histogram multiplicity_histogram() const;
  bool has_collision() const { return distinct() < total; }
};

ValueMultiset enumerate_vn(const DigitSystem& system, const Ratio& u,
                           unsigned n, const EnumLimits& limits = {},
                           Backend backend = Backend::Parallel);

/// Every key of V_n with multiplicity, sorted.
std::vector<Key> sorted_keys(const DigitSystem& system, const Ratio& u,
                             unsigned n, const EnumLimits& limits = {},
                             Backend backend = Backend::Parallel);

/// nu_n and the multiplicity histogram without materializing V_n.
kernels::DistinctStats count_distinct(const DigitSystem& system,
                                      const Ratio& u, unsigned n,
                                      const EnumLimits& limits = {},
                                      Backend backend = Backend::Parallel);

/// All (A, B) with q*A + p*B == key at level n, in digit-search order.
std::vector<LatticePoint> representations(const DigitSystem& system,
                                          const Ratio& u, unsigned n,
                                          const BigInt& key);

struct CollisionReport {
  bool found = false;
  unsigned levels_scanned = 0;
  std::optional<unsigned> first_level;
  std::optional<std::pair<LatticePoint, LatticePoint>> witness;
  std::optional<Key> witness_key;
  std::optional<std::uint64_t> nu;
  kernels::Histogram multiplicity_histogram;
};

/// Scans n = 1..n_max and stops at the first level with a multiple point.
/// found == false only means no collision up to n_max.
CollisionReport first_collision(const DigitSystem& system, const Ratio& u,
                                unsigned n_max, const EnumLimits& limits = {},
                                Backend backend = Backend::Parallel);

/// Builds V_n as exact rationals in three ways (iterated Minkowski sum,
/// most-significant-first digit strings, least-significant-first digit
/// pairs) and checks that they agree with each other and with the key
/// enumeration. Oracle scale only.
bool vn_equivalent_forms(const DigitSystem& system, const Ratio& u,
                         unsigned n);

/// Checks keys(V_{n+1}) == keys(V_n) + b^n keys(V_1) as multisets.
bool self_affine_step(const DigitSystem& system, const Ratio& u, unsigned n,
                      const EnumLimits& limits = {});

}  // namespace besicovitch
