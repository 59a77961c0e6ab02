#pragma once

// Depth-n interval covers of E_u, their exact union measure and the
// box-dimension estimates derived from them.
//
// At depth n, E_u is covered by the intervals b^{-n}(v + hull(E_u)) with v
// ranging over the distinct points of V_n. For rational u all endpoints are
// integers over the common denominator q*(b-1)*b^n, so the union measure is
// an exact rational.

#include <optional>
#include <utility>
#include <vector>

#include "besicovitch/digits.hpp"
#include "besicovitch/lattice.hpp"

namespace besicovitch {

/// Widening applied to every interval of a floating-point cover before
/// merging, so the reported measure stays an upper bound.
inline constexpr double kIrrationalCoverSlack = 0x1p-40;

struct CoverEstimate {
  unsigned level = 0;
  std::uint64_t distinct_count = 0;
  /// Exact for rational u, empty for irrational u.
  std::optional<Rational> union_measure;
  double union_measure_float = 0.0;
  double box_dim_estimate = 0.0;
  /// Merged cover, present on request for rational u.
  std::optional<std::vector<ExactInterval>> intervals;
};

struct CoverOptions {
  bool keep_intervals = false;
  EnumLimits limits{};
  Backend backend = Backend::Parallel;
};

CoverEstimate cover_at_depth(const DigitSystem& system, const Param& u,
                             unsigned n, const CoverOptions& opts = {});

std::vector<CoverEstimate> box_dim_series(const DigitSystem& system,
                                          const Param& u, unsigned n_max,
                                          const CoverOptions& opts = {});

/// log(nu) / (n0 * log(base)); rejects nu >= base^n0 (no collision, no
/// bound).
double dim_upper_bound_from_collision(unsigned n0, std::uint64_t nu,
                                      unsigned base);

/// Result of an arithmetic-progression scan of V = union of V_n, in key
/// units (values times q).
struct Progression {
  BigInt alpha_keys;
  Rational alpha_value;             // alpha_keys / q
  std::vector<BigInt> generators;   // A, in key units
  unsigned levels_checked = 0;
};

/// Looks for the smallest alpha such that V, inside the window where V_n
/// already agrees with V, is a finite union of progressions of difference
/// alpha whose starting points all lie in the lower half of the window,
/// consistently for every level 1..n_max. Returns nullopt when no such
/// alpha exists at this scale (inconclusive). Requires the IntervalCase
/// branch.
std::optional<Progression> progression_scan(const DigitSystem& system,
                                            const Ratio& u, unsigned n_max,
                                            const EnumLimits& limits = {});

/// Endpoints of every cover interval, in units of 1/(q*(b-1)*b^n): the left
/// ends (b-1)*key of distinct keys, and the common width.
struct IntegerCover {
  std::vector<Key> lows;
  Key width = 0;
  BigInt denominator;
};

IntegerCover integer_cover(const DigitSystem& system, const Ratio& u,
                           unsigned n, const EnumLimits& limits = {},
                           Backend backend = Backend::Parallel);

}  // namespace besicovitch
