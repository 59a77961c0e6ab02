#pragma once

// Fourier transform of the canonical self-similar measure mu on E_u,
//
//   mu^(t) = prod_{j>=1} C(b^{-j} t),   C(x) = mean over digit pairs of
//                                              exp(i (alpha + u beta) x),
//
// evaluated as a truncated product with a certified truncation bound.

#include <complex>
#include <span>
#include <vector>

#include "besicovitch/digits.hpp"

namespace besicovitch {

struct FourierEvaluation {
  double t = 0.0;
  unsigned truncation = 0;  // number of factors J
  std::complex<double> value{1.0, 0.0};
  double abs_value = 1.0;
  /// Bound on |reported - true| and on the relative truncation error.
  double tail_bound = 0.0;
  /// A factor vanished by exact phase arithmetic.
  bool exact_zero = false;
};

inline constexpr unsigned kMaxFourierTerms = 2000;

/// One factor C(x) at real x (no symbolic zero detection).
std::complex<double> digit_factor(const DigitSystem& system, double u,
                                  double x);

/// mu^(t) for real t. J is the smallest truncation whose tail bound is at
/// most `tolerance`.
FourierEvaluation mu_hat(const DigitSystem& system, const Param& u, double t,
                         double tolerance);

/// mu^(t) at t = 2*pi*N*b^n for rational u. Phases are reduced modulo 2*pi
/// in exact integer arithmetic, so factors with j <= n are exactly 1 and
/// vanishing Dirichlet factors are detected exactly.
FourierEvaluation mu_hat_lattice(const DigitSystem& system, const Ratio& u,
                                 const BigInt& multiple, unsigned n,
                                 double tolerance);

/// Evaluates mu_hat over many t in parallel; output order follows `ts`.
std::vector<FourierEvaluation> mu_hat_batch(const DigitSystem& system,
                                            const Param& u,
                                            std::span<const double> ts,
                                            double tolerance);

struct LimsupProbe {
  std::vector<unsigned> levels;
  std::vector<FourierEvaluation> values;  // |mu^(2 q b^n pi)| per level
  double min_abs = 0.0;
  double max_abs = 0.0;
  bool bounded_away_from_zero = false;    // min_abs > 10 * tolerance
  bool values_agree = false;              // max_abs - min_abs <= 2 * tolerance
};

LimsupProbe limsup_probe(const DigitSystem& system, const Ratio& u,
                         unsigned n_from, unsigned n_to, double tolerance);

struct DecayOptions {
  unsigned samples_per_band = 4096;
  double seed = 0.5;  // start of the golden-ratio sequence
  double tolerance = 1e-10;
};

struct BandMax {
  unsigned band = 0;  // k: the band is [b^k, b^{k+1}]
  double lo = 0.0;
  double hi = 0.0;
  double sup_abs = 0.0;
  double argmax_t = 0.0;
};

/// Max of |mu^| over bands k = 2..band_count+1, sampled by an additive
/// golden-ratio sequence plus (for rational u) every lattice point
/// t = 2 pi q b^m inside the band.
std::vector<BandMax> decay_scan(const DigitSystem& system, const Param& u,
                                unsigned band_count,
                                const DecayOptions& opts = {});

}  // namespace besicovitch
