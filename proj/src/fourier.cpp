#include "besicovitch/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace besicovitch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenStep = 0.61803398874989484820;  // 1/phi

bool is_contiguous(std::span<const unsigned> digits) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != i) return false;
  }
  return true;
}

double mean_digit(std::span<const DigitPair> pairs, double u) {
  double s = 0.0;
  for (const auto& d : pairs) s += d.alpha + u * d.beta;
  return s / static_cast<double>(pairs.size());
}

/// exp(2 pi i f) for f in [0, 1).
std::complex<double> unit(double f) {
  const double angle = kTwoPi * (f <= 0.5 ? f : f - 1.0);
  return {std::cos(angle), std::sin(angle)};
}

double frac_to_double(const BigInt& num, const BigInt& den) {
  return Rational(num, den).convert_to<double>();
}

/// mean over `digits` of exp(2 pi i d * num/den), phases reduced exactly.
std::complex<double> mean_exp_exact(std::span<const unsigned> digits,
                                    const BigInt& num, const BigInt& den) {
  std::complex<double> s{0.0, 0.0};
  for (unsigned d : digits) {
    const BigInt r = (num * d) % den;
    s += unit(frac_to_double(r, den));
  }
  return s / static_cast<double>(digits.size());
}

/// Dirichlet factor (1/r) sum_{d<r} e^{2 pi i d f} vanishes iff f is a
/// non-integer multiple of 1/r.
bool dirichlet_vanishes(std::size_t r, const BigInt& num, const BigInt& den) {
  const BigInt g = boost::multiprecision::gcd(num % den, den);
  const BigInt reduced_den = den / g;
  return reduced_den > 1 && BigInt(r) % reduced_den == 0;
}

double tail_bound(double c_abs_t, unsigned base, unsigned terms) {
  return std::expm1(c_abs_t * std::pow(static_cast<double>(base),
                                       -static_cast<double>(terms)) /
                    (base - 1));
}

unsigned choose_truncation(double c_abs_t, unsigned base, double tolerance,
                           unsigned floor_terms) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  unsigned terms = floor_terms;
  if (c_abs_t > 0.0) {
    const double want =
        std::log(c_abs_t / ((base - 1) * std::log1p(tolerance))) /
        std::log(static_cast<double>(base));
    if (want > terms) terms = static_cast<unsigned>(std::ceil(want));
    while (tail_bound(c_abs_t, base, terms) > tolerance) {
      if (++terms > kMaxFourierTerms) {
        throw ResourceError("Fourier truncation exceeds " +
                            std::to_string(kMaxFourierTerms) + " factors");
      }
    }
  }
  return terms;
}

struct Accumulator {
  double log_abs = 0.0;
  double phase = 0.0;
  bool zero = false;
  bool exact_zero = false;

  void add(std::complex<double> f) {
    const double a = std::abs(f);
    if (a == 0.0) {
      zero = true;
      return;
    }
    log_abs += std::log(a);
    phase += std::arg(f);
  }

  void finish(FourierEvaluation& ev) const {
    if (zero || exact_zero) {
      ev.value = {0.0, 0.0};
      ev.abs_value = 0.0;
    } else {
      ev.abs_value = std::exp(log_abs);
      ev.value = std::polar(ev.abs_value, std::remainder(phase, kTwoPi));
    }
    ev.exact_zero = exact_zero;
  }
};

double positive_u(const Param& u) {
  const double v = to_double(u);
  if (!(v > 0.0)) throw DomainError("u must be > 0");
  return v;
}

}  // namespace

std::complex<double> digit_factor(const DigitSystem& system, double u,
                                  double x) {
  auto mean_exp = [](std::span<const unsigned> digits, double y) {
    std::complex<double> s{0.0, 0.0};
    for (unsigned d : digits) s += std::polar(1.0, std::remainder(d * y, kTwoPi));
    return s / static_cast<double>(digits.size());
  };
  if (system.is_product()) {
    return mean_exp(system.alpha_digits(), x) *
           mean_exp(system.beta_digits(), u * x);
  }
  std::complex<double> s{0.0, 0.0};
  for (const auto& d : system.pairs()) {
    s += std::polar(1.0, std::remainder((d.alpha + u * d.beta) * x, kTwoPi));
  }
  return s / static_cast<double>(system.pairs().size());
}

FourierEvaluation mu_hat(const DigitSystem& system, const Param& u, double t,
                         double tolerance) {
  const double uv = positive_u(u);
  const unsigned b = system.base();
  const double c_abs_t = mean_digit(system.pairs(), uv) * std::abs(t);
  FourierEvaluation ev;
  ev.t = t;
  ev.truncation = choose_truncation(c_abs_t, b, tolerance, 0);
  ev.tail_bound = tail_bound(c_abs_t, b, ev.truncation);
  Accumulator acc;
  double x = t;
  for (unsigned j = 1; j <= ev.truncation && !acc.zero; ++j) {
    x /= b;
    acc.add(digit_factor(system, uv, x));
  }
  acc.finish(ev);
  return ev;
}

FourierEvaluation mu_hat_lattice(const DigitSystem& system, const Ratio& u,
                                 const BigInt& multiple, unsigned n,
                                 double tolerance) {
  if (multiple < 0) throw DomainError("lattice multiple N must be >= 0");
  const unsigned b = system.base();
  const double uv = to_double(to_rational(u));
  const double t = kTwoPi * multiple.convert_to<double>() *
                   std::pow(static_cast<double>(b), static_cast<double>(n));
  const double c_abs_t = mean_digit(system.pairs(), uv) * t;
  FourierEvaluation ev;
  ev.t = t;
  ev.truncation = choose_truncation(c_abs_t, b, tolerance, n);
  ev.tail_bound = tail_bound(c_abs_t, b, ev.truncation);

  const bool product = system.is_product();
  const bool alpha_dirichlet = product && is_contiguous(system.alpha_digits());
  const bool beta_dirichlet = product && is_contiguous(system.beta_digits());

  Accumulator acc;
  BigInt den = 1;  // b^{j-n}
  for (unsigned j = n + 1; j <= ev.truncation; ++j) {
    // Factors j <= n have phases in 2 pi Z and equal 1 exactly.
    den *= b;
    // alpha part: x/2pi = N / den; beta part: u x/2pi = p N / (q den)
    const BigInt a_num = multiple % den;
    const BigInt b_den = u.q * den;
    const BigInt b_num = (u.p * multiple) % b_den;
    if (product) {
      if ((alpha_dirichlet &&
           dirichlet_vanishes(system.alpha_digits().size(), a_num, den)) ||
          (beta_dirichlet &&
           dirichlet_vanishes(system.beta_digits().size(), b_num, b_den))) {
        acc.exact_zero = true;
        break;
      }
      acc.add(mean_exp_exact(system.alpha_digits(), a_num, den) *
              mean_exp_exact(system.beta_digits(), b_num, b_den));
    } else {
      std::complex<double> s{0.0, 0.0};
      for (const auto& d : system.pairs()) {
        const BigInt num = ((u.q * d.alpha + u.p * d.beta) * multiple) % b_den;
        s += unit(frac_to_double(num, b_den));
      }
      acc.add(s / static_cast<double>(system.pairs().size()));
    }
    if (acc.zero) break;
  }
  acc.finish(ev);
  return ev;
}

std::vector<FourierEvaluation> mu_hat_batch(const DigitSystem& system,
                                            const Param& u,
                                            std::span<const double> ts,
                                            double tolerance) {
  positive_u(u);
  std::vector<FourierEvaluation> out(ts.size());
  const auto count = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    out[i] = mu_hat(system, u, ts[i], tolerance);
  }
  return out;
}

LimsupProbe limsup_probe(const DigitSystem& system, const Ratio& u,
                         unsigned n_from, unsigned n_to, double tolerance) {
  if (n_to < n_from) throw DomainError("limsup_probe: empty level range");
  LimsupProbe probe;
  for (unsigned n = n_from; n <= n_to; ++n) {
    probe.levels.push_back(n);
    probe.values.push_back(mu_hat_lattice(system, u, u.q, n, tolerance));
  }
  probe.min_abs = probe.values.front().abs_value;
  probe.max_abs = probe.min_abs;
  for (const auto& v : probe.values) {
    probe.min_abs = std::min(probe.min_abs, v.abs_value);
    probe.max_abs = std::max(probe.max_abs, v.abs_value);
  }
  probe.bounded_away_from_zero = probe.min_abs > 10.0 * tolerance;
  probe.values_agree = probe.max_abs - probe.min_abs <= 2.0 * tolerance;
  return probe;
}

std::vector<BandMax> decay_scan(const DigitSystem& system, const Param& u,
                                unsigned band_count,
                                const DecayOptions& opts) {
  positive_u(u);
  if (band_count < 2) throw DomainError("decay_scan requires bandCount >= 2");
  if (opts.samples_per_band < 1) {
    throw DomainError("decay_scan requires at least one sample per band");
  }
  const double b = system.base();
  std::vector<BandMax> bands;
  std::vector<double> ts;
  for (unsigned k = 2; k <= band_count + 1; ++k) {
    BandMax band;
    band.band = k;
    band.lo = std::pow(b, k);
    band.hi = band.lo * b;
    bands.push_back(band);
    double f = opts.seed;
    for (unsigned i = 0; i < opts.samples_per_band; ++i) {
      ts.push_back(band.lo + (band.hi - band.lo) * f);
      f += kGoldenStep;
      f -= std::floor(f);
    }
  }
  const auto values = mu_hat_batch(system, u, ts, opts.tolerance);
  for (std::size_t bi = 0; bi < bands.size(); ++bi) {
    auto& band = bands[bi];
    for (unsigned i = 0; i < opts.samples_per_band; ++i) {
      const auto& v = values[bi * opts.samples_per_band + i];
      if (v.abs_value > band.sup_abs) {
        band.sup_abs = v.abs_value;
        band.argmax_t = v.t;
      }
    }
    if (const auto* r = std::get_if<Ratio>(&u)) {
      // lattice points t = 2 pi q b^m lying in the band
      for (unsigned m = 0;; ++m) {
        const double t = kTwoPi * r->q.convert_to<double>() * std::pow(b, m);
        if (t > band.hi) break;
        if (t < band.lo) continue;
        const auto v = mu_hat_lattice(system, *r, r->q, m, opts.tolerance);
        if (v.abs_value > band.sup_abs) {
          band.sup_abs = v.abs_value;
          band.argmax_t = v.t;
        }
      }
    }
  }
  return bands;
}

}  // namespace besicovitch
