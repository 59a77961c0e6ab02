#include "besicovitch/measure.hpp"

#include <algorithm>
#include <cmath>

#include "besicovitch/classifier.hpp"

namespace besicovitch {

namespace {

using u128 = unsigned __int128;

BigInt to_bigint(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

double box_dim(std::uint64_t distinct, unsigned n, unsigned base) {
  return std::log(static_cast<double>(distinct)) /
         (n * std::log(static_cast<double>(base)));
}

std::vector<ExactInterval> merged_intervals(const IntegerCover& cover) {
  std::vector<ExactInterval> out;
  if (cover.lows.empty()) return out;
  Key run_lo = cover.lows.front();
  Key run_hi = run_lo + cover.width;
  auto flush = [&] {
    out.push_back({Rational(BigInt(run_lo), cover.denominator),
                   Rational(BigInt(run_hi), cover.denominator)});
  };
  for (std::size_t i = 1; i < cover.lows.size(); ++i) {
    const Key lo = cover.lows[i];
    if (lo > run_hi) {
      flush();
      run_lo = lo;
    }
    run_hi = std::max(run_hi, lo + cover.width);
  }
  flush();
  return out;
}

CoverEstimate irrational_cover(const DigitSystem& system, double u, unsigned n,
                               const CoverOptions& opts) {
  if (n < 1) throw DomainError("cover depth n must be >= 1");
  if (n > opts.limits.max_level) {
    throw ResourceError("cover level n = " + std::to_string(n) +
                        " exceeds the cap max_level = " +
                        std::to_string(opts.limits.max_level));
  }
  bool overflow = false;
  const std::uint64_t total =
      kernels::point_count(system.pairs().size(), n, &overflow);
  if (overflow || total > opts.limits.max_points) {
    throw ResourceError("cover of " + std::to_string(system.pairs().size()) +
                        "^" + std::to_string(n) +
                        " points exceeds the cap max_points = " +
                        std::to_string(opts.limits.max_points));
  }
  const auto pairs = system.pairs();
  const std::size_t m = pairs.size();
  const double b = system.base();
  const double scale = std::pow(b, -static_cast<double>(n));
  std::vector<double> lows(total);
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = static_cast<std::uint64_t>(idx);
    double a = 0.0;
    double bb = 0.0;
    double pw = 1.0;
    for (unsigned k = 0; k < n; ++k) {
      const auto& d = pairs[rest % m];
      rest /= m;
      a += d.alpha * pw;
      bb += d.beta * pw;
      pw *= b;
    }
    lows[idx] = (a + u * bb) * scale - kIrrationalCoverSlack;
  }
  std::sort(lows.begin(), lows.end());
  const double width = hull(system, u).hi * scale + 2 * kIrrationalCoverSlack;
  double measure = 0.0;
  double run_lo = lows.front();
  double run_hi = run_lo + width;
  for (std::size_t i = 1; i < lows.size(); ++i) {
    if (lows[i] > run_hi) {
      measure += run_hi - run_lo;
      run_lo = lows[i];
    }
    run_hi = std::max(run_hi, lows[i] + width);
  }
  measure += run_hi - run_lo;

  CoverEstimate est;
  est.level = n;
  est.distinct_count = total;
  est.union_measure_float = measure;
  est.box_dim_estimate = box_dim(total, n, system.base());
  return est;
}

}  // namespace

IntegerCover integer_cover(const DigitSystem& system, const Ratio& u,
                           unsigned n, const EnumLimits& limits,
                           Backend backend) {
  const ValueMultiset vn = enumerate_vn(system, u, n, limits, backend);
  const auto contribs = key_contributions(system, u, n);
  IntegerCover cover;
  cover.width = *std::max_element(contribs.begin(), contribs.end());
  const unsigned b1 = system.base() - 1;
  const Key top = vn.keys.empty() ? 0 : vn.keys.back();
  if (static_cast<u128>(top) * b1 + cover.width > UINT64_MAX / 2) {
    throw ResourceError("cover endpoints exceed 63 bits at level n = " +
                        std::to_string(n));
  }
  cover.lows.reserve(vn.keys.size());
  for (Key k : vn.keys) cover.lows.push_back(k * b1);
  cover.denominator = u.q * b1 * ipow(BigInt(system.base()), n);
  return cover;
}

CoverEstimate cover_at_depth(const DigitSystem& system, const Param& u,
                             unsigned n, const CoverOptions& opts) {
  if (const auto* irr = std::get_if<Irrational>(&u)) {
    if (!(irr->value > 0.0)) throw DomainError("u must be > 0");
    return irrational_cover(system, irr->value, n, opts);
  }
  const Ratio& ratio = std::get<Ratio>(u);
  const IntegerCover cover =
      integer_cover(system, ratio, n, opts.limits, opts.backend);
  const u128 length =
      opts.backend == Backend::Serial
          ? kernels::serial::union_length(cover.lows, cover.width)
          : kernels::omp::union_length(cover.lows, cover.width);
  CoverEstimate est;
  est.level = n;
  est.distinct_count = cover.lows.size();
  est.union_measure = Rational(to_bigint(length), cover.denominator);
  est.union_measure_float = to_double(*est.union_measure);
  est.box_dim_estimate = box_dim(est.distinct_count, n, system.base());
  if (opts.keep_intervals) est.intervals = merged_intervals(cover);
  return est;
}

std::vector<CoverEstimate> box_dim_series(const DigitSystem& system,
                                          const Param& u, unsigned n_max,
                                          const CoverOptions& opts) {
  if (n_max < 1) throw DomainError("nMax must be >= 1");
  std::vector<CoverEstimate> out;
  out.reserve(n_max);
  CoverOptions lean = opts;
  lean.keep_intervals = false;
  for (unsigned n = 1; n <= n_max; ++n) {
    out.push_back(cover_at_depth(system, u, n, lean));
  }
  return out;
}

double dim_upper_bound_from_collision(unsigned n0, std::uint64_t nu,
                                      unsigned base) {
  if (n0 < 1 || base < 2) throw DomainError("need n0 >= 1 and base >= 2");
  const BigInt full = ipow(BigInt(base), n0);
  if (nu < 1 || BigInt(nu) >= full) {
    throw DomainError("nu = " + std::to_string(nu) + " is not below " +
                      std::to_string(base) + "^" + std::to_string(n0) +
                      ": no collision, no dimension bound");
  }
  return std::log(static_cast<double>(nu)) /
         (n0 * std::log(static_cast<double>(base)));
}

std::optional<Progression> progression_scan(const DigitSystem& system,
                                            const Ratio& u, unsigned n_max,
                                            const EnumLimits& limits) {
  if (n_max < 1) throw DomainError("nMax must be >= 1");
  ClassifyOptions copts;
  copts.compute_witnesses = false;
  if (classify(system, Param{u}, copts).branch != Branch::IntervalCase) {
    throw DomainError("progression_scan requires the IntervalCase branch, u = " +
                      to_string(u));
  }
  const auto contribs = key_contributions(system, u, n_max);
  Key min_step = 0;
  for (Key c : contribs) {
    if (c > 0 && (min_step == 0 || c < min_step)) min_step = c;
  }

  // Level n agrees with V below min_step * b^n.
  struct Level {
    std::vector<char> member;
  };
  std::vector<Level> levels;
  Key pw = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    pw *= system.base();
    const Key window = min_step * pw;
    if (window > limits.max_points) {
      throw ResourceError("progression window " + std::to_string(window) +
                          " exceeds max_points");
    }
    Level lv;
    lv.member.assign(window, 0);
    for (Key k : enumerate_vn(system, u, n, limits).keys) {
      if (k < window) lv.member[k] = 1;
    }
    levels.push_back(std::move(lv));
  }

  auto closed_under = [](const std::vector<char>& s, std::size_t alpha) {
    const std::size_t w = s.size();
    for (std::size_t x = 0; x + alpha < w; ++x) {
      if (s[x] && !s[x + alpha]) return false;
    }
    for (std::size_t x = w / 2; x < w; ++x) {
      if (s[x] && (x < alpha || !s[x - alpha])) return false;
    }
    return true;
  };

  const std::size_t top_window = levels.back().member.size();
  for (std::size_t alpha = 1; alpha <= top_window / 4; ++alpha) {
    bool ok = true;
    for (const auto& lv : levels) {
      if (lv.member.size() < 4 * alpha) continue;
      if (!closed_under(lv.member, alpha)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Progression pr;
    pr.alpha_keys = alpha;
    pr.alpha_value = Rational(BigInt(alpha), u.q);
    pr.levels_checked = n_max;
    const auto& top = levels.back().member;
    for (std::size_t x = 0; x < top.size(); ++x) {
      if (top[x] && (x < alpha || !top[x - alpha])) pr.generators.push_back(BigInt(x));
    }
    return pr;
  }
  return std::nullopt;
}

}  // namespace besicovitch
