#include "besicovitch/lattice.hpp"

#include <algorithm>

#include <omp.h>

namespace besicovitch {

namespace {

constexpr std::uint64_t kOraclePoints = std::uint64_t{1} << 20;
constexpr std::uint64_t kWindowPoints = std::uint64_t{1} << 20;

std::string level_context(const DigitSystem& system, const Ratio& u,
                          unsigned n) {
  return " (system " + system.label() + ", u = " + to_string(u) +
         ", n = " + std::to_string(n) + ")";
}

std::uint64_t checked_points(const DigitSystem& system, const Ratio& u,
                             unsigned n, unsigned max_level,
                             std::uint64_t max_points, const char* mode) {
  if (n > max_level) {
    throw ResourceError(std::string(mode) + " level n = " + std::to_string(n) +
                        " exceeds the cap max_level = " +
                        std::to_string(max_level) +
                        level_context(system, u, n));
  }
  bool overflow = false;
  const std::uint64_t points =
      kernels::point_count(system.pairs().size(), n, &overflow);
  if (overflow || points > max_points) {
    throw ResourceError(std::string(mode) + " enumeration of " +
                        std::to_string(system.pairs().size()) + "^" +
                        std::to_string(n) + " points exceeds the cap " +
                        std::to_string(max_points) +
                        level_context(system, u, n));
  }
  return points;
}

std::uint64_t window_count(std::uint64_t points) {
  const auto threads = static_cast<std::uint64_t>(omp_get_max_threads());
  return std::max<std::uint64_t>(threads * 4, points / kWindowPoints + 1);
}

LatticePoint point_from_path(const DigitSystem& system,
                             const kernels::DigitPath& path) {
  LatticePoint pt;
  pt.level = static_cast<unsigned>(path.size());
  std::uint64_t pw = 1;
  for (std::uint32_t idx : path) {
    pt.a += system.pairs()[idx].alpha * pw;
    pt.b += system.pairs()[idx].beta * pw;
    pw *= system.base();
  }
  return pt;
}

std::vector<Rational> sorted_rationals(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

BigInt value_key(const Ratio& u, const LatticePoint& point) {
  return u.q * BigInt(point.a) + u.p * BigInt(point.b);
}

std::vector<Key> key_contributions(const DigitSystem& system, const Ratio& u,
                                   unsigned n) {
  std::vector<Key> contribs;
  contribs.reserve(system.pairs().size());
  for (const auto& d : system.pairs()) {
    const BigInt c = u.q * d.alpha + u.p * d.beta;
    contribs.push_back(checked_u64(c, "digit contribution q*alpha + p*beta"));
  }
  bool overflow = false;
  kernels::max_key(contribs, system.base(), n, &overflow);
  if (overflow) {
    throw ResourceError("key range q*A + p*B exceeds 63 bits" +
                        level_context(system, u, n));
  }
  return contribs;
}

kernels::Histogram ValueMultiset::multiplicity_histogram() const {
  kernels::Histogram h;
  for (std::uint64_t c : counts) ++h[c];
  return h;
}

std::vector<Key> sorted_keys(const DigitSystem& system, const Ratio& u,
                             unsigned n, const EnumLimits& limits,
                             Backend backend) {
  if (n < 1) throw DomainError("enumerate V_n requires n >= 1");
  checked_points(system, u, n, limits.max_level, limits.max_points,
                 "materialized");
  const auto contribs = key_contributions(system, u, n);
  return backend == Backend::Serial
             ? kernels::serial::sorted_keys(contribs, system.base(), n)
             : kernels::omp::sorted_keys(contribs, system.base(), n);
}

ValueMultiset enumerate_vn(const DigitSystem& system, const Ratio& u,
                           unsigned n, const EnumLimits& limits,
                           Backend backend) {
  const std::vector<Key> keys = sorted_keys(system, u, n, limits, backend);
  ValueMultiset out;
  out.level = n;
  out.total = keys.size();
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    out.keys.push_back(keys[i]);
    out.counts.push_back(j - i);
    i = j;
  }
  return out;
}

kernels::DistinctStats count_distinct(const DigitSystem& system,
                                      const Ratio& u, unsigned n,
                                      const EnumLimits& limits,
                                      Backend backend) {
  if (n < 1) throw DomainError("count_distinct requires n >= 1");
  const std::uint64_t points =
      checked_points(system, u, n, limits.max_stream_level,
                     limits.max_stream_points, "streaming");
  const auto contribs = key_contributions(system, u, n);
  const std::uint64_t windows = window_count(points);
  return backend == Backend::Serial
             ? kernels::serial::windowed_stats(contribs, system.base(), n,
                                               windows)
             : kernels::omp::windowed_stats(contribs, system.base(), n,
                                            windows);
}

std::vector<LatticePoint> representations(const DigitSystem& system,
                                          const Ratio& u, unsigned n,
                                          const BigInt& key) {
  const auto contribs = key_contributions(system, u, n);
  const Key top = kernels::max_key(contribs, system.base(), n, nullptr);
  if (key < 0 || key > top) return {};
  std::vector<LatticePoint> out;
  for (const auto& path : kernels::paths_to_key(
           contribs, system.base(), n, key.convert_to<std::uint64_t>())) {
    out.push_back(point_from_path(system, path));
  }
  return out;
}

CollisionReport first_collision(const DigitSystem& system, const Ratio& u,
                                unsigned n_max, const EnumLimits& limits,
                                Backend backend) {
  if (n_max < 1) throw DomainError("first_collision requires nMax >= 1");
  CollisionReport report;
  for (unsigned n = 1; n <= n_max; ++n) {
    report.levels_scanned = n;
    bool materialize = n <= limits.max_level;
    if (materialize) {
      bool overflow = false;
      const auto pts = kernels::point_count(system.pairs().size(), n, &overflow);
      materialize = !overflow && pts <= limits.max_points;
    }
    std::optional<Key> dup;
    std::uint64_t nu = 0;
    kernels::Histogram hist;
    if (materialize) {
      const ValueMultiset vn = enumerate_vn(system, u, n, limits, backend);
      if (!vn.has_collision()) continue;
      for (std::size_t i = 0; i < vn.keys.size(); ++i) {
        if (vn.counts[i] > 1) {
          dup = vn.keys[i];
          break;
        }
      }
      nu = vn.distinct();
      hist = vn.multiplicity_histogram();
    } else {
      const auto st = count_distinct(system, u, n, limits, backend);
      if (st.distinct == st.total) continue;
      const auto contribs = key_contributions(system, u, n);
      dup = kernels::first_duplicate(contribs, system.base(), n,
                                     window_count(st.total));
      nu = st.distinct;
      hist = st.multiplicity;
    }
    const auto reps = representations(system, u, n, BigInt(*dup));
    report.found = true;
    report.first_level = n;
    report.nu = nu;
    report.witness_key = *dup;
    report.witness = std::make_pair(reps.at(0), reps.at(1));
    report.multiplicity_histogram = std::move(hist);
    return report;
  }
  return report;
}

bool vn_equivalent_forms(const DigitSystem& system, const Ratio& u,
                         unsigned n) {
  if (n < 1) throw DomainError("vn_equivalent_forms requires n >= 1");
  bool overflow = false;
  const std::uint64_t total =
      kernels::point_count(system.pairs().size(), n, &overflow);
  if (overflow || total > kOraclePoints) {
    throw ResourceError("vn_equivalent_forms is oracle-scale; " +
                        std::to_string(system.pairs().size()) + "^" +
                        std::to_string(n) + " points exceed " +
                        std::to_string(kOraclePoints));
  }
  const Rational ur = to_rational(u);
  const auto pairs = system.pairs();
  const std::size_t m = pairs.size();
  const BigInt b = system.base();

  std::vector<Rational> digit_values;
  for (const auto& d : pairs) digit_values.push_back(d.alpha + ur * d.beta);

  // D + bD + ... + b^{n-1} D
  std::vector<Rational> iterated = digit_values;
  BigInt scale = 1;
  for (unsigned k = 1; k < n; ++k) {
    scale *= b;
    std::vector<Rational> next;
    next.reserve(iterated.size() * m);
    for (const auto& x : iterated) {
      for (const auto& d : digit_values) next.push_back(x + d * scale);
    }
    iterated.swap(next);
  }

  // sum_{j=1}^{n} a_j b^{n-j} and sum_{k<n} (eps_k + u eps'_k) b^k
  std::vector<Rational> msd_first;
  std::vector<Rational> lsd_pairs;
  msd_first.reserve(total);
  lsd_pairs.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    Rational msd = 0;
    for (unsigned j = 0; j < n; ++j) msd = msd * b + digit_values[idx[j]];
    msd_first.push_back(msd);

    BigInt a = 0;
    BigInt bb = 0;
    BigInt pw = 1;
    for (unsigned k = 0; k < n; ++k) {
      a += pairs[idx[k]].alpha * pw;
      bb += pairs[idx[k]].beta * pw;
      pw *= b;
    }
    lsd_pairs.push_back(Rational(a) + ur * bb);

    for (unsigned k = 0; k < n; ++k) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
  }

  std::vector<Rational> from_keys;
  from_keys.reserve(total);
  const auto contribs = key_contributions(system, u, n);
  for (Key k : kernels::serial::sorted_keys(contribs, system.base(), n)) {
    from_keys.emplace_back(BigInt(k), u.q);
  }

  const auto f1 = sorted_rationals(std::move(iterated));
  const auto f2 = sorted_rationals(std::move(msd_first));
  const auto f3 = sorted_rationals(std::move(lsd_pairs));
  return f1 == f2 && f2 == f3 && f3 == from_keys;
}

bool self_affine_step(const DigitSystem& system, const Ratio& u, unsigned n,
                      const EnumLimits& limits) {
  if (n < 1) throw DomainError("self_affine_step requires n >= 1");
  const std::vector<Key> upper = sorted_keys(system, u, n + 1, limits);
  const std::vector<Key> lower = sorted_keys(system, u, n, limits);
  const std::vector<Key> level1 = sorted_keys(system, u, 1, limits);
  Key shift = 1;
  for (unsigned k = 0; k < n; ++k) shift *= system.base();
  std::vector<Key> sum;
  sum.reserve(lower.size() * level1.size());
  for (Key x : lower) {
    for (Key d : level1) sum.push_back(x + d * shift);
  }
  std::sort(sum.begin(), sum.end());
  return sum == upper;
}

}  // namespace besicovitch
