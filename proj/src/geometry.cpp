#include "besicovitch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "besicovitch/kernels.hpp"
#include "besicovitch/measure.hpp"

namespace besicovitch {

namespace {

using u128 = unsigned __int128;

/// Cover of one section in integer units: interval i is
/// scale * [lows[i], lows[i] + width] / den.
struct RowCover {
  std::vector<Key> lows;
  Key width = 0;
  BigInt den;
  BigInt scale_num = 1;
  BigInt scale_den = 1;
  std::optional<Ratio> u;
};

std::vector<Key> single_alphabet_lows(std::span<const unsigned> digits,
                                      unsigned base, unsigned n,
                                      unsigned factor) {
  std::vector<Key> contribs(digits.begin(), digits.end());
  std::vector<Key> keys = kernels::serial::sorted_keys(contribs, base, n);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (Key& k : keys) k *= static_cast<Key>(factor) * (base - 1);
  return keys;
}

void check_height(const Rational& h) {
  if (h < 0 || h > 1) {
    throw DomainError("section height h = " + to_string(h) +
                      " must lie in [0,1]");
  }
}

RowCover row_cover(const DigitSystem& system, const Rational& h,
                   unsigned depth, Backend backend) {
  check_height(h);
  if (depth < 1) throw DomainError("section depth must be >= 1");
  const unsigned f = system.upper_factor();
  const unsigned b = system.base();
  RowCover rc;
  if (h == 0 || h == 1) {
    const bool upper = h == 1;
    const auto digits = upper ? system.beta_digits() : system.alpha_digits();
    const unsigned factor = upper ? f : 1;
    bool overflow = false;
    const auto pts = kernels::point_count(digits.size(), depth, &overflow);
    if (overflow || pts > EnumLimits{}.max_points) {
      throw ResourceError("section cover depth " + std::to_string(depth) +
                          " exceeds the point cap");
    }
    rc.lows = single_alphabet_lows(digits, b, depth, factor);
    rc.width = static_cast<Key>(factor) *
               *std::max_element(digits.begin(), digits.end());
    rc.den = (b - 1) * ipow(BigInt(b), depth);
    return rc;
  }
  const BigInt num = boost::multiprecision::numerator(h);
  const BigInt den = boost::multiprecision::denominator(h);
  const Ratio u = make_ratio(f * num, den - num);
  IntegerCover cover = integer_cover(system, u, depth, EnumLimits{}, backend);
  rc.lows = std::move(cover.lows);
  rc.width = cover.width;
  rc.den = cover.denominator;
  rc.scale_num = den - num;
  rc.scale_den = den;
  rc.u = u;
  return rc;
}

std::vector<std::pair<Key, Key>> merged_units(const RowCover& rc) {
  std::vector<std::pair<Key, Key>> runs;
  for (Key lo : rc.lows) {
    const Key hi = lo + rc.width;
    if (!runs.empty() && lo <= runs.back().second) {
      runs.back().second = std::max(runs.back().second, hi);
    } else {
      runs.emplace_back(lo, hi);
    }
  }
  return runs;
}

u128 to_u128(const BigInt& v) {
  const BigInt hi = v >> 64;
  const BigInt lo = v & BigInt(UINT64_MAX);
  return (static_cast<u128>(hi.convert_to<std::uint64_t>()) << 64) |
         lo.convert_to<std::uint64_t>();
}

void mark_row(const RowCover& rc, unsigned width, std::uint8_t* row) {
  // column of x = scale * v / den is floor(width * scale_num * v /
  // (scale_den * den)).
  const BigInt num_factor = BigInt(width) * rc.scale_num;
  const BigInt divisor = rc.scale_den * rc.den;
  const Key top = rc.lows.empty() ? 0 : rc.lows.back() + rc.width;
  if (num_factor * top >= (BigInt(1) << 126) || divisor >= (BigInt(1) << 126)) {
    throw ResourceError("raster row arithmetic exceeds 126 bits");
  }
  const u128 nf = to_u128(num_factor);
  const u128 dv = to_u128(divisor);
  for (const auto& [lo, hi] : merged_units(rc)) {
    const u128 a = nf * lo;
    const u128 c = nf * hi;
    const u128 first = a / dv;
    u128 last_excl = (c + dv - 1) / dv;
    if (last_excl <= first) last_excl = first + 1;
    for (u128 col = first; col < last_excl && col < width; ++col) {
      row[static_cast<std::size_t>(col)] = 1;
    }
  }
}

}  // namespace

DirectionRange direction_range(const DigitSystem& system) {
  const int f = static_cast<int>(system.upper_factor());
  int lo = 0;
  int hi = 0;
  bool first = true;
  for (unsigned a : system.alpha_digits()) {
    for (unsigned b : system.beta_digits()) {
      const int v = f * static_cast<int>(b) - static_cast<int>(a);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  const int b1 = static_cast<int>(system.base()) - 1;
  DirectionRange out;
  out.horizontal = {Rational(lo) / b1, Rational(hi) / b1};
  if (lo != 0) out.slope_at_lo = Rational(b1) / lo;
  if (hi != 0) out.slope_at_hi = Rational(b1) / hi;
  return out;
}

RealInterval sample_direction_extremes(const DigitSystem& system,
                                       std::uint64_t samples, unsigned depth,
                                       std::uint64_t seed) {
  if (samples == 0 || depth == 0) {
    throw DomainError("need at least one sample of depth >= 1");
  }
  constexpr std::int64_t kChunks = 64;
  const double f = system.upper_factor();
  const double b = system.base();
  const auto alpha = system.alpha_digits();
  const auto beta = system.beta_digits();
  std::vector<RealInterval> parts(kChunks, {INFINITY, -INFINITY});
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < kChunks; ++c) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (c + 1));
    std::uniform_int_distribution<std::size_t> pick_a(0, alpha.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_b(0, beta.size() - 1);
    const std::uint64_t begin = samples * c / kChunks;
    const std::uint64_t end = samples * (c + 1) / kChunks;
    RealInterval ext{INFINITY, -INFINITY};
    for (std::uint64_t s = begin; s < end; ++s) {
      double x = 0.0;
      double scale = 1.0;
      for (unsigned j = 0; j < depth; ++j) {
        scale /= b;
        x += (f * beta[pick_b(rng)] - alpha[pick_a(rng)]) * scale;
      }
      ext.lo = std::min(ext.lo, x);
      ext.hi = std::max(ext.hi, x);
    }
    parts[c] = ext;
  }
  RealInterval out{INFINITY, -INFINITY};
  for (const auto& p : parts) {
    out.lo = std::min(out.lo, p.lo);
    out.hi = std::max(out.hi, p.hi);
  }
  return out;
}

SectionLine section_cover(const DigitSystem& system, const Rational& h,
                          unsigned depth) {
  const RowCover rc = row_cover(system, h, depth, Backend::Parallel);
  SectionLine line;
  line.h = h;
  line.u = rc.u;
  line.depth = depth;
  const Rational scale(rc.scale_num, rc.scale_den);
  Rational total = 0;
  for (const auto& [lo, hi] : merged_units(rc)) {
    ExactInterval iv{scale * Rational(BigInt(lo), rc.den),
                     scale * Rational(BigInt(hi), rc.den)};
    total += iv.length();
    line.intervals.push_back(std::move(iv));
  }
  line.union_measure = total;
  return line;
}

unsigned matched_depth(const DigitSystem& system, unsigned resolution) {
  unsigned d = 0;
  std::uint64_t pw = 1;
  while (pw < resolution) {
    pw *= system.base();
    ++d;
  }
  return std::max(d, 1u);
}

std::vector<std::uint8_t> raster_row(const DigitSystem& system,
                                     const Rational& h, unsigned width,
                                     unsigned depth) {
  if (width < 1) throw DomainError("raster width must be >= 1");
  std::vector<std::uint8_t> row(width, 0);
  mark_row(row_cover(system, h, depth, Backend::Serial), width, row.data());
  return row;
}

RasterImage raster_b(const DigitSystem& system, unsigned resolution,
                     const RasterOptions& opts) {
  if (resolution < 16) {
    throw DomainError("raster resolution must be >= 16, got " +
                      std::to_string(resolution));
  }
  RasterImage img;
  img.width = resolution;
  img.height = resolution;
  img.depth = opts.depth == 0 ? matched_depth(system, resolution) : opts.depth;
  bool overflow = false;
  const auto pts =
      kernels::point_count(system.pairs().size(), img.depth, &overflow);
  if (overflow || static_cast<u128>(pts) * resolution > opts.max_work) {
    throw ResourceError("raster work resolution * " +
                        std::to_string(system.pairs().size()) + "^" +
                        std::to_string(img.depth) + " exceeds the cap " +
                        std::to_string(opts.max_work));
  }
  img.occupied.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  const auto rows = static_cast<std::int64_t>(resolution);
  const unsigned last = resolution - 1;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t r = 0; r < rows; ++r) {
    const Rational h(static_cast<long long>(r), static_cast<long long>(last));
    mark_row(row_cover(system, h, img.depth, Backend::Serial), resolution,
             img.occupied.data() + static_cast<std::size_t>(r) * resolution);
  }
  img.occupied_count = static_cast<std::uint64_t>(
      std::count(img.occupied.begin(), img.occupied.end(), 1));
  img.occupied_fraction = static_cast<double>(img.occupied_count) /
                          (static_cast<double>(resolution) * resolution);
  return img;
}

void write_pgm(std::ostream& out, const RasterImage& image) {
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  std::vector<char> line(image.width);
  for (unsigned r = image.height; r-- > 0;) {
    for (unsigned c = 0; c < image.width; ++c) {
      line[c] = image.at(r, c) ? static_cast<char>(255) : 0;
    }
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

}  // namespace besicovitch
