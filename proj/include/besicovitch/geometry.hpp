#pragma once

// The planar set B: all segments joining E (on y = 0) to f*E' + i (on
// y = 1). Its horizontal section at height h is (1-h) E_u with
// u = f*h/(1-h), which is what the rasterizer draws row by row.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "besicovitch/digits.hpp"

namespace besicovitch {

/// Exact range of Re(z' - z) over z in E, z' in f*E' + i, with the slopes
/// y/x = 1/lo and 1/hi of the extreme segments (each has height 1).
struct DirectionRange {
  ExactInterval horizontal;
  Rational slope_at_lo;
  Rational slope_at_hi;
};

DirectionRange direction_range(const DigitSystem& system);

/// Min and max of Re(z' - z) over `samples` random digit strings of length
/// `depth`. Deterministic for a fixed seed, whatever the thread count.
RealInterval sample_direction_extremes(const DigitSystem& system,
                                       std::uint64_t samples, unsigned depth,
                                       std::uint64_t seed);

struct SectionLine {
  Rational h;
  std::optional<Ratio> u;  // empty at h = 0 and h = 1
  unsigned depth = 0;
  std::vector<ExactInterval> intervals;  // merged, ascending
  Rational union_measure;
};

/// Depth-n cover of B_h for rational h in [0, 1].
SectionLine section_cover(const DigitSystem& system, const Rational& h,
                          unsigned depth);

struct RasterImage {
  unsigned width = 0;
  unsigned height = 0;
  unsigned depth = 0;
  std::vector<std::uint8_t> occupied;  // row-major; row r is h = r/(height-1)
  std::uint64_t occupied_count = 0;
  double occupied_fraction = 0.0;

  bool at(unsigned row, unsigned col) const {
    return occupied[static_cast<std::size_t>(row) * width + col] != 0;
  }
};

struct RasterOptions {
  /// 0 selects the matched depth: smallest d with b^d >= resolution.
  unsigned depth = 0;
  /// Cap on resolution * (number of digit pairs)^depth.
  std::uint64_t max_work = std::uint64_t{1} << 30;
};

unsigned matched_depth(const DigitSystem& system, unsigned resolution);

/// Rasterizes B on the unit square at resolution x resolution pixels. A
/// pixel is set when the depth-limited cover of its row's section meets
/// it, so occupied_fraction is an upper bound on the area at this scale.
RasterImage raster_b(const DigitSystem& system, unsigned resolution,
                     const RasterOptions& opts = {});

/// One raster row at an exact height h (which need not be a pixel row).
std::vector<std::uint8_t> raster_row(const DigitSystem& system,
                                     const Rational& h, unsigned width,
                                     unsigned depth);

/// Binary PGM (P5), 8-bit, white = occupied, h = 1 on the top line.
void write_pgm(std::ostream& out, const RasterImage& image);

}  // namespace besicovitch
