#include <doctest.h>

#include <sstream>

#include <omp.h>

#include "besicovitch/geometry.hpp"
#include "besicovitch/measure.hpp"

using namespace besicovitch;

namespace {
const DigitSystem kModel = DigitSystem::base4_model();
}

TEST_CASE("direction ranges") {
  const auto d = direction_range(kModel);
  CHECK(d.horizontal == ExactInterval{Rational(-1, 3), Rational(2, 3)});
  CHECK(d.slope_at_lo == -3);
  CHECK(d.slope_at_hi == Rational(3, 2));
  CHECK(direction_range(DigitSystem::square(3)).horizontal ==
        ExactInterval{Rational(-1, 4), Rational(3, 4)});
  CHECK_THROWS(direction_range(DigitSystem::kenyon()));
}

TEST_CASE("Monte Carlo extremes stay inside the exact range") {
  for (const auto& s : {kModel, DigitSystem::square(3), DigitSystem::mixed(2, 3)}) {
    const auto d = direction_range(s);
    const auto ext = sample_direction_extremes(s, 200000, 25, 9);
    CHECK(ext.lo >= to_double(d.horizontal.lo) - 1e-12);
    CHECK(ext.hi <= to_double(d.horizontal.hi) + 1e-12);
  }
  const auto a = sample_direction_extremes(kModel, 1000000, 30, 1);
  CHECK(a.lo + 1.0 / 3 < 1e-3);
  CHECK(2.0 / 3 - a.hi < 1e-3);
}

TEST_CASE("Monte Carlo sampling is thread-count independent") {
  omp_set_num_threads(1);
  const auto a = sample_direction_extremes(kModel, 50000, 20, 4);
  omp_set_num_threads(4);
  const auto b = sample_direction_extremes(kModel, 50000, 20, 4);
  omp_set_num_threads(1);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
}

TEST_CASE("sections at the endpoints are the Cantor sets") {
  const auto e = section_cover(kModel, 0, 3);
  CHECK(e.intervals.size() == 8);
  CHECK_FALSE(e.u);
  for (const auto& iv : e.intervals) CHECK(iv.length() == Rational(1, 192));
  CHECK(e.intervals.front().lo == 0);
  CHECK(e.intervals.back().hi == Rational(1, 3));

  const auto top = section_cover(kModel, 1, 3);
  CHECK(top.intervals.size() == 8);
  for (const auto& iv : top.intervals) CHECK(iv.length() == Rational(2, 192));
  CHECK(top.intervals.back().hi == Rational(2, 3));
  CHECK(top.union_measure == 2 * e.union_measure);
}

TEST_CASE("interior sections are scaled covers of E_u") {
  const auto half = section_cover(kModel, Rational(1, 2), 6);
  REQUIRE(half.u);
  CHECK(*half.u == make_ratio(2, 1));
  REQUIRE(half.intervals.size() == 1);
  CHECK(half.intervals[0] == ExactInterval{0, Rational(1, 2)});

  const auto third = section_cover(kModel, Rational(1, 3), 5);
  CHECK(*third.u == make_ratio(1, 1));
  CHECK(third.union_measure ==
        Rational(2, 3) * *cover_at_depth(kModel, Param{make_ratio(1, 1)}, 5).union_measure);

  for (long long q = 2; q <= 12; ++q) {
    for (long long p = 1; p < q; ++p) {
      const Rational h(p, q);
      const auto s = section_cover(kModel, h, 4);
      const Rational bound = (1 - h) * hull(kModel, *s.u).hi;
      for (const auto& iv : s.intervals) {
        REQUIRE(iv.lo >= 0);
        REQUIRE(iv.hi <= bound);
      }
    }
  }
  CHECK_THROWS_AS(section_cover(kModel, Rational(3, 2), 3), DomainError);
  CHECK_THROWS_AS(section_cover(kModel, Rational(-1, 2), 3), DomainError);
}

TEST_CASE("raster rows match their section covers") {
  const unsigned w = 256;
  for (long long q : {3, 5, 7}) {
    for (long long p = 1; p < q; ++p) {
      const Rational h(p, q);
      const auto row = raster_row(kModel, h, w, 4);
      const auto s = section_cover(kModel, h, 4);
      std::vector<std::uint8_t> expect(w, 0);
      for (const auto& iv : s.intervals) {
        // closed interval [lo, hi] meets pixel c = [c/w, (c+1)/w)
        for (unsigned c = 0; c < w; ++c) {
          const Rational a(c, w), b(c + 1, w);
          if (iv.lo < b && iv.hi > a) expect[c] = 1;
          if (iv.lo == iv.hi && iv.lo >= a && iv.lo < b) expect[c] = 1;
        }
      }
      REQUIRE(row == expect);
    }
  }
}

TEST_CASE("raster images") {
  const auto a = raster_b(kModel, 256);
  CHECK(a.depth == 4);
  CHECK(a.occupied.size() == 256u * 256u);
  CHECK(a.occupied_fraction == doctest::Approx(a.occupied_count / 65536.0));
  const auto b = raster_b(kModel, 512);
  CHECK(b.occupied_fraction < a.occupied_fraction);
  const auto half_row = raster_row(kModel, Rational(1, 2), 512, 5);
  for (unsigned c = 0; c < 256; ++c) REQUIRE(half_row[c]);
  CHECK_THROWS_AS(raster_b(kModel, 8), DomainError);
  RasterOptions tight;
  tight.max_work = 1000;
  CHECK_THROWS_AS(raster_b(kModel, 256, tight), ResourceError);
}

TEST_CASE("raster is thread-count independent") {
  omp_set_num_threads(1);
  const auto a = raster_b(kModel, 128);
  omp_set_num_threads(4);
  const auto b = raster_b(kModel, 128);
  omp_set_num_threads(1);
  CHECK(a.occupied == b.occupied);
}

TEST_CASE("PGM output") {
  const auto img = raster_b(kModel, 16);
  std::ostringstream out;
  write_pgm(out, img);
  const std::string s = out.str();
  const std::string header = "P5\n16 16\n255\n";
  REQUIRE(s.size() == header.size() + 256);
  CHECK(s.substr(0, header.size()) == header);
  // h = 0 is the bottom line of the file, h = 1 the top line.
  const auto px = [&](unsigned line, unsigned c) {
    return static_cast<unsigned char>(s[header.size() + line * 16 + c]);
  };
  for (unsigned c = 0; c < 16; ++c) {
    CHECK((px(15, c) == 255) == img.at(0, c));
    CHECK((px(0, c) == 255) == img.at(15, c));
  }
}
