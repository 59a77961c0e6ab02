#include <doctest.h>

#include <numeric>
#include <random>

#include <omp.h>

#include "besicovitch/lattice.hpp"
#include "oracle/oracle.hpp"

using namespace besicovitch;

namespace {

const DigitSystem kModel = DigitSystem::base4_model();

std::vector<Key> expand(const ValueMultiset& vn) {
  std::vector<Key> all;
  for (std::size_t i = 0; i < vn.keys.size(); ++i) {
    all.insert(all.end(), vn.counts[i], vn.keys[i]);
  }
  return all;
}

std::vector<Ratio> random_rationals(int count, long long qmax,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ratio> out;
  while (static_cast<int>(out.size()) < count) {
    const long long p = 1 + static_cast<long long>(rng() % qmax);
    const long long q = 1 + static_cast<long long>(rng() % qmax);
    out.push_back(make_ratio(p, q));
  }
  return out;
}

}  // namespace

TEST_CASE("small levels of the base model") {
  auto v = enumerate_vn(kModel, make_ratio(1, 1), 1);
  CHECK(expand(v) == std::vector<Key>{0, 1, 1, 2});
  CHECK(v.distinct() == 3);
  v = enumerate_vn(kModel, make_ratio(2, 1), 1);
  CHECK(expand(v) == std::vector<Key>{0, 1, 2, 3});
  v = enumerate_vn(kModel, make_ratio(1, 3), 2);
  CHECK(v.total == 16);
  CHECK(v.distinct() == 14);
  CHECK(v.multiplicity_histogram() == kernels::Histogram{{1, 12}, {2, 2}});
}

TEST_CASE("value_key identifies values exactly") {
  const Ratio u = make_ratio(1, 3);
  CHECK(value_key(u, {1, 1, 2}) == 4);
  CHECK(value_key(u, {0, 4, 2}) == 4);
  CHECK(value_key(u, {4, 4, 2}) == 16);
  CHECK(value_key(u, {5, 1, 2}) == 16);
}

TEST_CASE("oracle: key collisions equal pairwise rational collisions, n <= 4") {
  const std::vector<DigitSystem> systems{kModel, DigitSystem::square(3),
                                         DigitSystem::mixed(2, 3),
                                         DigitSystem::kenyon()};
  for (const auto& s : systems) {
    for (const Ratio& u : random_rationals(12, 40, 101)) {
      const unsigned top = s.pairs().size() > 4 ? 2 : 4;
      for (unsigned n = 1; n <= top; ++n) {
        bool coll = false;
        const auto pts = oracle::level_points(s, to_rational(u), n);
        const std::size_t distinct = oracle::distinct_pairwise(pts, &coll);
        const auto vn = enumerate_vn(s, u, n);
        REQUIRE(vn.distinct() == distinct);
        REQUIRE(vn.has_collision() == coll);
      }
    }
  }
}

TEST_CASE("first_collision on the examples") {
  auto rep = first_collision(kModel, make_ratio(1, 1), 6);
  CHECK(rep.found);
  CHECK(*rep.first_level == 1);
  CHECK(*rep.nu == 3);

  rep = first_collision(kModel, make_ratio(1, 3), 6);
  REQUIRE(rep.found);
  CHECK(*rep.first_level == 2);
  CHECK(*rep.nu == 14);
  const auto& [x, y] = *rep.witness;
  CHECK_FALSE(x == y);
  CHECK(value_key(make_ratio(1, 3), x) == value_key(make_ratio(1, 3), y));
  CHECK(BigInt(*rep.witness_key) == value_key(make_ratio(1, 3), x));

  rep = first_collision(kModel, make_ratio(2, 3), 6);
  CHECK_FALSE(rep.found);
  CHECK(rep.levels_scanned == 6);
}

TEST_CASE("streaming count agrees with materialized enumeration") {
  for (const Ratio& u : random_rationals(10, 30, 7)) {
    for (unsigned n : {3u, 7u, 9u}) {
      const auto vn = enumerate_vn(kModel, u, n);
      for (auto backend : {Backend::Serial, Backend::Parallel}) {
        const auto st = count_distinct(kModel, u, n, {}, backend);
        REQUIRE(st.total == vn.total);
        REQUIRE(st.distinct == vn.distinct());
        REQUIRE(st.multiplicity == vn.multiplicity_histogram());
      }
    }
  }
}

TEST_CASE("first_collision falls back to streaming beyond the materialized cap") {
  EnumLimits tight;
  tight.max_level = 2;
  const auto a = first_collision(kModel, make_ratio(1, 19), 8, tight);
  const auto b = first_collision(kModel, make_ratio(1, 19), 8);
  REQUIRE(a.found == b.found);
  if (a.found) {
    CHECK(*a.first_level == *b.first_level);
    CHECK(*a.nu == *b.nu);
    CHECK(*a.witness_key == *b.witness_key);
    CHECK(a.multiplicity_histogram == b.multiplicity_histogram);
  }
}

TEST_CASE("resource caps name the bound") {
  EnumLimits lim;
  lim.max_level = 5;
  try {
    enumerate_vn(kModel, make_ratio(1, 3), 6, lim);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("max_level = 5") != std::string::npos);
  }
  lim = {};
  lim.max_points = 1000;
  CHECK_THROWS_AS(enumerate_vn(kModel, make_ratio(1, 3), 5, lim), ResourceError);
  lim = {};
  lim.max_stream_level = 4;
  CHECK_THROWS_AS(count_distinct(kModel, make_ratio(1, 3), 5, lim),
                  ResourceError);
  const BigInt huge = ipow(BigInt(10), 30);
  CHECK_THROWS_AS(key_contributions(kModel, make_ratio(huge, 1), 2),
                  ResourceError);
  CHECK_THROWS_AS(enumerate_vn(kModel, make_ratio(1, 3), 0), DomainError);
}

TEST_CASE("property: submultiplicativity of nu_n") {
  for (const Ratio& u : random_rationals(25, 40, 13)) {
    std::vector<std::uint64_t> nu(7);
    for (unsigned n = 1; n <= 6; ++n) nu[n] = enumerate_vn(kModel, u, n).distinct();
    for (unsigned m = 1; m <= 3; ++m) {
      for (unsigned n = 1; m + n <= 6; ++n) {
        REQUIRE(nu[m + n] <= nu[m] * nu[n]);
      }
    }
  }
}

TEST_CASE("property: collisions found for u and 4u agree") {
  for (long long p = 1; p <= 15; ++p) {
    for (long long q = 1; q <= 15; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const Ratio u = make_ratio(p, q);
      const Ratio u4 = make_ratio(4 * p, q);
      const Ratio u_4 = make_ratio(p, 4 * q);
      const bool f = first_collision(kModel, u, 8).found;
      REQUIRE(first_collision(kModel, u4, 9).found == f);
      REQUIRE(first_collision(kModel, u_4, 9).found == f);
    }
  }
}

TEST_CASE("property: equivalent forms and self-affinity, random q <= 40") {
  const std::vector<DigitSystem> systems{kModel, DigitSystem::square(3),
                                         DigitSystem::mixed(2, 3)};
  for (const auto& s : systems) {
    for (const Ratio& u : random_rationals(15, 40, 17)) {
      const unsigned n = s.pairs().size() > 4 ? 2 : 4;
      REQUIRE(vn_equivalent_forms(s, u, n));
      REQUIRE(self_affine_step(s, u, 1));
      REQUIRE(self_affine_step(s, u, n - 1));
    }
  }
}

TEST_CASE("determinism across backends and thread counts") {
  const Ratio u = make_ratio(3, 7);
  omp_set_num_threads(1);
  const auto one = enumerate_vn(kModel, u, 10);
  const auto st1 = count_distinct(kModel, u, 11);
  omp_set_num_threads(4);
  const auto four = enumerate_vn(kModel, u, 10);
  const auto st4 = count_distinct(kModel, u, 11);
  const auto ser = enumerate_vn(kModel, u, 10, {}, Backend::Serial);
  CHECK(one.keys == four.keys);
  CHECK(one.counts == four.counts);
  CHECK(one.keys == ser.keys);
  CHECK(st1 == st4);
  omp_set_num_threads(1);
}

TEST_CASE("representations list every preimage") {
  const Ratio u = make_ratio(1, 3);
  const auto reps = representations(kModel, u, 2, 4);
  CHECK(reps.size() == 2);
  for (const auto& r : reps) CHECK(value_key(u, r) == 4);
  CHECK(representations(kModel, u, 2, 1000).empty());
}
