#include <doctest.h>

#include <algorithm>
#include <random>

#include <omp.h>

#include "besicovitch/kernels.hpp"

using namespace besicovitch::kernels;

namespace {

std::vector<Key> naive_keys(const std::vector<Key>& contribs, unsigned base,
                            unsigned n) {
  std::vector<Key> keys{0};
  Key pw = 1;
  for (unsigned k = 0; k < n; ++k) {
    std::vector<Key> next;
    for (Key x : keys) {
      for (Key c : contribs) next.push_back(x + c * pw);
    }
    keys.swap(next);
    pw *= base;
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

unsigned __int128 naive_union(const std::vector<Key>& lows, Key width) {
  // Paint unit cells [x, x+1) and count them.
  if (lows.empty()) return 0;
  const Key top = lows.back() + width;
  std::vector<char> cell(top + 1, 0);
  for (Key lo : lows) {
    for (Key x = lo; x < lo + width; ++x) cell[x] = 1;
  }
  return static_cast<unsigned __int128>(std::count(cell.begin(), cell.end(), 1));
}

struct Case {
  std::vector<Key> contribs;
  unsigned base;
  unsigned n;
};

std::vector<Case> random_cases(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  for (int i = 0; i < count; ++i) {
    Case c;
    c.base = 2 + rng() % 8;
    const std::size_t m = 2 + rng() % 4;
    for (std::size_t j = 0; j < m; ++j) c.contribs.push_back(rng() % 12);
    c.n = 1 + rng() % 6;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

TEST_CASE("point_count and max_key") {
  bool overflow = false;
  CHECK(point_count(4, 12, &overflow) == 16777216);
  CHECK_FALSE(overflow);
  point_count(4, 40, &overflow);
  CHECK(overflow);
  const std::vector<Key> c{0, 1, 3, 4};
  overflow = false;
  CHECK(max_key(c, 4, 3, &overflow) == 4 * (1 + 4 + 16));
  CHECK_FALSE(overflow);
  const std::vector<Key> big{0, Key{1} << 40};
  max_key(big, 1u << 12, 3, &overflow);
  CHECK(overflow);
}

TEST_CASE("serial and OpenMP sorted_keys match the naive enumeration") {
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    for (const auto& c : random_cases(200, 3)) {
      const auto ref = naive_keys(c.contribs, c.base, c.n);
      REQUIRE(serial::sorted_keys(c.contribs, c.base, c.n) == ref);
      REQUIRE(omp::sorted_keys(c.contribs, c.base, c.n) == ref);
    }
  }
}

TEST_CASE("OpenMP sorted_keys is thread-count independent at merge scale") {
  const std::vector<Key> c{0, 3, 1, 4};
  omp_set_num_threads(1);
  const auto one = omp::sorted_keys(c, 4, 10);
  omp_set_num_threads(4);
  const auto four = omp::sorted_keys(c, 4, 10);
  CHECK(one == four);
  CHECK(one == serial::sorted_keys(c, 4, 10));
}

TEST_CASE("windowed statistics equal the statistics of the sorted keys") {
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    for (const auto& c : random_cases(150, 9)) {
      const auto ref = stats_of_sorted(naive_keys(c.contribs, c.base, c.n));
      for (std::uint64_t w : {1u, 3u, 17u}) {
        REQUIRE(serial::windowed_stats(c.contribs, c.base, c.n, w) == ref);
        REQUIRE(omp::windowed_stats(c.contribs, c.base, c.n, w) == ref);
      }
    }
  }
}

TEST_CASE("paths_to_key count equals key multiplicity") {
  for (const auto& c : random_cases(80, 21)) {
    const auto keys = naive_keys(c.contribs, c.base, c.n);
    std::size_t i = 0;
    while (i < keys.size()) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      const auto paths = paths_to_key(c.contribs, c.base, c.n, keys[i]);
      REQUIRE(paths.size() == j - i);
      for (const auto& p : paths) {
        Key sum = 0, pw = 1;
        for (auto idx : p) {
          sum += c.contribs[idx] * pw;
          pw *= c.base;
        }
        REQUIRE(sum == keys[i]);
      }
      i = j;
    }
  }
}

TEST_CASE("first_duplicate finds the smallest repeated key") {
  for (const auto& c : random_cases(150, 33)) {
    const auto keys = naive_keys(c.contribs, c.base, c.n);
    std::optional<Key> ref;
    for (std::size_t i = 1; i < keys.size(); ++i) {
      if (keys[i] == keys[i - 1]) {
        ref = keys[i];
        break;
      }
    }
    for (std::uint64_t w : {1u, 5u}) {
      REQUIRE(first_duplicate(c.contribs, c.base, c.n, w) == ref);
    }
  }
}

TEST_CASE("union length: sweep, gap sum and painting agree") {
  std::mt19937_64 rng(77);
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    for (int i = 0; i < 300; ++i) {
      std::vector<Key> lows(1 + rng() % 200);
      for (auto& x : lows) x = rng() % 2000;
      std::sort(lows.begin(), lows.end());
      const Key width = 1 + rng() % 40;
      const auto ref = naive_union(lows, width);
      REQUIRE(serial::union_length(lows, width) == ref);
      REQUIRE(omp::union_length(lows, width) == ref);
    }
  }
  CHECK(serial::union_length({}, 5) == 0);
  CHECK(omp::union_length({}, 5) == 0);
}
