#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <omp.h>

#include "besicovitch/fourier.hpp"
#include "oracle/oracle.hpp"

using namespace besicovitch;
using std::numbers::pi;

namespace {

const DigitSystem kModel = DigitSystem::base4_model();
constexpr double kTol = 1e-10;

Param P(long long p, long long q) { return Param{make_ratio(p, q)}; }

}  // namespace

TEST_CASE("value at zero and the unit bound") {
  for (const auto& s : {kModel, DigitSystem::square(3), DigitSystem::mixed(2, 3),
                        DigitSystem::kenyon()}) {
    const auto z = mu_hat(s, P(1, 3), 0.0, kTol);
    CHECK(z.value == std::complex<double>(1.0, 0.0));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(-5000.0, 5000.0);
    for (int i = 0; i < 200; ++i) {
      const auto v = mu_hat(s, Irrational{std::sqrt(2.0)}, t(rng), kTol);
      REQUIRE(v.abs_value <= 1.0 + 1e-12);
      REQUIRE(v.tail_bound >= 0.0);
      REQUIRE(v.tail_bound <= kTol);
    }
  }
}

TEST_CASE("oracle: truncated product matches a long direct product") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> t(-2000.0, 2000.0);
  for (const auto& s : {kModel, DigitSystem::square(3), DigitSystem::mixed(2, 3)}) {
    for (double u : {1.0, 1.0 / 3, std::sqrt(2.0)}) {
      for (int i = 0; i < 50; ++i) {
        const double x = t(rng);
        const auto v = mu_hat(s, Irrational{u}, x, kTol);
        REQUIRE(std::abs(v.value - oracle::mu_hat(s, u, x)) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: conjugate symmetry") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> t(0.0, 1e5);
  for (int i = 0; i < 200; ++i) {
    const double x = t(rng);
    const auto a = mu_hat(kModel, P(3, 5), x, kTol);
    const auto b = mu_hat(kModel, P(3, 5), -x, kTol);
    REQUIRE(std::abs(a.value - std::conj(b.value)) < 2 * kTol);
  }
}

TEST_CASE("property: self-similarity mu(t) = C(t/b) mu(t/b)") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> t(-1e4, 1e4);
  for (int i = 0; i < 100; ++i) {
    const double x = t(rng);
    const double u = 1.0 / 3;
    const auto full = mu_hat(kModel, Irrational{u}, x, kTol);
    const auto part = mu_hat(kModel, Irrational{u}, x / 4, kTol);
    const auto lhs = digit_factor(kModel, u, x / 4) * part.value;
    REQUIRE(std::abs(full.value - lhs) < 2 * kTol + 1e-12);
  }
}

TEST_CASE("property: doubling the truncation stays within the tail bound") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> t(1.0, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double x = t(rng);
    const auto v = mu_hat(kModel, P(1, 3), x, 1e-6);
    const auto fine = oracle::mu_hat(kModel, 1.0 / 3, x, 2 * v.truncation);
    REQUIRE(std::abs(std::abs(fine) - v.abs_value) <= v.tail_bound + 1e-12);
  }
}

TEST_CASE("lattice points: head factors are exactly one") {
  const auto a = mu_hat_lattice(kModel, make_ratio(1, 1), 1, 3, 1e-12);
  const auto b = mu_hat_lattice(kModel, make_ratio(1, 1), 1, 4, 1e-12);
  CHECK(a.truncation >= 20);
  CHECK(std::abs(a.abs_value - b.abs_value) < 1e-9);
  double expect = 1.0;
  for (int j = 1; j < 60; ++j) expect *= std::pow(std::cos(std::pow(4.0, -j) * pi), 2);
  CHECK(a.abs_value == doctest::Approx(expect).epsilon(1e-12));
  // Agrees with the floating evaluation where the latter is accurate.
  for (long long q : {1, 3, 5}) {
    for (unsigned n = 0; n <= 3; ++n) {
      const auto ex = mu_hat_lattice(kModel, make_ratio(1, q), q, n, kTol);
      const auto fl = mu_hat(kModel, P(1, q), ex.t, kTol);
      REQUIRE(std::abs(ex.abs_value - fl.abs_value) < 1e-8);
    }
  }
}

TEST_CASE("exact zeros are symbolic") {
  const auto z = mu_hat_lattice(kModel, make_ratio(2, 1), 1, 3, kTol);
  CHECK(z.exact_zero);
  CHECK(z.abs_value == 0.0);
  const auto nz = mu_hat_lattice(kModel, make_ratio(1, 1), 1, 3, kTol);
  CHECK_FALSE(nz.exact_zero);
}

TEST_CASE("limsup probes") {
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 3}, std::pair{3, 5}}) {
    const auto pr = limsup_probe(kModel, make_ratio(p, q), 2, 6, kTol);
    CHECK(pr.values.size() == 5);
    CHECK(pr.values_agree);
    CHECK(pr.bounded_away_from_zero);
  }
  const auto two = limsup_probe(kModel, make_ratio(2, 1), 2, 6, kTol);
  CHECK_FALSE(two.bounded_away_from_zero);
  CHECK(two.max_abs == 0.0);
  CHECK_THROWS_AS(limsup_probe(kModel, make_ratio(1, 1), 5, 2, kTol), DomainError);
}

TEST_CASE("property: branch coherence of the limsup probe, p,q <= 15") {
  for (long long p = 1; p <= 15; ++p) {
    for (long long q = 1; q <= 15; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto rp = make_rational(p, q, 4);
      const auto pr = limsup_probe(kModel, rp.ratio(), 2, 6, kTol);
      INFO("u = " << p << "/" << q);
      if (rp.p_star % 2 == 1 && rp.q_star % 2 == 1) {
        REQUIRE(pr.bounded_away_from_zero);
        REQUIRE(pr.values_agree);
      }
    }
  }
}

TEST_CASE("decay scan") {
  const auto two = decay_scan(kModel, P(2, 1), 5);
  REQUIRE(two.size() == 5);
  for (std::size_t i = 1; i < two.size(); ++i) {
    CHECK(two[i].sup_abs < two[i - 1].sup_abs);
  }
  const double floor = limsup_probe(kModel, make_ratio(1, 1), 2, 2, kTol).min_abs;
  for (const auto& b : decay_scan(kModel, P(1, 1), 5)) {
    CHECK(b.sup_abs >= floor - 1e-9);
    CHECK(b.argmax_t >= b.lo);
    CHECK(b.argmax_t <= b.hi);
  }
  CHECK_THROWS_AS(decay_scan(kModel, P(1, 1), 1), DomainError);
  CHECK_THROWS_AS(decay_scan(kModel, Irrational{0.0}, 3), DomainError);
}

TEST_CASE("batch evaluation is ordered and thread-count independent") {
  std::vector<double> ts;
  for (int i = 0; i < 500; ++i) ts.push_back(i * 37.5);
  omp_set_num_threads(1);
  const auto a = mu_hat_batch(kModel, P(3, 5), ts, kTol);
  omp_set_num_threads(4);
  const auto b = mu_hat_batch(kModel, P(3, 5), ts, kTol);
  omp_set_num_threads(1);
  REQUIRE(a.size() == ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    REQUIRE(a[i].t == ts[i]);
    REQUIRE(a[i].value == b[i].value);
  }
}

TEST_CASE("truncation cap") {
  CHECK_THROWS_AS(mu_hat(kModel, P(1, 1), 1.0, 0.0), DomainError);
  CHECK_NOTHROW(mu_hat(kModel, P(1, 1), 1e300, 1e-10));
}
