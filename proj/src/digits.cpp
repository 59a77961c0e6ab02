#include "besicovitch/digits.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace besicovitch {

namespace {

std::vector<unsigned> range_digits(unsigned count) {
  std::vector<unsigned> d(count);
  std::iota(d.begin(), d.end(), 0u);
  return d;
}

std::vector<DigitPair> product_pairs(const std::vector<unsigned>& alpha,
                                     const std::vector<unsigned>& beta) {
  std::vector<DigitPair> pairs;
  pairs.reserve(alpha.size() * beta.size());
  for (unsigned a : alpha) {
    for (unsigned b : beta) pairs.push_back({a, b});
  }
  return pairs;
}

}  // namespace

DigitSystem::DigitSystem(SystemKind kind, unsigned base, unsigned r,
                         unsigned s, std::vector<unsigned> alpha,
                         std::vector<unsigned> beta,
                         std::vector<DigitPair> pairs)
    : kind_(kind),
      base_(base),
      r_(r),
      s_(s),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      pairs_(std::move(pairs)) {
  for (const auto& d : pairs_) {
    if (d.alpha >= base_ || d.beta >= base_) {
      throw DomainError("digit exceeds base " + std::to_string(base_));
    }
  }
}

DigitSystem DigitSystem::base4_model() {
  std::vector<unsigned> ab{0, 1};
  return DigitSystem(SystemKind::Base4Model, 4, 2, 2, ab, ab,
                     product_pairs(ab, ab));
}

DigitSystem DigitSystem::square(unsigned r) {
  if (!is_prime(r)) {
    throw DomainError("Square(r) requires r prime, got r = " +
                      std::to_string(r));
  }
  if (r > 65535) throw DomainError("Square(r): r too large for base r^2");
  auto ab = range_digits(r);
  return DigitSystem(SystemKind::Square, r * r, r, r, ab, ab,
                     product_pairs(ab, ab));
}

DigitSystem DigitSystem::mixed(unsigned r, unsigned s) {
  if (!is_prime(r) || !is_prime(s)) {
    throw DomainError("Mixed(r,s) requires r and s prime, got r = " +
                      std::to_string(r) + ", s = " + std::to_string(s));
  }
  if (r == s) {
    throw DomainError("Mixed(r,s) requires r != s, got r = s = " +
                      std::to_string(r));
  }
  if (r > 65535 || s > 65535) throw DomainError("Mixed(r,s): base too large");
  auto alpha = range_digits(r);
  auto beta = range_digits(s);
  auto pairs = product_pairs(alpha, beta);
  return DigitSystem(SystemKind::Mixed, r * s, r, s, std::move(alpha),
                     std::move(beta), std::move(pairs));
}

DigitSystem DigitSystem::kenyon() {
  return DigitSystem(SystemKind::Kenyon, 3, 3, 3, {0, 1}, {0, 1},
                     {{0, 0}, {1, 0}, {0, 1}});
}

unsigned DigitSystem::max_alpha() const {
  return *std::max_element(alpha_.begin(), alpha_.end());
}

unsigned DigitSystem::max_beta() const {
  return *std::max_element(beta_.begin(), beta_.end());
}

bool DigitSystem::is_symmetric() const {
  return is_product() && alpha_ == beta_;
}

unsigned DigitSystem::upper_factor() const {
  switch (kind_) {
    case SystemKind::Base4Model: return 2;
    case SystemKind::Square:
    case SystemKind::Mixed: return r_;
    case SystemKind::Kenyon: break;
  }
  throw DomainError("the Kenyon system has no planar set B");
}

std::string DigitSystem::label() const {
  switch (kind_) {
    case SystemKind::Base4Model: return "Base4Model";
    case SystemKind::Square: return "Square(" + std::to_string(r_) + ")";
    case SystemKind::Mixed:
      return "Mixed(" + std::to_string(r_) + "," + std::to_string(s_) + ")";
    case SystemKind::Kenyon: return "Kenyon";
  }
  return "?";
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

StarDigit star(const BigInt& n, unsigned base) {
  if (base < 2) throw DomainError("star: base must be >= 2");
  if (n <= 0) throw DomainError("star: n* is undefined for n = " + n.str());
  BigInt m = n;
  StarDigit out;
  while (m % base == 0) {
    m /= base;
    ++out.j_star;
  }
  out.n_star = static_cast<unsigned>(m % base);
  return out;
}

Ratio make_ratio(const BigInt& p, const BigInt& q) {
  if (p <= 0 || q <= 0) {
    throw DomainError("u = p/q requires p >= 1 and q >= 1, got " + p.str() +
                      "/" + q.str());
  }
  BigInt g = boost::multiprecision::gcd(p, q);
  return {p / g, q / g};
}

Rational to_rational(const Ratio& u) { return Rational(u.p, u.q); }

std::string to_string(const Ratio& u) { return u.p.str() + "/" + u.q.str(); }

bool is_rational(const Param& u) { return std::holds_alternative<Ratio>(u); }

double to_double(const Param& u) {
  if (const auto* r = std::get_if<Ratio>(&u)) {
    return to_double(to_rational(*r));
  }
  return std::get<Irrational>(u).value;
}

std::string to_string(const Param& u) {
  if (const auto* r = std::get_if<Ratio>(&u)) return to_string(*r);
  std::ostringstream os;
  os.precision(17);
  os << std::get<Irrational>(u).value;
  return os.str();
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

Param parse_param(const std::string& text, bool irrational) {
  if (irrational) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw DomainError("malformed u '" + text + "': expected a decimal");
    }
    if (!(v > 0.0)) throw DomainError("u must be > 0, got '" + text + "'");
    return Irrational{v};
  }
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    if (text.find('.') != std::string::npos) {
      throw DomainError("u '" + text +
                        "' is a decimal; pass --irrational or write p/q");
    }
    throw DomainError("malformed u '" + text + "': expected p/q");
  }
  return make_ratio(BigInt(num), BigInt(den));
}

RationalParam make_rational(const BigInt& p, const BigInt& q, unsigned base) {
  const Ratio u = make_ratio(p, q);
  RationalParam out;
  out.p = u.p;
  out.q = u.q;
  out.base = base;
  const StarDigit ps = star(u.p, base);
  const StarDigit qs = star(u.q, base);
  out.p_star = ps.n_star;
  out.j_star_p = ps.j_star;
  out.q_star = qs.n_star;
  out.j_star_q = qs.j_star;
  if (base == 4) {
    const bool both_odd = (out.p_star % 2 == 1) && (out.q_star % 2 == 1);
    const bool sum_odd = (out.p_star + out.q_star) % 2 == 1;
    if (!(both_odd || sum_odd)) {
      throw std::logic_error("base-4 star digits of an irreducible fraction "
                             "cannot both be even: " + to_string(u));
    }
  }
  return out;
}

RationalParam make_rational(const Ratio& u, unsigned base) {
  return make_rational(u.p, u.q, base);
}

ExactInterval hull(const DigitSystem& system, const Ratio& u) {
  const Rational ur = to_rational(u);
  Rational top = 0;
  for (const auto& d : system.pairs()) {
    top = std::max(top, Rational(d.alpha) + ur * d.beta);
  }
  return {Rational(0), top / (system.base() - 1)};
}

RealInterval hull(const DigitSystem& system, double u) {
  double top = 0.0;
  for (const auto& d : system.pairs()) {
    top = std::max(top, d.alpha + u * d.beta);
  }
  return {0.0, top / (system.base() - 1)};
}

}  // namespace besicovitch
