#pragma once

// Radix digit systems for sumsets of two Cantor sets, E_u = E + uE',
// together with the base-b "first nonzero digit" utilities.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "besicovitch/numeric.hpp"

namespace besicovitch {

enum class SystemKind {
  Base4Model,  // base 4, both alphabets {0,1}
  Square,      // base r^2, both alphabets {0..r-1}
  Mixed,       // base r*s, alphabets {0..r-1} and {0..s-1}
  Kenyon,      // base 3, single alphabet {0, 1, u}
};

/// One digit choice at a position: contributes alpha + u*beta.
struct DigitPair {
  unsigned alpha = 0;
  unsigned beta = 0;
  friend bool operator==(const DigitPair&, const DigitPair&) = default;
};

/// Immutable description of a digit system. For the three product families
/// the pair list is alphaDigits x betaDigits; the Kenyon system uses the
/// pairs (0,0), (1,0), (0,1).
class DigitSystem {
 public:
  static DigitSystem base4_model();
  static DigitSystem square(unsigned r);
  static DigitSystem mixed(unsigned r, unsigned s);
  static DigitSystem kenyon();

  SystemKind kind() const { return kind_; }
  unsigned base() const { return base_; }
  unsigned r() const { return r_; }
  unsigned s() const { return s_; }
  std::span<const unsigned> alpha_digits() const { return alpha_; }
  std::span<const unsigned> beta_digits() const { return beta_; }
  std::span<const DigitPair> pairs() const { return pairs_; }
  unsigned max_alpha() const;
  unsigned max_beta() const;

  /// True when pairs() is the full product alphaDigits x betaDigits.
  bool is_product() const { return kind_ != SystemKind::Kenyon; }
  /// True when swapping the two alphabets leaves the system unchanged,
  /// which is what makes E_{1/u} = E_u / u hold.
  bool is_symmetric() const;
  /// Scale factor of the upper Cantor set: B joins E to factor*E' + i.
  unsigned upper_factor() const;

  /// "Base4Model", "Square(3)", "Mixed(2,3)", "Kenyon".
  std::string label() const;

  friend bool operator==(const DigitSystem&, const DigitSystem&) = default;

 private:
  DigitSystem(SystemKind kind, unsigned base, unsigned r, unsigned s,
              std::vector<unsigned> alpha, std::vector<unsigned> beta,
              std::vector<DigitPair> pairs);

  SystemKind kind_;
  unsigned base_;
  unsigned r_;
  unsigned s_;
  std::vector<unsigned> alpha_;
  std::vector<unsigned> beta_;
  std::vector<DigitPair> pairs_;
};

bool is_prime(unsigned n);

/// Position and value of the first nonzero base-b digit read from the right.
struct StarDigit {
  unsigned j_star = 0;
  unsigned n_star = 0;
  friend bool operator==(const StarDigit&, const StarDigit&) = default;
};

StarDigit star(const BigInt& n, unsigned base);

/// A positive rational in lowest terms.
struct Ratio {
  BigInt p;
  BigInt q;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio make_ratio(const BigInt& p, const BigInt& q);
Rational to_rational(const Ratio& u);
std::string to_string(const Ratio& u);

/// A parameter known only approximately and declared irrational by the
/// caller. Branch logic keys off the type, never off the value.
struct Irrational {
  double value = 0.0;
};

using Param = std::variant<Ratio, Irrational>;

bool is_rational(const Param& u);
double to_double(const Param& u);
std::string to_string(const Param& u);

/// Parses "p/q" or an integer exactly. A decimal is accepted only with
/// `irrational` set; without it a decimal is rejected as ambiguous.
Param parse_param(const std::string& text, bool irrational);

/// An irreducible p/q with its base-b star digits.
struct RationalParam {
  BigInt p;
  BigInt q;
  unsigned base = 4;
  unsigned p_star = 0;
  unsigned q_star = 0;
  unsigned j_star_p = 0;
  unsigned j_star_q = 0;

  Ratio ratio() const { return {p, q}; }
};

RationalParam make_rational(const BigInt& p, const BigInt& q, unsigned base);
RationalParam make_rational(const Ratio& u, unsigned base);

struct ExactInterval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const ExactInterval&, const ExactInterval&) = default;
};

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Convex hull of E_u: [0, (maxAlpha + u*maxBeta)/(base-1)].
ExactInterval hull(const DigitSystem& system, const Ratio& u);
RealInterval hull(const DigitSystem& system, double u);

}  // namespace besicovitch
