#pragma once

// Measure/dimension classification of E_u = E + uE' from the star digits of
// u = p/q, with collision witnesses from lattice enumeration.

#include <optional>
#include <string>
#include <vector>

#include "besicovitch/digits.hpp"
#include "besicovitch/lattice.hpp"

namespace besicovitch {

enum class Branch {
  IntervalCase,      // E_u is the closure of its interior
  SingularThinCase,  // mes E_u = 0 and dim E_u < 1
  IrrationalCase,    // mes E_u = 0, no multiple points
};

std::string to_string(Branch b);

/// Which decision rule produced a classification.
enum class Rule {
  Base4Parity,        // star digits both odd vs. of mixed parity
  SquareDivisibility, // r | p* or r | q* in base r^2
  MixedDivisibility,  // r | p* or s | q* in base rs
  MultiDimProduct,    // F_u = (E_u)^d, delegated to the base-4 rule
};

std::string to_string(Rule r);

struct Witnesses {
  unsigned n0 = 0;
  std::uint64_t nu = 0;
  double dim_upper_bound = 0.0;
};

struct Classification {
  Branch branch = Branch::IrrationalCase;
  Rule rule = Rule::Base4Parity;
  unsigned base = 4;
  unsigned dimension = 1;
  Param u;
  Param normalized_u;
  std::vector<std::string> normalization;
  std::optional<unsigned> p_star;
  std::optional<unsigned> q_star;
  std::optional<Witnesses> witnesses;
};

struct ClassifyOptions {
  bool compute_witnesses = true;
  unsigned collision_n_max = 8;
  EnumLimits limits{};
};

/// Result of the normalization applied before classification: strip the
/// powers of b from p and q, then (for symmetric systems) map u > 1 to 1/u.
struct Normalized {
  Ratio u;
  std::vector<std::string> steps;
};

Normalized normalize(const DigitSystem& system, const Ratio& u);

Classification classify_base4(const Param& u, const ClassifyOptions& opts = {});
Classification classify_square(unsigned r, const Param& u,
                               const ClassifyOptions& opts = {});
Classification classify_mixed(unsigned r, unsigned s, const Param& u,
                              const ClassifyOptions& opts = {});
Classification classify_multidim(unsigned d, const Param& u,
                                 const ClassifyOptions& opts = {});

/// Dispatches on system.kind(); the Kenyon system is rejected (see
/// classify_kenyon).
Classification classify(const DigitSystem& system, const Param& u,
                        const ClassifyOptions& opts = {});

enum class KenyonBranch { PositiveMeasure, ThinDimension };

std::string to_string(KenyonBranch b);

/// Digits {0, 1, u} in base 3: positive measure iff p + q = 0 mod 3.
KenyonBranch classify_kenyon(const BigInt& p, const BigInt& q);

/// Horizontal section parameter h of the planar set B and the induced u,
/// related by u = f*h/(1-h) with f = system.upper_factor().
struct SectionParam {
  Param h;
  Param u;
};

SectionParam section_to_u(const Param& h, const DigitSystem& system);
SectionParam u_to_section(const Param& u, const DigitSystem& system);

/// Whether h and 4h/(3h+1) (that is, u and 4u) land in the same base-4
/// branch.
bool section_invariance(const Ratio& h);

}  // namespace besicovitch
