#include "besicovitch/classifier.hpp"

#include "besicovitch/measure.hpp"

namespace besicovitch {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::IntervalCase: return "IntervalCase";
    case Branch::SingularThinCase: return "SingularThinCase";
    case Branch::IrrationalCase: return "IrrationalCase";
  }
  return "?";
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::Base4Parity: return "base4_star_parity";
    case Rule::SquareDivisibility: return "square_base_divisibility";
    case Rule::MixedDivisibility: return "mixed_base_divisibility";
    case Rule::MultiDimProduct: return "multidim_product";
  }
  return "?";
}

std::string to_string(KenyonBranch b) {
  return b == KenyonBranch::PositiveMeasure ? "PositiveMeasure"
                                            : "ThinDimension";
}

Normalized normalize(const DigitSystem& system, const Ratio& u) {
  Normalized out{u, {}};
  const unsigned b = system.base();
  const StarDigit ps = star(u.p, b);
  const StarDigit qs = star(u.q, b);
  const std::string bs = std::to_string(b);
  if (ps.j_star > 0) {
    out.u.p /= ipow(BigInt(b), ps.j_star);
    out.steps.push_back("divide p by " + bs + "^" + std::to_string(ps.j_star));
  }
  if (qs.j_star > 0) {
    out.u.q /= ipow(BigInt(b), qs.j_star);
    out.steps.push_back("divide q by " + bs + "^" + std::to_string(qs.j_star));
  }
  if (system.is_symmetric() && out.u.p > out.u.q) {
    std::swap(out.u.p, out.u.q);
    out.steps.push_back("invert u -> 1/u");
  }
  return out;
}

namespace {

unsigned largest_level_within(const DigitSystem& system, unsigned wanted,
                              const EnumLimits& limits) {
  unsigned n = 0;
  while (n < wanted && n < limits.max_level) {
    bool overflow = false;
    const auto pts =
        kernels::point_count(system.pairs().size(), n + 1, &overflow);
    if (overflow || pts > limits.max_points) break;
    ++n;
  }
  return n;
}

std::optional<Witnesses> collision_witnesses(const DigitSystem& system,
                                             const Ratio& u,
                                             const ClassifyOptions& opts) {
  const unsigned n_max =
      largest_level_within(system, opts.collision_n_max, opts.limits);
  if (n_max == 0) return std::nullopt;
  const CollisionReport rep = first_collision(system, u, n_max, opts.limits);
  if (!rep.found) return std::nullopt;
  Witnesses w;
  w.n0 = *rep.first_level;
  w.nu = *rep.nu;
  w.dim_upper_bound = dim_upper_bound_from_collision(w.n0, w.nu, system.base());
  return w;
}

// Shared driver: `thin` decides SingularThinCase from the star digits.
template <typename ThinRule>
Classification classify_with(const DigitSystem& system, Rule rule,
                             const Param& u, const ClassifyOptions& opts,
                             ThinRule thin) {
  Classification c;
  c.rule = rule;
  c.base = system.base();
  c.u = u;
  c.normalized_u = u;
  if (const auto* irr = std::get_if<Irrational>(&u)) {
    if (!(irr->value > 0.0)) throw DomainError("u must be > 0");
    c.branch = Branch::IrrationalCase;
    return c;
  }
  const Ratio& ratio = std::get<Ratio>(u);
  if (ratio.p <= 0 || ratio.q <= 0) throw DomainError("u must be > 0");
  const RationalParam rp = make_rational(ratio, system.base());
  c.p_star = rp.p_star;
  c.q_star = rp.q_star;
  const Normalized norm = normalize(system, rp.ratio());
  c.normalized_u = norm.u;
  c.normalization = norm.steps;
  if (thin(rp.p_star, rp.q_star)) {
    c.branch = Branch::SingularThinCase;
    if (opts.compute_witnesses) {
      c.witnesses = collision_witnesses(system, norm.u, opts);
    }
  } else {
    c.branch = Branch::IntervalCase;
  }
  return c;
}

}  // namespace

Classification classify_base4(const Param& u, const ClassifyOptions& opts) {
  return classify_with(DigitSystem::base4_model(), Rule::Base4Parity, u, opts,
                       [](unsigned ps, unsigned qs) {
                         return ps % 2 == 1 && qs % 2 == 1;
                       });
}

Classification classify_square(unsigned r, const Param& u,
                               const ClassifyOptions& opts) {
  const DigitSystem system = DigitSystem::square(r);
  return classify_with(system, Rule::SquareDivisibility, u, opts,
                       [r](unsigned ps, unsigned qs) {
                         return ps % r != 0 && qs % r != 0;
                       });
}

Classification classify_mixed(unsigned r, unsigned s, const Param& u,
                              const ClassifyOptions& opts) {
  const DigitSystem system = DigitSystem::mixed(r, s);
  return classify_with(system, Rule::MixedDivisibility, u, opts,
                       [r, s](unsigned ps, unsigned qs) {
                         return ps % r != 0 && qs % s != 0;
                       });
}

Classification classify_multidim(unsigned d, const Param& u,
                                 const ClassifyOptions& opts) {
  if (d < 1) throw DomainError("dimension d must be >= 1");
  Classification c = classify_base4(u, opts);
  c.dimension = d;
  if (d > 1) c.rule = Rule::MultiDimProduct;
  if (c.witnesses) c.witnesses->dim_upper_bound *= d;
  return c;
}

Classification classify(const DigitSystem& system, const Param& u,
                        const ClassifyOptions& opts) {
  switch (system.kind()) {
    case SystemKind::Base4Model: return classify_base4(u, opts);
    case SystemKind::Square: return classify_square(system.r(), u, opts);
    case SystemKind::Mixed:
      return classify_mixed(system.r(), system.s(), u, opts);
    case SystemKind::Kenyon: break;
  }
  throw DomainError("the Kenyon system is classified by classify_kenyon");
}

KenyonBranch classify_kenyon(const BigInt& p, const BigInt& q) {
  if (p <= 0 || q <= 0 || boost::multiprecision::gcd(p, q) != 1) {
    throw DomainError("classify_kenyon requires an irreducible p/q, got " +
                      p.str() + "/" + q.str());
  }
  return (p + q) % 3 == 0 ? KenyonBranch::PositiveMeasure
                          : KenyonBranch::ThinDimension;
}

SectionParam section_to_u(const Param& h, const DigitSystem& system) {
  const unsigned f = system.upper_factor();
  if (const auto* irr = std::get_if<Irrational>(&h)) {
    const double v = irr->value;
    if (!(v > 0.0 && v < 1.0)) {
      throw DomainError("section height h must lie in (0,1)");
    }
    return {h, Irrational{f * v / (1.0 - v)}};
  }
  const Ratio& r = std::get<Ratio>(h);
  if (!(r.p > 0 && r.p < r.q)) {
    throw DomainError("section height h = " + to_string(r) +
                      " must lie in (0,1)");
  }
  return {h, make_ratio(f * r.p, r.q - r.p)};
}

SectionParam u_to_section(const Param& u, const DigitSystem& system) {
  const unsigned f = system.upper_factor();
  if (const auto* irr = std::get_if<Irrational>(&u)) {
    if (!(irr->value > 0.0)) throw DomainError("u must be > 0");
    return {Irrational{irr->value / (irr->value + f)}, u};
  }
  const Ratio& r = std::get<Ratio>(u);
  // h = u/(u+f) = p/(p + f q)
  return {make_ratio(r.p, r.p + f * r.q), u};
}

bool section_invariance(const Ratio& h) {
  const DigitSystem model = DigitSystem::base4_model();
  // 4h/(3h+1) with h = a/c is 4a/(3a+c)
  const Ratio h2 = make_ratio(4 * h.p, 3 * h.p + h.q);
  ClassifyOptions opts;
  opts.compute_witnesses = false;
  const Param u1 = section_to_u(Param{h}, model).u;
  const Param u2 = section_to_u(Param{h2}, model).u;
  return classify_base4(u1, opts).branch == classify_base4(u2, opts).branch;
}

}  // namespace besicovitch
