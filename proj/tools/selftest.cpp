#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "besicovitch/classifier.hpp"
#include "besicovitch/fourier.hpp"
#include "besicovitch/geometry.hpp"
#include "besicovitch/lattice.hpp"
#include "besicovitch/measure.hpp"
#include "cli.hpp"

namespace besicovitch::cli {

namespace {

using std::numbers::pi;

struct Example {
  std::string module;
  std::string name;
  std::function<bool(std::ostream& note)> check;
};

Ratio R(long long p, long long q) { return make_ratio(p, q); }
Param P(long long p, long long q) { return Param{R(p, q)}; }

const DigitSystem& base4() {
  static const DigitSystem s = DigitSystem::base4_model();
  return s;
}

ClassifyOptions no_witness() {
  ClassifyOptions o;
  o.compute_witnesses = false;
  return o;
}

template <typename F>
bool throws_domain(F&& f) {
  try {
    f();
  } catch (const DomainError&) {
    return true;
  }
  return false;
}

bool keys_are(const ValueMultiset& vn, std::vector<Key> expected) {
  std::vector<Key> all;
  for (std::size_t i = 0; i < vn.keys.size(); ++i) {
    all.insert(all.end(), vn.counts[i], vn.keys[i]);
  }
  return all == expected;
}

Rational cover_measure(const Param& u, unsigned n) {
  return *cover_at_depth(base4(), u, n).union_measure;
}

std::vector<Example> examples() {
  std::vector<Example> ex;
  auto add = [&](std::string m, std::string n,
                 std::function<bool(std::ostream&)> f) {
    ex.push_back({std::move(m), std::move(n), std::move(f)});
  };

  // digit-systems
  add("digits", "star(1, 4) = (0, 1)", [](std::ostream&) {
    return star(1, 4) == StarDigit{0, 1};
  });
  add("digits", "star(8, 4) = (1, 2)", [](std::ostream&) {
    return star(8, 4) == StarDigit{1, 2};
  });
  add("digits", "star(48, 4) = (2, 3)", [](std::ostream&) {
    return star(48, 4) == StarDigit{2, 3};
  });
  add("digits", "makeRational(2, 4, 4) = 1/2 with p*=1, q*=2",
      [](std::ostream&) {
        const auto r = make_rational(2, 4, 4);
        return r.p == 1 && r.q == 2 && r.p_star == 1 && r.q_star == 2;
      });
  add("digits", "makeRational(1, 3, 4): p*=1, q*=3", [](std::ostream&) {
    const auto r = make_rational(1, 3, 4);
    return r.p_star == 1 && r.q_star == 3;
  });
  add("digits", "makeRational(2, 3, 4): p*=2, q*=3", [](std::ostream&) {
    const auto r = make_rational(2, 3, 4);
    return r.p_star == 2 && r.q_star == 3;
  });
  add("digits", "hull(Base4Model, 1) = [0, 2/3]", [](std::ostream&) {
    return hull(base4(), R(1, 1)) == ExactInterval{0, Rational(2, 3)};
  });
  add("digits", "hull(Base4Model, 2) = [0, 1]", [](std::ostream&) {
    return hull(base4(), R(2, 1)) == ExactInterval{0, 1};
  });
  add("digits", "hull(Square(3), 1) = [0, 1/2]", [](std::ostream&) {
    return hull(DigitSystem::square(3), R(1, 1)) ==
           ExactInterval{0, Rational(1, 2)};
  });

  // lattice-enum
  add("lattice", "V_1 at u=1 has keys {0,1,1,2}, nu=3", [](std::ostream&) {
    const auto vn = enumerate_vn(base4(), R(1, 1), 1);
    return keys_are(vn, {0, 1, 1, 2}) && vn.distinct() == 3;
  });
  add("lattice", "V_1 at u=2 has keys {0,1,2,3}, nu=4", [](std::ostream&) {
    const auto vn = enumerate_vn(base4(), R(2, 1), 1);
    return keys_are(vn, {0, 1, 2, 3}) && vn.distinct() == 4;
  });
  add("lattice", "V_2 at u=1/3: nu=14, keys 4 and 16 doubled",
      [](std::ostream&) {
        const auto vn = enumerate_vn(base4(), R(1, 3), 2);
        std::vector<Key> doubled;
        for (std::size_t i = 0; i < vn.keys.size(); ++i) {
          if (vn.counts[i] == 2) doubled.push_back(vn.keys[i]);
        }
        const auto r4 = representations(base4(), R(1, 3), 2, 4);
        const auto r16 = representations(base4(), R(1, 3), 2, 16);
        auto has = [](const std::vector<LatticePoint>& v, std::uint64_t a,
                      std::uint64_t b) {
          return std::find(v.begin(), v.end(), LatticePoint{a, b, 2}) !=
                 v.end();
        };
        return vn.distinct() == 14 && doubled == std::vector<Key>{4, 16} &&
               has(r4, 1, 1) && has(r4, 0, 4) && has(r16, 4, 4) &&
               has(r16, 5, 1);
      });
  add("lattice", "firstCollision(u=1): n0=1, nu=3", [](std::ostream&) {
    const auto rep = first_collision(base4(), R(1, 1), 6);
    return rep.found && *rep.first_level == 1 && *rep.nu == 3;
  });
  add("lattice", "firstCollision(u=1/3): n0=2, nu=14", [](std::ostream&) {
    const auto rep = first_collision(base4(), R(1, 3), 6);
    return rep.found && *rep.first_level == 2 && *rep.nu == 14;
  });
  add("lattice", "firstCollision(u=2/3, nMax=6): none", [](std::ostream&) {
    return !first_collision(base4(), R(2, 3), 6).found;
  });
  add("lattice", "equivalent forms (Base4Model, 1, n=2)", [](std::ostream&) {
    return vn_equivalent_forms(base4(), R(1, 1), 2);
  });
  add("lattice", "equivalent forms (Base4Model, 1/3, n=3)", [](std::ostream&) {
    return vn_equivalent_forms(base4(), R(1, 3), 3);
  });
  add("lattice", "equivalent forms (Mixed(2,3), 1/5, n=2)", [](std::ostream&) {
    return vn_equivalent_forms(DigitSystem::mixed(2, 3), R(1, 5), 2);
  });
  add("lattice", "self-affine step (Base4Model, 1, n=1)", [](std::ostream&) {
    return self_affine_step(base4(), R(1, 1), 1);
  });
  add("lattice", "self-affine step (Base4Model, 1/3, n=2)", [](std::ostream&) {
    return self_affine_step(base4(), R(1, 3), 2);
  });
  add("lattice", "self-affine step (Square(3), 1/2, n=1)", [](std::ostream&) {
    return self_affine_step(DigitSystem::square(3), R(1, 2), 1);
  });

  // classifier
  add("classifier", "base4 u=2 -> IntervalCase", [](std::ostream&) {
    return classify_base4(P(2, 1)).branch == Branch::IntervalCase;
  });
  add("classifier", "base4 u=1 -> SingularThinCase, bound log3/log4",
      [](std::ostream&) {
        const auto c = classify_base4(P(1, 1));
        return c.branch == Branch::SingularThinCase && c.witnesses &&
               std::abs(c.witnesses->dim_upper_bound -
                        std::log(3.0) / std::log(4.0)) < 1e-12;
      });
  add("classifier", "base4 u=1/2 -> IntervalCase", [](std::ostream&) {
    return classify_base4(P(1, 2)).branch == Branch::IntervalCase;
  });
  add("classifier", "square r=3 u=1/3 -> IntervalCase", [](std::ostream&) {
    return classify_square(3, P(1, 3)).branch == Branch::IntervalCase;
  });
  add("classifier", "square r=3 u=1 -> SingularThinCase", [](std::ostream&) {
    return classify_square(3, P(1, 1)).branch == Branch::SingularThinCase;
  });
  add("classifier", "square r=2 matches base4 for p,q <= 50",
      [](std::ostream&) {
        for (long long p = 1; p <= 50; ++p) {
          for (long long q = 1; q <= 50; ++q) {
            if (std::gcd(p, q) != 1) continue;
            if (classify_square(2, P(p, q), no_witness()).branch !=
                classify_base4(P(p, q), no_witness()).branch) {
              return false;
            }
          }
        }
        return true;
      });
  add("classifier", "mixed(2,3) u=1/2 -> SingularThinCase", [](std::ostream&) {
    return classify_mixed(2, 3, P(1, 2)).branch == Branch::SingularThinCase;
  });
  add("classifier", "mixed(2,3) u=2 -> IntervalCase", [](std::ostream&) {
    return classify_mixed(2, 3, P(2, 1)).branch == Branch::IntervalCase;
  });
  add("classifier", "mixed(2,3) irrational -> IrrationalCase",
      [](std::ostream&) {
        return classify_mixed(2, 3, Irrational{std::sqrt(2.0)}).branch ==
               Branch::IrrationalCase;
      });
  add("classifier", "kenyon (1,2) -> PositiveMeasure", [](std::ostream&) {
    return classify_kenyon(1, 2) == KenyonBranch::PositiveMeasure;
  });
  add("classifier", "kenyon (1,1) -> ThinDimension", [](std::ostream&) {
    return classify_kenyon(1, 1) == KenyonBranch::ThinDimension;
  });
  add("classifier", "kenyon (2,7) -> PositiveMeasure", [](std::ostream&) {
    return classify_kenyon(2, 7) == KenyonBranch::PositiveMeasure;
  });
  add("classifier", "multidim d=2 u=1: bound 2 log3/log4", [](std::ostream&) {
    const auto c = classify_multidim(2, P(1, 1));
    return c.branch == Branch::SingularThinCase && c.witnesses &&
           std::abs(c.witnesses->dim_upper_bound -
                    2 * std::log(3.0) / std::log(4.0)) < 1e-12;
  });
  add("classifier", "multidim d=3 u=2 -> IntervalCase", [](std::ostream&) {
    return classify_multidim(3, P(2, 1)).branch == Branch::IntervalCase;
  });
  add("classifier", "multidim d=2 irrational -> IrrationalCase",
      [](std::ostream&) {
        return classify_multidim(2, Irrational{std::sqrt(2.0)}).branch ==
               Branch::IrrationalCase;
      });
  add("classifier", "sectionToU(1/3) = 1", [](std::ostream&) {
    return std::get<Ratio>(section_to_u(P(1, 3), base4()).u) == R(1, 1);
  });
  add("classifier", "uToSection(2) = 1/2", [](std::ostream&) {
    return std::get<Ratio>(u_to_section(P(2, 1), base4()).h) == R(1, 2);
  });
  add("classifier", "h -> u -> h round trip on 1000 random rationals",
      [](std::ostream&) {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 1000; ++i) {
          const long long q = 2 + static_cast<long long>(rng() % 10000);
          const long long p = 1 + static_cast<long long>(rng() % (q - 1));
          const Param h = P(p, q);
          const Param u = section_to_u(h, base4()).u;
          if (!(std::get<Ratio>(u_to_section(u, base4()).h) ==
                std::get<Ratio>(h))) {
            return false;
          }
        }
        return true;
      });
  add("classifier", "sectionInvariance(1/3)", [](std::ostream&) {
    return section_invariance(R(1, 3));
  });
  add("classifier", "sectionInvariance(1/2)", [](std::ostream&) {
    return section_invariance(R(1, 2));
  });
  add("classifier", "sectionInvariance for all h = p/q, q <= 40",
      [](std::ostream&) {
        for (long long q = 2; q <= 40; ++q) {
          for (long long p = 1; p < q; ++p) {
            if (std::gcd(p, q) == 1 && !section_invariance(R(p, q))) {
              return false;
            }
          }
        }
        return true;
      });

  // measure-dim
  add("measure", "cover u=2, n=6 has measure 1", [](std::ostream&) {
    return cover_measure(P(2, 1), 6) == 1;
  });
  add("measure", "cover u=1/2, n=6 has measure 1/2", [](std::ostream&) {
    return cover_measure(P(1, 2), 6) == Rational(1, 2);
  });
  add("measure", "cover u=1, n=6 has measure 3^6 4^-6 (2/3)",
      [](std::ostream&) {
        return cover_measure(P(1, 1), 6) == Rational(729 * 2, 4096 * 3);
      });
  add("measure", "dimUpperBound(1, 3, 4) = log3/log4", [](std::ostream&) {
    return std::abs(dim_upper_bound_from_collision(1, 3, 4) -
                    std::log(3.0) / std::log(4.0)) < 1e-12;
  });
  add("measure", "dimUpperBound(2, 14, 4) ~ 0.95185", [](std::ostream&) {
    return std::abs(dim_upper_bound_from_collision(2, 14, 4) - 0.95185) <
           5e-5;
  });
  add("measure", "dimUpperBound(1, 4, 4) rejected", [](std::ostream&) {
    return throws_domain([] { dim_upper_bound_from_collision(1, 4, 4); });
  });
  add("measure", "boxdim(u=1) = log3/log4 for n <= 8", [](std::ostream&) {
    for (const auto& e : box_dim_series(base4(), P(1, 1), 8)) {
      if (std::abs(e.box_dim_estimate - std::log(3.0) / std::log(4.0)) >
          1e-12) {
        return false;
      }
    }
    return true;
  });
  add("measure", "boxdim(u=2) = 1 for n <= 8", [](std::ostream&) {
    for (const auto& e : box_dim_series(base4(), P(2, 1), 8)) {
      if (std::abs(e.box_dim_estimate - 1.0) > 1e-12) return false;
    }
    return true;
  });
  add("measure", "cover u=sqrt2 strictly decreasing over n = 2..10",
      [](std::ostream& note) {
        double prev = INFINITY;
        for (unsigned n = 2; n <= 10; ++n) {
          const double m =
              cover_at_depth(base4(), Irrational{std::sqrt(2.0)}, n)
                  .union_measure_float;
          note << " " << m;
          if (!(m < prev)) return false;
          prev = m;
        }
        return true;
      });
  add("measure", "progressionScan(u=2): alpha=1, A={0}", [](std::ostream&) {
    const auto pr = progression_scan(base4(), R(2, 1), 5);
    return pr && pr->alpha_keys == 1 &&
           pr->generators == std::vector<BigInt>{0};
  });
  add("measure", "progressionScan(u=1) rejected", [](std::ostream&) {
    return throws_domain([] { progression_scan(base4(), R(1, 1), 5); });
  });
  add("measure", "progressionScan(u=2/3) recorded", [](std::ostream& note) {
    const auto pr = progression_scan(base4(), R(2, 3), 5);
    if (pr) {
      note << " alpha=" << to_string(pr->alpha_value)
           << " generators=" << pr->generators.size();
    } else {
      note << " inconclusive";
    }
    return true;
  });

  // fourier-probe
  add("fourier", "mu^(0) = 1", [](std::ostream&) {
    const auto v = mu_hat(base4(), P(1, 1), 0.0, 1e-12);
    return v.value == std::complex<double>(1.0, 0.0);
  });
  add("fourier", "u=1: |mu^(2 4^3 pi)| = |mu^(2 4^4 pi)| within 1e-9",
      [](std::ostream&) {
        const auto a = mu_hat_lattice(base4(), R(1, 1), 1, 3, 1e-12);
        const auto b = mu_hat_lattice(base4(), R(1, 1), 1, 4, 1e-12);
        double expect = 1.0;
        for (int j = 1; j < 60; ++j) {
          expect *= std::pow(std::cos(std::pow(4.0, -j) * pi), 2);
        }
        return a.truncation >= 20 && std::abs(a.abs_value - b.abs_value) < 1e-9 &&
               std::abs(a.abs_value - expect) < 1e-9;
      });
  add("fourier", "u=2: |mu^(2 pi 4^n)| vanishes", [](std::ostream&) {
    const auto v = mu_hat_lattice(base4(), R(2, 1), 1, 3, 1e-10);
    return v.exact_zero && v.abs_value == 0.0;
  });
  add("fourier", "limsup u=1/3, n=2..6 constant and positive",
      [](std::ostream& note) {
        const auto pr = limsup_probe(base4(), R(1, 3), 2, 6, 1e-10);
        note << " value=" << pr.min_abs;
        return pr.values_agree && pr.bounded_away_from_zero;
      });
  add("fourier", "limsup u=1, n=2..6 constant and positive",
      [](std::ostream& note) {
        const auto pr = limsup_probe(base4(), R(1, 1), 2, 6, 1e-10);
        note << " value=" << pr.min_abs;
        return pr.values_agree && pr.bounded_away_from_zero;
      });
  add("fourier", "limsup u=2, n=2..6 vanishes", [](std::ostream&) {
    const auto pr = limsup_probe(base4(), R(2, 1), 2, 6, 1e-10);
    return pr.max_abs <= 1e-10;
  });
  add("fourier", "decay u=2: band maxima strictly decrease, k=2..6",
      [](std::ostream& note) {
        const auto bands = decay_scan(base4(), P(2, 1), 5);
        for (std::size_t i = 0; i < bands.size(); ++i) {
          note << " " << bands[i].sup_abs;
          if (i > 0 && !(bands[i].sup_abs < bands[i - 1].sup_abs)) return false;
        }
        return true;
      });
  add("fourier", "decay u=1: band maxima stay at the limsup value",
      [](std::ostream&) {
        const double floor =
            limsup_probe(base4(), R(1, 1), 2, 2, 1e-10).min_abs;
        for (const auto& b : decay_scan(base4(), P(1, 1), 5)) {
          if (b.sup_abs < floor - 1e-9) return false;
        }
        return true;
      });
  add("fourier", "u=0 rejected", [](std::ostream&) {
    return throws_domain([] { decay_scan(base4(), Irrational{0.0}, 3); }) &&
           throws_domain([] { make_ratio(0, 1); });
  });

  // geometry-raster
  add("geometry", "directionRange(Base4Model) = [-1/3, 2/3], slopes -3, 3/2",
      [](std::ostream&) {
        const auto d = direction_range(base4());
        return d.horizontal == ExactInterval{Rational(-1, 3), Rational(2, 3)} &&
               d.slope_at_lo == -3 && d.slope_at_hi == Rational(3, 2);
      });
  add("geometry", "directionRange(Square(3)) = [-1/4, 3/4]", [](std::ostream&) {
    return direction_range(DigitSystem::square(3)).horizontal ==
           ExactInterval{Rational(-1, 4), Rational(3, 4)};
  });
  add("geometry", "Monte Carlo extremes within 1e-3 of the exact range",
      [](std::ostream& note) {
        const auto ext = sample_direction_extremes(base4(), 1000000, 30, 1);
        note << " [" << ext.lo << ", " << ext.hi << "]";
        return ext.lo >= -1.0 / 3 && ext.hi <= 2.0 / 3 &&
               ext.lo - (-1.0 / 3) < 1e-3 && 2.0 / 3 - ext.hi < 1e-3;
      });
  add("geometry", "sectionCover(0, 3): 8 intervals of length 4^-3/3",
      [](std::ostream&) {
        const auto s = section_cover(base4(), 0, 3);
        if (s.intervals.size() != 8) return false;
        for (const auto& iv : s.intervals) {
          if (iv.length() != Rational(1, 192)) return false;
        }
        return true;
      });
  add("geometry", "sectionCover(1/2) covers [0, 1/2] with u=2",
      [](std::ostream&) {
        const auto s = section_cover(base4(), Rational(1, 2), 6);
        return s.u && *s.u == R(2, 1) && s.intervals.size() == 1 &&
               s.intervals[0] == ExactInterval{0, Rational(1, 2)};
      });
  add("geometry", "sectionCover(1/3) = (2/3) cover(E_1)", [](std::ostream&) {
    const auto s = section_cover(base4(), Rational(1, 3), 5);
    return s.u && *s.u == R(1, 1) &&
           s.union_measure == Rational(2, 3) * cover_measure(P(1, 1), 5);
  });
  add("geometry", "raster occupied fraction 1024 < 512",
      [](std::ostream& note) {
        const double a = raster_b(base4(), 512).occupied_fraction;
        const double b = raster_b(base4(), 1024).occupied_fraction;
        note << " " << a << " > " << b;
        return b < a;
      });
  add("geometry", "raster row h=1/2 fills [0, 1/2] width", [](std::ostream&) {
    const auto row = raster_row(base4(), Rational(1, 2), 512, 5);
    for (unsigned c = 0; c < 256; ++c) {
      if (!row[c]) return false;
    }
    return true;
  });
  add("geometry", "raster resolution 8 rejected", [](std::ostream&) {
    return throws_domain([] { raster_b(base4(), 8); });
  });

  // cli
  add("cli", "collide --u 1/3 --nmax 6 reports n0=2, nu=14",
      [](std::ostream&) {
        std::ostringstream out, err;
        const int code = run({"collide", "--u", "1/3", "--nmax", "6"}, out, err);
        const std::string s = out.str();
        return code == 0 && s.find("\"level\": 2") != std::string::npos &&
               s.find("\"nu\": \"14\"") != std::string::npos;
      });
  add("cli", "sweep --pmax 20 --qmax 20 --nmax 6 is coherent",
      [](std::ostream&) {
        std::ostringstream out, err;
        const int code = run({"sweep", "--pmax", "20", "--qmax", "20",
                              "--nmax", "6"},
                             out, err);
        return code == 0 && out.str().find(",false\n") == std::string::npos;
      });
  return ex;
}

}  // namespace

int selftest(std::ostream& out) {
  int failures = 0;
  int total = 0;
  for (const auto& e : examples()) {
    ++total;
    std::ostringstream note;
    bool ok = false;
    try {
      ok = e.check(note);
    } catch (const std::exception& x) {
      note << " threw: " << x.what();
    }
    if (!ok) ++failures;
    out << (ok ? "PASS " : "FAIL ") << e.module << ": " << e.name;
    if (!note.str().empty()) out << " |" << note.str();
    out << '\n';
  }
  out << (total - failures) << "/" << total << " examples passed\n";
  return failures;
}

}  // namespace besicovitch::cli
