#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "besicovitch/classifier.hpp"
#include "besicovitch/fourier.hpp"
#include "besicovitch/geometry.hpp"
#include "besicovitch/lattice.hpp"
#include "besicovitch/measure.hpp"
#include "besicovitch/serialize.hpp"

namespace besicovitch::cli {

namespace {

struct Common {
  std::string system = "base4";
  unsigned r = 2;
  unsigned s = 3;
  std::string u;
  bool irrational = false;
  std::string format;
  std::string output;
  int threads = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  EnumLimits limits{};
};

DigitSystem make_system(const Common& c) {
  if (c.system == "base4") return DigitSystem::base4_model();
  if (c.system == "square") return DigitSystem::square(c.r);
  if (c.system == "mixed") return DigitSystem::mixed(c.r, c.s);
  if (c.system == "kenyon") return DigitSystem::kenyon();
  throw DomainError("unknown --system '" + c.system +
                    "' (expected base4, square, mixed or kenyon)");
}

Param require_u(const Common& c) {
  if (c.u.empty()) throw DomainError("--u is required");
  return parse_param(c.u, c.irrational);
}

Ratio require_rational(const Common& c, const char* command) {
  const Param u = require_u(c);
  if (!is_rational(u)) {
    throw DomainError(std::string(command) +
                      " enumerates exact lattices and needs a rational --u");
  }
  return std::get<Ratio>(u);
}

std::string pick_format(const Common& c, std::initializer_list<const char*> ok) {
  if (c.format.empty()) return *ok.begin();
  for (const char* f : ok) {
    if (c.format == f) return c.format;
  }
  std::string list;
  for (const char* f : ok) list += (list.empty() ? "" : ", ") + std::string(f);
  throw DomainError("--format " + c.format + " is not available here (" +
                    list + ")");
}

/// Writes through a file when --output is set, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path, binary ? std::ios::out | std::ios::binary : std::ios::out);
    if (!file_) throw DomainError("cannot open --output " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void emit_json(const Common& c, std::ostream& out, const Json& j) {
  Sink sink(c.output, out, false);
  sink.get() << j.dump(2) << '\n';
}

// ---- subcommands ----------------------------------------------------------

struct ClassifyArgs {
  unsigned d = 1;
  unsigned nmax = 8;
  bool no_witnesses = false;
};

void cmd_classify(const Common& c, const ClassifyArgs& a, std::ostream& out) {
  pick_format(c, {"json"});
  const DigitSystem system = make_system(c);
  const Param u = require_u(c);
  if (system.kind() == SystemKind::Kenyon) {
    if (!is_rational(u)) throw DomainError("the Kenyon rule needs rational u");
    const Ratio& r = std::get<Ratio>(u);
    Json j;
    j["u"] = to_string(r);
    j["base"] = "3";
    j["branch"] = to_string(classify_kenyon(r.p, r.q));
    j["theorem"] = "kenyon_mod3";
    emit_json(c, out, j);
    return;
  }
  ClassifyOptions opts;
  opts.compute_witnesses = !a.no_witnesses;
  opts.collision_n_max = a.nmax;
  opts.limits = c.limits;
  Classification cl;
  if (a.d != 1) {
    if (system.kind() != SystemKind::Base4Model) {
      throw DomainError("--d applies to the base4 system only");
    }
    cl = classify_multidim(a.d, u, opts);
  } else {
    cl = classify(system, u, opts);
  }
  emit_json(c, out, to_json(cl));
}

struct VnArgs {
  unsigned n = 1;
  std::size_t max_collisions = 16;
};

void cmd_vn(const Common& c, const VnArgs& a, std::ostream& out) {
  pick_format(c, {"json"});
  const DigitSystem system = make_system(c);
  const Ratio u = require_rational(c, "vn");
  if (a.n < 1) throw DomainError("--n must be >= 1");
  const ValueMultiset vn = enumerate_vn(system, u, a.n, c.limits);
  emit_json(c, out, vn_json(system, u, vn, a.max_collisions));
}

void cmd_collide(const Common& c, unsigned nmax, std::ostream& out) {
  pick_format(c, {"json"});
  const DigitSystem system = make_system(c);
  const Ratio u = require_rational(c, "collide");
  if (nmax < 1) throw DomainError("--nmax must be >= 1");
  const CollisionReport rep = first_collision(system, u, nmax, c.limits);
  emit_json(c, out, to_json(rep, system, u, rep.levels_scanned));
}

struct CoverArgs {
  unsigned nmax = 8;
  unsigned n = 0;
  bool intervals = false;
};

void cmd_cover(const Common& c, const CoverArgs& a, std::ostream& out) {
  const std::string fmt = pick_format(c, {"csv", "json"});
  const DigitSystem system = make_system(c);
  const Param u = require_u(c);
  CoverOptions opts;
  opts.limits = c.limits;
  std::vector<CoverEstimate> series;
  if (a.n > 0) {
    opts.keep_intervals = a.intervals;
    series.push_back(cover_at_depth(system, u, a.n, opts));
  } else {
    series = box_dim_series(system, u, a.nmax, opts);
  }
  Sink sink(c.output, out, false);
  if (fmt == "csv") {
    write_cover_csv(sink.get(), series);
    return;
  }
  Json arr = Json::array();
  for (const auto& e : series) {
    Json j;
    j["n"] = e.level;
    j["nu_n"] = std::to_string(e.distinct_count);
    j["union_measure"] =
        e.union_measure ? Json(to_string(*e.union_measure)) : Json(nullptr);
    j["union_measure_float"] = e.union_measure_float;
    j["boxdim"] = e.box_dim_estimate;
    if (e.intervals) {
      Json ivs = Json::array();
      for (const auto& iv : *e.intervals) {
        ivs.push_back({to_string(iv.lo), to_string(iv.hi)});
      }
      j["intervals"] = ivs;
    }
    arr.push_back(j);
  }
  sink.get() << arr.dump(2) << '\n';
}

struct FourierArgs {
  std::vector<double> t;
  unsigned n_from = 0;
  unsigned n_to = 0;
  unsigned bands = 0;
  unsigned samples = 4096;
};

void cmd_fourier(const Common& c, const FourierArgs& a, std::ostream& out) {
  const std::string fmt = pick_format(c, {"csv", "json"});
  const DigitSystem system = make_system(c);
  const Param u = require_u(c);
  Sink sink(c.output, out, false);
  if (a.bands > 0) {
    DecayOptions opts;
    opts.samples_per_band = a.samples;
    opts.tolerance = c.tolerance;
    const auto bands = decay_scan(system, u, a.bands, opts);
    if (fmt == "csv") {
      sink.get() << "band,lo,hi,sup_abs,argmax_t\n";
      for (const auto& b : bands) {
        sink.get() << b.band << ',' << format_double(b.lo) << ','
                   << format_double(b.hi) << ',' << format_double(b.sup_abs)
                   << ',' << format_double(b.argmax_t) << '\n';
      }
    } else {
      Json arr = Json::array();
      for (const auto& b : bands) {
        arr.push_back({{"band", b.band},
                       {"lo", b.lo},
                       {"hi", b.hi},
                       {"sup_abs", b.sup_abs},
                       {"argmax_t", b.argmax_t}});
      }
      sink.get() << arr.dump(2) << '\n';
    }
    return;
  }
  std::vector<FourierEvaluation> values;
  if (a.n_to > 0) {
    if (!is_rational(u)) throw DomainError("--n-to probes need rational u");
    values = limsup_probe(system, std::get<Ratio>(u), a.n_from, a.n_to,
                          c.tolerance)
                 .values;
  } else {
    if (a.t.empty()) {
      throw DomainError("fourier needs --t values, --n-to, or --bands");
    }
    values = mu_hat_batch(system, u, a.t, c.tolerance);
  }
  if (fmt == "csv") {
    write_fourier_csv(sink.get(), values);
    return;
  }
  Json arr = Json::array();
  for (const auto& v : values) {
    arr.push_back({{"t", v.t},
                   {"J", v.truncation},
                   {"re", v.value.real()},
                   {"im", v.value.imag()},
                   {"abs_value", v.abs_value},
                   {"tail_bound", v.tail_bound},
                   {"exact_zero", v.exact_zero}});
  }
  sink.get() << arr.dump(2) << '\n';
}

struct RasterArgs {
  std::vector<unsigned> resolutions{256};
  unsigned depth = 0;
  std::uint64_t max_work = std::uint64_t{1} << 30;
};

void cmd_raster(const Common& c, const RasterArgs& a, std::ostream& out) {
  const std::string fmt = pick_format(c, {"csv", "pgm"});
  const DigitSystem system = make_system(c);
  RasterOptions opts;
  opts.depth = a.depth;
  opts.max_work = a.max_work;
  if (fmt == "pgm") {
    if (a.resolutions.size() != 1) {
      throw DomainError("--format pgm takes exactly one --resolution");
    }
    const RasterImage img = raster_b(system, a.resolutions.front(), opts);
    Sink sink(c.output, out, true);
    write_pgm(sink.get(), img);
    return;
  }
  std::vector<RasterRow> rows;
  for (unsigned res : a.resolutions) {
    const RasterImage img = raster_b(system, res, opts);
    rows.push_back({res, img.depth, img.occupied_fraction});
  }
  Sink sink(c.output, out, false);
  write_raster_csv(sink.get(), rows);
}

struct SweepArgs {
  unsigned pmax = 20;
  unsigned qmax = 20;
  unsigned nmax = 6;
  unsigned singular_nmax = 8;
};

void cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out) {
  const std::string fmt = pick_format(c, {"csv", "json"});
  if (a.pmax < 1 || a.qmax < 1) throw DomainError("--pmax/--qmax must be >= 1");
  std::vector<std::pair<unsigned, unsigned>> todo;
  for (unsigned p = 1; p <= a.pmax; ++p) {
    for (unsigned q = 1; q <= a.qmax; ++q) {
      if (std::gcd(p, q) == 1) todo.emplace_back(p, q);
    }
  }
  const DigitSystem model = DigitSystem::base4_model();
  std::vector<SweepRow> rows(todo.size());
  const auto count = static_cast<std::int64_t>(todo.size());
  ClassifyOptions copts;
  copts.compute_witnesses = false;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const Ratio u = make_ratio(todo[i].first, todo[i].second);
      const Classification cl = classify_base4(Param{u}, copts);
      const bool thin = cl.branch == Branch::SingularThinCase;
      const CollisionReport rep =
          first_collision(model, u, thin ? a.singular_nmax : a.nmax, c.limits,
                          Backend::Serial);
      SweepRow& row = rows[i];
      row.p = u.p;
      row.q = u.q;
      row.p_star = *cl.p_star;
      row.q_star = *cl.q_star;
      row.branch = cl.branch;
      row.n0 = rep.first_level;
      row.nu = rep.nu;
      row.coherent = thin == rep.found;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Sink sink(c.output, out, false);
  if (fmt == "csv") {
    write_sweep_csv(sink.get(), rows);
    return;
  }
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"p", r.p.str()},
                   {"q", r.q.str()},
                   {"pStar", r.p_star},
                   {"qStar", r.q_star},
                   {"branch", to_string(r.branch)},
                   {"n0", r.n0 ? Json(*r.n0) : Json(nullptr)},
                   {"nu", r.nu ? Json(std::to_string(*r.nu)) : Json(nullptr)},
                   {"coherent", r.coherent}});
  }
  sink.get() << arr.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact enumeration, classification and rasterization of "
               "Cantor sumsets E + uE'",
               "besi"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--system", c.system, "base4 | square | mixed | kenyon")
      ->capture_default_str();
  app.add_option("--r", c.r, "prime r of square/mixed")->capture_default_str();
  app.add_option("--s", c.s, "prime s of mixed")->capture_default_str();
  app.add_option("--u", c.u, "parameter u as p/q or an integer; a decimal "
                             "requires --irrational");
  app.add_flag("--irrational", c.irrational,
               "treat a decimal --u as an irrational parameter");
  app.add_option("--format", c.format, "json | csv | pgm (per command)");
  app.add_option("--output,-o", c.output, "write results to this file");
  app.add_option("--threads", c.threads, "OpenMP thread count (0 = default)");
  app.add_option("--seed", c.seed, "seed for Monte Carlo sampling")
      ->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Fourier truncation tolerance")
      ->capture_default_str();
  app.add_option("--max-level", c.limits.max_level,
                 "cap on materialized enumeration level")
      ->capture_default_str();
  app.add_option("--max-points", c.limits.max_points,
                 "cap on materialized enumeration points")
      ->capture_default_str();
  app.add_option("--max-stream-level", c.limits.max_stream_level,
                 "cap on streaming count level")
      ->capture_default_str();
  app.add_option("--max-stream-points", c.limits.max_stream_points,
                 "cap on streaming count points")
      ->capture_default_str();

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "measure/dimension branch of E_u");
  classify_cmd->add_option("--d", ca.d, "dimension of the product set")
      ->capture_default_str();
  classify_cmd->add_option("--nmax", ca.nmax, "collision witness search depth")
      ->capture_default_str();
  classify_cmd->add_flag("--no-witnesses", ca.no_witnesses,
                         "skip the collision witness search");

  VnArgs va;
  auto* vn_cmd = app.add_subcommand("vn", "enumerate V_n with multiplicities");
  vn_cmd->add_option("--n", va.n, "level")->required();
  vn_cmd->add_option("--max-collisions", va.max_collisions,
                     "colliding keys to expand")
      ->capture_default_str();

  unsigned collide_nmax = 8;
  auto* collide_cmd = app.add_subcommand("collide", "first level with a multiple point");
  collide_cmd->add_option("--nmax", collide_nmax, "highest level scanned")
      ->capture_default_str();

  CoverArgs cva;
  auto* cover_cmd = app.add_subcommand("cover", "depth-n covers and box dimension");
  cover_cmd->add_option("--nmax", cva.nmax, "series n = 1..nmax")
      ->capture_default_str();
  cover_cmd->add_option("--n", cva.n, "single depth instead of a series");
  cover_cmd->add_flag("--intervals", cva.intervals,
                      "include merged intervals (json, with --n)");

  FourierArgs fa;
  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of the canonical measure");
  fourier_cmd->add_option("--t", fa.t, "evaluation points");
  fourier_cmd->add_option("--n-from", fa.n_from, "first level of t = 2 q b^n pi");
  fourier_cmd->add_option("--n-to", fa.n_to, "last level of t = 2 q b^n pi");
  fourier_cmd->add_option("--bands", fa.bands, "decay scan band count");
  fourier_cmd->add_option("--samples", fa.samples, "samples per band")
      ->capture_default_str();

  RasterArgs ra;
  auto* raster_cmd = app.add_subcommand("raster", "rasterize the planar set B");
  raster_cmd->add_option("--resolution", ra.resolutions, "pixels per side")
      ->capture_default_str();
  raster_cmd->add_option("--depth", ra.depth, "cover depth (0 = matched)")
      ->capture_default_str();
  raster_cmd->add_option("--max-work", ra.max_work,
                         "cap on resolution * pairs^depth")
      ->capture_default_str();

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "base-4 classifier vs. enumeration sweep");
  sweep_cmd->add_option("--pmax", sa.pmax)->capture_default_str();
  sweep_cmd->add_option("--qmax", sa.qmax)->capture_default_str();
  sweep_cmd->add_option("--nmax", sa.nmax, "collision depth for IntervalCase rows")
      ->capture_default_str();
  sweep_cmd->add_option("--singular-nmax", sa.singular_nmax,
                        "collision depth for SingularThinCase rows")
      ->capture_default_str();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in example table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (c.threads < 0) {
    err << "error: --threads must be >= 0\n";
    return kExitUsage;
  }
  if (c.threads > 0) omp_set_num_threads(c.threads);

  try {
    if (*classify_cmd) cmd_classify(c, ca, out);
    else if (*vn_cmd) cmd_vn(c, va, out);
    else if (*collide_cmd) cmd_collide(c, collide_nmax, out);
    else if (*cover_cmd) cmd_cover(c, cva, out);
    else if (*fourier_cmd) cmd_fourier(c, fa, out);
    else if (*raster_cmd) cmd_raster(c, ra, out);
    else if (*sweep_cmd) cmd_sweep(c, sa, out);
    else if (*selftest_cmd) {
      Sink sink(c.output, out, false);
      return selftest(sink.get()) == 0 ? kExitOk : kExitSelftestFailed;
    }
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace besicovitch::cli
