#include "besicovitch/serialize.hpp"

#include <charconv>
#include <ostream>

namespace besicovitch {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

Json digits_json(std::span<const unsigned> digits) {
  Json arr = Json::array();
  for (unsigned d : digits) arr.push_back(std::to_string(d));
  return arr;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const DigitSystem& system) {
  Json j;
  j["label"] = system.label();
  j["base"] = std::to_string(system.base());
  j["alphaDigits"] = digits_json(system.alpha_digits());
  j["betaDigits"] = digits_json(system.beta_digits());
  return j;
}

Json to_json(const RationalParam& param) {
  Json j;
  j["p"] = param.p.str();
  j["q"] = param.q.str();
  j["base"] = std::to_string(param.base);
  j["pStar"] = std::to_string(param.p_star);
  j["qStar"] = std::to_string(param.q_star);
  j["jStarP"] = std::to_string(param.j_star_p);
  j["jStarQ"] = std::to_string(param.j_star_q);
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["u"] = to_string(c.u);
  j["base"] = std::to_string(c.base);
  if (c.dimension != 1) j["dimension"] = c.dimension;
  j["branch"] = to_string(c.branch);
  j["theorem"] = to_string(c.rule);
  if (c.witnesses) {
    j["n0"] = c.witnesses->n0;
    j["nu"] = std::to_string(c.witnesses->nu);
    j["dimUpperBound"] = c.witnesses->dim_upper_bound;
  } else {
    j["n0"] = nullptr;
    j["nu"] = nullptr;
    j["dimUpperBound"] = nullptr;
  }
  j["normalizedU"] = to_string(c.normalized_u);
  j["normalization"] = c.normalization;
  j["pStar"] = optional_json(c.p_star);
  j["qStar"] = optional_json(c.q_star);
  return j;
}

Json to_json(const CollisionReport& report, const DigitSystem& system,
             const Ratio& u, unsigned level) {
  Json j;
  j["u"] = to_string(u);
  j["base"] = std::to_string(system.base());
  j["system"] = system.label();
  j["found"] = report.found;
  j["levelsScanned"] = report.levels_scanned;
  j["level"] = report.first_level ? Json(*report.first_level) : Json(level);
  j["nu"] = report.nu ? Json(std::to_string(*report.nu)) : Json(nullptr);
  Json cols = Json::array();
  if (report.witness) {
    const auto& [x, y] = *report.witness;
    cols.push_back({{"A", std::to_string(x.a)},
                    {"B", std::to_string(x.b)},
                    {"A2", std::to_string(y.a)},
                    {"B2", std::to_string(y.b)},
                    {"key", std::to_string(*report.witness_key)}});
  }
  j["collisions"] = cols;
  Json hist = Json::object();
  for (const auto& [m, c] : report.multiplicity_histogram) {
    hist[std::to_string(m)] = std::to_string(c);
  }
  j["multiplicityHistogram"] = hist;
  return j;
}

Json vn_json(const DigitSystem& system, const Ratio& u,
             const ValueMultiset& vn, std::size_t max_collisions) {
  Json j;
  j["u"] = to_string(u);
  j["base"] = std::to_string(system.base());
  j["system"] = system.label();
  j["level"] = vn.level;
  j["total"] = std::to_string(vn.total);
  j["nu"] = std::to_string(vn.distinct());
  Json cols = Json::array();
  std::size_t emitted = 0;
  bool truncated = false;
  for (std::size_t i = 0; i < vn.keys.size(); ++i) {
    if (vn.counts[i] < 2) continue;
    if (emitted == max_collisions) {
      truncated = true;
      break;
    }
    const auto reps = representations(system, u, vn.level, BigInt(vn.keys[i]));
    for (std::size_t k = 1; k < reps.size(); ++k) {
      cols.push_back({{"A", std::to_string(reps[0].a)},
                      {"B", std::to_string(reps[0].b)},
                      {"A2", std::to_string(reps[k].a)},
                      {"B2", std::to_string(reps[k].b)},
                      {"key", std::to_string(vn.keys[i])}});
    }
    ++emitted;
  }
  j["collisions"] = cols;
  j["collisionsTruncated"] = truncated;
  Json hist = Json::object();
  for (const auto& [m, c] : vn.multiplicity_histogram()) {
    hist[std::to_string(m)] = std::to_string(c);
  }
  j["multiplicityHistogram"] = hist;
  return j;
}

void write_cover_csv(std::ostream& out,
                     const std::vector<CoverEstimate>& series) {
  out << "n,nu_n,union_measure,union_measure_float,boxdim\n";
  for (const auto& e : series) {
    out << e.level << ',' << e.distinct_count << ','
        << (e.union_measure ? to_string(*e.union_measure) : std::string())
        << ',' << format_double(e.union_measure_float) << ','
        << format_double(e.box_dim_estimate) << '\n';
  }
}

void write_fourier_csv(std::ostream& out,
                       const std::vector<FourierEvaluation>& values) {
  out << "t,J,abs_value,tail_bound\n";
  for (const auto& v : values) {
    out << format_double(v.t) << ',' << v.truncation << ','
        << format_double(v.abs_value) << ',' << format_double(v.tail_bound)
        << '\n';
  }
}

void write_raster_csv(std::ostream& out, const std::vector<RasterRow>& rows) {
  out << "resolution,depth,occupied_fraction\n";
  for (const auto& r : rows) {
    out << r.resolution << ',' << r.depth << ','
        << format_double(r.occupied_fraction) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "p,q,pstar,qstar,branch,n0,nu,coherent\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.q << ',' << r.p_star << ',' << r.q_star << ','
        << to_string(r.branch) << ','
        << (r.n0 ? std::to_string(*r.n0) : std::string()) << ','
        << (r.nu ? std::to_string(*r.nu) : std::string()) << ','
        << (r.coherent ? "true" : "false") << '\n';
  }
}

}  // namespace besicovitch
