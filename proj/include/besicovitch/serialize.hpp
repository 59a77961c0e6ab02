#pragma once

// JSON and CSV renderings used by the CLI. Arbitrary-precision integers are
// written as decimal strings, exact rationals as "num/den".

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "besicovitch/classifier.hpp"
#include "besicovitch/digits.hpp"
#include "besicovitch/fourier.hpp"
#include "besicovitch/geometry.hpp"
#include "besicovitch/lattice.hpp"
#include "besicovitch/measure.hpp"

namespace besicovitch {

using Json = nlohmann::ordered_json;

Json to_json(const DigitSystem& system);
Json to_json(const RationalParam& param);
Json to_json(const Classification& c);
Json to_json(const CollisionReport& report, const DigitSystem& system,
             const Ratio& u, unsigned level);
/// Level-n summary with every colliding key expanded into witness pairs.
Json vn_json(const DigitSystem& system, const Ratio& u,
             const ValueMultiset& vn, std::size_t max_collisions);

void write_cover_csv(std::ostream& out,
                     const std::vector<CoverEstimate>& series);
void write_fourier_csv(std::ostream& out,
                       const std::vector<FourierEvaluation>& values);

struct RasterRow {
  unsigned resolution = 0;
  unsigned depth = 0;
  double occupied_fraction = 0.0;
};
void write_raster_csv(std::ostream& out, const std::vector<RasterRow>& rows);

/// One row of the base-4 dichotomy sweep.
struct SweepRow {
  BigInt p;
  BigInt q;
  unsigned p_star = 0;
  unsigned q_star = 0;
  Branch branch = Branch::IntervalCase;
  std::optional<unsigned> n0;
  std::optional<std::uint64_t> nu;
  bool coherent = true;
};
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace besicovitch
