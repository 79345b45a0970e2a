#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockade/dressed.hpp"
#include "blockade/model.hpp"
#include "blockade/observables.hpp"
#include "blockade/steady_state.hpp"

namespace blockade {

/// Parameters a sweep axis may vary.
bool is_sweepable(const std::string& name);

struct SweepAxis {
  std::string name;
  std::vector<double> values;

  /// steps >= 2 evenly spaced points including both ends.
  static SweepAxis linear(std::string name, double min, double max, int steps);
  static SweepAxis list(std::string name, std::vector<double> values);
};

enum class DerivedDelta { None, NegativePeak };

struct SweepSpec {
  SystemParams base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  /// NegativePeak: delta = (J - sqrt(J^2 + 4 Od^2 + 8 g^2)) / 2 at every point.
  DerivedDelta derivedDelta = DerivedDelta::None;

  /// Throws std::invalid_argument naming the problem.
  void validate() const;
  std::size_t size() const;
};

struct SweepOptions {
  int threads = -1;  // -1: BLOCKADE_THREADS or hardware concurrency; 0 also means auto
  bool converge = false;
  double convergeThreshold = 1e-6;  // |N> population that triggers a rerun at N + 2
  SteadyStateOptions solver;
};

struct SweepRow {
  std::vector<double> coords;  // one per axis
  PointResult result;
  bool error = false;
  std::string message;
  int fockCutoff = 0;          // cutoff of the reported solve
  double drift = 0.0;          // converge mode: relative change of meanN at N + 2, else 0
};

struct SweepTable {
  std::vector<std::string> axes;
  std::vector<SweepRow> rows;  // axis1-major
  bool converge = false;

  bool operator==(const SweepTable&) const;
};

/// Single steady-state solve plus observables.
PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts = {});

int sweep_threads(int requested);

SweepTable run_sweep(const SweepSpec& spec, const SweepOptions& opts = {});

/// Rows of a 2D table whose first coordinate equals value, as a 1D table over axis 2.
SweepTable slice(const SweepTable& t, double axis1Value);

enum class Field { MeanN, G2, G3 };
double field_value(const PointResult& r, Field f);

struct Peak {
  double coord;   // refined
  double value;   // sampled maximum
  std::size_t index;
};

/// Strict local maxima of y over x (ascending), refined by a parabola through
/// log y at the three surrounding samples. Throws std::invalid_argument for
/// fewer than 3 points or mismatched lengths.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y);
/// 1D tables only.
std::vector<Peak> find_peaks(const SweepTable& t, Field f = Field::MeanN);

enum class Fig6Band { Undefined, Blockade, VeryWeak, Vanished };
/// Vanished: log10 g2 >= 0; VeryWeak: -0.1 <= log10 g2 < 0; Blockade below.
Fig6Band fig6_band(double log10g2);
std::string_view to_string(Fig6Band b);

struct FigurePreset {
  std::string id;
  std::optional<SweepSpec> sweep;
  std::optional<DressedScan> dressed;
};

const std::vector<std::string>& figure_ids();
/// Throws std::invalid_argument for an unknown id.
FigurePreset figure_preset(const std::string& id);

}  // namespace blockade
