#pragma once

// Oracle checks shared by the acceptance test and the `validate` command.
// Each returns one pass/fail verdict with a human-readable detail line.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "blockade/model.hpp"
#include "blockade/sweep.hpp"

namespace blockade {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  std::uint64_t seed = 20240611;
  int threads = -1;
  int detuningSteps = 241;  // over [-60, 60], i.e. 0.5 kappa spacing
};

class Validator {
 public:
  explicit Validator(ValidationOptions opts = {});

  CheckResult projection();
  CheckResult closed_forms();
  CheckResult symmetric_peaks();
  CheckResult ddi_peaks();
  CheckResult blockade_asymmetry();
  CheckResult drive_ordering();
  CheckResult asymmetric_coupling();
  CheckResult ddi_two_photon();
  CheckResult degeneracy();
  CheckResult solver_cross_validation();

  /// The oracle subset: projection, closed forms, degeneracy, solver cross-validation.
  std::vector<CheckResult> run_oracles();
  /// Every check, in the order above.
  std::vector<CheckResult> run_all();

  /// 1D detuning scan over [-60, 60] at the given parameters; memoized.
  const SweepTable& detuning_scan(const SystemParams& p);

 private:
  ValidationOptions opts_;
  std::map<std::tuple<double, double, double, double, double, int>, SweepTable> scans_;
};

/// Strongest peak with coordinate > +margin, < -margin, and within [-margin, margin].
/// Missing peaks have index == SIZE_MAX.
struct DominantPeaks {
  Peak positive;
  Peak negative;
  Peak central;
};
DominantPeaks dominant_peaks(const std::vector<Peak>& peaks, double margin);

}  // namespace blockade
