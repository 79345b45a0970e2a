#include "blockade/observables.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "blockade/errors.hpp"
#include "blockade/model.hpp"
#include "blockade/operators.hpp"

namespace blockade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int cutoff_of(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d % 9 != 0 || d < 27) throw DimensionError("density matrix dimension " + std::to_string(d) + " is not 9(N+1), N >= 2");
  return static_cast<int>(d / 9) - 1;
}

struct Moments {
  ComplexMatrix op[4];  // a^dag^k a^k, k = 0..3
};

std::shared_ptr<const Moments> moments(int cutoff) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Moments>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[cutoff];
  if (!slot) {
    auto m = std::make_shared<Moments>();
    const auto& a = operator_basis(cutoff)->a;
    const auto ad = dagger(a);
    ComplexMatrix ak = ComplexMatrix::identity(a.rows()), adk = ak;
    m->op[0] = ak;
    for (int k = 1; k <= 3; ++k) {
      ak = ak * a;
      adk = adk * ad;
      m->op[k] = adk * ak;
    }
    slot = std::move(m);
  }
  return slot;
}

double ratio(double num, double n, int power, double threshold) {
  if (!(n > threshold)) return kNaN;
  return num / std::pow(n, power);
}

}  // namespace

double normally_ordered_moment(const DensityMatrix& rho, int k) {
  if (k < 0 || k > 3) throw std::invalid_argument("moment order must be in [0, 3]");
  return expectation(moments(cutoff_of(rho))->op[k], rho).real();
}

double mean_photon_number(const DensityMatrix& rho) { return normally_ordered_moment(rho, 1); }

double g2(const DensityMatrix& rho, double threshold) {
  return ratio(normally_ordered_moment(rho, 2), mean_photon_number(rho), 2, threshold);
}

double g3(const DensityMatrix& rho, double threshold) {
  return ratio(normally_ordered_moment(rho, 3), mean_photon_number(rho), 3, threshold);
}

double fock_population(const DensityMatrix& rho, int n) {
  const int cutoff = cutoff_of(rho);
  if (n < 0 || n > cutoff) throw std::out_of_range("photon number outside the cutoff");
  const auto fd = static_cast<std::size_t>(cutoff + 1);
  double p = 0.0;
  for (std::size_t atoms = 0; atoms < 9; ++atoms) {
    const std::size_t i = atoms * fd + static_cast<std::size_t>(n);
    p += rho(i, i).real();
  }
  return p;
}

Blockade classify(double g2v, double g3v) {
  if (std::isnan(g2v)) return Blockade::Undefined;
  if (g2v < 1.0) return Blockade::SinglePhoton;
  if (g2v > 1.0 && !std::isnan(g3v) && g3v < 1.0) return Blockade::TwoPhoton;
  return Blockade::None;
}

std::string_view to_string(Blockade b) {
  switch (b) {
    case Blockade::Undefined: return "undefined";
    case Blockade::None: return "none";
    case Blockade::SinglePhoton: return "single-photon";
    case Blockade::TwoPhoton: return "two-photon";
  }
  return "?";
}

PointResult summarize(const DensityMatrix& rho, double threshold) {
  PointResult r;
  r.meanN = mean_photon_number(rho);
  r.lowSignal = !(r.meanN > threshold);
  r.g2 = g2(rho, threshold);
  r.g3 = g3(rho, threshold);
  r.log10g2 = std::log10(r.g2);
  r.log10g3 = std::log10(r.g3);
  r.topFockPopulation = fock_population(rho, cutoff_of(rho));
  return r;
}

}  // namespace blockade
