#include "blockade/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace blockade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same(const PointResult& a, const PointResult& b) {
  return same(a.delta, b.delta) && same(a.meanN, b.meanN) && same(a.g2, b.g2) && same(a.g3, b.g3) &&
         same(a.log10g2, b.log10g2) && same(a.log10g3, b.log10g3) && same(a.residual, b.residual);
}

PointResult error_result(double delta) {
  PointResult r;
  r.delta = delta;
  r.meanN = r.g2 = r.g3 = r.log10g2 = r.log10g3 = r.residual = kNaN;
  r.lowSignal = true;
  return r;
}

SweepRow run_point(const SweepSpec& spec, std::size_t index, const SweepOptions& opts) {
  SweepRow row;
  SystemParams p = spec.base;
  const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
  const std::size_t i1 = index / n2, i2 = index % n2;
  row.coords.push_back(spec.axis1.values[i1]);
  set_param(p, spec.axis1.name, spec.axis1.values[i1]);
  if (spec.axis2) {
    row.coords.push_back(spec.axis2->values[i2]);
    set_param(p, spec.axis2->name, spec.axis2->values[i2]);
  }
  if (spec.derivedDelta == DerivedDelta::NegativePeak)
    p.delta = 0.5 * (p.J - std::sqrt(p.J * p.J + 4 * p.omegaD * p.omegaD + 8 * p.g * p.g));
  row.fockCutoff = p.fockCutoff;
  try {
    row.result = solve_point(p, opts.solver);
    if (opts.converge && row.result.topFockPopulation > opts.convergeThreshold) {
      SystemParams q = p;
      q.fockCutoff += 2;
      const auto refined = solve_point(q, opts.solver);
      row.drift = std::abs(refined.meanN - row.result.meanN) / std::max(refined.meanN, kLowSignal);
      row.result = refined;
      row.fockCutoff = q.fockCutoff;
    }
  } catch (const std::exception& e) {
    row.error = true;
    row.message = e.what();
    row.result = error_result(p.delta);
    row.drift = kNaN;
  }
  return row;
}

}  // namespace

bool is_sweepable(const std::string& name) {
  static const char* names[] = {"delta", "J", "omegaD", "g", "phiZ", "omegaP"};
  return std::find(std::begin(names), std::end(names), name) != std::end(names);
}

SweepAxis SweepAxis::linear(std::string name, double min, double max, int steps) {
  if (steps < 2) throw std::invalid_argument("axis '" + name + "': steps must be >= 2");
  SweepAxis a{std::move(name), {}};
  a.values.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) a.values.push_back(k == steps - 1 ? max : min + (max - min) * k / (steps - 1));
  return a;
}

SweepAxis SweepAxis::list(std::string name, std::vector<double> values) { return {std::move(name), std::move(values)}; }

void SweepSpec::validate() const {
  auto check = [](const SweepAxis& a) {
    if (!is_sweepable(a.name)) throw std::invalid_argument("unknown sweep parameter '" + a.name + "'");
    if (a.values.empty()) throw std::invalid_argument("axis '" + a.name + "' has no points");
    for (double v : a.values)
      if (!std::isfinite(v)) throw std::invalid_argument("axis '" + a.name + "' has a non-finite value");
  };
  check(axis1);
  if (axis2) {
    check(*axis2);
    if (axis2->name == axis1.name) throw std::invalid_argument("both axes vary '" + axis1.name + "'");
  }
  if (derivedDelta != DerivedDelta::None) {
    if (!axis2) throw std::invalid_argument("derived detuning requires two axes");
    if (axis1.name == "delta" || axis2->name == "delta")
      throw std::invalid_argument("derived detuning cannot be combined with a delta axis");
  }
  base.validate();
}

std::size_t SweepSpec::size() const { return axis1.values.size() * (axis2 ? axis2->values.size() : 1); }

bool SweepTable::operator==(const SweepTable& o) const {
  if (axes != o.axes || converge != o.converge || rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = o.rows[i];
    if (a.coords.size() != b.coords.size() || a.error != b.error || !same(a.result, b.result)) return false;
    for (std::size_t k = 0; k < a.coords.size(); ++k)
      if (!same(a.coords[k], b.coords[k])) return false;
    if (converge && (a.fockCutoff != b.fockCutoff || !same(a.drift, b.drift))) return false;
  }
  return true;
}

PointResult solve_point(const SystemParams& p, const SteadyStateOptions& opts) {
  const auto ss = steady_state(p, opts);
  auto r = summarize(ss.rho);
  r.delta = p.delta;
  r.residual = ss.residual;
  r.negative = ss.negative;
  return r;
}

int sweep_threads(int requested) {
  int n = requested;
  if (n < 0) {
    n = 0;
    if (const char* env = std::getenv("BLOCKADE_THREADS")) n = std::max(0, std::atoi(env));
  }
  if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

SweepTable run_sweep(const SweepSpec& spec, const SweepOptions& opts) {
  spec.validate();
  SweepTable t;
  t.axes.push_back(spec.axis1.name);
  if (spec.axis2) t.axes.push_back(spec.axis2->name);
  t.converge = opts.converge;
  const std::size_t n = spec.size();
  t.rows.resize(n);

  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(sweep_threads(opts.threads), n));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) t.rows[i] = run_point(spec, i, opts);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return t;
}

SweepTable slice(const SweepTable& t, double axis1Value) {
  if (t.axes.size() != 2) throw std::invalid_argument("slice: table is not 2D");
  SweepTable s;
  s.axes = {t.axes[1]};
  s.converge = t.converge;
  for (const auto& r : t.rows) {
    if (r.coords[0] != axis1Value) continue;
    SweepRow c = r;
    c.coords = {r.coords[1]};
    s.rows.push_back(std::move(c));
  }
  return s;
}

double field_value(const PointResult& r, Field f) {
  switch (f) {
    case Field::MeanN: return r.meanN;
    case Field::G2: return r.g2;
    case Field::G3: return r.g3;
  }
  return kNaN;
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("find_peaks: coordinate and value lengths differ");
  if (x.size() < 3) throw std::invalid_argument("find_peaks: need at least 3 points");
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
    Peak pk{x[i], y[i], i};
    if (y[i - 1] > 0.0 && y[i + 1] > 0.0) {
      // vertex of the parabola through (x, log y) at i-1, i, i+1
      const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
      const double l0 = std::log(y[i - 1]), l1 = std::log(y[i]), l2 = std::log(y[i + 1]);
      const double d01 = (l1 - l0) / (x1 - x0), d12 = (l2 - l1) / (x2 - x1);
      const double curv = (d12 - d01) / (x2 - x0);
      if (curv < 0.0) {
        const double v = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
        if (v >= x0 && v <= x2) pk.coord = v;
      }
    }
    peaks.push_back(pk);
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.coord < b.coord; });
  return peaks;
}

std::vector<Peak> find_peaks(const SweepTable& t, Field f) {
  if (t.axes.size() != 1) throw std::invalid_argument("find_peaks: table is not 1D");
  std::vector<double> x, y;
  for (const auto& r : t.rows) {
    x.push_back(r.coords[0]);
    y.push_back(field_value(r.result, f));
  }
  return find_peaks(x, y);
}

Fig6Band fig6_band(double l) {
  if (std::isnan(l)) return Fig6Band::Undefined;
  if (l >= 0.0) return Fig6Band::Vanished;
  if (l >= -0.1) return Fig6Band::VeryWeak;
  return Fig6Band::Blockade;
}

std::string_view to_string(Fig6Band b) {
  switch (b) {
    case Fig6Band::Undefined: return "undefined";
    case Fig6Band::Blockade: return "blockade";
    case Fig6Band::VeryWeak: return "very-weak";
    case Fig6Band::Vanished: return "vanished";
  }
  return "?";
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig3a", "fig3b", "fig4",  "fig5",  "fig6", "fig7L",
                                               "fig7R", "fig8L", "fig8R", "fig9", "fig10"};
  return ids;
}

FigurePreset figure_preset(const std::string& id) {
  // Shared by every preset: phiZ = 0, Omega_p = 0.2, g = 20, gammaGE = gammaSE = 0.01, gammaGS = 1.
  const SystemParams common;
  const auto detuning1d = SweepAxis::linear("delta", -60.0, 60.0, 241);
  const auto detuning2d = SweepAxis::linear("delta", -60.0, 60.0, 121);
  FigurePreset f{id, {}, {}};
  SweepSpec s{common, detuning1d, std::nullopt, DerivedDelta::None};

  if (id == "fig3a") {
    s.axis1 = SweepAxis::list("omegaD", {0.0, 20.0, 30.0});
    s.axis2 = detuning1d;
  } else if (id == "fig3b") {
    s.base.omegaD = 4.0;
    s.axis1 = SweepAxis::list("J", {0.0, 7.0, 14.5});
    s.axis2 = detuning1d;
  } else if (id == "fig4") {
    s.base.omegaD = 4.0;
    s.axis1 = SweepAxis::linear("J", 0.0, 30.0, 121);
    s.axis2 = detuning2d;
  } else if (id == "fig5") {
    s.base.omegaD = 4.0;
    s.base.J = 20.0;
  } else if (id == "fig6") {
    s.base.omegaD = 16.0;
    s.base.omegaP = 0.1;
    s.axis1 = SweepAxis::linear("g", 5.0, 30.0, 121);
    s.axis2 = SweepAxis::linear("J", 0.0, 30.0, 121);
    s.derivedDelta = DerivedDelta::NegativePeak;
  } else if (id == "fig7L" || id == "fig7R") {
    s.base.phiZ = std::numbers::pi;
    s.base.omegaP = 1.5;
    s.base.J = id == "fig7L" ? 0.0 : 5.0;
    s.axis1 = SweepAxis::linear("omegaD", 0.0, 20.0, 121);
    s.axis2 = detuning2d;
  } else if (id == "fig8L" || id == "fig8R") {
    s.base.phiZ = std::numbers::pi;
    s.base.omegaP = 1.5;
    s.base.omegaD = id == "fig8L" ? 5.0 : 10.0;
    s.axis1 = SweepAxis::linear("J", 0.0, 20.0, 121);
    s.axis2 = detuning2d;
  } else if (id == "fig9") {
    DressedParams j0, j10;
    j10.J = 10.0;
    f.dressed = DressedScan{{j0, j10}, "omegaD", 0.0, 30.0, 121};
    return f;
  } else if (id == "fig10") {
    DressedParams b;
    b.omegaD = 4.0;
    f.dressed = DressedScan{{b}, "J", 0.0, 30.0, 121};
    return f;
  } else {
    throw std::invalid_argument("unknown figure id '" + id + "'");
  }
  f.sweep = std::move(s);
  return f;
}

}  // namespace blockade
