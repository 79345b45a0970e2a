#include "blockade/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blockade/errors.hpp"
#include "blockade/model.hpp"

namespace blockade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_symmetric(const DressedParams& p, const char* what) {
  if (p.phiZ != 0.0) throw DomainError(std::string(what) + ": closed form holds only for phiZ = 0");
}

struct Gpm {
  double plus, minus;
};
Gpm gpm(const DressedParams& p) { return {p.g * (1.0 + std::cos(p.phiZ)), p.g * (1.0 - std::cos(p.phiZ))}; }

ComplexMatrix two_photon(const DressedParams& p, double driveToPair) {
  const auto [gp, gm] = gpm(p);
  const double w = 2.0 * p.omegaC, od = p.omegaD, j = p.J, r2 = std::sqrt(2.0), dp = driveToPair;
  return ComplexMatrix::from_rows({
      {w, gp, gm, 0, 0, 0, 0, 0, 0},
      {gp, w + j, 0, od, 0, 0, 0, 0, gp / r2},
      {gm, 0, w - j, 0, od, 0, 0, 0, -gm / r2},
      {0, od, 0, w, 0, gp / 2, gm / 2, 0, 0},
      {0, 0, od, 0, w, -gm / 2, -gp / 2, 0, 0},
      {0, 0, 0, gp / 2, -gm / 2, w + j, 0, dp, dp},
      {0, 0, 0, gm / 2, -gp / 2, 0, w - j, 0, 0},
      {0, 0, 0, 0, 0, dp, 0, w, 0},
      {0, gp / r2, -gm / r2, 0, 0, dp, 0, 0, w},
  });
}

DressedSpectrum spectrum(const ComplexMatrix& m) {
  auto e = hermitian_eigen(m);
  return {std::move(e.values), std::move(e.vectors), {}};
}

}  // namespace

std::string to_string(Manifold m) { return m == Manifold::One ? "one" : "two"; }

std::vector<BasisLabel> collective_basis(Manifold m) {
  using enum CollectiveKind;
  if (m == Manifold::One) return {{gg, 1}, {plus1, 0}, {minus1, 0}, {plus2, 0}, {minus2, 0}};
  return {{gg, 2}, {plus1, 1}, {minus1, 1}, {plus2, 1}, {minus2, 1}, {plus3, 0}, {minus3, 0}, {ss, 0}, {ee, 0}};
}

ComplexMatrix one_photon_matrix(const DressedParams& p) {
  const auto [gp, gm] = gpm(p);
  const double w = p.omegaC, od = p.omegaD, j = p.J, r2 = std::sqrt(2.0);
  return ComplexMatrix::from_rows({
      {w, gp / r2, gm / r2, 0, 0},
      {gp / r2, w + j, 0, od, 0},
      {gm / r2, 0, w - j, 0, od},
      {0, od, 0, w, 0},
      {0, 0, od, 0, w},
  });
}

ComplexMatrix two_photon_matrix(const DressedParams& p) { return two_photon(p, p.omegaD); }

ComplexMatrix two_photon_matrix_exact(const DressedParams& p) { return two_photon(p, std::sqrt(2.0) * p.omegaD); }

ComplexMatrix project_full_hamiltonian(const DressedParams& p, Manifold m, int fockCutoff) {
  SystemParams sp;
  sp.delta = -p.omegaC;
  sp.g = p.g;
  sp.phiZ = p.phiZ;
  sp.J = p.J;
  sp.omegaD = p.omegaD;
  sp.omegaP = 0.0;
  sp.fockCutoff = fockCutoff;
  const auto h = build_hamiltonian(sp);
  const SpaceConfig cfg(fockCutoff);
  const auto labels = collective_basis(m);
  ComplexMatrix v(cfg.dim(), labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto col = collective_state(labels[k].kind, labels[k].photons, cfg);
    for (std::size_t i = 0; i < cfg.dim(); ++i) v(i, k) = col[i];
  }
  const auto vh = dagger(v);
  if (max_abs_diff(vh * v, ComplexMatrix::identity(labels.size())) > 1e-12)
    throw std::logic_error("project_full_hamiltonian: collective basis is not orthonormal");
  return vh * h * v;
}

std::array<double, 5> table1_eigenvalues(const DressedParams& p) {
  require_symmetric(p, "table1_eigenvalues");
  const double w = p.omegaC, j = p.J, od2 = p.omegaD * p.omegaD, g2 = p.g * p.g;
  const double r1 = std::sqrt(j * j / 4 + od2), r2 = std::sqrt(j * j / 4 + od2 + 2 * g2);
  std::array<double, 5> v{w, w - j / 2 + r1, w - j / 2 - r1, w + j / 2 + r2, w + j / 2 - r2};
  std::sort(v.begin(), v.end());
  return v;
}

double table2_a(const DressedParams& p) { return 0.07 * p.J * p.J + 0.43 * p.omegaD * p.omegaD + p.g * p.g; }

double table2_b(const DressedParams& p) {
  const double od2 = p.omegaD * p.omegaD, g2 = p.g * p.g;
  return 0.714 * std::sqrt(0.04 * od2 * od2 + 0.53 * od2 * g2 + g2 * g2);
}

double chi(double g) { return 1.87 * std::sqrt(g * g - 0.714 * g * g); }
double eta(double g) { return 1.87 * std::sqrt(g * g + 0.714 * g * g); }

std::array<double, 5> table2_exact_rows(const DressedParams& p) {
  require_symmetric(p, "table2_exact_rows");
  const double w = 2 * p.omegaC, j = p.J;
  const double r = std::sqrt(j * j / 4 + p.omegaD * p.omegaD + p.g * p.g);
  std::array<double, 5> v{w, w, w - j / 2 + r, w - j / 2 - r, w - j};
  std::sort(v.begin(), v.end());
  return v;
}

std::array<double, 4> table2_fit_rows(const DressedParams& p) {
  require_symmetric(p, "table2_fit_rows");
  const double w = 2 * p.omegaC, j = p.J, a = table2_a(p), b = table2_b(p);
  const double lo = 1.87 * std::sqrt(std::max(0.0, a - b)), hi = 1.87 * std::sqrt(a + b);
  std::array<double, 4> v{w + j / 2 - hi, w + j / 2 - lo, w + j / 2 + lo, w + j / 2 + hi};
  std::sort(v.begin(), v.end());
  return v;
}

std::array<double, 9> table2_eigenvalues(const DressedParams& p) {
  const auto e = table2_exact_rows(p);
  const auto f = table2_fit_rows(p);
  std::array<double, 9> v{};
  std::copy(e.begin(), e.end(), v.begin());
  std::copy(f.begin(), f.end(), v.begin() + 5);
  std::sort(v.begin(), v.end());
  return v;
}

std::pair<double, double> peak_detunings(const DressedParams& p) {
  require_symmetric(p, "peak_detunings");
  const double r = std::sqrt(p.J * p.J + 4 * p.omegaD * p.omegaD + 8 * p.g * p.g);
  return {0.5 * (p.J + r), 0.5 * (p.J - r)};
}

DressedSpectrum one_photon_spectrum(const DressedParams& p) {
  auto s = spectrum(one_photon_matrix(p));
  if (p.phiZ == 0.0) {
    const auto c = table1_eigenvalues(p);
    s.closedForm.assign(c.begin(), c.end());
  }
  return s;
}

DressedSpectrum two_photon_spectrum(const DressedParams& p) {
  auto s = spectrum(two_photon_matrix(p));
  if (p.phiZ == 0.0) {
    const auto c = table2_eigenvalues(p);
    s.closedForm.assign(c.begin(), c.end());
  }
  return s;
}

Table1Comparison compare_table1(const DressedParams& p) {
  const auto c = table1_eigenvalues(p);
  const auto n = hermitian_eigen(one_photon_matrix(p)).values;
  double err = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(c[i] - n[i]));
  return {err};
}

Table2Comparison compare_table2(const DressedParams& p) {
  auto rest = hermitian_eigen(two_photon_matrix(p)).values;
  Table2Comparison out{0.0, 0.0};
  for (double e : table2_exact_rows(p)) {
    auto it = std::min_element(rest.begin(), rest.end(),
                               [e](double x, double y) { return std::abs(x - e) < std::abs(y - e); });
    out.maxExactError = std::max(out.maxExactError, std::abs(*it - e));
    rest.erase(it);
  }
  const auto fit = table2_fit_rows(p);
  for (std::size_t i = 0; i < fit.size(); ++i) {
    const double scale = std::max(std::abs(rest[i]), 1e-12);
    out.maxFitRelError = std::max(out.maxFitRelError, std::abs(rest[i] - fit[i]) / scale);
  }
  return out;
}

std::vector<SpectrumRow> spectrum_scan(const DressedScan& scan) {
  if (scan.steps < 1) throw std::invalid_argument("spectrum_scan: steps must be >= 1");
  std::vector<SpectrumRow> rows;
  for (const auto& base : scan.bases) {
    for (int k = 0; k < scan.steps; ++k) {
      DressedParams p = base;
      const double x = scan.steps == 1 ? scan.min : scan.min + (scan.max - scan.min) * k / (scan.steps - 1);
      if (scan.axis == "omegaD") p.omegaD = x;
      else if (scan.axis == "J") p.J = x;
      else if (scan.axis == "g") p.g = x;
      else throw std::invalid_argument("spectrum_scan: unknown axis '" + scan.axis + "'");
      for (Manifold m : {Manifold::One, Manifold::Two}) {
        const auto s = m == Manifold::One ? one_photon_spectrum(p) : two_photon_spectrum(p);
        for (std::size_t l = 0; l < s.eigenvalues.size(); ++l)
          rows.push_back({p, m, static_cast<int>(l), s.eigenvalues[l], s.closedForm.empty() ? kNaN : s.closedForm[l]});
      }
    }
  }
  return rows;
}

}  // namespace blockade
