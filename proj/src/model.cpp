#include "blockade/model.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "blockade/errors.hpp"
#include "blockade/operators.hpp"

namespace blockade {

namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw DomainError(std::string(field) + ": " + why);
}

}  // namespace

void SystemParams::validate() const {
  const std::pair<const char*, double> finite[] = {
      {"delta", delta}, {"g", g},           {"phiZ", phiZ},       {"J", J},
      {"omegaP", omegaP}, {"omegaD", omegaD}, {"kappa", kappa},   {"gammaGE", gammaGE},
      {"gammaSE", gammaSE}, {"gammaGS", gammaGS}};
  for (auto [name, v] : finite) require(std::isfinite(v), name, "must be finite");
  require(kappa > 0.0, "kappa", "must be > 0");
  require(gammaGE >= 0.0, "gammaGE", "must be >= 0");
  require(gammaSE >= 0.0, "gammaSE", "must be >= 0");
  require(gammaGS >= 0.0, "gammaGS", "must be >= 0");
  require(g >= 0.0, "g", "must be >= 0");
  require(fockCutoff >= 2, "fockCutoff", "must be >= 2");
  require(phiZ >= 0.0 && phiZ < 2.0 * std::numbers::pi, "phiZ", "must lie in [0, 2pi)");
}

Couplings coupling_strengths(const SystemParams& p) { return {p.g, p.g * std::cos(p.phiZ)}; }

OperatorBasis::OperatorBasis(const SpaceConfig& cfg) : space(cfg), a(cavity_annihilation(cfg)) {
  using enum AtomLevel;
  auto sig = [&](int i, AtomLevel t, AtomLevel b) { return atomic_transition(i, t, b, cfg); };
  const ComplexMatrix ad = dagger(a);

  excitations = ad * a;
  drive = ComplexMatrix(cfg.dim(), cfg.dim());
  pump = ComplexMatrix(cfg.dim(), cfg.dim());
  for (int i = 1; i <= 2; ++i) {
    excitations += sig(i, e, e);
    excitations += sig(i, s, s);
    const auto eg = sig(i, e, g);
    const auto es = sig(i, e, s);
    cavityCoupling[i - 1] = a * eg + ad * dagger(eg);
    drive += es;
    drive += dagger(es);
    pump += eg;
    pump += dagger(eg);
    lowering[i - 1][0] = sig(i, g, e);
    lowering[i - 1][1] = sig(i, s, e);
    lowering[i - 1][2] = sig(i, g, s);
  }
  const auto x1 = sig(1, e, g) * sig(2, g, e);
  const auto x2 = sig(1, e, s) * sig(2, s, e);
  exchange = x1 + dagger(x1) + x2 + dagger(x2);
}

std::shared_ptr<const OperatorBasis> operator_basis(int fockCutoff) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const OperatorBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[fockCutoff];
  if (!slot) slot = std::make_shared<const OperatorBasis>(SpaceConfig(fockCutoff));
  return slot;
}

ComplexMatrix build_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto basis = operator_basis(p.fockCutoff);
  const auto c = coupling_strengths(p);
  ComplexMatrix h(basis->space.dim(), basis->space.dim());
  h.add_scaled(-p.delta, basis->excitations);
  h.add_scaled(c.g1, basis->cavityCoupling[0]);
  h.add_scaled(c.g2, basis->cavityCoupling[1]);
  h.add_scaled(p.J, basis->exchange);
  h.add_scaled(p.omegaD, basis->drive);
  h.add_scaled(p.omegaP, basis->pump);
  return h;
}

std::vector<CollapseOperator> collapse_operators(const SystemParams& p) {
  p.validate();
  const auto basis = operator_basis(p.fockCutoff);
  std::vector<CollapseOperator> out;
  out.push_back({p.kappa, basis->a});
  const double rates[3] = {p.gammaGE, p.gammaSE, p.gammaGS};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k)
      if (rates[k] > 0.0) out.push_back({rates[k], basis->lowering[i][k]});
  return out;
}

ComplexMatrix excitation_number(const SpaceConfig& cfg) { return operator_basis(cfg.fockCutoff)->excitations; }

namespace {

double SystemParams::*field(const std::string& name) {
  static const std::map<std::string, double SystemParams::*> fields = {
      {"delta", &SystemParams::delta},     {"g", &SystemParams::g},
      {"phiZ", &SystemParams::phiZ},       {"J", &SystemParams::J},
      {"omegaP", &SystemParams::omegaP},   {"omegaD", &SystemParams::omegaD},
      {"kappa", &SystemParams::kappa},     {"gammaGE", &SystemParams::gammaGE},
      {"gammaSE", &SystemParams::gammaSE}, {"gammaGS", &SystemParams::gammaGS}};
  auto it = fields.find(name);
  return it == fields.end() ? nullptr : it->second;
}

}  // namespace

void set_param(SystemParams& p, const std::string& name, double value) {
  if (name == "fockCutoff") {
    if (value != std::floor(value)) throw std::invalid_argument("fockCutoff must be an integer");
    p.fockCutoff = static_cast<int>(value);
    return;
  }
  auto f = field(name);
  if (!f) throw std::invalid_argument("unknown parameter '" + name + "'");
  p.*f = value;
}

double get_param(const SystemParams& p, const std::string& name) {
  if (name == "fockCutoff") return p.fockCutoff;
  auto f = field(name);
  if (!f) throw std::invalid_argument("unknown parameter '" + name + "'");
  return p.*f;
}

}  // namespace blockade
