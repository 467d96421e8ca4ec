#include "poro/presets.hpp"

namespace poro {

namespace {

constexpr double GPa = 1e9;
constexpr double kPerm = 1e-15;  // m^2

MaterialSpec sandstone_ortho() {
  MaterialSpec m;
  m.K_s = 80 * GPa;
  m.rho_s = 2500;
  m.c11 = 71.8 * GPa;
  m.c12 = 3.2 * GPa;
  m.c13 = 1.2 * GPa;
  m.c33 = 53.4 * GPa;
  m.c55 = 26.1 * GPa;
  m.phi = 0.2;
  m.kappa1 = 600 * kPerm;
  m.kappa3 = 100 * kPerm;
  m.T1 = 2;
  m.T3 = 3.6;
  m.K_f = 2.5 * GPa;
  m.rho_f = 1040;
  m.eta = 1e-3;
  return m;
}

MaterialSpec glass_epoxy() {
  MaterialSpec m;
  m.K_s = 40 * GPa;
  m.rho_s = 1815;
  m.c11 = 39.4 * GPa;
  m.c12 = 1.2 * GPa;
  m.c13 = 1.2 * GPa;
  m.c33 = 13.1 * GPa;
  m.c55 = 3.0 * GPa;
  m.phi = 0.2;
  m.kappa1 = 600 * kPerm;
  m.kappa3 = 100 * kPerm;
  m.T1 = 2;
  m.T3 = 3.6;
  m.K_f = 2.5 * GPa;
  m.rho_f = 1040;
  m.eta = 1e-3;
  return m;
}

MaterialSpec sandstone_iso() {
  MaterialSpec m;
  m.K_s = 40 * GPa;
  m.rho_s = 2500;
  m.c11 = 36 * GPa;
  m.c12 = 12 * GPa;
  m.c13 = 12 * GPa;
  m.c33 = 36 * GPa;
  m.c55 = 12 * GPa;
  m.phi = 0.2;
  m.kappa1 = 600 * kPerm;
  m.kappa3 = 600 * kPerm;
  m.T1 = 2;
  m.T3 = 2;
  m.K_f = 2.5 * GPa;
  m.rho_f = 1040;
  m.eta = 0;
  return m;
}

MaterialSpec shale_iso() {
  MaterialSpec m;
  m.K_s = 7.6 * GPa;
  m.rho_s = 2210;
  m.c11 = 11.9 * GPa;
  m.c12 = 3.96 * GPa;
  m.c13 = 3.96 * GPa;
  m.c33 = 11.9 * GPa;
  m.c55 = 3.96 * GPa;
  m.phi = 0.16;
  m.kappa1 = 100 * kPerm;
  m.kappa3 = 100 * kPerm;
  m.T1 = 2;
  m.T3 = 2;
  m.K_f = 2.5 * GPa;
  m.rho_f = 1040;
  m.eta = 0;
  return m;
}

}  // namespace

std::optional<MaterialSpec> material_preset(std::string_view name) {
  if (name == "sandstone_ortho") return sandstone_ortho();
  if (name == "glass_epoxy") return glass_epoxy();
  if (name == "sandstone_iso") return sandstone_iso();
  if (name == "shale_iso") return shale_iso();
  return std::nullopt;
}

std::vector<std::string> material_preset_names() {
  return {"sandstone_ortho", "glass_epoxy", "sandstone_iso", "shale_iso"};
}

}  // namespace poro
