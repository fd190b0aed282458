#pragma once

#include <cmath>
#include <stdexcept>

#include "mottlab/constants.hpp"

namespace mottlab {

// Vapor-cluster ionization parameters: ion charge Q (elementary charges),
// cluster dielectric constant, effective ion radius (nm) and electron
// binding energy (eV).
struct ClusterModel {
  double charge_q;
  double epsilon;
  double r_ion;
  double binding_energy;
};

// Singular cross section A/(R_c - R): coefficient in nm^3, critical
// radius in nm.
struct CrossSectionModel {
  double coeff_a;
  double r_crit;
};

struct CollimationCheck {
  double drain_rate;  // 1/s
  bool collimates;
};

struct ConeEstimate {
  double wavelength;     // m
  double opening_angle;  // rad
};

// Energy of induced polarization around an ion at the center of a cluster
// of radius r_cluster (nm). Nonpositive for r_cluster >= r_ion.
inline double polarization_energy(const ClusterModel& c, double r_cluster) {
  if (r_cluster <= 0.0) {
    throw std::domain_error("polarization_energy: r_cluster must be positive");
  }
  return 0.5 * c.charge_q * c.charge_q * k_coulomb_eV_nm *
         (1.0 - 1.0 / c.epsilon) * (1.0 / r_cluster - 1.0 / c.r_ion);
}

// Cluster radius at which the polarization energy exactly offsets the
// binding energy. Throws if the binding is too strong for any finite radius.
inline double critical_radius(const ClusterModel& c) {
  if (c.binding_energy <= 0.0) {
    throw std::domain_error("critical_radius: binding_energy must be positive");
  }
  if (c.epsilon <= 1.0) {
    throw std::domain_error("critical_radius: epsilon must exceed 1");
  }
  const double inv_rc =
      1.0 / c.r_ion - 2.0 * c.binding_energy /
                          (c.charge_q * c.charge_q * k_coulomb_eV_nm *
                           (1.0 - 1.0 / c.epsilon));
  if (inv_rc <= 0.0) {
    throw std::domain_error(
        "critical_radius: no finite critical radius (binding too strong for "
        "this cluster model)");
  }
  return 1.0 / inv_rc;
}

// Ionization cross section near the critical radius, nm^2. Only defined
// below r_crit.
inline double ionization_cross_section(double r_cluster,
                                       const CrossSectionModel& m) {
  if (r_cluster >= m.r_crit) {
    throw std::domain_error(
        "ionization_cross_section: r_cluster must be below r_crit");
  }
  return m.coeff_a / (m.r_crit - r_cluster);
}

// Square-norm drain rate sigma*flux and the strict collimation test
// sigma*flux*tau > 1.
inline CollimationCheck collimation_criterion(double sigma, double flux,
                                              double tau) {
  const double rate = sigma * flux;
  return {rate, rate * tau > 1.0};
}

// de Broglie wavelength of a nonrelativistic particle and the opening angle
// of the beam it forms when emitted through an aperture of the given size.
inline ConeEstimate collimation_cone(double mass_energy_MeV,
                                     double kinetic_energy_MeV,
                                     double aperture_m) {
  const double wavelength =
      hc_MeV_m / std::sqrt(2.0 * mass_energy_MeV * kinetic_energy_MeV);
  return {wavelength, wavelength / aperture_m};
}

}  // namespace mottlab
