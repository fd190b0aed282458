#pragma once

namespace mottlab {

inline constexpr double pi = 3.14159265358979323846;

// Coulomb constant in eV*nm per squared elementary charge.
inline constexpr double k_coulomb_eV_nm = 1.43996;

// Planck constant times speed of light, MeV*m.
inline constexpr double hc_MeV_m = 1.23984e-12;

}  // namespace mottlab
