#pragma once

// Physical constants and unit conventions.
//
// Natural units throughout the library: c = hbar = 1 and the loop-particle
// (electron) mass m0 = 1.  Lengths are in units of the electron reduced
// Compton wavelength, energies in units of the electron rest energy.
// Conversions to fm / eV happen only at the CLI boundary.

namespace vpcs {

inline constexpr double kAlpha = 1.0 / 137.035999;

// Electron rest energy in eV.
inline constexpr double kElectronMassEV = 510998.95;

// Mass ratios relative to the electron.
inline constexpr double kMuonOverElectron = 206.768283;
inline constexpr double kProtonOverElectron = 1836.15267343;

// hbar*c in MeV*fm; fixes the length-unit conversion.
inline constexpr double kHbarCMeVfm = 197.3269804;

// Electron reduced Compton wavelength in fm: hbar*c / (m_e c^2).
inline constexpr double kComptonFm = kHbarCMeVfm / (kElectronMassEV * 1e-6);

inline constexpr double fm_to_natural(double r_fm) { return r_fm / kComptonFm; }
inline constexpr double natural_to_fm(double r) { return r * kComptonFm; }

inline constexpr double natural_to_eV(double e) { return e * kElectronMassEV; }

} // namespace vpcs
