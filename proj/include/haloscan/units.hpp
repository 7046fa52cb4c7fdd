// Laboratory parameters <-> dimensionless model parameters.
//
// Internally every physical quantity is held in natural units (hbar = c =
// k_B = 1, Heaviside-Lorentz fields) as a power of energy measured in eV.
// The Natural<N> wrapper carries that power in its type, so a formula that
// mixes dimensions incorrectly does not compile. SI and lab units appear only
// at the PhysicalParams boundary.
#pragma once

#include <cmath>

#include "haloscan/cavity.hpp"

namespace haloscan::units {

template <int N>
struct Natural {
  double value = 0.0;
  static constexpr int energy_power = N;
};

template <int A, int B>
constexpr Natural<A + B> operator*(Natural<A> a, Natural<B> b) { return {a.value * b.value}; }
template <int A, int B>
constexpr Natural<A - B> operator/(Natural<A> a, Natural<B> b) { return {a.value / b.value}; }
template <int A>
constexpr Natural<A> operator+(Natural<A> a, Natural<A> b) { return {a.value + b.value}; }
template <int A>
constexpr Natural<A> operator-(Natural<A> a, Natural<A> b) { return {a.value - b.value}; }
template <int A>
constexpr Natural<A> operator*(double s, Natural<A> a) { return {s * a.value}; }
template <int A>
constexpr Natural<A> operator/(Natural<A> a, double s) { return {a.value / s}; }
template <int A>
Natural<A / 2> sqrt(Natural<A> a) {
  static_assert(A % 2 == 0, "square root of an odd energy power");
  return {std::sqrt(a.value)};
}

using Dimensionless = Natural<0>;
using Energy = Natural<1>;      // masses, frequencies, rates, temperatures
using Coupling = Natural<-1>;   // g_a_gamma
using Field = Natural<2>;       // magnetic field
using Volume = Natural<-3>;
using Density = Natural<4>;     // energy density
using Power = Natural<2>;       // energy per unit time

// ---- Conversions at the boundary -------------------------------------------

Energy from_kelvin(double kelvin);
Energy from_hertz(double hertz);            // h f
Energy from_angular_hertz(double rad_per_s);  // hbar omega
double to_angular_hertz(Energy e);          // rad/s
Coupling from_inverse_gev(double per_gev);
Field from_tesla(double tesla);
Volume from_cubic_metres(double m3);
Density from_gev_per_cm3(double gev_per_cm3);
double to_watts(Power p);

// ---- Typed formulas -----------------------------------------------------------

// g^2 B^2 eta / (4 delta)
Energy signal_coupling_rate(Coupling g, Field b, Dimensionless eta, Energy delta);
// rho V / m
Dimensionless signal_occupation(Density rho, Volume v, Energy m);
// 1 / (exp(omega / T) - 1)
Dimensionless bose_einstein(Energy omega, Energy temperature);

}  // namespace haloscan::units

namespace haloscan {

struct PhysicalParams {
  double g_a_gamma = 1e-15;     // GeV^-1
  double b_field = 8.0;         // tesla
  double eta = 0.5;             // form factor in (0, 1]
  double frequency_hz = 7e9;    // axion mass m_a = h f, equal to the cavity frequency
  double rho_a = 0.45;          // GeV / cm^3
  double volume = 1e-3;         // m^3
  double q_c = 1e5;             // intrinsic quality factor
  double beta = 2.0;            // gamma_m / gamma_ell
  double temperature = 0.035;   // kelvin
  double q_a = 1e6;             // axion quality factor

  void validate() const;
};

struct ModelParams {
  CavityParams cavity;      // rates divided by reference_rate
  double reference_rate;    // eV (natural units)
  double omega_c;           // eV
};

// Rates are normalized by gamma_ell unless a reference rate (eV) is given.
ModelParams to_model_params(const PhysicalParams& phys, double reference_rate = 0.0);

// Inverse map. The model fixes only the products g^2 B^2 eta and rho V, so the
// field, form factor and volume must be supplied; g and rho are solved for.
PhysicalParams from_model_params(const ModelParams& model, double b_field, double eta, double volume);

// Thermal occupation at frequency f (Hz) and temperature T (K).
double thermal_occupation(double frequency_hz, double temperature);

// Signal power in watts.
//   quantum:   4 beta / (1 + beta) * omega_c n_s delta_a gamma_s / gamma_eff, gamma_eff = omega_c / Q_eff
//   classical: beta / (1 + beta) * g^2 (rho / m) B^2 V eta Q_eff,   1/Q_eff = (1 + beta)/Q_c + 1/Q_a
//   exact:     |chi_ms(0)|^2 omega_c n_s delta_a from the full susceptibility
//   cavity:    g^2 (rho / m) B^2 V eta min(Q_c, Q_a), the power deposited in the cavity
double signal_power_quantum(const PhysicalParams& phys);
double signal_power_classical(const PhysicalParams& phys);
double signal_power_exact(const PhysicalParams& phys);
double cavity_power(const PhysicalParams& phys);
// Model-parameter route: |chi_ms(0)|^2 omega_c n_s delta_a with rates in eV.
double signal_power(const ModelParams& model);

struct DarkPhotonCoupling {
  double gamma_s;  // eV
  double n_s;
};

// Kinetic mixing epsilon, mass m (eV), form factor eta, bandwidth delta (eV),
// density rho (GeV/cm^3), volume V (m^3):
//   gamma_s = (epsilon m sqrt(eta))^2 / (4 delta), n_s = rho V / m.
DarkPhotonCoupling dark_photon_substitution(double epsilon, double mass_ev, double eta, double delta_ev,
                                            double rho_gev_cm3, double volume_m3);

// Axion gamma_s in eV for the same eta and delta, for comparisons.
double axion_signal_coupling(double g_per_gev, double b_tesla, double eta, double delta_ev);

}  // namespace haloscan
