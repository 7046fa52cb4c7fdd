#include "haloscan/units.hpp"

#include <algorithm>
#include <numbers>

namespace haloscan::units {

namespace {

// Exact SI values.
constexpr double kPlanck = 6.62607015e-34;           // J s
constexpr double kElementaryCharge = 1.602176634e-19;  // J per eV
constexpr double kBoltzmann = 1.380649e-23;          // J / K
constexpr double kLightSpeed = 299792458.0;          // m / s
constexpr double kVacuumPermeability = 1.25663706212e-6;  // N / A^2

constexpr double kHbarEvS = kPlanck / (2.0 * std::numbers::pi) / kElementaryCharge;  // eV s
constexpr double kHbarCEvM = kHbarEvS * kLightSpeed;                                  // eV m

}  // namespace

Energy from_kelvin(double kelvin) { return {kBoltzmann * kelvin / kElementaryCharge}; }
Energy from_hertz(double hertz) { return {kPlanck * hertz / kElementaryCharge}; }
Energy from_angular_hertz(double rad_per_s) { return {kHbarEvS * rad_per_s}; }
double to_angular_hertz(Energy e) { return e.value / kHbarEvS; }
Coupling from_inverse_gev(double per_gev) { return {per_gev * 1e-9}; }

Field from_tesla(double tesla) {
  // Heaviside-Lorentz: the energy density B^2/(2 mu0) equals B_nat^2 / 2.
  const double joule_per_m3 = tesla * tesla / kVacuumPermeability;
  const double ev4 = joule_per_m3 / kElementaryCharge * std::pow(kHbarCEvM, 3);
  return {std::copysign(std::sqrt(ev4), tesla)};
}

Volume from_cubic_metres(double m3) { return {m3 / std::pow(kHbarCEvM, 3)}; }
Density from_gev_per_cm3(double gev_per_cm3) { return {gev_per_cm3 * 1e9 * 1e6 * std::pow(kHbarCEvM, 3)}; }
double to_watts(Power p) { return p.value * kElementaryCharge / kHbarEvS; }

Energy signal_coupling_rate(Coupling g, Field b, Dimensionless eta, Energy delta) {
  return (g * g) * (b * b) * eta / (4.0 * delta);
}

Dimensionless signal_occupation(Density rho, Volume v, Energy m) { return rho * v / m; }

Dimensionless bose_einstein(Energy omega, Energy temperature) {
  return {1.0 / std::expm1((omega / temperature).value)};
}

}  // namespace haloscan::units

namespace haloscan {

namespace {

using namespace units;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

// Natural-unit view of a PhysicalParams record.
struct NaturalView {
  Coupling g;
  Field b;
  Dimensionless eta;
  Energy mass;  // also the cavity frequency
  Density rho;
  Volume volume;
  Dimensionless q_c, beta, q_a;
  Energy temperature;

  Energy gamma_ell() const { return mass / q_c; }
  Energy delta_a() const { return mass / q_a; }
  // 1/Q_eff = (1 + beta)/Q_c + 1/Q_a
  Dimensionless q_eff() const {
    return Dimensionless{1.0} / ((Dimensionless{1.0} + beta) / q_c + Dimensionless{1.0} / q_a);
  }
};

NaturalView to_natural(const PhysicalParams& p) {
  p.validate();
  return {from_inverse_gev(p.g_a_gamma), from_tesla(p.b_field), {p.eta}, from_hertz(p.frequency_hz),
          from_gev_per_cm3(p.rho_a), from_cubic_metres(p.volume), {p.q_c}, {p.beta}, {p.q_a},
          from_kelvin(p.temperature)};
}

}  // namespace

void PhysicalParams::validate() const {
  require(positive(g_a_gamma), "g_a_gamma must be > 0");
  require(positive(b_field), "b_field must be > 0");
  require(positive(eta) && eta <= 1.0, "eta must lie in (0, 1]");
  require(positive(frequency_hz), "frequency must be > 0");
  require(positive(rho_a), "rho_a must be > 0");
  require(positive(volume), "volume must be > 0");
  require(positive(q_c), "q_c must be > 0");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
  require(positive(temperature), "temperature must be > 0");
  require(positive(q_a), "q_a must be > 0");
}

double thermal_occupation(double frequency_hz, double temperature) {
  require(positive(frequency_hz) && positive(temperature), "frequency and temperature must be > 0");
  return bose_einstein(from_hertz(frequency_hz), from_kelvin(temperature)).value;
}

ModelParams to_model_params(const PhysicalParams& phys, double reference_rate) {
  const NaturalView n = to_natural(phys);
  const Energy gamma_ell = n.gamma_ell();
  const Energy gamma_m = n.beta * gamma_ell;
  const Energy delta = n.delta_a();
  const Energy gamma_s = signal_coupling_rate(n.g, n.b, n.eta, delta);
  const Dimensionless n_s = signal_occupation(n.rho, n.volume, n.mass);
  const double ref = reference_rate > 0.0 ? reference_rate : gamma_ell.value;

  ModelParams m;
  m.reference_rate = ref;
  m.omega_c = n.mass.value;
  m.cavity.gamma_ell = gamma_ell.value / ref;
  m.cavity.gamma_m = gamma_m.value / ref;
  m.cavity.gamma_s = gamma_s.value / ref;
  m.cavity.delta_a = delta.value / ref;
  m.cavity.n_s = n_s.value;
  m.cavity.n_T_bar = bose_einstein(n.mass, n.temperature).value;
  return m;
}

PhysicalParams from_model_params(const ModelParams& model, double b_field, double eta, double volume) {
  model.cavity.validate();
  require(positive(model.reference_rate) && positive(model.omega_c), "reference rate and frequency must be > 0");
  require(model.cavity.n_T_bar > 0.0, "a zero thermal occupation does not determine a temperature");
  const double ref = model.reference_rate;
  const Energy mass{model.omega_c};
  const Energy gamma_ell{model.cavity.gamma_ell * ref};
  const Energy delta{model.cavity.delta_a * ref};
  const Energy gamma_s{model.cavity.gamma_s * ref};
  const Field b = from_tesla(b_field);
  const Volume v = from_cubic_metres(volume);

  PhysicalParams p;
  p.b_field = b_field;
  p.eta = eta;
  p.volume = volume;
  p.frequency_hz = mass.value / from_hertz(1.0).value;
  p.q_c = (mass / gamma_ell).value;
  p.beta = model.cavity.gamma_m / model.cavity.gamma_ell;
  p.q_a = (mass / delta).value;
  p.temperature = model.omega_c / std::log1p(1.0 / model.cavity.n_T_bar) / from_kelvin(1.0).value;
  // g^2 = 4 delta gamma_s / (B^2 eta)
  const Natural<-2> g_sq = 4.0 * delta * gamma_s / (b * b * Dimensionless{eta});
  p.g_a_gamma = std::sqrt(g_sq.value) / from_inverse_gev(1.0).value;
  // rho = n_s m / V
  const Density rho = Dimensionless{model.cavity.n_s} * mass / v;
  p.rho_a = rho.value / from_gev_per_cm3(1.0).value;
  return p;
}

double signal_power_quantum(const PhysicalParams& phys) {
  const NaturalView n = to_natural(phys);
  const Energy delta = n.delta_a();
  const Energy gamma_s = signal_coupling_rate(n.g, n.b, n.eta, delta);
  const Dimensionless n_s = signal_occupation(n.rho, n.volume, n.mass);
  const Energy gamma_eff = n.mass / n.q_eff();
  const Dimensionless coupling = 4.0 * n.beta / (Dimensionless{1.0} + n.beta);
  const Power p = coupling * n.mass * n_s * delta * gamma_s / gamma_eff;
  return to_watts(p);
}

double signal_power_classical(const PhysicalParams& phys) {
  const NaturalView n = to_natural(phys);
  const Dimensionless coupling = n.beta / (Dimensionless{1.0} + n.beta);
  const Power p = coupling * (n.g * n.g) * (n.rho / n.mass) * (n.b * n.b) * n.volume * n.eta * n.q_eff();
  return to_watts(p);
}

double cavity_power(const PhysicalParams& phys) {
  const NaturalView n = to_natural(phys);
  const Dimensionless q{std::min(n.q_c.value, n.q_a.value)};
  const Power p = (n.g * n.g) * (n.rho / n.mass) * (n.b * n.b) * n.volume * n.eta * q;
  return to_watts(p);
}

double signal_power(const ModelParams& model) {
  const double transfer = signal_transfer_mag_sq(model.cavity, 0.0);
  const Energy omega{model.omega_c};
  const Energy delta{model.cavity.delta_a * model.reference_rate};
  const Power p = Dimensionless{transfer * model.cavity.n_s} * omega * delta;
  return to_watts(p);
}

double signal_power_exact(const PhysicalParams& phys) { return signal_power(to_model_params(phys)); }

DarkPhotonCoupling dark_photon_substitution(double epsilon, double mass_ev, double eta, double delta_ev,
                                            double rho_gev_cm3, double volume_m3) {
  require(std::isfinite(epsilon) && epsilon >= 0.0, "kinetic mixing must be >= 0");
  require(positive(mass_ev) && positive(delta_ev), "mass and bandwidth must be > 0");
  require(positive(eta) && eta <= 1.0, "eta must lie in (0, 1]");
  require(positive(rho_gev_cm3) && positive(volume_m3), "density and volume must be > 0");
  const Energy m{mass_ev};
  const Energy amplitude = Dimensionless{epsilon} * m * units::sqrt(Dimensionless{eta});
  const Energy gamma_s = amplitude * amplitude / (4.0 * Energy{delta_ev});
  const Dimensionless n_s = signal_occupation(from_gev_per_cm3(rho_gev_cm3), from_cubic_metres(volume_m3), m);
  return {gamma_s.value, n_s.value};
}

double axion_signal_coupling(double g_per_gev, double b_tesla, double eta, double delta_ev) {
  return signal_coupling_rate(from_inverse_gev(g_per_gev), from_tesla(b_tesla), {eta}, {delta_ev}).value;
}

}  // namespace haloscan
