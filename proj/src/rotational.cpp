#include "mhs/rotational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/numeric/odeint.hpp>

#include "mhs/errors.hpp"
#include "mhs/spline.hpp"

namespace mhs {
namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<double, 4>;  // psi, theta, psi', theta'

constexpr double kAbsTol = 1e-13;
constexpr double kRelTol = 1e-13;
constexpr int kMaxSteps = 2'000'000;

void profile_rhs(const State& y, State& dy, double /*t*/) {
  const double s = std::sin(y[0]), c = std::cos(y[0]);
  dy[0] = y[2];
  dy[1] = y[3];
  dy[2] = s * c * (1.0 - y[3] * y[3]);
  dy[3] = 2.0 * (s / c) * y[2] * y[3];
}

double clairaut_of(const State& y) {
  const double c = std::cos(y[0]);
  return c * c * y[3];
}

double conformal_defect_of(const State& y) {
  const double s = std::sin(y[0]), c = std::cos(y[0]);
  return y[2] * y[2] + c * c * y[3] * y[3] - s * s;
}

auto make_stepper() { return odeint::make_controlled(kAbsTol, kRelTol, odeint::runge_kutta_dopri5<State>()); }

State initial_state(double energy) {
  if (!(energy > 0.0 && energy < 0.5))
    throw Error(ErrorKind::OutOfWindow, "energy must lie in (0, 1/2) for an oscillating profile");
  // lower turning point: sin psi cos psi = c, psi' = 0
  const double psi0 = 0.5 * std::asin(2.0 * energy);
  const double c0 = std::cos(psi0);
  return {psi0, 0.0, 0.0, energy / (c0 * c0)};
}

State advance(State y, double t0, double t1) {
  if (t1 > t0) {
    auto stepper = make_stepper();
    odeint::integrate_adaptive(stepper, profile_rhs, y, t0, t1, std::min(1e-2, t1 - t0));
  }
  return y;
}

}  // namespace

Shot shoot_profile(double energy) {
  State y = initial_state(energy);
  auto stepper = make_stepper();
  double t = 0.0, dt = 1e-3;
  double drift = 0.0;
  bool descended = false;
  int steps = 0;
  while (true) {
    const State prev = y;
    const double t_prev = t;
    int rejections = 0;
    while (stepper.try_step(profile_rhs, y, t, dt) == odeint::fail) {
      if (dt < 1e-14 || ++rejections > 200)
        throw Error(ErrorKind::IntegrationFailure, "step size underflow in profile integration");
    }
    if (++steps > kMaxSteps) throw Error(ErrorKind::IntegrationFailure, "too many steps in profile integration");
    drift = std::max(drift, std::abs(clairaut_of(y) - energy) / energy);
    if (y[2] < 0.0) descended = true;
    if (!(descended && prev[2] < 0.0 && y[2] >= 0.0)) continue;

    // Newton on psi'(t) = 0 inside [t_prev, t], re-integrating from the left end
    double lo = t_prev, hi = t;
    double tt = t_prev + (t - t_prev) * (-prev[2]) / (y[2] - prev[2]);
    State at = advance(prev, t_prev, tt);
    for (int it = 0; it < 60; ++it) {
      State d;
      profile_rhs(at, d, tt);
      if (at[2] < 0.0) lo = tt; else hi = tt;
      double next = tt - at[2] / d[2];
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - tt) <= 1e-15 * std::max(1.0, tt)) break;
      tt = next;
      at = advance(prev, t_prev, tt);
    }
    drift = std::max(drift, std::abs(clairaut_of(at) - energy) / energy);
    return {tt, at[1], drift, std::abs(conformal_defect_of(at)), steps};
  }
}

double rotation_number(double energy) { return shoot_profile(energy).angle / (2.0 * std::numbers::pi); }

double WindowScan::lower() const { return *std::min_element(rotation.begin(), rotation.end()); }
double WindowScan::upper() const { return *std::max_element(rotation.begin(), rotation.end()); }

WindowScan scan_rotation_window(int samples) {
  if (samples < 3) throw Error(ErrorKind::InvalidParameter, "scan needs at least 3 samples");
  WindowScan scan;
  // clustered toward both ends of (0, 1/2)
  for (int k = 1; k < samples; ++k) {
    const double c = 0.25 * (1.0 - std::cos(std::numbers::pi * k / samples));
    scan.energies.push_back(c);
    scan.rotation.push_back(rotation_number(c));
  }
  scan.monotone = std::is_sorted(scan.rotation.begin(), scan.rotation.end()) &&
                  std::adjacent_find(scan.rotation.begin(), scan.rotation.end()) == scan.rotation.end();
  return scan;
}

ProfileCurve find_otsuki(int p, int q, double tol, int samples_per_period) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    throw Error(ErrorKind::InvalidParameter, "p and q must be coprime positive integers");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
  if (samples_per_period < 16) throw Error(ErrorKind::InvalidParameter, "too few profile samples");
  const double target = static_cast<double>(p) / q;
  const WindowScan scan = scan_rotation_window();
  if (!(target > scan.lower() && target < scan.upper()))
    throw Error(ErrorKind::NoSolution, "rotation number p/q lies outside the admissible window");

  std::size_t k = 0;
  while (k + 1 < scan.rotation.size() &&
         !((scan.rotation[k] - target) * (scan.rotation[k + 1] - target) <= 0.0))
    ++k;
  double a = scan.energies[k], b = scan.energies[k + 1];
  double fa = scan.rotation[k] - target, fb = scan.rotation[k + 1] - target;

  // secant inside the bracket, bisection when it escapes or stalls
  double c = a, fc = fa;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    double trial = b - fb * (b - a) / (fb - fa);
    if (!(trial > std::min(a, b) && trial < std::max(a, b)) || it % 4 == 3) trial = 0.5 * (a + b);
    c = trial;
    fc = rotation_number(c) - target;
    if (std::abs(fc) <= tol) {
      converged = true;
      break;
    }
    if (fa * fc < 0.0) {
      b = c;
      fb = fc;
    } else {
      a = c;
      fa = fc;
    }
    if (std::abs(b - a) < 1e-16) break;
  }
  if (!converged) throw Error(ErrorKind::Convergence, "rotation-number root finder stagnated");

  const Shot shot = shoot_profile(c);
  ProfileCurve profile;
  profile.period = shot.period;
  profile.clairaut = c;
  profile.p = p;
  profile.q = q;
  profile.times = Vec::LinSpaced(samples_per_period + 1, 0.0, shot.period);
  profile.samples.resize(samples_per_period + 1, 4);

  State y = initial_state(c);
  std::vector<double> times(profile.times.data(), profile.times.data() + profile.times.size());
  int row = 0;
  double drift = shot.clairaut_drift;
  odeint::integrate_times(make_stepper(), profile_rhs, y, times.begin(), times.end(), 1e-3,
                          [&](const State& s, double) {
                            for (int j = 0; j < 4; ++j) profile.samples(row, j) = s[j];
                            drift = std::max(drift, std::abs(clairaut_of(s) - c) / c);
                            ++row;
                          });
  const auto first = profile.samples.row(0), last = profile.samples.row(samples_per_period);
  profile.closure_residual = std::abs(last[1] - first[1] - 2.0 * std::numbers::pi * target);
  profile.periodicity_residual = std::hypot(last[0] - first[0], last[2] - first[2]);
  profile.clairaut_drift = drift;
  return profile;
}

namespace {

struct RotationalData {
  PeriodicCubicSpline<double> psi;
  PeriodicCubicSpline<double> dpsi;
  PeriodicCubicSpline<double> theta_periodic;  // theta - omega t
  double omega;
  double clairaut;
};

Jet rotational_jet(const RotationalData& d, const Vec& u) {
  const double t = u[0], phi = u[1];
  const double psi = d.psi(t), dpsi = d.dpsi(t);
  const double theta = d.theta_periodic(t) + d.omega * t;
  const double sp = std::sin(psi), cp = std::cos(psi);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sf = std::sin(phi), cf = std::cos(phi);
  const double dtheta = d.clairaut / (cp * cp);
  const double ddpsi = sp * cp * (1.0 - dtheta * dtheta);
  const double ddtheta = 2.0 * (sp / cp) * dpsi * dtheta;

  Eigen::Vector4d X(cp * ct, cp * st, sp * cf, sp * sf);
  Eigen::Vector4d X_psi(-sp * ct, -sp * st, cp * cf, cp * sf);
  Eigen::Vector4d X_theta(-cp * st, cp * ct, 0.0, 0.0);
  Eigen::Vector4d X_phi(0.0, 0.0, -sp * sf, sp * cf);
  Eigen::Vector4d X_psitheta(sp * st, -sp * ct, 0.0, 0.0);
  Eigen::Vector4d X_thetatheta(-cp * ct, -cp * st, 0.0, 0.0);
  Eigen::Vector4d X_psiphi(0.0, 0.0, -cp * sf, cp * cf);
  Eigen::Vector4d X_phiphi(0.0, 0.0, -sp * cf, -sp * sf);

  const Eigen::Vector4d X_t = X_psi * dpsi + X_theta * dtheta;
  const Eigen::Vector4d X_tt = -X * dpsi * dpsi + 2.0 * X_psitheta * dpsi * dtheta +
                               X_thetatheta * dtheta * dtheta + X_psi * ddpsi + X_theta * ddtheta;
  const Eigen::Vector4d X_tphi = X_psiphi * dpsi;

  // rotate the profile tangent by a quarter turn inside span{X_psi, X_theta / cos psi}
  const Eigen::Vector4d b(-st, ct, 0.0, 0.0);
  Eigen::Vector4d nu = -dtheta * cp * X_psi + dpsi * b;
  nu.normalize();

  Jet jet;
  jet.x = X;
  jet.nu = nu;
  jet.tangents.resize(4, 2);
  jet.tangents << X_t, X_phi;
  jet.second.resize(2, 2);
  jet.second(0, 0) = X_tt.dot(nu);
  jet.second(0, 1) = jet.second(1, 0) = X_tphi.dot(nu);
  jet.second(1, 1) = X_phiphi.dot(nu);
  return jet;
}

}  // namespace

GeometryFamily build_surface(const ProfileCurve& profile, int resolution_t, int resolution_phi) {
  if (resolution_t < 16 || resolution_phi < 16)
    throw Error(ErrorKind::InvalidParameter, "surface resolution must be >= 16");
  const Eigen::Index n = profile.samples.rows() - 1;
  if (n < 16 || profile.period <= 0.0) throw Error(ErrorKind::InvalidParameter, "profile has too few samples");

  const double T = profile.period;
  const double omega = 2.0 * std::numbers::pi * profile.p / (profile.q * T);
  const Vec psi = profile.samples.col(0).head(n);
  const Vec dpsi = profile.samples.col(2).head(n);
  const Vec theta = profile.samples.col(1).head(n) - omega * profile.times.head(n);

  auto data = std::make_shared<const RotationalData>(
      RotationalData{PeriodicCubicSpline<double>(psi, T), PeriodicCubicSpline<double>(dpsi, T),
                     PeriodicCubicSpline<double>(theta, T), omega, profile.clairaut});

  ParamDomain domain;
  domain.lower = Eigen::Vector2d(0.0, 0.0);
  domain.upper = Eigen::Vector2d(profile.q * T, 2.0 * std::numbers::pi);
  domain.periodic = {true, true};

  GeometryFamily family("otsuki", 2, std::move(domain),
                        [data](const Vec& u) { return rotational_jet(*data, u); },
                        {{"p", profile.p},
                         {"q", profile.q},
                         {"clairaut", profile.clairaut},
                         {"period", profile.period},
                         {"t_periods", profile.q},
                         {"closure_residual", profile.closure_residual}});

  const double trace = check_minimality(family, {resolution_t * profile.q, resolution_phi});
  if (!(trace <= 1e-6))
    throw Error(ErrorKind::GenerationFailed,
                "generated surface fails the minimality self-check (max |trace A| = " + std::to_string(trace) + ")");
  return family;
}

nlohmann::json profile_to_json(const ProfileCurve& profile) {
  nlohmann::json samples = nlohmann::json::array();
  for (Eigen::Index i = 0; i < profile.samples.rows(); ++i) {
    samples.push_back({{"t", profile.times[i]},
                       {"u", profile.samples(i, 0)},
                       {"v", profile.samples(i, 1)},
                       {"du", profile.samples(i, 2)},
                       {"dv", profile.samples(i, 3)}});
  }
  return {{"period", profile.period},
          {"samples", std::move(samples)},
          {"clairaut", profile.clairaut},
          {"p", profile.p},
          {"q", profile.q},
          {"closure_residual", profile.closure_residual},
          {"periodicity_residual", profile.periodicity_residual},
          {"clairaut_drift", profile.clairaut_drift}};
}

}  // namespace mhs
