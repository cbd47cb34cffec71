#ifndef MHS_ROTATIONAL_HPP
#define MHS_ROTATIONAL_HPP

#include <vector>

#include <json.hpp>

#include "mhs/geometry.hpp"
#include "mhs/types.hpp"

namespace mhs {

// S^1-invariant surfaces in S^3:
//   X(t, phi) = (cos psi cos theta, cos psi sin theta, sin psi cos phi, sin psi sin phi)
// with (psi, theta)(t) a profile in the quarter sphere and t conformal, so the
// induced metric is sin^2 psi (dt^2 + dphi^2). Minimality reduces to
//   psi'' = sin psi cos psi (1 - theta'^2),  theta'' = 2 tan psi psi' theta'
// with Clairaut integral c = cos^2 psi theta' and conformality
// psi'^2 + cos^2 psi theta'^2 = sin^2 psi. The profile oscillates for
// 0 < c < 1/2; c = 1/2 is the Clifford torus (psi = pi/4).
//
// "energy" below is the Clairaut constant c.

struct ProfileCurve {
  double period = 0.0;     // one radial oscillation, in t
  double clairaut = 0.0;
  int p = 0, q = 0;
  Vec times;               // uniform on [0, period], inclusive
  Mat samples;             // rows (psi, theta, psi', theta')
  double closure_residual = 0.0;      // |theta(T) - theta(0) - 2 pi p / q|
  double periodicity_residual = 0.0;  // |(psi, psi')(T) - (psi, psi')(0)|
  double clairaut_drift = 0.0;        // max relative deviation along the samples
};

struct Shot {
  double period;
  double angle;           // theta advance over one radial period
  double clairaut_drift;  // relative
  double conformal_defect;
  int steps;
};

// Integrates one radial oscillation starting from the lower turning point.
Shot shoot_profile(double energy);

// Angular advance over one radial oscillation divided by 2 pi.
double rotation_number(double energy);

struct WindowScan {
  std::vector<double> energies;
  std::vector<double> rotation;
  bool monotone = false;
  double lower() const;
  double upper() const;
};

WindowScan scan_rotation_window(int samples = 40);

ProfileCurve find_otsuki(int p, int q, double tol = 1e-10, int samples_per_period = 1024);

// Closed immersed torus made of q radial periods; domain [0, qT) x [0, 2 pi).
// The self-check grid has resolution_t points per radial period.
GeometryFamily build_surface(const ProfileCurve& profile, int resolution_t, int resolution_phi);

nlohmann::json profile_to_json(const ProfileCurve& profile);

}  // namespace mhs

#endif  // MHS_ROTATIONAL_HPP
