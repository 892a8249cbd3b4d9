#pragma once

#include "dcert/groups.hpp"

namespace dcert {

// Solution of  sinh^2(2s) + sinh^2 s = sinh^2 b + sinh^2 g
//              sinh(2t) sinh t      = sinh b sinh g
// with the relative equation residuals.
struct CouplingSolution {
  double s = 0;
  double t = 0;
  double residual_s = 0;
  double residual_t = 0;
};

CouplingSolution solve_st(double beta, double gamma);

// Closed-form inverse via rho/sigma: requires s >= t >= 0.
ChamberSp2 solve_betagamma(double s, double t);

// rho(s) = sinh^2(2s) + sinh^2 s,  sigma(t) = 2 sinh(2t) sinh t.
double rho_of(double s);
double sigma_of(double t);

enum class WitnessKind { Circle, Hyperbola, Sl3 };

const char* to_string(WitnessKind k);

// A matrix realizing a target double coset, with the membership residual
// measured through the chamber-recovery invariants (never assumed from the
// construction).
struct Witness {
  WitnessKind kind = WitnessKind::Circle;
  double alpha = 0;        // theta for the Sl3 kind
  double a1 = 0, b1 = 0;   // SU(2) parameters (circle/hyperbola)
  double r1 = 0;           // coset coordinate (circle)
  double q = 0;            // recovered SL(2) chamber parameter (sl3)
  GroupMatrix matrix;
  double target1 = 0, target2 = 0;  // (beta,gamma) or (s,t)
  double membership_residual = 0;
};

// D'_a u1 v D'_a in K D(b,g) K with u1 = diag(a1 + i b1, a1 - i b1),
// r1 = 2 sinh b sinh g / (sinh^2 b + sinh^2 g). Degenerate at (0,0).
Witness circle_witness(double beta, double gamma);

// D_a u1 D_a in K D(b,g) K with u1 of the +-1/sqrt2 off-diagonal form,
// a1 = (sinh b - sinh g)/sinh(2a). OutOfRegime when a1^2 > 1/2;
// Degenerate when sinh b sinh g = 0.
Witness hyperbola_witness(double beta, double gamma);

// D(r,0) rot3(theta) D(r,0) in K D(2q, r-q) K with q = sl2_polar_q(r, theta).
// Degenerate at r = 0.
Witness sl3_witness(double r, double theta);

}  // namespace dcert
