#pragma once

#include <complex>
#include <vector>

#include "dcert/common.hpp"
#include "dcert/errors.hpp"
#include "dcert/groups.hpp"

namespace dcert {

enum class PairId { U2_U1, SU2_SO2, SO3_SO2 };

const char* to_string(PairId p);
PairId pair_id_from_string(const std::string& s);

// Index of a spherical function: (p,q) for U2_U1, n for the Legendre pairs.
struct SphericalIndex {
  PairId pair = PairId::SU2_SO2;
  int p = 0;
  int q = 0;
  int n = 0;

  static SphericalIndex u2u1(int p, int q) { return {PairId::U2_U1, p, q, 0}; }
  static SphericalIndex su2so2(int n) { return {PairId::SU2_SO2, 0, 0, n}; }
  static SphericalIndex so3so2(int n) { return {PairId::SO3_SO2, 0, 0, n}; }
};

bool operator==(const SphericalIndex& a, const SphericalIndex& b);

// P_n by upward three-term recurrence; |x| <= 1 (+tol) enforced.
double legendre(int n, double x);
double legendre_derivative(int n, double x);
// All degrees 0..n_max in one sweep.
void legendre_all(int n_max, double x, std::vector<double>& out);

// Independent oracle: P_n(x) = (1/pi) int_0^pi (x + i sqrt(1-x^2) cos t)^n dt,
// midpoint rule (exact for the trig-polynomial integrand when
// nodes >= n/2 + 1; precondition nodes >= 2(n+8)).
double legendre_integral_oracle(int n, double x, int nodes);
inline int legendre_oracle_nodes(int n) { return 4 * (n + 16); }

// P_n^{(0,b)}, normalized so P_n^{(0,b)}(1) = 1 exactly.
double jacobi(int n, int b, double x);
void jacobi_all(int n_max, int b, double x, std::vector<double>& out);

// Spherical functions.
// (U(2),U(1)):  h0_{p,q}(z) = z^{p-q} P_q^{(0,p-q)}(2|z|^2-1)   for p >= q,
//               conj(z)^{q-p} P_p^{(0,q-p)}(2|z|^2-1)           for p < q.
std::complex<double> spherical_u2u1(int p, int q, std::complex<double> z);
// (SU(2),SO(2)): P_n(a^2-b^2+c^2-d^2).
double spherical_su2so2(int n, const U2Param& u, double tol = kMembershipTol);
double spherical_su2so2_coord(int n, double r);
// (SO(3),SO(2)): P_n(g_11).
double spherical_so3so2(int n, const GroupMatrix& g, double tol = kMembershipTol);

// Empirical estimate of the uniform Jacobi bound constant:
// c_hat = max over the grid of
//   sqrt(sin 2t) (cos t)^b |P_n^{(0,b)}(cos 2t)| (2n+b+1)^{1/4},
// theta grid t_j = j*pi/(2M), j = 1..M-1 (pi/4 lands on-grid for even M).
struct HsConstantEstimate {
  double c_hat = 0;
  int n_max = 0;
  int beta_max = 0;
  int theta_grid_size = 0;
  int argmax_n = 0;
  int argmax_beta = 0;
  double argmax_theta = 0;
};

HsConstantEstimate hs_constant_estimate(int n_max, int beta_max,
                                        int theta_grid_size);

// Margins of the Legendre estimates on [-1/2,1/2]:
//   holder     = 4|x-y|^{1/2} - |P_n(x)-P_n(y)|
//   magnitude  = 2/sqrt(n) - max(|P_n(x)|,|P_n(y)|)      (n >= 2)
//   derivative = 4 sqrt(n) - max(|P_n'(x)|,|P_n'(y)|)    (n >= 2)
struct LegendreMargins {
  double holder = 0;
  double magnitude = 0;
  double derivative = 0;
};

LegendreMargins legendre_holder_margin(int n, double x, double y);

}  // namespace dcert
