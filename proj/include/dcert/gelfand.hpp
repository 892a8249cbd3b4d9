#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dcert/groups.hpp"
#include "dcert/orthopoly.hpp"

namespace dcert {

// Finite spherical-coefficient model of a bi-invariant multiplier on a
// compact pair; its l1 norm is the exact multiplier norm for these pairs.
struct CompactMultiplier {
  PairId pair = PairId::SU2_SO2;
  std::vector<std::pair<SphericalIndex, std::complex<double>>> coefficients;
  double l1_norm = 0;
  int truncation_degree = -1;  // set by expansions; -1 = explicit model

  static CompactMultiplier make(
      PairId pair,
      std::vector<std::pair<SphericalIndex, std::complex<double>>> coeffs);
  // Rescales so l1_norm == 1 (no-op on the zero multiplier).
  CompactMultiplier normalized() const;
};

// Evaluation at a double-coset coordinate: disc point z for U2_U1.
std::complex<double> eval_multiplier(const CompactMultiplier& m,
                                     std::complex<double> z);
// r in [-1,1] for the Legendre pairs.
std::complex<double> eval_multiplier(const CompactMultiplier& m, double r);

// Gauss-Legendre rule on [-1,1].
void gauss_legendre(int nodes, std::vector<double>& x, std::vector<double>& w);

// c_n = (2n+1)/2 * int f P_n dr by Gauss quadrature (weight 1/2 on [-1,1]).
// DegreeTooHigh when degree >= nodes.
CompactMultiplier expand_legendre(
    const std::function<std::complex<double>(double)>& f, int degree,
    int nodes);

// Least squares against the (U(2),U(1)) spherical functions under the
// uniform disc density, indices p+q <= degree. Preceded by the Monte-Carlo
// uniformity pre-check of the (1,1)-entry distribution unless skip_precheck.
CompactMultiplier expand_u2u1(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    int degree, int radial_nodes, int angular_nodes,
    std::uint64_t precheck_seed = 2024, std::int64_t precheck_samples = 1000000,
    bool skip_precheck = false);

// 3-sigma moment test that the Haar pushforward of u_11 is uniform on the
// disc (mean |z|^2 = 1/2, mean z = 0). Throws PrecheckFailed.
struct DiscUniformityCheck {
  std::int64_t samples = 0;
  double mean_r2 = 0, mean_re = 0, mean_im = 0;
  double z_r2 = 0, z_re = 0, z_im = 0;  // standardized scores
  bool pass = false;
};
DiscUniformityCheck disc_uniformity_precheck(std::uint64_t seed,
                                             std::int64_t samples);

// One line of a Hoelder-continuity certificate: margin = rhs - lhs >= 0.
struct CertLine {
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double in1 = 0, in2 = 0;  // the two coset coordinates tested
};

// lhs = |phi0(e^{i t1}/sqrt2) - phi0(e^{i t2}/sqrt2)|,
// rhs = c_tilde |t1 - t2|^{1/4} l1_norm.
CertLine holder_certify_u2u1(const CompactMultiplier& m, double theta1,
                             double theta2, double c_tilde);
// lhs = |chi0(r1) - chi0(r2)|, rhs = 4 |r1 - r2|^{1/2} l1_norm,
// r_i in [-1/2, 1/2].
CertLine holder_certify_su2so2(const CompactMultiplier& m, double r1,
                               double r2);

// Synthetic K-bi-invariant function on the big group, given by a function of
// the chamber point (its multiplier norm is NOT modeled).
struct SyntheticGMultiplier {
  enum class Group { Sp2, SL3 };
  Group group = Group::Sp2;
  std::function<std::complex<double>(double, double)> chamber_fn;
};

// psi_a(k) = phi(D_a k D_a): K1-bi-invariant restriction to K.
std::complex<double> restrict_psi(const SyntheticGMultiplier& phi, double alpha,
                                  const GroupMatrix& k,
                                  double tol = kMembershipTol);
// chi_a(k) = phi(D'_a k v D'_a): K3-bi-invariant restriction.
std::complex<double> restrict_chi(const SyntheticGMultiplier& phi, double alpha,
                                  const GroupMatrix& k,
                                  double tol = kMembershipTol);

}  // namespace dcert
