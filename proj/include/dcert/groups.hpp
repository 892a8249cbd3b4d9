#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "dcert/common.hpp"
#include "dcert/errors.hpp"

namespace dcert {

enum class GroupTag { Sp2, SL3, SO3, SO2, K_U2, K2_SU2, Generic };

const char* to_string(GroupTag t);
GroupTag group_tag_from_string(const std::string& s);

// Small fixed-size real matrix (dim 2..4), row-major, tagged with its group.
struct GroupMatrix {
  int dim = 0;
  GroupTag tag = GroupTag::Generic;
  std::array<double, 16> a{};

  double& at(int i, int j) { return a[static_cast<size_t>(i * dim + j)]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i * dim + j)]; }

  static GroupMatrix identity(int dim, GroupTag tag = GroupTag::Generic);
};

GroupMatrix operator*(const GroupMatrix& x, const GroupMatrix& y);
GroupMatrix transpose(const GroupMatrix& g);
double hs_norm(const GroupMatrix& g);
// LU with partial pivoting, long double accumulation.
double det(const GroupMatrix& g);

// Fixed 4x4 symplectic form J = [[0, I2], [-I2, 0]].
const GroupMatrix& symplectic_form();

// ||g^t J g - J||_HS (dim-4 inputs only).
double symplectic_residual(const GroupMatrix& g);
// max(||g^t g - I||_HS, |det g - 1|) for the compact tags.
double orthogonal_residual(const GroupMatrix& g);
// Residual of the tag-appropriate membership condition, scaled relative.
double membership_residual(const GroupMatrix& g);
bool in_group(const GroupMatrix& g, double tol = kMembershipTol);
// Throws NotInGroup when the residual exceeds tol.
void require_membership(const GroupMatrix& g, double tol = kMembershipTol);

// 2x2 complex matrix in the letter layout [[a+ib, e+if], [c+id, g+ih]].
struct U2Param {
  std::array<std::complex<double>, 4> u{};  // row-major u00,u01,u10,u11

  std::complex<double>& at(int i, int j) { return u[static_cast<size_t>(2 * i + j)]; }
  std::complex<double> at(int i, int j) const { return u[static_cast<size_t>(2 * i + j)]; }

  double unitarity_residual() const;  // ||U^* U - I||

  static U2Param identity();
  // diag(e^{i phi0}, e^{i phi1})
  static U2Param diag_phase(double phi0, double phi1);
  // [[a+ib, -c+id], [c+id, a-ib]]; requires a^2+b^2+c^2+d^2 = 1 for SU(2).
  static U2Param su2(double a4, double b4, double c4, double d4);
};

U2Param operator*(const U2Param& x, const U2Param& y);

// Quadruple (a,b,c,d) of an SU(2) element; r = a^2-b^2+c^2-d^2 is the
// SO(2)-double-coset coordinate.
struct Su2Quadruple {
  double a = 1, b = 0, c = 0, d = 0;
  double coset_r() const { return a * a - b * b + c * c - d * d; }
};

Su2Quadruple quadruple(const U2Param& u);

// Chamber parameters: beta >= gamma >= 0.
struct ChamberSp2 {
  double beta = 0;
  double gamma = 0;
};

// Chamber parameters: s, t >= 0.
struct ChamberSl3 {
  double s = 0;
  double t = 0;
};

// K-bi-invariant scalars of Lemma-kakeqs type: c1 = sinh^2 b + sinh^2 g,
// c2 = sinh^2 b * sinh^2 g for g in K D(b,g) K.
struct HSInvariants {
  double c1 = 0;
  double c2 = 0;
};

// U(2) -> K c Sp(2,R), [[A+iB]] -> [[A,-B],[B,A]]. Throws NotUnitary.
GroupMatrix embed_u2_to_k(const U2Param& u, double tol = kMembershipTol);

// diag(e^b, e^g, e^-b, e^-g)
GroupMatrix dmat_sp2(const ChamberSp2& c);
GroupMatrix dmat_sp2(double beta, double gamma);
// diag(e^a, 1, e^-a, 1) -- commutes with the K1 rotations
GroupMatrix dalpha(double alpha);
// diag(e^a, e^a, e^-a, e^-a) -- commutes with the embedded SO(2)
GroupMatrix dprime(double alpha);
// Embedded central element (1/sqrt2)(1+i) I_2
GroupMatrix v_element();
// Embedded K1 rotation (the image of diag(1, e^{i theta}))
GroupMatrix k1_rotation(double theta);
// Embedded SO(2) c SU(2) rotation (the image of su2(cos, 0, sin, 0))
GroupMatrix k3_rotation(double theta);

HSInvariants hs_invariants(const GroupMatrix& g, double tol = kMembershipTol);
ChamberSp2 sp2_chamber(const GroupMatrix& g, double tol = kMembershipTol);

// e^{-(s+2t)/3} diag(e^{s+t}, e^t, 1)
GroupMatrix sl3_dmat(const ChamberSl3& c);
GroupMatrix sl3_dmat(double s, double t);
ChamberSl3 sl3_chamber(const GroupMatrix& g, double tol = kMembershipTol);

// 3x3 rotation in the first two coordinates.
GroupMatrix rot3(double theta);

// Sorted singular values (desc) of a 3x3 matrix; implicit cyclic Jacobi on
// g^t g (one-sided rotations, long double columns).
std::array<double, 3> singular_values_3x3(const GroupMatrix& g);

// Chamber parameter q of [[e^r cos t, -sin t], [sin t, e^-r cos t]]:
// sinh q = |cos t| sinh r, q in [0, r].
double sl2_polar_q(double r, double theta);

// Haar-distributed elements, deterministic per seed.
GroupMatrix random_k(std::uint64_t seed);
U2Param random_u2(Rng& rng);
U2Param random_su2(Rng& rng);
GroupMatrix random_so3(std::uint64_t seed);
GroupMatrix random_so3(Rng& rng);

}  // namespace dcert
