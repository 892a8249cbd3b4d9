#include "dcert/groups.hpp"

#include <cmath>
#include <cstring>

namespace dcert {

const char* to_string(GroupTag t) {
  switch (t) {
    case GroupTag::Sp2: return "Sp2";
    case GroupTag::SL3: return "SL3";
    case GroupTag::SO3: return "SO3";
    case GroupTag::SO2: return "SO2";
    case GroupTag::K_U2: return "K_U2";
    case GroupTag::K2_SU2: return "K2_SU2";
    case GroupTag::Generic: return "generic";
  }
  return "generic";
}

GroupTag group_tag_from_string(const std::string& s) {
  if (s == "Sp2" || s == "sp2") return GroupTag::Sp2;
  if (s == "SL3" || s == "sl3") return GroupTag::SL3;
  if (s == "SO3" || s == "so3") return GroupTag::SO3;
  if (s == "SO2" || s == "so2") return GroupTag::SO2;
  if (s == "K_U2" || s == "k_u2") return GroupTag::K_U2;
  if (s == "K2_SU2" || s == "k2_su2") return GroupTag::K2_SU2;
  if (s == "generic") return GroupTag::Generic;
  throw Error(ErrorKind::ParseError, "unknown group tag '" + s + "'");
}

GroupMatrix GroupMatrix::identity(int dim, GroupTag tag) {
  GroupMatrix g;
  g.dim = dim;
  g.tag = tag;
  for (int i = 0; i < dim; ++i) g.at(i, i) = 1.0;
  return g;
}

GroupMatrix operator*(const GroupMatrix& x, const GroupMatrix& y) {
  GroupMatrix z;
  z.dim = x.dim;
  z.tag = (x.tag == y.tag) ? x.tag : GroupTag::Generic;
  const int n = x.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += x.at(i, k) * y.at(k, j);
      z.at(i, j) = s;
    }
  return z;
}

GroupMatrix transpose(const GroupMatrix& g) {
  GroupMatrix t;
  t.dim = g.dim;
  t.tag = g.tag;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) t.at(i, j) = g.at(j, i);
  return t;
}

double hs_norm(const GroupMatrix& g) {
  long double s = 0.0L;
  for (int i = 0; i < g.dim * g.dim; ++i)
    s += static_cast<long double>(g.a[static_cast<size_t>(i)]) * g.a[static_cast<size_t>(i)];
  return static_cast<double>(std::sqrt(s));
}

double det(const GroupMatrix& g) {
  const int n = g.dim;
  long double m[4][4];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g.at(i, j);
  long double d = 1.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(static_cast<double>(m[r][c])) > std::fabs(static_cast<double>(m[piv][c]))) piv = r;
    if (m[piv][c] == 0.0L) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m[piv][j], m[c][j]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return static_cast<double>(d);
}

const GroupMatrix& symplectic_form() {
  static const GroupMatrix J = [] {
    GroupMatrix j;
    j.dim = 4;
    j.tag = GroupTag::Generic;
    j.at(0, 2) = 1.0;
    j.at(1, 3) = 1.0;
    j.at(2, 0) = -1.0;
    j.at(3, 1) = -1.0;
    return j;
  }();
  return J;
}

double symplectic_residual(const GroupMatrix& g) {
  const GroupMatrix& J = symplectic_form();
  GroupMatrix r = transpose(g) * J * g;
  for (int i = 0; i < 16; ++i) r.a[static_cast<size_t>(i)] -= J.a[static_cast<size_t>(i)];
  return hs_norm(r);
}

double orthogonal_residual(const GroupMatrix& g) {
  GroupMatrix r = transpose(g) * g;
  for (int i = 0; i < g.dim; ++i) r.at(i, i) -= 1.0;
  return std::max(hs_norm(r), std::fabs(det(g) - 1.0));
}

double membership_residual(const GroupMatrix& g) {
  const double nrm = hs_norm(g);
  switch (g.tag) {
    case GroupTag::Sp2:
      return symplectic_residual(g) / std::max(1.0, nrm * nrm);
    case GroupTag::SL3:
      return std::fabs(det(g) - 1.0) / std::max(1.0, nrm * nrm * nrm);
    case GroupTag::SO3:
    case GroupTag::SO2:
    case GroupTag::K_U2:
    case GroupTag::K2_SU2:
      return orthogonal_residual(g) / std::max(1.0, nrm * nrm);
    case GroupTag::Generic:
      return 0.0;
  }
  return 0.0;
}

bool in_group(const GroupMatrix& g, double tol) {
  return membership_residual(g) <= tol;
}

void require_membership(const GroupMatrix& g, double tol) {
  const double r = membership_residual(g);
  if (r > tol)
    throw Error(ErrorKind::NotInGroup,
                std::string(to_string(g.tag)) + " membership residual " +
                    std::to_string(r) + " exceeds tolerance");
}

double U2Param::unitarity_residual() const {
  // ||U^* U - I||_HS
  std::complex<double> r[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < 2; ++k) s += std::conj(at(k, i)) * at(k, j);
      r[i][j] = s - (i == j ? 1.0 : 0.0);
    }
  double q = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q += std::norm(r[i][j]);
  return std::sqrt(q);
}

U2Param U2Param::identity() {
  U2Param u;
  u.at(0, 0) = 1.0;
  u.at(1, 1) = 1.0;
  return u;
}

U2Param U2Param::diag_phase(double phi0, double phi1) {
  U2Param u;
  u.at(0, 0) = std::polar(1.0, phi0);
  u.at(1, 1) = std::polar(1.0, phi1);
  return u;
}

U2Param U2Param::su2(double a4, double b4, double c4, double d4) {
  U2Param u;
  u.at(0, 0) = {a4, b4};
  u.at(0, 1) = {-c4, d4};
  u.at(1, 0) = {c4, d4};
  u.at(1, 1) = {a4, -b4};
  return u;
}

U2Param operator*(const U2Param& x, const U2Param& y) {
  U2Param z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      z.at(i, j) = x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
  return z;
}

Su2Quadruple quadruple(const U2Param& u) {
  return {u.at(0, 0).real(), u.at(0, 0).imag(), u.at(1, 0).real(),
          u.at(1, 0).imag()};
}

GroupMatrix embed_u2_to_k(const U2Param& u, double tol) {
  const double res = u.unitarity_residual();
  if (res > tol)
    throw Error(ErrorKind::NotUnitary,
                "unitarity residual " + std::to_string(res));
  GroupMatrix g;
  g.dim = 4;
  g.tag = GroupTag::K_U2;
  // [[A, -B], [B, A]] with A = Re U, B = Im U
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double re = u.at(i, j).real();
      const double im = u.at(i, j).imag();
      g.at(i, j) = re;
      g.at(i, j + 2) = -im;
      g.at(i + 2, j) = im;
      g.at(i + 2, j + 2) = re;
    }
  return g;
}

GroupMatrix dmat_sp2(const ChamberSp2& c) { return dmat_sp2(c.beta, c.gamma); }

GroupMatrix dmat_sp2(double beta, double gamma) {
  GroupMatrix g;
  g.dim = 4;
  g.tag = GroupTag::Sp2;
  g.at(0, 0) = std::exp(beta);
  g.at(1, 1) = std::exp(gamma);
  g.at(2, 2) = std::exp(-beta);
  g.at(3, 3) = std::exp(-gamma);
  return g;
}

GroupMatrix dalpha(double alpha) {
  GroupMatrix g;
  g.dim = 4;
  g.tag = GroupTag::Sp2;
  g.at(0, 0) = std::exp(alpha);
  g.at(1, 1) = 1.0;
  g.at(2, 2) = std::exp(-alpha);
  g.at(3, 3) = 1.0;
  return g;
}

GroupMatrix dprime(double alpha) {
  GroupMatrix g;
  g.dim = 4;
  g.tag = GroupTag::Sp2;
  g.at(0, 0) = std::exp(alpha);
  g.at(1, 1) = std::exp(alpha);
  g.at(2, 2) = std::exp(-alpha);
  g.at(3, 3) = std::exp(-alpha);
  return g;
}

GroupMatrix v_element() {
  const double s = std::sqrt(0.5);
  U2Param v;
  v.at(0, 0) = {s, s};
  v.at(1, 1) = {s, s};
  return embed_u2_to_k(v);
}

GroupMatrix k1_rotation(double theta) {
  return embed_u2_to_k(U2Param::diag_phase(0.0, theta));
}

GroupMatrix k3_rotation(double theta) {
  return embed_u2_to_k(U2Param::su2(std::cos(theta), 0.0, std::sin(theta), 0.0));
}

namespace {

// (g^t)^-1 = -JgJ for symplectic g: an exact sign permutation of entries,
// so forming g - (g^t)^-1 never goes through a linear solve.
GroupMatrix symplectic_inv_transpose(const GroupMatrix& g) {
  const GroupMatrix& J = symplectic_form();
  GroupMatrix r = J * g * J;
  for (auto& e : r.a) e = -e;
  r.tag = GroupTag::Generic;
  return r;
}

}  // namespace

HSInvariants hs_invariants(const GroupMatrix& g, double tol) {
  if (g.dim != 4)
    throw Error(ErrorKind::DomainError, "hs_invariants expects a 4x4 matrix");
  GroupMatrix gg = g;
  gg.tag = GroupTag::Sp2;
  require_membership(gg, tol);
  const double dg = det(g);
  if (!(std::fabs(dg) > 1e-12))
    throw Error(ErrorKind::Singular, "matrix numerically non-invertible");
  const GroupMatrix it = symplectic_inv_transpose(g);
  GroupMatrix h;
  h.dim = 4;
  long double c1 = 0.0L;
  for (int i = 0; i < 16; ++i) {
    const long double e = static_cast<long double>(g.a[static_cast<size_t>(i)]) -
                          static_cast<long double>(it.a[static_cast<size_t>(i)]);
    h.a[static_cast<size_t>(i)] = static_cast<double>(e);
    c1 += e * e;
  }
  HSInvariants inv;
  inv.c1 = static_cast<double>(c1 / 8.0L);
  inv.c2 = det(h) / 16.0;
  return inv;
}

ChamberSp2 sp2_chamber(const GroupMatrix& g, double tol) {
  const HSInvariants inv = hs_invariants(g, tol);
  const double c1 = inv.c1;
  double c2 = inv.c2;
  double disc = c1 * c1 - 4.0 * c2;
  if (disc < -tol * std::max(1.0, c1 * c1))
    throw Error(ErrorKind::NegativeDiscriminant,
                "c1^2 - 4 c2 = " + std::to_string(disc) +
                    " (non-symplectic input?)");
  if (disc < 0.0) disc = 0.0;
  // Roots of x^2 - c1 x + c2: sinh^2(beta) and sinh^2(gamma). The small root
  // goes through c2/xp to avoid cancellation; tiny negatives near the chamber
  // walls are clamped.
  const double xp = 0.5 * (c1 + std::sqrt(disc));
  double xm = (xp > 0.0) ? c2 / xp : 0.0;
  if (xm < 0.0) {
    if (xm < -tol * std::max(1.0, c1))
      throw Error(ErrorKind::NegativeDiscriminant,
                  "negative root " + std::to_string(xm));
    xm = 0.0;
  }
  ChamberSp2 c;
  c.beta = std::asinh(std::sqrt(xp));
  c.gamma = std::asinh(std::sqrt(xm));
  return c;
}

GroupMatrix sl3_dmat(const ChamberSl3& c) { return sl3_dmat(c.s, c.t); }

GroupMatrix sl3_dmat(double s, double t) {
  GroupMatrix g;
  g.dim = 3;
  g.tag = GroupTag::SL3;
  g.at(0, 0) = std::exp((2.0 * s + t) / 3.0);
  g.at(1, 1) = std::exp((t - s) / 3.0);
  g.at(2, 2) = std::exp(-(s + 2.0 * t) / 3.0);
  return g;
}

GroupMatrix rot3(double theta) {
  GroupMatrix g;
  g.dim = 3;
  g.tag = GroupTag::SO3;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g.at(0, 0) = c;
  g.at(0, 1) = -s;
  g.at(1, 0) = s;
  g.at(1, 1) = c;
  g.at(2, 2) = 1.0;
  return g;
}

std::array<double, 3> singular_values_3x3(const GroupMatrix& g) {
  if (g.dim != 3)
    throw Error(ErrorKind::DomainError, "singular_values_3x3 expects 3x3");
  // One-sided Jacobi: rotate column pairs until the implicit g^t g is
  // diagonal. Never forms g^t g, so sigma_min keeps relative accuracy.
  long double col[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) col[j][i] = g.at(i, j);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        long double app = 0.0L, aqq = 0.0L, apq = 0.0L;
        for (int i = 0; i < 3; ++i) {
          app += col[p][i] * col[p][i];
          aqq += col[q][i] * col[q][i];
          apq += col[p][i] * col[q][i];
        }
        if (std::fabs(static_cast<double>(apq)) <=
            1e-26 * std::sqrt(static_cast<double>(app) * static_cast<double>(aqq)))
          continue;
        rotated = true;
        const long double tau = (aqq - app) / (2.0L * apq);
        const long double t = (tau >= 0.0L ? 1.0L : -1.0L) /
                              (std::fabs(static_cast<double>(tau)) +
                               std::sqrt(1.0 + static_cast<double>(tau * tau)));
        const long double c = 1.0L / std::sqrt(1.0 + static_cast<double>(t * t));
        const long double s = t * c;
        for (int i = 0; i < 3; ++i) {
          const long double vp = col[p][i];
          const long double vq = col[q][i];
          col[p][i] = c * vp - s * vq;
          col[q][i] = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }
  std::array<double, 3> sv{};
  for (int j = 0; j < 3; ++j) {
    long double n2 = 0.0L;
    for (int i = 0; i < 3; ++i) n2 += col[j][i] * col[j][i];
    sv[static_cast<size_t>(j)] = static_cast<double>(std::sqrt(n2));
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

ChamberSl3 sl3_chamber(const GroupMatrix& g, double tol) {
  if (g.dim != 3)
    throw Error(ErrorKind::DomainError, "sl3_chamber expects a 3x3 matrix");
  GroupMatrix gg = g;
  gg.tag = GroupTag::SL3;
  require_membership(gg, tol);
  const auto sv = singular_values_3x3(g);
  if (!(sv[2] > 0.0))
    throw Error(ErrorKind::Singular, "matrix numerically non-invertible");
  ChamberSl3 c;
  c.s = std::log(sv[0] / sv[1]);
  c.t = std::log(sv[1] / sv[2]);
  if (c.s < 0.0) c.s = 0.0;
  if (c.t < 0.0) c.t = 0.0;
  return c;
}

double sl2_polar_q(double r, double theta) {
  if (!(r >= 0.0))
    throw Error(ErrorKind::DomainError, "sl2_polar_q needs r >= 0");
  return std::asinh(std::fabs(std::cos(theta)) * std::sinh(r));
}

U2Param random_su2(Rng& rng) {
  double a, b, c, d, n2;
  do {
    a = rng.gaussian();
    b = rng.gaussian();
    c = rng.gaussian();
    d = rng.gaussian();
    n2 = a * a + b * b + c * c + d * d;
  } while (n2 < 1e-12);
  const double n = std::sqrt(n2);
  return U2Param::su2(a / n, b / n, c / n, d / n);
}

U2Param random_u2(Rng& rng) {
  const U2Param s = random_su2(rng);
  const double phi = rng.uniform(0.0, 6.283185307179586476925286766559);
  U2Param p = U2Param::diag_phase(phi, phi);
  return p * s;
}

GroupMatrix random_k(std::uint64_t seed) {
  Rng rng(seed);
  return embed_u2_to_k(random_u2(rng));
}

GroupMatrix random_so3(Rng& rng) {
  double w, x, y, z, n2;
  do {
    w = rng.gaussian();
    x = rng.gaussian();
    y = rng.gaussian();
    z = rng.gaussian();
    n2 = w * w + x * x + y * y + z * z;
  } while (n2 < 1e-12);
  const double n = std::sqrt(n2);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  GroupMatrix g;
  g.dim = 3;
  g.tag = GroupTag::SO3;
  g.at(0, 0) = 1.0 - 2.0 * (y * y + z * z);
  g.at(0, 1) = 2.0 * (x * y - w * z);
  g.at(0, 2) = 2.0 * (x * z + w * y);
  g.at(1, 0) = 2.0 * (x * y + w * z);
  g.at(1, 1) = 1.0 - 2.0 * (x * x + z * z);
  g.at(1, 2) = 2.0 * (y * z - w * x);
  g.at(2, 0) = 2.0 * (x * z - w * y);
  g.at(2, 1) = 2.0 * (y * z + w * x);
  g.at(2, 2) = 1.0 - 2.0 * (x * x + y * y);
  return g;
}

GroupMatrix random_so3(std::uint64_t seed) {
  Rng rng(seed);
  return random_so3(rng);
}

}  // namespace dcert
