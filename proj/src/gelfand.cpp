#include "dcert/gelfand.hpp"

#include <cmath>

namespace dcert {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

CompactMultiplier CompactMultiplier::make(
    PairId pair,
    std::vector<std::pair<SphericalIndex, std::complex<double>>> coeffs) {
  CompactMultiplier m;
  m.pair = pair;
  m.coefficients = std::move(coeffs);
  double l1 = 0.0;
  for (auto& [idx, c] : m.coefficients) {
    if (idx.pair != pair)
      throw Error(ErrorKind::DomainError, "coefficient index on wrong pair");
    l1 += std::abs(c);
  }
  m.l1_norm = l1;
  return m;
}

CompactMultiplier CompactMultiplier::normalized() const {
  if (l1_norm <= 0.0) return *this;
  CompactMultiplier m = *this;
  for (auto& [idx, c] : m.coefficients) c /= l1_norm;
  double l1 = 0.0;
  for (auto& [idx, c] : m.coefficients) l1 += std::abs(c);
  m.l1_norm = l1;
  return m;
}

std::complex<double> eval_multiplier(const CompactMultiplier& m,
                                     std::complex<double> z) {
  if (m.pair != PairId::U2_U1)
    throw Error(ErrorKind::DomainError,
                "disc coordinate only applies to the U2_U1 pair");
  if (!(std::norm(z) <= 1.0 + 1e-10))
    throw Error(ErrorKind::DomainError, "point outside the closed unit disc");
  std::complex<double> acc = 0.0;
  for (const auto& [idx, c] : m.coefficients)
    acc += c * spherical_u2u1(idx.p, idx.q, z);
  return acc;
}

std::complex<double> eval_multiplier(const CompactMultiplier& m, double r) {
  if (m.pair == PairId::U2_U1)
    throw Error(ErrorKind::DomainError, "U2_U1 model needs a disc point");
  if (!(std::fabs(r) <= 1.0 + 1e-12))
    throw Error(ErrorKind::DomainError, "coset coordinate outside [-1,1]");
  const double rc = std::clamp(r, -1.0, 1.0);
  int n_max = 0;
  for (const auto& [idx, c] : m.coefficients) n_max = std::max(n_max, idx.n);
  std::vector<double> pn;
  legendre_all(n_max, rc, pn);
  std::complex<double> acc = 0.0;
  for (const auto& [idx, c] : m.coefficients)
    acc += c * pn[static_cast<size_t>(idx.n)];
  return acc;
}

void gauss_legendre(int nodes, std::vector<double>& x, std::vector<double>& w) {
  if (nodes < 1) throw Error(ErrorKind::DomainError, "need >= 1 node");
  x.assign(static_cast<size_t>(nodes), 0.0);
  w.assign(static_cast<size_t>(nodes), 0.0);
  const int half = (nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, polished by Newton.
    double z = std::cos(kPi * (i + 0.75) / (nodes + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int m = 2; m <= nodes; ++m) {
        const double p2 = ((2 * m - 1) * z * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      pp = nodes * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[static_cast<size_t>(i)] = -z;
    x[static_cast<size_t>(nodes - 1 - i)] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<size_t>(i)] = wi;
    w[static_cast<size_t>(nodes - 1 - i)] = wi;
  }
}

CompactMultiplier expand_legendre(
    const std::function<std::complex<double>(double)>& f, int degree,
    int nodes) {
  if (degree < 0) throw Error(ErrorKind::DomainError, "degree must be >= 0");
  if (degree >= nodes)
    throw Error(ErrorKind::DegreeTooHigh,
                "degree " + std::to_string(degree) + " exceeds the support of " +
                    std::to_string(nodes) + " nodes");
  std::vector<double> x, w;
  gauss_legendre(nodes, x, w);
  std::vector<std::complex<double>> fx(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) fx[static_cast<size_t>(i)] = f(x[static_cast<size_t>(i)]);
  std::vector<std::pair<SphericalIndex, std::complex<double>>> coeffs;
  coeffs.reserve(static_cast<size_t>(degree) + 1);
  std::vector<double> pn;
  std::vector<std::complex<double>> acc(static_cast<size_t>(degree) + 1, 0.0);
  for (int i = 0; i < nodes; ++i) {
    legendre_all(degree, x[static_cast<size_t>(i)], pn);
    for (int n = 0; n <= degree; ++n)
      acc[static_cast<size_t>(n)] +=
          w[static_cast<size_t>(i)] * fx[static_cast<size_t>(i)] * pn[static_cast<size_t>(n)];
  }
  for (int n = 0; n <= degree; ++n)
    coeffs.emplace_back(SphericalIndex::su2so2(n),
                        0.5 * (2.0 * n + 1.0) * acc[static_cast<size_t>(n)]);
  CompactMultiplier m = CompactMultiplier::make(PairId::SU2_SO2, std::move(coeffs));
  m.truncation_degree = degree;
  return m;
}

DiscUniformityCheck disc_uniformity_precheck(std::uint64_t seed,
                                             std::int64_t samples) {
  Rng rng(seed);
  long double sr2 = 0.0L, sre = 0.0L, sim = 0.0L;
  for (std::int64_t i = 0; i < samples; ++i) {
    const U2Param u = random_u2(rng);
    const std::complex<double> z = u.at(0, 0);
    sr2 += std::norm(z);
    sre += z.real();
    sim += z.imag();
  }
  DiscUniformityCheck c;
  c.samples = samples;
  const double n = static_cast<double>(samples);
  c.mean_r2 = static_cast<double>(sr2) / n;
  c.mean_re = static_cast<double>(sre) / n;
  c.mean_im = static_cast<double>(sim) / n;
  // Uniform disc: |z|^2 ~ U(0,1) (sd 1/sqrt(12)); Re z, Im z have sd 1/2.
  const double se_r2 = (1.0 / std::sqrt(12.0)) / std::sqrt(n);
  const double se_c = 0.5 / std::sqrt(n);
  c.z_r2 = (c.mean_r2 - 0.5) / se_r2;
  c.z_re = c.mean_re / se_c;
  c.z_im = c.mean_im / se_c;
  c.pass = std::fabs(c.z_r2) <= 3.0 && std::fabs(c.z_re) <= 3.0 &&
           std::fabs(c.z_im) <= 3.0;
  return c;
}

namespace {

// Hermitian positive definite solve (Cholesky), for the small Gram systems.
void solve_hpd(std::vector<std::complex<double>>& a,
               std::vector<std::complex<double>>& b, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<size_t>(j * n + j)].real();
    for (int k = 0; k < j; ++k) d -= std::norm(a[static_cast<size_t>(j * n + k)]);
    if (!(d > 0.0))
      throw Error(ErrorKind::Singular, "Gram matrix not positive definite");
    const double lj = std::sqrt(d);
    a[static_cast<size_t>(j * n + j)] = lj;
    for (int i = j + 1; i < n; ++i) {
      std::complex<double> s = a[static_cast<size_t>(i * n + j)];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<size_t>(i * n + k)] *
             std::conj(a[static_cast<size_t>(j * n + k)]);
      a[static_cast<size_t>(i * n + j)] = s / lj;
    }
  }
  // L y = b
  for (int i = 0; i < n; ++i) {
    std::complex<double> s = b[static_cast<size_t>(i)];
    for (int k = 0; k < i; ++k) s -= a[static_cast<size_t>(i * n + k)] * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(i)] = s / a[static_cast<size_t>(i * n + i)].real();
  }
  // L^* x = y
  for (int i = n - 1; i >= 0; --i) {
    std::complex<double> s = b[static_cast<size_t>(i)];
    for (int k = i + 1; k < n; ++k)
      s -= std::conj(a[static_cast<size_t>(k * n + i)]) * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(i)] = s / a[static_cast<size_t>(i * n + i)].real();
  }
}

}  // namespace

CompactMultiplier expand_u2u1(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    int degree, int radial_nodes, int angular_nodes, std::uint64_t precheck_seed,
    std::int64_t precheck_samples, bool skip_precheck) {
  if (degree < 0) throw Error(ErrorKind::DomainError, "degree must be >= 0");
  if (radial_nodes <= degree || angular_nodes <= 2 * degree)
    throw Error(ErrorKind::DegreeTooHigh,
                "grid does not resolve degree " + std::to_string(degree));
  if (!skip_precheck) {
    const DiscUniformityCheck chk =
        disc_uniformity_precheck(precheck_seed, precheck_samples);
    if (!chk.pass)
      throw Error(ErrorKind::PrecheckFailed,
                  "disc uniformity 3-sigma check failed (z scores " +
                      std::to_string(chk.z_r2) + ", " + std::to_string(chk.z_re) +
                      ", " + std::to_string(chk.z_im) + ")");
  }

  std::vector<SphericalIndex> basis;
  for (int s = 0; s <= degree; ++s)
    for (int p = 0; p <= s; ++p) basis.push_back(SphericalIndex::u2u1(p, s - p));
  const int nb = static_cast<int>(basis.size());

  // z = sqrt(u) e^{i phi}: the pushforward of the uniform disc density is
  // uniform in (u, phi), so a tensor Gauss x trapezoid rule applies.
  std::vector<double> gx, gw;
  gauss_legendre(radial_nodes, gx, gw);
  std::vector<std::complex<double>> gram(static_cast<size_t>(nb) * static_cast<size_t>(nb), 0.0);
  std::vector<std::complex<double>> rhs(static_cast<size_t>(nb), 0.0);
  std::vector<std::complex<double>> h(static_cast<size_t>(nb));
  for (int iu = 0; iu < radial_nodes; ++iu) {
    const double u = 0.5 * (gx[static_cast<size_t>(iu)] + 1.0);
    const double wu = 0.5 * gw[static_cast<size_t>(iu)];
    for (int ia = 0; ia < angular_nodes; ++ia) {
      const double phi = kTwoPi * ia / angular_nodes;
      const std::complex<double> z = std::polar(std::sqrt(u), phi);
      const double wt = wu / angular_nodes;
      for (int i = 0; i < nb; ++i)
        h[static_cast<size_t>(i)] = spherical_u2u1(basis[static_cast<size_t>(i)].p,
                                                   basis[static_cast<size_t>(i)].q, z);
      const std::complex<double> fz = f(z);
      for (int i = 0; i < nb; ++i) {
        rhs[static_cast<size_t>(i)] += wt * std::conj(h[static_cast<size_t>(i)]) * fz;
        for (int j = 0; j <= i; ++j)
          gram[static_cast<size_t>(i * nb + j)] +=
              wt * std::conj(h[static_cast<size_t>(i)]) * h[static_cast<size_t>(j)];
      }
    }
  }
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      gram[static_cast<size_t>(i * nb + j)] =
          std::conj(gram[static_cast<size_t>(j * nb + i)]);

  solve_hpd(gram, rhs, nb);

  std::vector<std::pair<SphericalIndex, std::complex<double>>> coeffs;
  coeffs.reserve(static_cast<size_t>(nb));
  for (int i = 0; i < nb; ++i)
    coeffs.emplace_back(basis[static_cast<size_t>(i)], rhs[static_cast<size_t>(i)]);
  CompactMultiplier m = CompactMultiplier::make(PairId::U2_U1, std::move(coeffs));
  m.truncation_degree = degree;
  return m;
}

CertLine holder_certify_u2u1(const CompactMultiplier& m, double theta1,
                             double theta2, double c_tilde) {
  const double s = std::sqrt(0.5);
  const std::complex<double> v1 = eval_multiplier(m, std::polar(s, theta1));
  const std::complex<double> v2 = eval_multiplier(m, std::polar(s, theta2));
  CertLine line;
  line.in1 = theta1;
  line.in2 = theta2;
  line.lhs = std::abs(v1 - v2);
  line.rhs = c_tilde * std::pow(std::fabs(theta1 - theta2), 0.25) * m.l1_norm;
  line.margin = line.rhs - line.lhs;
  return line;
}

CertLine holder_certify_su2so2(const CompactMultiplier& m, double r1,
                               double r2) {
  if (!(std::fabs(r1) <= 0.5 + 1e-12 && std::fabs(r2) <= 0.5 + 1e-12))
    throw Error(ErrorKind::DomainError, "coordinates must be in [-1/2,1/2]");
  const std::complex<double> v1 = eval_multiplier(m, r1);
  const std::complex<double> v2 = eval_multiplier(m, r2);
  CertLine line;
  line.in1 = r1;
  line.in2 = r2;
  line.lhs = std::abs(v1 - v2);
  line.rhs = 4.0 * std::sqrt(std::fabs(r1 - r2)) * m.l1_norm;
  line.margin = line.rhs - line.lhs;
  return line;
}

namespace {

std::complex<double> eval_synthetic(const SyntheticGMultiplier& phi,
                                    const GroupMatrix& g, double tol) {
  if (phi.group == SyntheticGMultiplier::Group::Sp2) {
    const ChamberSp2 c = sp2_chamber(g, tol);
    return phi.chamber_fn(c.beta, c.gamma);
  }
  const ChamberSl3 c = sl3_chamber(g, tol);
  return phi.chamber_fn(c.s, c.t);
}

}  // namespace

std::complex<double> restrict_psi(const SyntheticGMultiplier& phi, double alpha,
                                  const GroupMatrix& k, double tol) {
  GroupMatrix kk = k;
  kk.tag = GroupTag::K_U2;
  require_membership(kk, tol);
  return eval_synthetic(phi, dalpha(alpha) * k * dalpha(alpha), tol);
}

std::complex<double> restrict_chi(const SyntheticGMultiplier& phi, double alpha,
                                  const GroupMatrix& k, double tol) {
  GroupMatrix kk = k;
  kk.tag = GroupTag::K_U2;
  require_membership(kk, tol);
  return eval_synthetic(phi, dprime(alpha) * k * v_element() * dprime(alpha),
                        tol);
}

}  // namespace dcert
