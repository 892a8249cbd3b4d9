#include "dcert/orthopoly.hpp"

#include <cmath>

namespace dcert {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kDomainTol = 1e-12;

void check_unit_interval(double x, const char* who) {
  if (!(std::fabs(x) <= 1.0 + kDomainTol))
    throw Error(ErrorKind::DomainError,
                std::string(who) + ": argument " + std::to_string(x) +
                    " outside [-1,1]");
}

std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

}  // namespace

const char* to_string(PairId p) {
  switch (p) {
    case PairId::U2_U1: return "U2_U1";
    case PairId::SU2_SO2: return "SU2_SO2";
    case PairId::SO3_SO2: return "SO3_SO2";
  }
  return "?";
}

PairId pair_id_from_string(const std::string& s) {
  if (s == "U2_U1" || s == "u2u1") return PairId::U2_U1;
  if (s == "SU2_SO2" || s == "su2so2") return PairId::SU2_SO2;
  if (s == "SO3_SO2" || s == "so3so2") return PairId::SO3_SO2;
  throw Error(ErrorKind::ParseError, "unknown pair id '" + s + "'");
}

bool operator==(const SphericalIndex& a, const SphericalIndex& b) {
  if (a.pair != b.pair) return false;
  if (a.pair == PairId::U2_U1) return a.p == b.p && a.q == b.q;
  return a.n == b.n;
}

double legendre(int n, double x) {
  check_unit_interval(x, "legendre");
  if (n <= 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = x;
  for (int m = 2; m <= n; ++m) {
    const double pm = ((2 * m - 1) * x * pm1 - (m - 1) * pm2) / m;
    pm2 = pm1;
    pm1 = pm;
  }
  return pm1;
}

double legendre_derivative(int n, double x) {
  check_unit_interval(x, "legendre_derivative");
  if (n <= 0) return 0.0;
  double pm2 = 1.0, dm2 = 0.0;
  double pm1 = x, dm1 = 1.0;
  if (n == 1) return 1.0;
  for (int m = 2; m <= n; ++m) {
    const double pm = ((2 * m - 1) * x * pm1 - (m - 1) * pm2) / m;
    const double dm = ((2 * m - 1) * (pm1 + x * dm1) - (m - 1) * dm2) / m;
    pm2 = pm1;
    dm2 = dm1;
    pm1 = pm;
    dm1 = dm;
  }
  return dm1;
}

void legendre_all(int n_max, double x, std::vector<double>& out) {
  check_unit_interval(x, "legendre_all");
  out.resize(static_cast<size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return;
  out[1] = x;
  for (int m = 2; m <= n_max; ++m)
    out[static_cast<size_t>(m)] =
        ((2 * m - 1) * x * out[static_cast<size_t>(m - 1)] -
         (m - 1) * out[static_cast<size_t>(m - 2)]) / m;
}

double legendre_integral_oracle(int n, double x, int nodes) {
  check_unit_interval(x, "legendre_integral_oracle");
  if (nodes < 2 * (n + 8))
    throw Error(ErrorKind::DomainError,
                "oracle needs at least 2(n+8) nodes");
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  const double h = kPi / nodes;
  double acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = (j + 0.5) * h;
    acc += ipow({x, s * std::cos(theta)}, n).real();
  }
  return acc / nodes;
}

double jacobi(int n, int b, double x) {
  check_unit_interval(x, "jacobi");
  if (n < 0 || b < 0)
    throw Error(ErrorKind::DomainError, "jacobi needs n, b >= 0");
  if (n == 0) return 1.0;
  const double bb = b;
  double pm2 = 1.0;
  double pm1 = ((bb + 2.0) * x - bb) / 2.0;
  for (int m = 2; m <= n; ++m) {
    const double mm = m;
    const double c1 = 2.0 * mm * (mm + bb) * (2.0 * mm + bb - 2.0);
    const double c2 = (2.0 * mm + bb - 1.0) *
                      ((2.0 * mm + bb) * (2.0 * mm + bb - 2.0) * x - bb * bb);
    const double c3 = 2.0 * (mm - 1.0) * (mm + bb - 1.0) * (2.0 * mm + bb);
    const double pm = (c2 * pm1 - c3 * pm2) / c1;
    pm2 = pm1;
    pm1 = pm;
  }
  return pm1;
}

void jacobi_all(int n_max, int b, double x, std::vector<double>& out) {
  check_unit_interval(x, "jacobi_all");
  out.resize(static_cast<size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return;
  const double bb = b;
  out[1] = ((bb + 2.0) * x - bb) / 2.0;
  for (int m = 2; m <= n_max; ++m) {
    const double mm = m;
    const double c1 = 2.0 * mm * (mm + bb) * (2.0 * mm + bb - 2.0);
    const double c2 = (2.0 * mm + bb - 1.0) *
                      ((2.0 * mm + bb) * (2.0 * mm + bb - 2.0) * x - bb * bb);
    const double c3 = 2.0 * (mm - 1.0) * (mm + bb - 1.0) * (2.0 * mm + bb);
    out[static_cast<size_t>(m)] = (c2 * out[static_cast<size_t>(m - 1)] -
                                   c3 * out[static_cast<size_t>(m - 2)]) / c1;
  }
}

std::complex<double> spherical_u2u1(int p, int q, std::complex<double> z) {
  if (p < 0 || q < 0)
    throw Error(ErrorKind::DomainError, "spherical_u2u1 needs p, q >= 0");
  const double r2 = std::norm(z);
  if (!(r2 <= 1.0 + 1e-10))
    throw Error(ErrorKind::DomainError, "|z| exceeds the closed unit disc");
  const double w = std::min(1.0, 2.0 * r2 - 1.0);
  if (p >= q) return ipow(z, p - q) * jacobi(q, p - q, w);
  return ipow(std::conj(z), q - p) * jacobi(p, q - p, w);
}

double spherical_su2so2(int n, const U2Param& u, double tol) {
  const double res = u.unitarity_residual();
  if (res > tol)
    throw Error(ErrorKind::NotUnitary,
                "unitarity residual " + std::to_string(res));
  const Su2Quadruple quad = quadruple(u);
  return spherical_su2so2_coord(n, quad.coset_r());
}

double spherical_su2so2_coord(int n, double r) {
  check_unit_interval(r, "spherical_su2so2");
  return legendre(n, std::clamp(r, -1.0, 1.0));
}

double spherical_so3so2(int n, const GroupMatrix& g, double tol) {
  if (g.dim != 3)
    throw Error(ErrorKind::DomainError, "spherical_so3so2 expects 3x3");
  GroupMatrix gg = g;
  gg.tag = GroupTag::SO3;
  require_membership(gg, tol);
  return legendre(n, std::clamp(g.at(0, 0), -1.0, 1.0));
}

HsConstantEstimate hs_constant_estimate(int n_max, int beta_max,
                                        int theta_grid_size) {
  if (n_max < 0 || beta_max < 0 || theta_grid_size < 2)
    throw Error(ErrorKind::DomainError, "hs_constant_estimate grid too small");
  const int M = theta_grid_size;

  struct Best {
    double val = -1.0;
    int n = 0, b = 0, jtheta = 1;
  };
  std::vector<Best> best(static_cast<size_t>(kMaxChunks));

  parallel_for(beta_max + 1, [&](std::int64_t b0, std::int64_t b1, int chunk) {
    Best local;
    std::vector<double> quarter(static_cast<size_t>(n_max) + 1);
    std::vector<double> pn;
    for (std::int64_t b = b0; b < b1; ++b) {
      for (int n = 0; n <= n_max; ++n)
        quarter[static_cast<size_t>(n)] =
            std::pow(2.0 * n + static_cast<double>(b) + 1.0, 0.25);
      for (int j = 1; j < M; ++j) {
        const double theta = j * kPi / (2.0 * M);
        const double pre = std::sqrt(std::sin(2.0 * theta)) *
                           std::pow(std::cos(theta), static_cast<double>(b));
        if (pre == 0.0) continue;
        const double x = std::cos(2.0 * theta);
        jacobi_all(n_max, static_cast<int>(b), x, pn);
        for (int n = 0; n <= n_max; ++n) {
          const double v = pre * std::fabs(pn[static_cast<size_t>(n)]) *
                           quarter[static_cast<size_t>(n)];
          if (v > local.val) local = {v, n, static_cast<int>(b), j};
        }
      }
    }
    best[static_cast<size_t>(chunk)] = local;
  });

  Best top;
  for (const Best& c : best)
    if (c.val > top.val) top = c;

  HsConstantEstimate est;
  est.c_hat = top.val;
  est.n_max = n_max;
  est.beta_max = beta_max;
  est.theta_grid_size = M;
  est.argmax_n = top.n;
  est.argmax_beta = top.b;
  est.argmax_theta = top.jtheta * kPi / (2.0 * M);
  return est;
}

LegendreMargins legendre_holder_margin(int n, double x, double y) {
  if (!(std::fabs(x) <= 0.5 + kDomainTol && std::fabs(y) <= 0.5 + kDomainTol))
    throw Error(ErrorKind::DomainError,
                "holder margin is stated on [-1/2,1/2]");
  const double px = legendre(n, x);
  const double py = legendre(n, y);
  LegendreMargins m;
  m.holder = 4.0 * std::sqrt(std::fabs(x - y)) - std::fabs(px - py);
  if (n >= 2) {
    const double rn = std::sqrt(static_cast<double>(n));
    m.magnitude = 2.0 / rn - std::max(std::fabs(px), std::fabs(py));
    m.derivative = 4.0 * rn - std::max(std::fabs(legendre_derivative(n, x)),
                                       std::fabs(legendre_derivative(n, y)));
  } else {
    m.magnitude = HUGE_VAL;
    m.derivative = HUGE_VAL;
  }
  return m;
}

}  // namespace dcert
