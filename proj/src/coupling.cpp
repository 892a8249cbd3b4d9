#include "dcert/coupling.hpp"

#include <cmath>
#include <functional>

namespace dcert {

namespace {

// log(sinh x), stable for all x > 0.
double log_sinh(double x) {
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

// log(sinh^2(2s) + sinh^2 s) without overflow.
double log_rho(double s) {
  const double l2 = 2.0 * log_sinh(2.0 * s);
  const double l1 = 2.0 * log_sinh(s);
  return l2 + std::log1p(std::exp(l1 - l2));
}

// log(sinh(2t) sinh t)
double log_tprod(double t) { return log_sinh(2.0 * t) + log_sinh(t); }

// Bracketed bisection on a strictly increasing map; bracket starts at
// [0, max(hint,1)+1] and doubles until the sign changes. 200 iteration cap.
double bisect_increasing(const std::function<double(double)>& f, double hint) {
  if (std::isnan(hint))
    throw Error(ErrorKind::NonConvergence, "NaN input to the solver");
  double lo = 0.0;
  double hi = std::max(hint, 1.0) + 1.0;
  double fhi = f(hi);
  int grow = 0;
  while (fhi < 0.0) {
    if (++grow > 60)
      throw Error(ErrorKind::NonConvergence, "failed to bracket the root");
    hi *= 2.0;
    fhi = f(hi);
  }
  if (f(lo) > 0.0) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr double kLogSwitch = 25.0;  // solve in log-sinh coordinates above this

}  // namespace

double rho_of(double s) {
  const double a = std::sinh(2.0 * s);
  const double b = std::sinh(s);
  return a * a + b * b;
}

double sigma_of(double t) { return 2.0 * std::sinh(2.0 * t) * std::sinh(t); }

CouplingSolution solve_st(double beta, double gamma) {
  if (std::isnan(beta) || std::isnan(gamma))
    throw Error(ErrorKind::NonConvergence, "NaN input");
  if (!(beta >= gamma && gamma >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need beta >= gamma >= 0");
  CouplingSolution sol;
  if (beta == 0.0) return sol;

  if (beta <= kLogSwitch) {
    const double sb = std::sinh(beta);
    const double sg = std::sinh(gamma);
    const double rhs_s = sb * sb + sg * sg;
    const double rhs_t = sb * sg;
    sol.s = bisect_increasing(
        [&](double s) { return rho_of(s) - rhs_s; }, beta);
    sol.residual_s = std::fabs(rho_of(sol.s) - rhs_s) / rhs_s;
    if (rhs_t > 0.0) {
      sol.t = bisect_increasing(
          [&](double t) { return std::sinh(2.0 * t) * std::sinh(t) - rhs_t; },
          gamma);
      sol.residual_t =
          std::fabs(std::sinh(2.0 * sol.t) * std::sinh(sol.t) - rhs_t) / rhs_t;
    }
    return sol;
  }

  // Large arguments: identical monotone equations in log-sinh coordinates.
  const double lb = log_sinh(beta);
  const double target_s = (gamma > 0.0)
                              ? 2.0 * lb + std::log1p(std::exp(2.0 * (log_sinh(gamma) - lb)))
                              : 2.0 * lb;
  sol.s = bisect_increasing([&](double s) { return log_rho(s) - target_s; },
                            beta);
  sol.residual_s = std::fabs(log_rho(sol.s) - target_s);
  if (gamma > 0.0) {
    const double target_t = lb + log_sinh(gamma);
    sol.t = bisect_increasing(
        [&](double t) { return log_tprod(t) - target_t; }, gamma);
    sol.residual_t = std::fabs(log_tprod(sol.t) - target_t);
  }
  return sol;
}

ChamberSp2 solve_betagamma(double s, double t) {
  if (std::isnan(s) || std::isnan(t))
    throw Error(ErrorKind::NonConvergence, "NaN input");
  if (!(s >= t && t >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need s >= t >= 0");
  const double rho = rho_of(s);
  const double sigma = sigma_of(t);
  double diff = rho - sigma;  // = (sinh b - sinh g)^2 >= 0
  if (diff < 0.0) diff = 0.0;
  const double sum_root = std::sqrt(rho + sigma);
  const double diff_root = std::sqrt(diff);
  const double x = 0.5 * (sum_root + diff_root);
  // small root via the product form, avoiding cancellation
  const double y = (sum_root + diff_root > 0.0)
                       ? sigma / (sum_root + diff_root)
                       : 0.0;
  ChamberSp2 c;
  c.beta = std::asinh(x);
  c.gamma = std::asinh(y);
  return c;
}

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Circle: return "circle";
    case WitnessKind::Hyperbola: return "hyperbola";
    case WitnessKind::Sl3: return "sl3";
  }
  return "?";
}

Witness circle_witness(double beta, double gamma) {
  if (!(beta >= gamma && gamma >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need beta >= gamma >= 0");
  if (beta == 0.0)
    throw Error(ErrorKind::Degenerate, "circle witness needs (beta,gamma) != (0,0)");
  const double sb = std::sinh(beta);
  const double sg = std::sinh(gamma);
  const double rhs = sb * sb + sg * sg;  // = sinh^2(2 alpha)
  Witness w;
  w.kind = WitnessKind::Circle;
  w.alpha = 0.5 * std::asinh(std::sqrt(rhs));
  w.r1 = 2.0 * sb * sg / rhs;
  w.a1 = std::sqrt(0.5 * (1.0 + w.r1));
  w.b1 = std::sqrt(0.5 * (1.0 - w.r1));
  const GroupMatrix u1 = embed_u2_to_k(U2Param::su2(w.a1, w.b1, 0.0, 0.0));
  const GroupMatrix dp = dprime(w.alpha);
  w.matrix = dp * u1 * v_element() * dp;
  w.matrix.tag = GroupTag::Sp2;
  w.target1 = beta;
  w.target2 = gamma;
  const ChamberSp2 c = sp2_chamber(w.matrix);
  w.membership_residual =
      std::max(std::fabs(c.beta - beta), std::fabs(c.gamma - gamma));
  return w;
}

Witness hyperbola_witness(double beta, double gamma) {
  if (!(beta >= gamma && gamma >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need beta >= gamma >= 0");
  const double sb = std::sinh(beta);
  const double sg = std::sinh(gamma);
  if (sb * sg == 0.0)
    throw Error(ErrorKind::Degenerate, "hyperbola witness needs sinh b sinh g > 0");
  Witness w;
  w.kind = WitnessKind::Hyperbola;
  // sinh b sinh g = (1/2) sinh^2 alpha
  const double sa = std::sqrt(2.0 * sb * sg);
  w.alpha = std::asinh(sa);
  const double s2a = 2.0 * sa * std::sqrt(1.0 + sa * sa);  // sinh(2 alpha)
  w.a1 = (sb - sg) / s2a;
  if (w.a1 * w.a1 > 0.5)
    throw Error(ErrorKind::OutOfRegime,
                "a1^2 = " + std::to_string(w.a1 * w.a1) + " exceeds 1/2");
  w.b1 = std::sqrt(0.5 - w.a1 * w.a1);
  const GroupMatrix u1 =
      embed_u2_to_k(U2Param::su2(w.a1, w.b1, std::sqrt(0.5), 0.0));
  const GroupMatrix da = dalpha(w.alpha);
  w.matrix = da * u1 * da;
  w.matrix.tag = GroupTag::Sp2;
  w.target1 = beta;
  w.target2 = gamma;
  const ChamberSp2 c = sp2_chamber(w.matrix);
  w.membership_residual =
      std::max(std::fabs(c.beta - beta), std::fabs(c.gamma - gamma));
  return w;
}

Witness sl3_witness(double r, double theta) {
  if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "need r >= 0");
  if (r == 0.0)
    throw Error(ErrorKind::Degenerate, "sl3 witness needs r > 0");
  Witness w;
  w.kind = WitnessKind::Sl3;
  w.alpha = theta;
  w.q = sl2_polar_q(r, theta);
  const GroupMatrix d = sl3_dmat(r, 0.0);
  w.matrix = d * rot3(theta) * d;
  w.matrix.tag = GroupTag::SL3;
  w.target1 = 2.0 * w.q;
  w.target2 = r - w.q;
  const ChamberSl3 c = sl3_chamber(w.matrix);
  w.membership_residual =
      std::max(std::fabs(c.s - w.target1), std::fabs(c.t - w.target2));
  return w;
}

}  // namespace dcert
