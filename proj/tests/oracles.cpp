#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

double sound(double g, double rho, double p) { return std::sqrt(g * p / rho); }

// Toro's f_K(p): velocity change across the wave adjoining state K for star
// pressure p, and its derivative.
void wave_function(double g, double rho, double pk, double ck, double p, double* f,
                   double* df) {
  if (p > pk) {  // shock
    const double A = 2.0 / ((g + 1.0) * rho);
    const double B = (g - 1.0) / (g + 1.0) * pk;
    const double root = std::sqrt(A / (B + p));
    *f = (p - pk) * root;
    *df = root * (1.0 - 0.5 * (p - pk) / (B + p));
  } else {  // rarefaction
    const double ex = (g - 1.0) / (2.0 * g);
    *f = 2.0 * ck / (g - 1.0) * (std::pow(p / pk, ex) - 1.0);
    *df = std::pow(p / pk, -(g + 1.0) / (2.0 * g)) / (rho * ck);
  }
}

}  // namespace

ExactEulerRiemann::ExactEulerRiemann(double gamma, double rho_l, double u_l, double p_l,
                                     double rho_r, double u_r, double p_r)
    : g_(gamma), rl_(rho_l), ul_(u_l), pl_(p_l), rr_(rho_r), ur_(u_r), pr_(p_r) {
  cl_ = sound(g_, rl_, pl_);
  cr_ = sound(g_, rr_, pr_);
  const double du = ur_ - ul_;
  if (2.0 * cl_ / (g_ - 1.0) + 2.0 * cr_ / (g_ - 1.0) <= du)
    throw std::runtime_error("ExactEulerRiemann: vacuum generation");

  // Two-rarefaction initial guess, positive by construction.
  const double z = (g_ - 1.0) / (2.0 * g_);
  double p = std::pow((cl_ + cr_ - 0.5 * (g_ - 1.0) * du) /
                          (cl_ / std::pow(pl_, z) + cr_ / std::pow(pr_, z)),
                      1.0 / z);
  if (!(p > 0.0) || !std::isfinite(p)) p = 0.5 * (pl_ + pr_);

  for (int it = 0; it < 100; ++it) {
    double fl, dfl, fr, dfr;
    wave_function(g_, rl_, pl_, cl_, p, &fl, &dfl);
    wave_function(g_, rr_, pr_, cr_, p, &fr, &dfr);
    const double f = fl + fr + du;
    const double dp = f / (dfl + dfr);
    double pn = p - dp;
    if (pn <= 0.0) pn = 0.5 * p;
    if (std::abs(pn - p) <= 1e-14 * (pn + p)) {
      p = pn;
      break;
    }
    p = pn;
  }
  p_star_ = p;
  double fl, dfl, fr, dfr;
  wave_function(g_, rl_, pl_, cl_, p, &fl, &dfl);
  wave_function(g_, rr_, pr_, cr_, p, &fr, &dfr);
  u_star_ = 0.5 * (ul_ + ur_) + 0.5 * (fr - fl);
}

ExactEulerRiemann::Sample ExactEulerRiemann::sample(double s) const {
  const double g = g_;
  if (s <= u_star_) {
    // left of the contact
    if (p_star_ > pl_) {  // left shock
      const double r = (p_star_ / pl_ + (g - 1.0) / (g + 1.0)) /
                       ((g - 1.0) / (g + 1.0) * p_star_ / pl_ + 1.0);
      const double sl = ul_ - cl_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / pl_ +
                                              (g - 1.0) / (2.0 * g));
      if (s < sl) return {rl_, ul_, pl_};
      return {rl_ * r, u_star_, p_star_};
    }
    // left rarefaction
    const double shl = ul_ - cl_;
    if (s < shl) return {rl_, ul_, pl_};
    const double cml = cl_ * std::pow(p_star_ / pl_, (g - 1.0) / (2.0 * g));
    const double stl = u_star_ - cml;
    if (s > stl) {
      const double r = rl_ * std::pow(p_star_ / pl_, 1.0 / g);
      return {r, u_star_, p_star_};
    }
    // inside the fan
    const double u = 2.0 / (g + 1.0) * (cl_ + 0.5 * (g - 1.0) * ul_ + s);
    const double c = 2.0 / (g + 1.0) * (cl_ + 0.5 * (g - 1.0) * (ul_ - s));
    const double r = rl_ * std::pow(c / cl_, 2.0 / (g - 1.0));
    return {r, u, r * c * c / g};
  }
  // right of the contact
  if (p_star_ > pr_) {  // right shock
    const double r = (p_star_ / pr_ + (g - 1.0) / (g + 1.0)) /
                     ((g - 1.0) / (g + 1.0) * p_star_ / pr_ + 1.0);
    const double sr = ur_ + cr_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / pr_ +
                                            (g - 1.0) / (2.0 * g));
    if (s > sr) return {rr_, ur_, pr_};
    return {rr_ * r, u_star_, p_star_};
  }
  // right rarefaction
  const double shr = ur_ + cr_;
  if (s > shr) return {rr_, ur_, pr_};
  const double cmr = cr_ * std::pow(p_star_ / pr_, (g - 1.0) / (2.0 * g));
  const double str = u_star_ + cmr;
  if (s < str) {
    const double r = rr_ * std::pow(p_star_ / pr_, 1.0 / g);
    return {r, u_star_, p_star_};
  }
  const double u = 2.0 / (g + 1.0) * (-cr_ + 0.5 * (g - 1.0) * ur_ + s);
  const double c = 2.0 / (g + 1.0) * (cr_ - 0.5 * (g - 1.0) * (ur_ - s));
  const double r = rr_ * std::pow(c / cr_, 2.0 / (g - 1.0));
  return {r, u, r * c * c / g};
}

std::vector<double> rk4_integrate(
    const std::function<std::vector<double>(const std::vector<double>&)>& rhs,
    std::vector<double> y, double t0, double t1, int nsteps) {
  const double h = (t1 - t0) / nsteps;
  const std::size_t n = y.size();
  std::vector<double> k1, k2, k3, k4, tmp(n);
  for (int s = 0; s < nsteps; ++s) {
    k1 = rhs(y);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    k2 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    k3 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    k4 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

}  // namespace oracles
