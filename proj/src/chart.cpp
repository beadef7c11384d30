#include "bryant/chart.hpp"

namespace bryant {

Chart Chart::rect(std::string name, double re0, double re1, double im0, double im1, int nu, int nv) {
  if (nu < 2 || nv < 2 || !(re1 > re0) || !(im1 > im0)) throw DomainError("rect chart: empty or degenerate");
  Chart c;
  c.name = std::move(name);
  c.kind = ChartKind::Rect;
  c.u0 = re0;
  c.u1 = re1;
  c.v0 = im0;
  c.v1 = im1;
  c.nu = nu;
  c.nv = nv;
  return c;
}

Chart Chart::band(std::string name, Complex end, double r_core, double r_end, int nu, int nv) {
  if (nu < 2 || nv < 3 || !(r_core > 0) || !(r_end > 0) || r_core == r_end)
    throw DomainError("band chart: radii must be positive and distinct");
  Chart c;
  c.name = std::move(name);
  c.kind = ChartKind::Band;
  c.end = end;
  c.lift = false;
  if (is_infinite(end)) {
    if (!(r_end > r_core)) throw DomainError("band chart at infinity: r_end must exceed r_core");
    c.center = 0.0;
    c.sigma = 1;
  } else {
    if (!(r_end < r_core)) throw DomainError("band chart at a finite end: r_end must be below r_core");
    c.center = end;
    c.sigma = -1;
  }
  c.u0 = c.sigma * std::log(r_core);
  c.u1 = c.sigma * std::log(r_end);
  c.v0 = -kPi;
  c.v1 = kPi;
  c.nu = nu;
  c.nv = nv;
  return c;
}

Complex Chart::z_at_uv(double u, double v) const {
  if (kind == ChartKind::Rect) return {u, v};
  return center + std::exp(static_cast<double>(sigma) * Complex(u, v));
}

Complex Chart::z_at(int i, int j) const { return z_at_uv(u_at(i), v_at(j)); }

Complex Chart::dz_dw(int i, int j) const {
  if (kind == ChartKind::Rect) return 1.0;
  return static_cast<double>(sigma) * (z_at(i, j) - center);
}

double Chart::jacobian(int i, int j) const { return std::abs(dz_dw(i, j)); }

bool Chart::contains(Complex z) const {
  if (is_infinite(z)) return false;
  if (kind == ChartKind::Rect) return z.real() >= u0 && z.real() <= u1 && z.imag() >= v0 && z.imag() <= v1;
  const double r = std::abs(z - center);
  const double ra = std::exp(sigma * u0), rb = std::exp(sigma * u1);
  return r >= std::min(ra, rb) && r <= std::max(ra, rb);
}

}  // namespace bryant
