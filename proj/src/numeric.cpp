#include "warmbox/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace warmbox {

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double xtol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) throw ValidationError("solve_bracketed: no sign change on bracket");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && (hi - lo) > xtol; ++it) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if (fx * flo < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    double d = df(x);
    double step = (d != 0.0 && std::isfinite(d)) ? fx / d : std::numeric_limits<double>::infinity();
    double candidate = x - step;
    // Newton only while it stays strictly inside the bracket.
    x = (candidate > lo && candidate < hi) ? candidate : 0.5 * (lo + hi);
  }
  return x;
}

double solve_bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) throw ValidationError("solve_bisect: no sign change on bracket");
  while ((hi - lo) > xtol) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace warmbox
