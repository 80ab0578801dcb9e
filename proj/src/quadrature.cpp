#include "wqed/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wqed {

QuadratureResult integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                                   std::vector<double> breakpoints,
                                   const QuadratureOptions& opt) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> edges{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double p : breakpoints)
    if (p > edges.back() && p < b) edges.push_back(p);
  edges.push_back(b);

  QuadratureResult out{cplx{0.0, 0.0}, 0.0};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    // Kronrod nodes never touch the panel ends, so a jump sitting exactly on
    // an edge is harmless.
    double err = 0.0;
    cplx v = gauss_kronrod<double, 15>::integrate(f, lo, hi, opt.max_depth, opt.rel_tol, &err);
    out.value += v;
    out.error_estimate += err;
  }
  return out;
}

}  // namespace wqed
