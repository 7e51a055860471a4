#include "caslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "caslab/errors.hpp"

namespace caslab {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights attach to the even-indexed Kronrod abscissae.
const double kWg[4] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double k15 = kWgk[7] * f(mid);
  double g7 = kWg[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double y = f(mid - dx) + f(mid + dx);
    k15 += kWgk[i] * y;
    if (i % 2 == 1) g7 += kWg[i / 2] * y;
  }
  k15 *= half;
  g7 *= half;
  return Panel{a, b, k15, std::abs(k15 - g7)};
}

QuadratureResult refine(const std::function<double(double)>& f,
                        std::priority_queue<Panel>& queue, double total,
                        double err, int used, const QuadratureOptions& opts) {
  double stuck_err = 0.0;  // panels at floating-point resolution
  while (err > opts.abs_tol && !queue.empty()) {
    if (used >= opts.max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: error estimate " << err
          << " > tolerance " << opts.abs_tol << " after " << used
          << " panels";
      throw NumericalFailureError(msg.str());
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot split further; accept this panel's estimate.
      stuck_err += worst.error;
      err -= worst.error;
      continue;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++used;
  }
  return QuadratureResult{total, err + stuck_err, used};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts) {
  if (!(b > a)) {
    if (b == a) return QuadratureResult{0.0, 0.0, 0};
    throw InvalidArgumentError("integrate_adaptive: b < a");
  }
  std::priority_queue<Panel> queue;
  Panel p = evaluate_panel(f, a, b);
  queue.push(p);
  return refine(f, queue, p.value, p.error, 1, opts);
}

QuadratureResult integrate_breakpoints(const std::function<double(double)>& f,
                                       std::span<const double> breakpoints,
                                       const QuadratureOptions& opts) {
  if (breakpoints.size() < 2)
    throw InvalidArgumentError("integrate_breakpoints: need >= 2 points");
  std::priority_queue<Panel> queue;
  double total = 0.0, err = 0.0;
  int used = 0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i]))
      throw InvalidArgumentError(
          "integrate_breakpoints: breakpoints must be strictly increasing");
    Panel p = evaluate_panel(f, breakpoints[i], breakpoints[i + 1]);
    total += p.value;
    err += p.error;
    queue.push(p);
    ++used;
  }
  return refine(f, queue, total, err, used, opts);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw InvalidArgumentError("log_spaced: need 0 < lo < hi and n >= 2");
  std::vector<double> pts(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    pts[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

std::vector<double> lin_spaced(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2)
    throw InvalidArgumentError("lin_spaced: need lo < hi and n >= 2");
  std::vector<double> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = lo + (hi - lo) * i / (n - 1);
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

}  // namespace caslab
