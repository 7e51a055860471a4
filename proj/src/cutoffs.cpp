#include "caslab/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "caslab/errors.hpp"
#include "caslab/quadrature.hpp"

namespace caslab {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrate w over [lo, hi] where hi may be infinite.  The finite part uses
// panel-adaptive quadrature; an infinite tail is accumulated over doubling
// panels until the increments certify geometric decay.  Returns the value;
// throws DivergentMomentError naming `what` when the tail does not decay.
double integrate_support(const std::function<double(double)>& w, double lo,
                         double hi, double abs_tol, const std::string& what) {
  if (!(lo >= 0.0)) lo = 0.0;
  double total = 0.0;
  const double finite_hi = std::isfinite(hi) ? hi : std::max(2.0 * lo, 1.0);
  if (finite_hi > lo) {
    std::vector<double> pts;
    if (lo > 0.0 && finite_hi / lo > 50.0) {
      pts = log_spaced(lo, finite_hi, 24);
    } else if (lo == 0.0 && finite_hi > 50.0 * 1e-6) {
      pts = log_spaced(std::min(1e-6, finite_hi / 2), finite_hi, 24);
      pts.insert(pts.begin(), 0.0);
    } else {
      pts = lin_spaced(lo, finite_hi, 9);
    }
    QuadratureOptions opts;
    opts.abs_tol = abs_tol;
    total = integrate_breakpoints(w, pts, opts).value;
  }
  if (std::isfinite(hi)) return total;

  // Doubling tail panels [a, 2a].  Decay ratio < 0.75 over consecutive
  // panels certifies a convergent remainder, which is then bounded
  // geometrically and must drop below tolerance.
  QuadratureOptions opts;
  opts.abs_tol = abs_tol / 64.0;
  double a = finite_hi;
  double prev = -1.0;
  int flat = 0;
  for (int k = 0; k < 64; ++k) {
    const double inc = integrate_adaptive(w, a, 2.0 * a, opts).value;
    total += inc;
    if (prev >= 0.0) {
      const double ratio = prev > 0.0 ? inc / prev : 0.0;
      if (ratio >= 0.75) {
        ++flat;
        if (flat >= 4)
          throw DivergentMomentError(
              "integral of " + what +
              " does not converge: tail increments fail to decay");
      } else {
        flat = 0;
        const double remainder = inc * ratio / (1.0 - ratio);
        if (inc + remainder < abs_tol) return total + remainder;
      }
    }
    prev = inc;
    a *= 2.0;
  }
  throw DivergentMomentError("integral of " + what +
                             " did not converge within the tail budget");
}

double lchoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

// G(s) = 2 e^{-s} (the erfc profile): G^{(n)}(s) = 2 (-1)^n e^{-s}.
SignedLog erfc_G_derivs(int n, double s) {
  return SignedLog{n % 2 == 0 ? 1.0 : -1.0, std::log(2.0) - s};
}

// G(s) = sqrt(pi) e^{-sqrt(s)}: G^{(n)}(s) = sqrt(pi)(-1)^n e^{-sqrt(s)}
// P_n(1/sqrt(s)) with P_{n+1} = (v/2)(P_n + v^2 P_n'), all coefficients
// positive, so the evaluation never cancels.
SignedLog exponential_G_derivs(int n, double s) {
  if (n == 0) return SignedLog{1.0, 0.5 * std::log(kPi) - std::sqrt(s)};
  std::vector<double> p{1.0};  // coefficients of v^0.. for P_0
  int lowest = 0;              // power of v of p[0]
  for (int m = 0; m < n; ++m) {
    // P_{m+1}(v) = (v/2) P_m(v) + (v^3/2) P_m'(v)
    std::vector<double> q(p.size() + 2, 0.0);
    for (size_t j = 0; j < p.size(); ++j) {
      const int power = lowest + static_cast<int>(j);
      q[j] += 0.5 * p[j];                      // v^{power+1}
      if (power > 0) q[j + 2] += 0.5 * power * p[j];  // v^{power+2}
    }
    lowest += 1;
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    p = std::move(q);
  }
  const double v = 1.0 / std::sqrt(s);
  double poly = 0.0;
  for (size_t j = p.size(); j-- > 0;) poly = poly * v + p[j];
  if (!(poly > 0.0) || !std::isfinite(poly))
    throw NumericalFailureError(
        "exponential cutoff derivative overflowed at order " +
        std::to_string(n));
  return SignedLog{n % 2 == 0 ? 1.0 : -1.0, 0.5 * std::log(kPi) -
                                                std::sqrt(s) +
                                                lowest * std::log(v) +
                                                std::log(poly)};
}

// G(s) = 2 sqrt(pi s) e^{-s}: Leibniz expansion over derivatives of s^{1/2}.
// The terms nearly cancel near s = n (the true inverse transform is not a
// nonnegative weight), so they are combined by max-log subtraction.
SignedLog gaussian_G_derivs(int n, double s) {
  const double ls = std::log(s);
  std::vector<double> logs(n + 1);
  std::vector<double> signs(n + 1);
  for (int k = 0; k <= n; ++k) {
    double logc, signc;
    if (k == 0) {
      logc = 0.0;
      signc = 1.0;
    } else {
      // d^k/ds^k s^{1/2} = c_k s^{1/2-k}, |c_k| = (2k-3)!!/2^k.
      logc = std::lgamma(2.0 * k - 1.0) - (k - 1) * std::log(2.0) -
             std::lgamma(static_cast<double>(k));
      signc = (k % 2 == 1) ? 1.0 : -1.0;
    }
    logs[k] = lchoose(n, k) + logc + (0.5 - k) * ls;
    signs[k] = ((n - k) % 2 == 0 ? 1.0 : -1.0) * signc;
  }
  const double mx = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += signs[k] * std::exp(logs[k] - mx);
  if (sum == 0.0) return SignedLog{0.0, 0.0};
  const double sign = sum > 0.0 ? 1.0 : -1.0;
  return SignedLog{sign, std::log(2.0 * std::sqrt(kPi)) - s + mx +
                             std::log(std::abs(sum))};
}

// Weighted-erfc cutoffs: G^{(n)}(s) = (-1)^n 2 I with
// I = integral of g(xi) xi^{-(2n+1)} e^{-s/xi^2}, a positive integrand with
// huge dynamic range; stabilized by subtracting the max log over the support.
SignedLog weighted_G_derivs(const WeightFunction& w, int n, double s) {
  const double lo = std::max(w.support_lo(), 1e-12);
  const double hi = std::isfinite(w.support_hi()) ? w.support_hi() : 1e6;
  auto log_env = [&](double xi) {
    return -(2.0 * n + 1.0) * std::log(xi) - s / (xi * xi);
  };
  std::vector<double> pts = log_spaced(lo, hi, 64);
  double mx = -std::numeric_limits<double>::infinity();
  for (double xi : pts)
    if (w(xi) > 0.0) mx = std::max(mx, log_env(xi));
  if (!std::isfinite(mx)) return SignedLog{0.0, 0.0};
  auto integrand = [&](double xi) {
    const double g = w(xi);
    if (g <= 0.0) return 0.0;
    return g * std::exp(log_env(xi) - mx);
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  const double I = integrate_breakpoints(integrand, pts, opts).value;
  if (I <= 0.0) return SignedLog{0.0, 0.0};
  return SignedLog{n % 2 == 0 ? 1.0 : -1.0,
                   std::log(2.0) + mx + std::log(I)};
}

}  // namespace

double SignedLog::value() const {
  if (sign == 0.0) return 0.0;
  return sign * std::exp(log_abs);
}

WeightFunction::WeightFunction(std::function<double(double)> g,
                               double support_lo, double support_hi,
                               bool renormalize)
    : g_(std::move(g)), lo_(support_lo), hi_(support_hi) {
  if (!g_) throw InvalidArgumentError("WeightFunction: missing evaluator");
  if (!(lo_ >= 0.0) || !(support_hi > lo_))
    throw InvalidArgumentError("WeightFunction: bad support window");

  // Positivity on a sampled grid across the support.
  const double hi_sample = std::isfinite(hi_) ? hi_ : 1e6 * std::max(1.0, lo_);
  const double lo_sample = std::max(lo_, 1e-12);
  for (double xi : log_spaced(lo_sample, hi_sample, 200)) {
    const double v = g_(xi);
    if (!std::isfinite(v))
      throw NumericalFailureError("WeightFunction: g not evaluable at xi=" +
                                  std::to_string(xi));
    if (v < -1e-12)
      throw InvalidArgumentError("WeightFunction: g(xi) < 0 at xi=" +
                                 std::to_string(xi));
  }

  auto raw = g_;
  const double lo_c = lo_, hi_c = hi_;
  auto clipped = [raw, lo_c, hi_c](double xi) {
    if (xi < lo_c || xi > hi_c) return 0.0;
    return std::max(0.0, raw(xi));
  };
  mass_ = integrate_support(clipped, lo_, hi_, 1e-11, "weight");
  if (renormalize) {
    if (!(mass_ > 0.0))
      throw InvalidArgumentError("WeightFunction: zero mass, cannot scale");
    const double m = mass_;
    g_ = [clipped, m](double xi) { return clipped(xi) / m; };
    mass_ = 1.0;
  } else {
    g_ = clipped;
    if (std::abs(mass_ - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "WeightFunction: integral of g is " << mass_
          << ", must be 1 within 1e-9";
      throw InvalidArgumentError(msg.str());
    }
  }
}

WeightFunction WeightFunction::delta_approximant(double xi0, double sigma) {
  if (!(xi0 > 0.0) || !(sigma > 0.0))
    throw InvalidArgumentError("delta_approximant: xi0, sigma must be > 0");
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
  auto g = [xi0, sigma, norm](double xi) {
    const double u = (xi - xi0) / sigma;
    return norm * std::exp(-0.5 * u * u);
  };
  const double lo = std::max(0.0, xi0 - 10.0 * sigma);
  return WeightFunction(g, lo, xi0 + 10.0 * sigma, /*renormalize=*/true);
}

WeightFunction WeightFunction::uniform(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo))
    throw InvalidArgumentError("uniform weight: need 0 <= lo < hi");
  const double h = 1.0 / (hi - lo);
  auto g = [lo, hi, h](double xi) { return (xi >= lo && xi <= hi) ? h : 0.0; };
  return WeightFunction(g, lo, hi);
}

WeightFunction WeightFunction::from_table(std::vector<double> xi,
                                          std::vector<double> g,
                                          bool renormalize) {
  if (xi.size() != g.size() || xi.size() < 2)
    throw InvalidArgumentError("weight table: need >= 2 matching samples");
  for (size_t i = 0; i + 1 < xi.size(); ++i)
    if (!(xi[i + 1] > xi[i]))
      throw InvalidArgumentError("weight table: xi must be ascending");
  auto shared_xi = std::make_shared<std::vector<double>>(std::move(xi));
  auto shared_g = std::make_shared<std::vector<double>>(std::move(g));
  auto eval = [shared_xi, shared_g](double x) {
    const auto& xs = *shared_xi;
    const auto& gs = *shared_g;
    if (x <= xs.front() || x >= xs.back()) {
      if (x == xs.front()) return gs.front();
      if (x == xs.back()) return gs.back();
      return 0.0;
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t j = static_cast<size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return gs[j - 1] + t * (gs[j] - gs[j - 1]);
  };
  return WeightFunction(eval, shared_xi->front(), shared_xi->back(),
                        renormalize);
}

double WeightFunction::operator()(double xi) const { return g_(xi); }

WeightMoments weight_moments(const WeightFunction& w, int d) {
  if (d < 0) throw InvalidArgumentError("weight_moments: d must be >= 0");
  WeightMoments mom;
  mom.power_moments.resize(d + 1);
  for (int i = 0; i <= d; ++i) {
    const double p = static_cast<double>(d + 1 - i);
    std::ostringstream what;
    what << "weight moment xi^" << p;
    auto f = [&w, p](double xi) { return w(xi) * std::pow(xi, p); };
    mom.power_moments[i] =
        integrate_support(f, w.support_lo(), w.support_hi(), 1e-11,
                          what.str());
  }
  auto flog = [&w](double xi) { return xi > 0.0 ? w(xi) * std::log(xi) : 0.0; };
  mom.log_moment = integrate_support(flog, w.support_lo(), w.support_hi(),
                                     1e-11, "weight log moment");
  return mom;
}

void CutoffSpec::validate() const {
  const double f0 = f_(0.0);
  if (std::abs(f0 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "cutoff '" << name_ << "': f(0) = " << f0 << ", must be 1";
    throw InvalidArgumentError(msg.str());
  }
  double prev = f0;
  for (double x : log_spaced(1e-2, 20.0, 100)) {
    const double v = f_(x);
    if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
      throw InvalidArgumentError("cutoff '" + name_ +
                                 "': f out of [0,1] at x=" +
                                 std::to_string(x));
    if (v > prev + 1e-12)
      throw InvalidArgumentError("cutoff '" + name_ +
                                 "': f not monotone nonincreasing at x=" +
                                 std::to_string(x));
    prev = v;
  }
  if (!(f_(20.0) < 1e-6))
    throw InvalidArgumentError("cutoff '" + name_ +
                               "': f(20) must be < 1e-6");
}

CutoffSpec CutoffSpec::pure_erfc() {
  CutoffSpec c;
  c.kind_ = CutoffKind::PureErfc;
  c.name_ = "erfc";
  c.f_ = [](double x) { return std::erfc(x); };
  c.g_derivs_ = erfc_G_derivs;
  c.safe_ratio_ = 6.0;  // erfc(6) ~ 2e-17 per mode
  c.validate();
  return c;
}

CutoffSpec CutoffSpec::exponential() {
  CutoffSpec c;
  c.kind_ = CutoffKind::Exponential;
  c.name_ = "exp";
  c.f_ = [](double x) { return std::exp(-x); };
  c.g_derivs_ = exponential_G_derivs;
  c.safe_ratio_ = 42.0;  // exp(-42) ~ 6e-19
  c.validate();
  return c;
}

CutoffSpec CutoffSpec::gaussian() {
  CutoffSpec c;
  c.kind_ = CutoffKind::Gaussian;
  c.name_ = "gauss";
  c.f_ = [](double x) { return std::exp(-x * x); };
  c.g_derivs_ = gaussian_G_derivs;
  c.safe_ratio_ = 6.5;  // exp(-6.5^2) ~ 4e-19
  c.validate();
  return c;
}

CutoffSpec CutoffSpec::weighted_erfc(WeightFunction weight) {
  auto w = std::make_shared<const WeightFunction>(std::move(weight));
  if (!std::isfinite(w->support_hi()))
    throw InvalidArgumentError(
        "weighted_erfc: weight support must be bounded above");
  CutoffSpec c;
  c.kind_ = CutoffKind::WeightedErfc;
  c.name_ = "weighted-erfc";
  c.weight_ = w;
  // Normalizing by the computed mass pins f(0) = 1 exactly even when the
  // weight's own quadrature is only good to 1e-9.
  const double mass = w->mass();
  const double lo = std::max(w->support_lo(), 1e-12);
  const double hi_support = w->support_hi();
  c.f_ = [w, mass, lo, hi_support](double x) {
    if (x == 0.0) return 1.0;
    auto integrand = [&wref = *w, x](double xi) {
      const double g = wref(xi);
      return g > 0.0 ? g * std::erfc(x / xi) : 0.0;
    };
    QuadratureOptions opts;
    opts.abs_tol = 1e-13;
    std::vector<double> pts = log_spaced(lo, hi_support, 48);
    return integrate_breakpoints(integrand, pts, opts).value / mass;
  };
  c.g_derivs_ = [w](int order, double s) {
    return weighted_G_derivs(*w, order, s);
  };
  // erfc(x/xi) <= erfc(x/hi) on the support, so six times the upper support
  // edge is a rigorous per-mode negligibility point.
  c.safe_ratio_ = 6.0 * hi_support;
  c.validate();
  return c;
}

CutoffSpec CutoffSpec::custom(const std::string& name,
                              std::function<double(double)> f,
                              LaplaceDerivs laplace_derivs) {
  if (!f) throw InvalidArgumentError("custom cutoff: missing evaluator");
  CutoffSpec c;
  c.kind_ = CutoffKind::Custom;
  c.name_ = name;
  c.f_ = std::move(f);
  c.g_derivs_ = std::move(laplace_derivs);
  c.validate();
  // Monotone f: scan then bisect the first x with f below negligibility.
  double hi = 20.0;
  while (hi < 1e5 && c.f_(hi) > 1e-18) hi *= 2.0;
  if (c.f_(hi) > 1e-18) {
    c.safe_ratio_ = std::numeric_limits<double>::infinity();
    return c;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-3 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (c.f_(mid) > 1e-18 ? lo : hi) = mid;
  }
  c.safe_ratio_ = hi;
  return c;
}

CutoffSpec CutoffSpec::by_name(const std::string& name) {
  if (name == "erfc") return pure_erfc();
  if (name == "exp") return exponential();
  if (name == "gauss") return gaussian();
  throw InvalidArgumentError("unknown cutoff '" + name +
                             "' (expected erfc|exp|gauss|weighted:<file>)");
}

double CutoffSpec::operator()(double x) const {
  if (!(x >= 0.0))
    throw InvalidArgumentError("cutoff evaluation needs x >= 0");
  return f_(x);
}

SignedLog CutoffSpec::laplace_derivative(int order, double s) const {
  if (!g_derivs_)
    throw UnsupportedCutoffError(
        "cutoff '" + name_ +
        "' has no analytic Laplace-side derivative provider (numerical "
        "differentiation is refused above order 8)");
  return g_derivs_(order, s);
}

double eval_cutoff(const CutoffSpec& cutoff, double x) { return cutoff(x); }

double post_invert(const LaplaceDerivs& G, double z, int n) {
  if (!(z > 0.0)) throw InvalidArgumentError("post_invert: z must be > 0");
  if (n < 1) throw InvalidArgumentError("post_invert: order must be >= 1");
  const double s = static_cast<double>(n) / z;
  const double ls = std::log(s);
  SignedLog d;
  try {
    d = G(n, s);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "post_invert: derivative provider failed at order " << n
        << ", s=" << s << ": " << e.what();
    throw NumericalFailureError(msg.str());
  }
  if (d.sign == 0.0) return 0.0;
  // ((-1)^n / n!) (n/z)^{n+1} G^{(n)}(n/z) in log form.  The lgamma and
  // (n+1) log(s) factors are computed once here and expected to cancel the
  // provider's own scale, so exact transforms stay exact.
  const double pre_log = (n + 1) * ls - std::lgamma(n + 1.0);
  const double total = pre_log + d.log_abs;
  const double sign = (n % 2 == 0 ? 1.0 : -1.0) * d.sign;
  if (total > 700.0)
    throw NumericalFailureError("post_invert: approximant overflows");
  if (total < -740.0) return 0.0;
  return sign * std::exp(total);
}

RecoveredWeight recover_weight(const CutoffSpec& cutoff,
                               const std::vector<double>& xi_grid, int n) {
  if (!cutoff.has_laplace_derivs())
    throw UnsupportedCutoffError(
        "recover_weight: cutoff '" + cutoff.name() +
        "' has no analytic Laplace-side derivative provider (numerical "
        "differentiation is refused above order 8)");
  if (n < 10)
    throw InvalidArgumentError("recover_weight: order must be >= 10");
  if (xi_grid.size() < 8)
    throw InvalidArgumentError("recover_weight: xi grid too small");
  for (size_t i = 0; i + 1 < xi_grid.size(); ++i)
    if (!(xi_grid[i] > 0.0) || !(xi_grid[i + 1] > xi_grid[i]))
      throw InvalidArgumentError(
          "recover_weight: xi grid must be positive ascending");

  // g(xi) = z h(z) at z = xi^{-2}, where h is the inverse transform of G.
  auto derivs = [&cutoff](int order, double s) {
    return cutoff.laplace_derivative(order, s);
  };
  std::vector<double> raw(xi_grid.size());
  for (size_t i = 0; i < xi_grid.size(); ++i) {
    const double z = 1.0 / (xi_grid[i] * xi_grid[i]);
    raw[i] = z * post_invert(derivs, z, n);
  }
  std::vector<double> clipped(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) clipped[i] = std::max(0.0, raw[i]);

  double mass = 0.0;
  for (size_t i = 0; i + 1 < clipped.size(); ++i)
    mass += 0.5 * (clipped[i] + clipped[i + 1]) *
            (xi_grid[i + 1] - xi_grid[i]);
  if (!(mass > 0.0))
    throw NumericalFailureError(
        "recover_weight: clipped approximant carries no mass on the grid");

  WeightFunction w = WeightFunction::from_table(xi_grid, clipped,
                                                /*renormalize=*/true);
  CutoffSpec rec = CutoffSpec::weighted_erfc(w);
  double sup = 0.0;
  for (double x : log_spaced(0.1, 10.0, 40))
    sup = std::max(sup, std::abs(rec(x) - cutoff(x)));

  RecoveredWeight out{xi_grid, std::move(raw), std::move(clipped), mass,
                      std::move(w), sup};
  return out;
}

}  // namespace caslab
