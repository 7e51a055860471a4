#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace caslab {

// Value carried as sign * exp(log_abs), so that factorially large and small
// factors can be combined without overflow.
struct SignedLog {
  double sign = 0.0;     // -1, 0, or +1
  double log_abs = 0.0;  // meaningless when sign == 0
  double value() const;
};

// n-th derivative of a Laplace transform G at the point s, in SignedLog form.
using LaplaceDerivs = std::function<SignedLog(int order, double s)>;

// Nonnegative weight g(xi) on (0, inf) with unit integral.  The support
// window [lo, hi] tells the quadrature where g lives; g is treated as zero
// outside.  An infinite hi is allowed for decaying tails.
class WeightFunction {
public:
  WeightFunction(std::function<double(double)> g, double support_lo,
                 double support_hi, bool renormalize = false);

  static WeightFunction delta_approximant(double xi0, double sigma = 1e-3);
  static WeightFunction uniform(double lo, double hi);
  // Piecewise-linear interpolant of samples (xi ascending), zero outside.
  static WeightFunction from_table(std::vector<double> xi,
                                   std::vector<double> g,
                                   bool renormalize = false);

  double operator()(double xi) const;
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double mass() const { return mass_; }  // quadrature of g, ~1
  bool normalization_checked() const { return true; }

private:
  std::function<double(double)> g_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double mass_ = 0.0;
};

struct WeightMoments {
  std::vector<double> power_moments;  // integral of g(xi) xi^{d+1-i}, i = 0..d
  double log_moment = 0.0;            // integral of g(xi) ln(xi)
};

// Moments rescaling the divergence coefficients of an f-regularized sum.
// Throws DivergentMomentError when a tail fails to converge.
WeightMoments weight_moments(const WeightFunction& w, int d);

enum class CutoffKind { PureErfc, Exponential, Gaussian, WeightedErfc, Custom };

// A cutoff profile f(x) with f(0) = 1, f monotone nonincreasing, f -> 0.
// Catalog kinds carry closed-form derivatives of the associated Laplace-side
// function G(s) = -sqrt(pi) f'(sqrt(s)), which is what Post inversion needs.
class CutoffSpec {
public:
  static CutoffSpec pure_erfc();
  static CutoffSpec exponential();
  static CutoffSpec gaussian();
  static CutoffSpec weighted_erfc(WeightFunction weight);
  static CutoffSpec custom(const std::string& name,
                           std::function<double(double)> f,
                           LaplaceDerivs laplace_derivs = nullptr);
  // "erfc" | "exp" | "gauss" (the CLI resolves weighted:<file> itself).
  static CutoffSpec by_name(const std::string& name);

  CutoffKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double operator()(double x) const;

  // Smallest x/Omega ratio beyond which stored-spectrum truncation is safe
  // (per-mode weight below ~1e-17 for erfc, ~1e-18 otherwise).
  double safe_truncation_ratio() const { return safe_ratio_; }

  bool has_laplace_derivs() const { return static_cast<bool>(g_derivs_); }
  SignedLog laplace_derivative(int order, double s) const;
  const WeightFunction* weight() const { return weight_.get(); }

private:
  CutoffSpec() = default;
  void validate() const;

  CutoffKind kind_ = CutoffKind::Custom;
  std::string name_;
  std::function<double(double)> f_;
  LaplaceDerivs g_derivs_;
  std::shared_ptr<const WeightFunction> weight_;
  double safe_ratio_ = 0.0;
};

double eval_cutoff(const CutoffSpec& cutoff, double x);

// One Post approximant of the inverse Laplace transform of G at z:
//   g_n(z) = ((-1)^n / n!) (n/z)^{n+1} G^{(n)}(n/z).
// The prefactor is assembled in log form against the provider's SignedLog,
// so algebraically exact cases (e.g. G = 1/s) come out exact.
double post_invert(const LaplaceDerivs& G, double z, int n);

struct RecoveredWeight {
  std::vector<double> xi_grid;
  std::vector<double> raw;      // Post approximant of g before clipping
  std::vector<double> clipped;  // max(raw, 0), renormalized to unit mass
  double raw_mass = 0.0;        // trapezoid mass of max(raw, 0) on the grid
  WeightFunction weight;        // interpolant of `clipped`
  double roundtrip_sup_error = 0.0;  // sup |f_rec - f| on x in [0.1, 10]
};

// Reconstructs the erfc-mixture weight of a cutoff by Post inversion of its
// Laplace-side derivatives, evaluated on xi_grid.  Requires an analytic
// derivative provider: finite differences at order > 8 are hopeless in
// double precision, so none are attempted.
RecoveredWeight recover_weight(const CutoffSpec& cutoff,
                               const std::vector<double>& xi_grid, int n);

}  // namespace caslab
