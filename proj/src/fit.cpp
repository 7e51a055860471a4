#include "caslab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caslab/errors.hpp"

namespace caslab {

namespace {

// Symmetric Jacobi eigenvalue iteration for the small normal matrix R^T R.
// Returns eigenvalues (ascending) and overwrites m with the rotations'
// accumulated eigenvectors (columns).
std::vector<double> jacobi_eigen(std::vector<std::vector<double>>& m,
                                 std::vector<std::vector<double>>& vecs) {
  const size_t k = m.size();
  vecs.assign(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i) vecs[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double offdiag = 0.0, diag = 0.0;
    for (size_t p = 0; p < k; ++p) {
      diag += m[p][p] * m[p][p];
      for (size_t q = p + 1; q < k; ++q) offdiag += m[p][q] * m[p][q];
    }
    if (offdiag <= 1e-30 * (diag + 1e-300)) break;
    for (size_t p = 0; p < k; ++p) {
      for (size_t q = p + 1; q < k; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t i = 0; i < k; ++i) {
          const double mip = m[i][p], miq = m[i][q];
          m[i][p] = c * mip - s * miq;
          m[i][q] = s * mip + c * miq;
        }
        for (size_t i = 0; i < k; ++i) {
          const double mpi = m[p][i], mqi = m[q][i];
          m[p][i] = c * mpi - s * mqi;
          m[q][i] = s * mpi + c * mqi;
        }
        for (size_t i = 0; i < k; ++i) {
          const double vip = vecs[i][p], viq = vecs[i][q];
          vecs[i][p] = c * vip - s * viq;
          vecs[i][q] = s * vip + c * viq;
        }
      }
    }
  }
  std::vector<double> eigs(k);
  for (size_t i = 0; i < k; ++i) eigs[i] = m[i][i];
  return eigs;
}

}  // namespace

LinearFit least_squares(const std::vector<std::vector<double>>& columns,
                        const std::vector<double>& rhs) {
  const size_t k = columns.size();
  const size_t n = rhs.size();
  if (k == 0) throw InvalidArgumentError("least_squares: no columns");
  if (n < k)
    throw InvalidArgumentError("least_squares: fewer rows than columns");
  for (const auto& col : columns)
    if (col.size() != n)
      throw InvalidArgumentError("least_squares: column length mismatch");

  // Column scaling to unit norm.
  std::vector<double> scale(k, 1.0);
  std::vector<std::vector<double>> a(k);
  for (size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (double x : columns[j]) norm += x * x;
    norm = std::sqrt(norm);
    scale[j] = norm > 0.0 ? norm : 1.0;
    a[j].resize(n);
    for (size_t i = 0; i < n; ++i) a[j][i] = columns[j][i] / scale[j];
  }
  std::vector<double> b = rhs;

  // Householder QR, column by column; a[j] holds the transformed columns.
  std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
  for (size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = std::numeric_limits<double>::min();
    const double alpha = a[j][j] >= 0.0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    v[j] = a[j][j] - alpha;
    for (size_t i = j + 1; i < n; ++i) v[i] = a[j][i];
    double vnorm2 = 0.0;
    for (size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0.0) {
      for (size_t jj = j; jj < k; ++jj) {
        double dot = 0.0;
        for (size_t i = j; i < n; ++i) dot += v[i] * a[jj][i];
        const double f = 2.0 * dot / vnorm2;
        for (size_t i = j; i < n; ++i) a[jj][i] -= f * v[i];
      }
      double dot = 0.0;
      for (size_t i = j; i < n; ++i) dot += v[i] * b[i];
      const double f = 2.0 * dot / vnorm2;
      for (size_t i = j; i < n; ++i) b[i] -= f * v[i];
    }
    for (size_t i = 0; i <= j; ++i) r[i][j] = a[j][i];
  }

  // Back substitution for the scaled coefficients.
  std::vector<double> c(k, 0.0);
  for (size_t jj = k; jj-- > 0;) {
    double sum = b[jj];
    for (size_t m = jj + 1; m < k; ++m) sum -= r[jj][m] * c[m];
    const double piv = r[jj][jj];
    if (piv == 0.0)
      throw ConditioningError(
          "least_squares: rank-deficient design matrix; widen the sample "
          "grid or drop redundant basis terms");
    c[jj] = sum / piv;
  }

  double resid2 = 0.0;
  for (size_t i = k; i < n; ++i) resid2 += b[i] * b[i];

  // Condition number and covariance via the k x k normal matrix R^T R.
  std::vector<std::vector<double>> rtr(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      double sum = 0.0;
      for (size_t m = 0; m <= std::min(i, j); ++m) sum += r[m][i] * r[m][j];
      rtr[i][j] = sum;
    }
  std::vector<std::vector<double>> work = rtr, vecs;
  std::vector<double> eigs = jacobi_eigen(work, vecs);
  double emax = 0.0, emin = std::numeric_limits<double>::infinity();
  for (double e : eigs) {
    emax = std::max(emax, std::abs(e));
    emin = std::min(emin, std::abs(e));
  }
  const double cond =
      emin > 0.0 ? std::sqrt(emax / emin)
                 : std::numeric_limits<double>::infinity();

  // Var(c_j) = sigma^2 [(R^T R)^{-1}]_{jj} with the usual residual variance.
  const double dof = n > k ? static_cast<double>(n - k) : 1.0;
  const double sigma2 = resid2 / dof;
  std::vector<double> std_errors(k, 0.0);
  for (size_t j = 0; j < k; ++j) {
    double inv_jj = 0.0;
    for (size_t m = 0; m < k; ++m) {
      if (std::abs(eigs[m]) <= 0.0) {
        inv_jj = std::numeric_limits<double>::infinity();
        break;
      }
      inv_jj += vecs[j][m] * vecs[j][m] / eigs[m];
    }
    std_errors[j] = std::sqrt(std::max(0.0, sigma2 * inv_jj)) / scale[j];
  }

  LinearFit fit;
  fit.scaled_coefficients = c;
  fit.coefficients.resize(k);
  for (size_t j = 0; j < k; ++j) fit.coefficients[j] = c[j] / scale[j];
  fit.std_errors = std_errors;
  fit.residual_norm = std::sqrt(resid2);
  fit.condition_number = cond;
  return fit;
}

}  // namespace caslab
