#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace caslab {

enum class BoundaryCondition { Dirichlet, Neumann, Periodic };

std::string to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& name);

struct Mode {
  double omega = 0.0;
  std::int64_t multiplicity = 1;
};

// Finite sorted list of angular frequencies with multiplicities.  Natural
// units hbar = c = 1 throughout: omega carries units of inverse length.
class ModeSpectrum {
public:
  ModeSpectrum() = default;
  // `complete` marks spectra that contain every operator mode (no truncated
  // tail), which lifts the truncation-safety precondition on regularized
  // sums.  Analytic spectra built to a requested count are not complete.
  ModeSpectrum(std::vector<Mode> modes, int dimension_d,
               std::int64_t uv_valid_count, std::string label,
               bool complete = false);

  const std::vector<Mode>& modes() const { return modes_; }
  int dimension() const { return dimension_d_; }
  std::int64_t uv_valid_count() const { return uv_valid_count_; }
  bool complete() const { return complete_; }
  const std::string& label() const { return label_; }

  bool empty() const { return modes_.empty(); }
  std::int64_t total_multiplicity() const;
  double max_omega() const;        // largest stored omega, 0 if empty
  double max_valid_omega() const;  // omega of the last UV-valid entry
  std::int64_t zero_mode_multiplicity() const;

  // Multiplicity-expanded ascending list of frequencies.
  std::vector<double> expand() const;

private:
  std::vector<Mode> modes_;
  int dimension_d_ = 1;
  std::int64_t uv_valid_count_ = 0;
  std::string label_;
  bool complete_ = false;
};

// Interval Laplacian -d^2/dx^2 on [0, L].  Dirichlet: omega_n = n pi / L,
// n = 1..count.  Neumann: n = 0..count-1.  Periodic: a single zero mode plus
// omega = 2 pi n / L with multiplicity 2, count entries total.
ModeSpectrum interval_spectrum(double length, BoundaryCondition bc, int count);

// All modes of a 3D box with the given side lengths up to omega_max, with
// exact degeneracies.  Throws ResourceLimitError beyond mode_cap entries.
ModeSpectrum box_spectrum_3d(const std::array<double, 3>& lengths,
                             BoundaryCondition bc, double omega_max,
                             std::int64_t mode_cap = 4'000'000);

// 1D Schroedinger operator -d^2/dx^2 + V(x) on [0, L].
struct OperatorSpec1D {
  double length = 1.0;
  std::function<double(double)> potential;  // evaluated on [0, L]
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int grid_points = 256;
};

// Lowest `count` frequencies omega_n = sqrt(lambda_n) of the second-order
// central finite-difference discretization.  Only the lowest quarter of the
// discrete eigenvalues is trusted to represent the continuum operator, so
// count <= grid_points / 4 is enforced.
ModeSpectrum schrodinger_spectrum_1d(const OperatorSpec1D& spec, int count);

// Per-mode map omega -> sqrt(omega^2 + m_squared).
ModeSpectrum massive_spectrum(const ModeSpectrum& base, double m_squared);

// Multiset union of two spectra sharing a dimension.
ModeSpectrum merge_spectra(const ModeSpectrum& a, const ModeSpectrum& b);

}  // namespace caslab
