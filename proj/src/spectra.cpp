#include "caslab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "caslab/errors.hpp"
#include "caslab/tridiag.hpp"

namespace caslab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_param(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<Mode> collapse_sorted(std::vector<std::pair<double, std::int64_t>>
                                      entries) {
  std::sort(entries.begin(), entries.end());
  std::vector<Mode> modes;
  modes.reserve(entries.size());
  for (const auto& [omega, mult] : entries) {
    if (!modes.empty() && modes.back().omega == omega)
      modes.back().multiplicity += mult;
    else
      modes.push_back(Mode{omega, mult});
  }
  return modes;
}

}  // namespace

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Periodic: return "periodic";
  }
  return "?";
}

BoundaryCondition boundary_condition_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryCondition::Dirichlet;
  if (name == "neumann") return BoundaryCondition::Neumann;
  if (name == "periodic") return BoundaryCondition::Periodic;
  throw InvalidArgumentError("unknown boundary condition '" + name +
                             "' (expected dirichlet|neumann|periodic)");
}

ModeSpectrum::ModeSpectrum(std::vector<Mode> modes, int dimension_d,
                           std::int64_t uv_valid_count, std::string label,
                           bool complete)
    : modes_(std::move(modes)),
      dimension_d_(dimension_d),
      uv_valid_count_(uv_valid_count),
      label_(std::move(label)),
      complete_(complete) {
  if (dimension_d_ < 1)
    throw InvalidArgumentError("ModeSpectrum: dimension must be positive");
  double prev = -1.0;
  for (const Mode& m : modes_) {
    if (!(m.omega >= 0.0) || !std::isfinite(m.omega))
      throw InvalidArgumentError("ModeSpectrum: omega must be finite and >= 0");
    if (m.multiplicity < 1)
      throw InvalidArgumentError("ModeSpectrum: multiplicity must be >= 1");
    if (m.omega < prev)
      throw InvalidArgumentError("ModeSpectrum: frequencies must be sorted");
    prev = m.omega;
  }
  if (uv_valid_count_ < 0 ||
      uv_valid_count_ > static_cast<std::int64_t>(modes_.size()))
    throw InvalidArgumentError(
        "ModeSpectrum: uv_valid_count must lie in [0, stored mode count]");
}

std::int64_t ModeSpectrum::total_multiplicity() const {
  std::int64_t total = 0;
  for (const Mode& m : modes_) total += m.multiplicity;
  return total;
}

double ModeSpectrum::max_omega() const {
  return modes_.empty() ? 0.0 : modes_.back().omega;
}

double ModeSpectrum::max_valid_omega() const {
  if (uv_valid_count_ == 0) return 0.0;
  return modes_[uv_valid_count_ - 1].omega;
}

std::int64_t ModeSpectrum::zero_mode_multiplicity() const {
  std::int64_t total = 0;
  for (const Mode& m : modes_) {
    if (m.omega > 0.0) break;
    total += m.multiplicity;
  }
  return total;
}

std::vector<double> ModeSpectrum::expand() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(total_multiplicity()));
  for (const Mode& m : modes_)
    for (std::int64_t k = 0; k < m.multiplicity; ++k) out.push_back(m.omega);
  return out;
}

ModeSpectrum interval_spectrum(double length, BoundaryCondition bc,
                               int count) {
  if (!(length > 0.0))
    throw InvalidArgumentError("interval_spectrum: length must be positive");
  if (count < 1)
    throw InvalidArgumentError("interval_spectrum: count must be >= 1");

  std::vector<Mode> modes;
  modes.reserve(count);
  switch (bc) {
    case BoundaryCondition::Dirichlet:
      for (int n = 1; n <= count; ++n)
        modes.push_back(Mode{n * kPi / length, 1});
      break;
    case BoundaryCondition::Neumann:
      for (int n = 0; n < count; ++n)
        modes.push_back(Mode{n * kPi / length, 1});
      break;
    case BoundaryCondition::Periodic:
      modes.push_back(Mode{0.0, 1});
      for (int n = 1; n < count; ++n)
        modes.push_back(Mode{2.0 * kPi * n / length, 2});
      break;
  }
  std::ostringstream label;
  label << "interval(L=" << fmt_param(length) << "," << to_string(bc)
        << ",n=" << count << ")";
  return ModeSpectrum(std::move(modes), 1, count, label.str());
}

ModeSpectrum box_spectrum_3d(const std::array<double, 3>& lengths,
                             BoundaryCondition bc, double omega_max,
                             std::int64_t mode_cap) {
  for (double L : lengths)
    if (!(L > 0.0))
      throw InvalidArgumentError("box_spectrum_3d: lengths must be positive");
  if (!(omega_max > 0.0))
    throw InvalidArgumentError("box_spectrum_3d: omega_max must be positive");

  // 1D wavenumber step and starting index per direction.
  const bool periodic = bc == BoundaryCondition::Periodic;
  const int n_start = (bc == BoundaryCondition::Dirichlet) ? 1 : 0;
  std::array<double, 3> step{};
  std::array<int, 3> n_max{};
  for (int i = 0; i < 3; ++i) {
    step[i] = (periodic ? 2.0 * kPi : kPi) / lengths[i];
    n_max[i] = static_cast<int>(std::floor(omega_max / step[i]));
  }

  std::vector<std::pair<double, std::int64_t>> entries;
  const double omega_max_sq = omega_max * omega_max;
  std::int64_t total = 0;
  for (int n1 = n_start; n1 <= n_max[0]; ++n1) {
    const double k1 = n1 * step[0], k1sq = k1 * k1;
    if (k1sq > omega_max_sq) break;
    for (int n2 = n_start; n2 <= n_max[1]; ++n2) {
      const double k2 = n2 * step[1], k12sq = k1sq + k2 * k2;
      if (k12sq > omega_max_sq) break;
      for (int n3 = n_start; n3 <= n_max[2]; ++n3) {
        const double k3 = n3 * step[2];
        const double osq = k12sq + k3 * k3;
        if (osq > omega_max_sq) break;
        std::int64_t mult = 1;
        if (periodic) {
          // +-n degeneracy per nonzero component.
          int nonzero = (n1 > 0) + (n2 > 0) + (n3 > 0);
          mult = std::int64_t{1} << nonzero;
        }
        total += mult;
        if (total > mode_cap) {
          std::ostringstream msg;
          msg << "box_spectrum_3d: enumeration exceeds mode cap of "
              << mode_cap << " expanded modes (omega_max=" << omega_max
              << "); raise the cap or lower omega_max";
          throw ResourceLimitError(msg.str());
        }
        entries.emplace_back(std::sqrt(osq), mult);
      }
    }
  }

  std::vector<Mode> modes = collapse_sorted(std::move(entries));
  const auto stored = static_cast<std::int64_t>(modes.size());
  std::ostringstream label;
  label << "box3d(L=" << fmt_param(lengths[0]) << "x" << fmt_param(lengths[1])
        << "x" << fmt_param(lengths[2]) << "," << to_string(bc)
        << ",omega_max=" << fmt_param(omega_max) << ")";
  return ModeSpectrum(std::move(modes), 3, stored, label.str());
}

ModeSpectrum schrodinger_spectrum_1d(const OperatorSpec1D& spec, int count) {
  if (!(spec.length > 0.0))
    throw InvalidArgumentError("schrodinger_spectrum_1d: length must be > 0");
  if (spec.grid_points < 16)
    throw InvalidArgumentError(
        "schrodinger_spectrum_1d: grid_points must be >= 16");
  if (!spec.potential)
    throw InvalidArgumentError("schrodinger_spectrum_1d: missing potential");
  if (count < 1)
    throw InvalidArgumentError("schrodinger_spectrum_1d: count must be >= 1");
  if (count > spec.grid_points / 4) {
    std::ostringstream msg;
    msg << "schrodinger_spectrum_1d: count " << count
        << " exceeds the UV-valid quarter of the grid (grid_points/4 = "
        << spec.grid_points / 4 << "); use a finer grid";
    throw UvValidityError(msg.str());
  }

  const int n = spec.grid_points;
  const double L = spec.length;
  std::vector<double> diag, off;
  double corner = 0.0;

  auto eval_v = [&](double x) {
    const double v = spec.potential(x);
    if (!std::isfinite(v))
      throw NumericalFailureError(
          "schrodinger_spectrum_1d: potential not evaluable at x=" +
          fmt_param(x));
    return v;
  };

  switch (spec.bc) {
    case BoundaryCondition::Dirichlet: {
      // Node-centered interior grid, u(0) = u(L) = 0.
      const double h = L / (n + 1);
      const double w = 1.0 / (h * h);
      diag.assign(n, 2.0 * w);
      off.assign(n - 1, -w);
      for (int i = 0; i < n; ++i) diag[i] += eval_v((i + 1) * h);
      break;
    }
    case BoundaryCondition::Neumann: {
      // Cell-centered grid; mirror ghost cells give zero-flux walls.
      const double h = L / n;
      const double w = 1.0 / (h * h);
      diag.assign(n, 2.0 * w);
      off.assign(n - 1, -w);
      diag.front() = w;
      diag.back() = w;
      for (int i = 0; i < n; ++i) diag[i] += eval_v((i + 0.5) * h);
      break;
    }
    case BoundaryCondition::Periodic: {
      const double h = L / n;
      const double w = 1.0 / (h * h);
      diag.assign(n, 2.0 * w);
      off.assign(n - 1, -w);
      corner = -w;
      for (int i = 0; i < n; ++i) diag[i] += eval_v(i * h);
      break;
    }
  }

  std::vector<double> lambda = lowest_eigenvalues(diag, off, corner, count);

  // Bisection noise can leave an exact zero mode at a tiny negative value.
  double scale = 0.0;
  for (double l : lambda) scale = std::max(scale, std::abs(l));
  const double zero_tol = 1e-9 * std::max(scale, 1.0 / (L * L));
  std::vector<Mode> modes;
  modes.reserve(count);
  for (double l : lambda) {
    if (l < -zero_tol) {
      std::ostringstream msg;
      msg << "schrodinger_spectrum_1d: negative eigenvalue lambda=" << l
          << " has no real frequency (bound state below zero)";
      throw ImaginaryFrequencyError(msg.str());
    }
    modes.push_back(Mode{std::sqrt(std::max(0.0, l)), 1});
  }
  std::sort(modes.begin(), modes.end(),
            [](const Mode& a, const Mode& b) { return a.omega < b.omega; });

  std::ostringstream label;
  label << "schrodinger1d(L=" << fmt_param(L) << "," << to_string(spec.bc)
        << ",grid=" << n << ",n=" << count << ")";
  return ModeSpectrum(std::move(modes), 1, count, label.str());
}

ModeSpectrum massive_spectrum(const ModeSpectrum& base, double m_squared) {
  if (!std::isfinite(m_squared))
    throw InvalidArgumentError("massive_spectrum: m_squared must be finite");
  std::vector<Mode> modes;
  modes.reserve(base.modes().size());
  for (const Mode& m : base.modes()) {
    const double shifted = m.omega * m.omega + m_squared;
    if (shifted < 0.0) {
      std::ostringstream msg;
      msg << "massive_spectrum: omega^2 + m^2 = " << shifted
          << " < 0 at omega=" << m.omega << " (imaginary frequency)";
      throw ImaginaryFrequencyError(msg.str());
    }
    modes.push_back(Mode{std::sqrt(shifted), m.multiplicity});
  }
  std::ostringstream label;
  label << base.label() << "+m2=" << fmt_param(m_squared);
  return ModeSpectrum(std::move(modes), base.dimension(),
                      base.uv_valid_count(), label.str(), base.complete());
}

ModeSpectrum merge_spectra(const ModeSpectrum& a, const ModeSpectrum& b) {
  if (a.dimension() != b.dimension())
    throw InvalidArgumentError("merge_spectra: dimension mismatch");
  std::vector<std::pair<double, std::int64_t>> entries;
  entries.reserve(a.modes().size() + b.modes().size());
  for (const Mode& m : a.modes()) entries.emplace_back(m.omega, m.multiplicity);
  for (const Mode& m : b.modes()) entries.emplace_back(m.omega, m.multiplicity);
  std::vector<Mode> modes = collapse_sorted(std::move(entries));

  // The merged list is trusted only up to the shorter valid tail.
  const double valid_omega =
      std::min(a.max_valid_omega(), b.max_valid_omega());
  std::int64_t valid = 0;
  for (const Mode& m : modes) {
    if (m.omega > valid_omega) break;
    ++valid;
  }
  return ModeSpectrum(std::move(modes), a.dimension(), valid,
                      a.label() + " + " + b.label(),
                      a.complete() && b.complete());
}

}  // namespace caslab
