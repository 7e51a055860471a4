#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace caslab {

// Geometric descriptor of one body: the boundary/bulk integrals feeding the
// heat-kernel coefficients, not a mesh.  Flat ambient space is assumed, so
// intrinsic-curvature slots are identically zero and are not stored.
struct BodyGeometry {
  double volume = 0.0;
  double surface_area = 0.0;
  double k_integral = 0.0;                    // int K dA
  std::array<double, 2> k2_integrals{};       // int K^2 dA, int K_ij K^ij dA
  std::array<double, 3> k3_integrals{};       // int K^3, int tr(K^2)K, int tr(K^3)
  std::array<double, 2> potential_integrals{};  // int V dV, int V^2 dV
  bool is_thin_shell = false;
  bool is_spherical = false;
  bool closed_form = true;  // built by an exact constructor
  std::string label;

  // Exact-geometry constructors.
  static BodyGeometry sphere(double radius, bool thin_shell,
                             const std::string& label = "sphere");
  static BodyGeometry box(double l1, double l2, double l3,
                          const std::string& label = "box");
  static BodyGeometry plate(double lx, double ly,
                            const std::string& label = "plate");
  static BodyGeometry interval(double length,
                               const std::string& label = "interval");
  static BodyGeometry periodic_interval(double length, double v_integral = 0.0,
                                        double v2_integral = 0.0,
                                        const std::string& label =
                                            "periodic-interval");
  static BodyGeometry periodic_box(double l1, double l2, double l3,
                                   double v_integral = 0.0,
                                   double v2_integral = 0.0,
                                   const std::string& label = "periodic-box");

  bool operator==(const BodyGeometry& o) const;
};

struct Configuration {
  std::vector<BodyGeometry> bodies;
  BodyGeometry ir_box;  // outermost boundary, always held fixed
  bool te_tm_paired = false;
  int dimension_d = 3;
};

// Slot index i refers to the coefficient a_{i/2}; each slot carries the list
// of geometric integrals feeding it, compared entry by entry.
using SlotMap = std::map<int, std::vector<double>>;

std::vector<std::string> slot_entry_names(int slot_index);

// Per-slot invariants of a configuration: IR box plus bodies, with thin-shell
// sign rules (odd powers of K cancel between the two faces) and the TE/TM
// pairing cancellation on the pure-area slot.
SlotMap slot_invariants(const Configuration& config);

// Entry-wise slot differences a - b.  Requires equal dimension, an identical
// IR box, and matching TE/TM pairing.
SlotMap delta_slots(const Configuration& config_a,
                    const Configuration& config_b);

struct SlotDelta {
  std::vector<double> differences;
  bool all_zero = false;
};

struct FinitenessCertificate {
  int dimension_d = 0;
  std::map<int, SlotDelta> delta_slots;  // slots 0 .. d+1 required
  bool certified = false;
  std::vector<std::string> narrative;
};

// Certified iff every slot i = 0..d+1 has all integral differences below
// tolerance (exact zero when both sides were built by closed-form
// constructors, 1e-12 absolute otherwise).
FinitenessCertificate certify_finiteness(const Configuration& config_a,
                                         const Configuration& config_b);

// Descriptors carry no position, so a rigid motion is the identity on the
// stored invariants; this exists to make that a checkable property.
Configuration rigid_motion(const Configuration& config, int body_index);

// Slot matching between a target and a weighted combination of reference
// problems.  Weights must sum to 1.
FinitenessCertificate combination_check(const SlotMap& target,
                                        const std::vector<SlotMap>& references,
                                        const std::vector<double>& weights,
                                        int dimension_d);

}  // namespace caslab
