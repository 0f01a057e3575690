#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lipreach/model.hpp"

namespace lipreach {

enum class LipschitzMode { Static, Dynamic };

/// Largest matrix dimension for which the exact spectral norm is computed.
inline constexpr Eigen::Index kSpectralNormMaxDim = 512;

/// Fixed Lipschitz bound used for a softmax layer: each Jacobian entry
/// p_i(delta_ij - p_j) is bounded by 1 + 1 with outputs in (0, 1).
inline constexpr double kSoftmaxConstant = 2.0;

inline constexpr double kDefaultEta = 1.5;

/// Per-layer constants, their product, and the running dynamic estimate.
struct LipschitzBudget {
  std::vector<double> per_layer;
  double network_constant = 0.0;
  LipschitzMode mode = LipschitzMode::Static;
  double eta = kDefaultEta;
  double current_dynamic = 0.0;

  /// The constant the optimiser should use right now.
  double active() const noexcept {
    return mode == LipschitzMode::Static ? network_constant : current_dynamic;
  }

  /// Budget holding a single known constant.
  static LipschitzBudget fixed(double k);
  static LipschitzBudget dynamic(double eta = kDefaultEta);
};

double spectral_norm(const Matrix& w);
double frobenius_norm(const Matrix& w);
/// Spectral norm up to kSpectralNormMaxDim, Frobenius norm beyond.
double operator_norm_bound(const Matrix& w);

/// Certified Euclidean Lipschitz constant of one layer.
double layer_constant(const Layer& layer);

/// Product of the layer constants up to `tap`.
LipschitzBudget network_constant(const NetworkModel& net, EvalTap tap = EvalTap::Output);

struct SlopeSample {
  double y;
  double value;
};

/// eta times the steepest consecutive slope of `samples` (sorted ascending by y).
/// The running estimate never decreases: the result is max(old, new).
LipschitzBudget dynamic_update(LipschitzBudget budget, std::span<const SlopeSample> samples);

}  // namespace lipreach
