#include "lipreach/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <Eigen/SVD>

#include "lipreach/error.hpp"

namespace lipreach {

LipschitzBudget LipschitzBudget::fixed(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("Lipschitz constant must be finite and >= 0");
  LipschitzBudget b;
  b.per_layer = {k};
  b.network_constant = k;
  return b;
}

LipschitzBudget LipschitzBudget::dynamic(double eta) {
  if (!(eta > 1.0)) throw DomainError("eta must be > 1");
  LipschitzBudget b;
  b.mode = LipschitzMode::Dynamic;
  b.eta = eta;
  return b;
}

namespace {

// Drops all-zero rows and columns; neither changes the singular values, and
// stripping them makes width-padded copies of a layer give identical norms.
Matrix compact(const Matrix& w) {
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    if (!w.row(r).isZero(0.0)) rows.push_back(r);
  for (Eigen::Index c = 0; c < w.cols(); ++c)
    if (!w.col(c).isZero(0.0)) cols.push_back(c);
  if (rows.size() == static_cast<std::size_t>(w.rows()) &&
      cols.size() == static_cast<std::size_t>(w.cols()))
    return w;
  return w(rows, cols);
}

}  // namespace

double spectral_norm(const Matrix& w) {
  const Matrix m = compact(w);
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& w) { return compact(w).norm(); }

double operator_norm_bound(const Matrix& w) {
  const Matrix m = compact(w);
  if (m.rows() <= kSpectralNormMaxDim && m.cols() <= kSpectralNormMaxDim) return spectral_norm(m);
  return frobenius_norm(m);
}

double layer_constant(const Layer& layer) {
  if (const auto* d = std::get_if<DenseLayer>(&layer)) {
    const double norm = operator_norm_bound(d->weights);
    return d->activation == Activation::Sigmoid ? 0.5 * norm : norm;
  }
  if (std::holds_alternative<SoftmaxLayer>(layer)) return kSoftmaxConstant;
  // Each output moves by at most the largest move inside its window, so the
  // squared output change is bounded by sum_j c_j d_j^2 where c_j counts the
  // windows holding input j. With overlap c_j reaches ceil(window / stride).
  const auto& pool = std::get<MaxPoolLayer>(layer);
  const std::size_t cover = (pool.window + pool.stride - 1) / pool.stride;
  return std::sqrt(static_cast<double>(std::max<std::size_t>(cover, 1)));
}

LipschitzBudget network_constant(const NetworkModel& net, EvalTap tap) {
  LipschitzBudget b;
  const std::size_t depth = net.depth(tap);
  b.per_layer.reserve(depth);
  b.network_constant = 1.0;
  for (std::size_t i = 0; i < depth; ++i) {
    b.per_layer.push_back(layer_constant(net.layers()[i]));
    b.network_constant *= b.per_layer.back();
  }
  return b;
}

LipschitzBudget dynamic_update(LipschitzBudget budget, std::span<const SlopeSample> samples) {
  if (budget.mode != LipschitzMode::Dynamic) throw DomainError("dynamic_update needs a dynamic budget");
  if (samples.size() < 2) throw DomainError("dynamic_update needs at least two samples");
  double steepest = 0.0;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    const double dy = samples[j].y - samples[j - 1].y;
    if (!(dy > 0.0)) throw DomainError("dynamic_update samples must have strictly ascending y");
    steepest = std::max(steepest, std::abs(samples[j].value - samples[j - 1].value) / dy);
  }
  budget.current_dynamic = std::max(budget.current_dynamic, budget.eta * steepest);
  return budget;
}

}  // namespace lipreach
