#include "lipreach/synthetic.hpp"

#include <cmath>
#include <random>
#include <variant>

#include "lipreach/error.hpp"
#include "lipreach/lipschitz.hpp"

namespace lipreach {

namespace {

Matrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = n(rng);
  return m;
}

}  // namespace

NetworkModel random_network(const RandomNetSpec& spec) {
  if (spec.input_dim == 0 || spec.output_dim == 0) throw ShapeError("network dimensions must be positive");
  if (spec.activations.empty() ||
      (spec.activations.size() != 1 && spec.activations.size() != spec.hidden.size()))
    throw DomainError("need one activation or one per hidden layer");
  if (!(spec.layer_norm > 0.0)) throw DomainError("layer_norm must be positive");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> bias(-spec.bias_scale, spec.bias_scale);
  std::vector<Layer> layers;
  std::size_t width = spec.input_dim;

  auto dense = [&](std::size_t out, Activation act) {
    Matrix w = gaussian(rng, static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(width));
    w *= spec.layer_norm / spectral_norm(w);
    Vector b(static_cast<Eigen::Index>(out));
    for (auto& v : b) v = bias(rng);
    layers.emplace_back(DenseLayer{std::move(w), std::move(b), act});
    width = out;
  };

  for (std::size_t i = 0; i < spec.hidden.size(); ++i)
    dense(spec.hidden[i], spec.activations.size() == 1 ? spec.activations[0] : spec.activations[i]);
  dense(spec.output_dim, Activation::None);
  return NetworkModel(spec.name, spec.input_dim, std::move(layers), spec.box);
}

NetworkModel pad_hidden_width(const NetworkModel& net, std::size_t factor) {
  if (factor == 0) throw DomainError("padding factor must be >= 1");
  std::vector<Layer> layers = net.layers();
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    auto* cur = std::get_if<DenseLayer>(&layers[i]);
    auto* next = std::get_if<DenseLayer>(&layers[i + 1]);
    if (cur == nullptr || next == nullptr) continue;
    const Eigen::Index old_w = cur->weights.rows();
    const Eigen::Index new_w = old_w * static_cast<Eigen::Index>(factor);

    Matrix w = Matrix::Zero(new_w, cur->weights.cols());
    w.topRows(old_w) = cur->weights;
    Vector b = Vector::Zero(new_w);
    b.head(old_w) = cur->bias;
    cur->weights = std::move(w);
    cur->bias = std::move(b);

    Matrix nw = Matrix::Zero(next->weights.rows(), new_w);
    nw.leftCols(old_w) = next->weights;
    next->weights = std::move(nw);
  }
  return NetworkModel(net.name() + "_x" + std::to_string(factor), net.input_dim(),
                      std::move(layers), net.input_box());
}

std::vector<SuiteEntry> benchmark_suite(bool with_twins, std::uint64_t seed) {
  struct Shape {
    std::vector<std::size_t> hidden;
    Activation act;
  };
  const std::vector<Shape> shapes{
      {{4}, Activation::Tanh},          {{8}, Activation::Relu},
      {{16}, Activation::Sigmoid},      {{8, 8}, Activation::Tanh},
      {{16, 16}, Activation::Relu},     {{32, 16, 8}, Activation::Tanh},
  };
  std::vector<SuiteEntry> suite;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    RandomNetSpec spec;
    spec.name = "bench" + std::to_string(i + 1);
    spec.input_dim = 2;
    spec.hidden = shapes[i].hidden;
    spec.activations = {shapes[i].act};
    spec.output_dim = 1;
    // Keeps the composite constant near 0.5 whatever the depth.
    spec.layer_norm = std::pow(0.5, 1.0 / static_cast<double>(spec.hidden.size() + 1));
    spec.bias_scale = 1.0;
    spec.box = {0.0, 10.0};
    spec.seed = seed + i;
    suite.push_back({random_network(spec), -1});
  }
  if (with_twins) {
    const std::size_t base = suite.size();
    for (std::size_t i = 0; i < base; ++i)
      suite.push_back({pad_hidden_width(suite[i].net, 2), static_cast<std::ptrdiff_t>(i)});
  }
  return suite;
}

}  // namespace lipreach
