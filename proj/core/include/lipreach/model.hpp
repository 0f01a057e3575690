#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace lipreach {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Activation { None, Relu, Sigmoid, Tanh };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view s);

/// Fully connected layer: y = act(W x + b). W is (outputs x inputs).
struct DenseLayer {
  Matrix weights;
  Vector bias;
  Activation activation = Activation::None;
};

struct SoftmaxLayer {};

/// 1-D max pooling over the flattened vector.
struct MaxPoolLayer {
  std::size_t window = 1;
  std::size_t stride = 1;
};

using Layer = std::variant<DenseLayer, SoftmaxLayer, MaxPoolLayer>;

/// Output width of `layer` when fed a vector of `input_width` entries.
/// Throws ShapeError when the layer cannot accept that width.
std::size_t layer_output_width(const Layer& layer, std::size_t input_width);

/// Applies a single layer. No shape checks beyond Eigen asserts.
Vector apply_layer(const Layer& layer, const Vector& x);

/// Where to read the network: after the last layer, or before a trailing softmax.
enum class EvalTap { Output, Logit };

std::string_view to_string(EvalTap t);
EvalTap tap_from_string(std::string_view s);

/// Admissible input range, identical for every coordinate.
struct InputBox {
  double lower = 0.0;
  double upper = 1.0;
};

/// Immutable feed-forward network. Construction validates the layer chain.
class NetworkModel {
 public:
  NetworkModel(std::string name, std::size_t input_dim, std::vector<Layer> layers,
               InputBox box = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return widths_.back(); }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  const InputBox& input_box() const noexcept { return box_; }

  bool ends_in_softmax() const noexcept;

  /// Number of leading layers evaluated for `tap`.
  std::size_t depth(EvalTap tap) const;
  std::size_t output_width(EvalTap tap) const;
  /// Width after layer i (i = 0 is the input).
  std::size_t width_after(std::size_t i) const { return widths_.at(i); }

  /// Total number of non-input units across all layers.
  std::size_t neuron_count() const;

  Vector forward(const Vector& x, EvalTap tap = EvalTap::Output) const;

 private:
  std::string name_;
  std::size_t input_dim_;
  std::vector<Layer> layers_;
  std::vector<std::size_t> widths_;
  InputBox box_;
};

/// Parses the JSON model format. Conv layers are lowered to dense matrices,
/// dropout layers are dropped (identity at inference).
NetworkModel load_model(std::string_view text);
NetworkModel load_model_file(const std::filesystem::path& path);

nlohmann::json model_to_json(const NetworkModel& net);
void save_model_file(const NetworkModel& net, const std::filesystem::path& path);

/// Dense matrix equivalent to a 2-D convolution over a channel-major
/// (C, H, W) input flattened row by row. Exposed for testing.
DenseLayer lower_conv2d(std::size_t channels, std::size_t height, std::size_t width,
                        const std::vector<std::vector<Matrix>>& kernels, const Vector& bias,
                        std::size_t stride, std::size_t padding, Activation activation);

}  // namespace lipreach
