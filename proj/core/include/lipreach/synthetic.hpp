#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lipreach/model.hpp"

namespace lipreach {

struct RandomNetSpec {
  std::string name = "random";
  std::size_t input_dim = 2;
  std::vector<std::size_t> hidden;
  /// One per hidden layer, or a single entry applied to all.
  std::vector<Activation> activations{Activation::Relu};
  std::size_t output_dim = 1;
  /// Every dense weight matrix is rescaled to this spectral norm.
  double layer_norm = 1.0;
  double bias_scale = 0.5;
  InputBox box{};
  std::uint64_t seed = 1;
};

/// Dense network with Gaussian weights, deterministic in spec.seed.
NetworkModel random_network(const RandomNetSpec& spec);

/// Same function with every hidden dense layer widened `factor` times by
/// neurons that have zero incoming and zero outgoing weights.
NetworkModel pad_hidden_width(const NetworkModel& net, std::size_t factor);

struct SuiteEntry {
  NetworkModel net;
  /// Index of the entry this one re-parameterises, if any.
  std::ptrdiff_t twin_of = -1;
};

/// Six 2-input, 1-output networks of growing width and depth over [0, 10]^2,
/// followed by their width-doubled twins when `with_twins` is set.
std::vector<SuiteEntry> benchmark_suite(bool with_twins = true, std::uint64_t seed = 2018);

}  // namespace lipreach
