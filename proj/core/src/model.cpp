#include "lipreach/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lipreach/error.hpp"

namespace lipreach {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double activate(Activation a, double q) {
  switch (a) {
    case Activation::None:
      return q;
    case Activation::Relu:
      return q > 0.0 ? q : 0.0;
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-q));
    case Activation::Tanh:
      return std::tanh(q);
  }
  return q;
}

// Plain row-by-row accumulation. Eigen's vectorised products regroup the sum
// depending on the vector length, which would make zero-padded networks
// round differently from their unpadded originals.
Vector dense_forward(const DenseLayer& d, const Vector& x) {
  const auto rows = d.weights.rows();
  const auto cols = d.weights.cols();
  Vector y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < cols; ++c) s += d.weights(r, c) * x[c];
    y[r] = activate(d.activation, s + d.bias[r]);
  }
  return y;
}

Vector softmax_forward(const Vector& x) {
  const double m = x.maxCoeff();
  Vector e(x.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    e[i] = std::exp(x[i] - m);
    total += e[i];
  }
  return e / total;
}

Vector maxpool_forward(const MaxPoolLayer& p, const Vector& x) {
  const auto n = static_cast<std::size_t>(x.size());
  const std::size_t out = (n - p.window) / p.stride + 1;
  Vector y(static_cast<Eigen::Index>(out));
  for (std::size_t o = 0; o < out; ++o) {
    const auto start = static_cast<Eigen::Index>(o * p.stride);
    y[static_cast<Eigen::Index>(o)] =
        x.segment(start, static_cast<Eigen::Index>(p.window)).maxCoeff();
  }
  return y;
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw ParseError(std::string(what) + " contains a non-finite value");
}

// ---- JSON helpers -------------------------------------------------------

double json_number(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_number()) throw ParseError(ctx + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(ctx + ": non-finite number");
  return v;
}

std::size_t json_count(const nlohmann::json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) throw ParseError(ctx + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(ctx + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

Vector json_vector(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = json_number(j[i], ctx);
  return v;
}

Matrix json_matrix(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ParseError(ctx + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError(ctx + ": rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(ctx + ": ragged weight matrix at row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = json_number(j[r][c], ctx);
  }
  return m;
}

Activation json_activation(const nlohmann::json& layer, const std::string& ctx) {
  if (!layer.contains("activation")) return Activation::None;
  if (!layer.at("activation").is_string()) throw ParseError(ctx + ": activation must be a string");
  try {
    return activation_from_string(layer.at("activation").get<std::string>());
  } catch (const DomainError& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

DenseLayer parse_conv2d(const nlohmann::json& l, const std::string& ctx) {
  if (!l.contains("input_shape") || !l.at("input_shape").is_array() ||
      l.at("input_shape").size() != 3)
    throw ParseError(ctx + ": conv2d needs \"input_shape\": [channels, height, width]");
  const auto& shape = l.at("input_shape");
  for (const auto& s : shape)
    if (!s.is_number_integer() || s.get<long long>() <= 0)
      throw ParseError(ctx + ": input_shape entries must be positive integers");
  const auto channels = shape[0].get<std::size_t>();
  const auto height = shape[1].get<std::size_t>();
  const auto width = shape[2].get<std::size_t>();

  if (!l.contains("kernels") || !l.at("kernels").is_array() || l.at("kernels").empty())
    throw ParseError(ctx + ": conv2d needs non-empty \"kernels\" [out][in][kh][kw]");
  std::vector<std::vector<Matrix>> kernels;
  for (const auto& out : l.at("kernels")) {
    if (!out.is_array() || out.size() != channels)
      throw ParseError(ctx + ": each kernel needs one slice per input channel");
    std::vector<Matrix> slices;
    for (const auto& slice : out) slices.push_back(json_matrix(slice, ctx + " kernel"));
    kernels.push_back(std::move(slices));
  }
  Vector bias = l.contains("bias") ? json_vector(l.at("bias"), ctx + " bias")
                                   : Vector::Zero(static_cast<Eigen::Index>(kernels.size()));
  const std::size_t stride = l.contains("stride") ? json_count(l, "stride", ctx) : 1;
  const std::size_t padding = l.contains("padding") ? json_count(l, "padding", ctx) : 0;
  try {
    return lower_conv2d(channels, height, width, kernels, bias, stride, padding,
                        json_activation(l, ctx));
  } catch (const ShapeError& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::None:
      return "none";
    case Activation::Relu:
      return "relu";
    case Activation::Sigmoid:
      return "sigmoid";
    case Activation::Tanh:
      return "tanh";
  }
  return "none";
}

Activation activation_from_string(std::string_view s) {
  if (s == "none" || s == "linear") return Activation::None;
  if (s == "relu") return Activation::Relu;
  if (s == "sigmoid") return Activation::Sigmoid;
  if (s == "tanh") return Activation::Tanh;
  throw DomainError("unknown activation \"" + std::string(s) + "\"");
}

std::string_view to_string(EvalTap t) { return t == EvalTap::Output ? "output" : "logit"; }

EvalTap tap_from_string(std::string_view s) {
  if (s == "output") return EvalTap::Output;
  if (s == "logit") return EvalTap::Logit;
  throw DomainError("unknown tap \"" + std::string(s) + "\"");
}

std::size_t layer_output_width(const Layer& layer, std::size_t input_width) {
  return std::visit(
      Overloaded{
          [&](const DenseLayer& d) -> std::size_t {
            if (static_cast<std::size_t>(d.weights.cols()) != input_width)
              throw ShapeError("dense layer expects " + std::to_string(d.weights.cols()) +
                               " inputs but receives " + std::to_string(input_width));
            if (d.weights.rows() == 0) throw ShapeError("dense layer has no output neurons");
            if (d.bias.size() != d.weights.rows())
              throw ShapeError("dense layer bias length " + std::to_string(d.bias.size()) +
                               " does not match " + std::to_string(d.weights.rows()) + " rows");
            return static_cast<std::size_t>(d.weights.rows());
          },
          [&](const SoftmaxLayer&) -> std::size_t { return input_width; },
          [&](const MaxPoolLayer& p) -> std::size_t {
            if (p.window < 1 || p.window > input_width)
              throw ShapeError("maxpool window " + std::to_string(p.window) +
                               " outside [1, " + std::to_string(input_width) + "]");
            if (p.stride < 1) throw ShapeError("maxpool stride must be >= 1");
            return (input_width - p.window) / p.stride + 1;
          }},
      layer);
}

Vector apply_layer(const Layer& layer, const Vector& x) {
  return std::visit(Overloaded{[&](const DenseLayer& d) { return dense_forward(d, x); },
                               [&](const SoftmaxLayer&) { return softmax_forward(x); },
                               [&](const MaxPoolLayer& p) { return maxpool_forward(p, x); }},
                    layer);
}

NetworkModel::NetworkModel(std::string name, std::size_t input_dim, std::vector<Layer> layers,
                           InputBox box)
    : name_(std::move(name)), input_dim_(input_dim), layers_(std::move(layers)), box_(box) {
  if (input_dim_ == 0) throw ShapeError("input_dim must be positive");
  if (layers_.empty()) throw ShapeError("a network needs at least one layer");
  if (!(box_.lower < box_.upper) || !std::isfinite(box_.lower) || !std::isfinite(box_.upper))
    throw ShapeError("input box must satisfy lower < upper");

  widths_.reserve(layers_.size() + 1);
  widths_.push_back(input_dim_);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const bool is_softmax = std::holds_alternative<SoftmaxLayer>(layers_[i]);
    if (is_softmax && i + 1 != layers_.size())
      throw ShapeError("softmax must be the final layer (found at position " +
                       std::to_string(i) + ")");
    if (const auto* d = std::get_if<DenseLayer>(&layers_[i])) {
      require_finite(d->weights, "weights");
      require_finite(d->bias, "bias");
    }
    try {
      widths_.push_back(layer_output_width(layers_[i], widths_.back()));
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + std::to_string(i) + ": " + e.what());
    }
  }
}

bool NetworkModel::ends_in_softmax() const noexcept {
  return std::holds_alternative<SoftmaxLayer>(layers_.back());
}

std::size_t NetworkModel::depth(EvalTap tap) const {
  if (tap == EvalTap::Output) return layers_.size();
  if (!ends_in_softmax()) throw ShapeError("logit tap requires a trailing softmax layer");
  return layers_.size() - 1;
}

std::size_t NetworkModel::output_width(EvalTap tap) const { return widths_.at(depth(tap)); }

std::size_t NetworkModel::neuron_count() const {
  std::size_t n = 0;
  for (std::size_t i = 1; i < widths_.size(); ++i) n += widths_[i];
  return n;
}

Vector NetworkModel::forward(const Vector& x, EvalTap tap) const {
  if (static_cast<std::size_t>(x.size()) != input_dim_)
    throw ShapeError("input has length " + std::to_string(x.size()) + ", network expects " +
                     std::to_string(input_dim_));
  const std::size_t n = depth(tap);
  Vector v = x;
  for (std::size_t i = 0; i < n; ++i) v = apply_layer(layers_[i], v);
  return v;
}

DenseLayer lower_conv2d(std::size_t channels, std::size_t height, std::size_t width,
                        const std::vector<std::vector<Matrix>>& kernels, const Vector& bias,
                        std::size_t stride, std::size_t padding, Activation activation) {
  if (kernels.empty()) throw ShapeError("conv2d has no kernels");
  if (stride == 0) throw ShapeError("conv2d stride must be >= 1");
  const auto kh = static_cast<std::size_t>(kernels[0].at(0).rows());
  const auto kw = static_cast<std::size_t>(kernels[0].at(0).cols());
  for (const auto& k : kernels) {
    if (k.size() != channels) throw ShapeError("kernel channel count mismatch");
    for (const auto& s : k)
      if (static_cast<std::size_t>(s.rows()) != kh || static_cast<std::size_t>(s.cols()) != kw)
        throw ShapeError("kernels must share one spatial size");
  }
  if (static_cast<std::size_t>(bias.size()) != kernels.size())
    throw ShapeError("conv2d bias needs one entry per kernel");
  if (height + 2 * padding < kh || width + 2 * padding < kw)
    throw ShapeError("conv2d kernel larger than padded input");

  const std::size_t oh = (height + 2 * padding - kh) / stride + 1;
  const std::size_t ow = (width + 2 * padding - kw) / stride + 1;
  const std::size_t outputs = kernels.size() * oh * ow;
  const std::size_t inputs = channels * height * width;

  DenseLayer d;
  d.weights = Matrix::Zero(static_cast<Eigen::Index>(outputs), static_cast<Eigen::Index>(inputs));
  d.bias.resize(static_cast<Eigen::Index>(outputs));
  d.activation = activation;
  for (std::size_t o = 0; o < kernels.size(); ++o) {
    for (std::size_t r = 0; r < oh; ++r) {
      for (std::size_t c = 0; c < ow; ++c) {
        const auto row = static_cast<Eigen::Index>((o * oh + r) * ow + c);
        d.bias[row] = bias[static_cast<Eigen::Index>(o)];
        for (std::size_t ch = 0; ch < channels; ++ch) {
          for (std::size_t i = 0; i < kh; ++i) {
            for (std::size_t j = 0; j < kw; ++j) {
              const long long y = static_cast<long long>(r * stride + i) - static_cast<long long>(padding);
              const long long x = static_cast<long long>(c * stride + j) - static_cast<long long>(padding);
              if (y < 0 || x < 0 || y >= static_cast<long long>(height) ||
                  x >= static_cast<long long>(width))
                continue;
              const auto col = static_cast<Eigen::Index>((ch * height + static_cast<std::size_t>(y)) * width +
                                                         static_cast<std::size_t>(x));
              d.weights(row, col) +=
                  kernels[o][ch](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
          }
        }
      }
    }
  }
  return d;
}

NetworkModel load_model(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model JSON: top level must be an object");

  std::string name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("model JSON: \"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }
  const std::size_t input_dim = json_count(doc, "input_dim", "model JSON");

  InputBox box;
  if (doc.contains("input_box")) {
    const auto& b = doc.at("input_box");
    if (!b.is_array() || b.size() != 2) throw ParseError("model JSON: input_box must be [lo, hi]");
    box.lower = json_number(b[0], "input_box");
    box.upper = json_number(b[1], "input_box");
  }

  if (!doc.contains("layers") || !doc.at("layers").is_array())
    throw ParseError("model JSON: missing \"layers\" array");

  std::vector<Layer> layers;
  std::size_t index = 0;
  for (const auto& l : doc.at("layers")) {
    const std::string ctx = "layer " + std::to_string(index++);
    if (!l.is_object() || !l.contains("kind") || !l.at("kind").is_string())
      throw ParseError(ctx + ": each layer needs a string \"kind\"");
    const auto kind = l.at("kind").get<std::string>();
    if (kind == "dense") {
      if (!l.contains("weights")) throw ParseError(ctx + ": dense layer needs \"weights\"");
      DenseLayer d;
      d.weights = json_matrix(l.at("weights"), ctx + " weights");
      d.bias = l.contains("bias") ? json_vector(l.at("bias"), ctx + " bias")
                                  : Vector::Zero(d.weights.rows());
      d.activation = json_activation(l, ctx);
      layers.emplace_back(std::move(d));
    } else if (kind == "softmax") {
      layers.emplace_back(SoftmaxLayer{});
    } else if (kind == "maxpool") {
      layers.emplace_back(MaxPoolLayer{json_count(l, "window", ctx), json_count(l, "stride", ctx)});
    } else if (kind == "conv2d") {
      layers.emplace_back(parse_conv2d(l, ctx));
    } else if (kind == "dropout") {
      continue;
    } else {
      throw ParseError(ctx + ": unsupported layer kind \"" + kind + "\"");
    }
  }
  return NetworkModel(std::move(name), input_dim, std::move(layers), box);
}

NetworkModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

nlohmann::json model_to_json(const NetworkModel& net) {
  nlohmann::json doc;
  doc["name"] = net.name();
  doc["input_dim"] = net.input_dim();
  const auto& box = net.input_box();
  if (box.lower != 0.0 || box.upper != 1.0) doc["input_box"] = {box.lower, box.upper};
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    std::visit(Overloaded{[&](const DenseLayer& d) {
                            nlohmann::json w = nlohmann::json::array();
                            for (Eigen::Index r = 0; r < d.weights.rows(); ++r) {
                              nlohmann::json row = nlohmann::json::array();
                              for (Eigen::Index c = 0; c < d.weights.cols(); ++c)
                                row.push_back(d.weights(r, c));
                              w.push_back(std::move(row));
                            }
                            nlohmann::json b = nlohmann::json::array();
                            for (Eigen::Index r = 0; r < d.bias.size(); ++r) b.push_back(d.bias[r]);
                            layers.push_back({{"kind", "dense"},
                                              {"weights", std::move(w)},
                                              {"bias", std::move(b)},
                                              {"activation", to_string(d.activation)}});
                          },
                          [&](const SoftmaxLayer&) { layers.push_back({{"kind", "softmax"}}); },
                          [&](const MaxPoolLayer& p) {
                            layers.push_back(
                                {{"kind", "maxpool"}, {"window", p.window}, {"stride", p.stride}});
                          }},
               layer);
  }
  doc["layers"] = std::move(layers);
  return doc;
}

void save_model_file(const NetworkModel& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write model file " + path.string());
  out << model_to_json(net).dump() << '\n';
}

}  // namespace lipreach
