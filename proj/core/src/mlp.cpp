#include "forgetbench/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "forgetbench/errors.hpp"
#include "forgetbench/rng.hpp"

namespace forgetbench {

namespace {

void check_architecture(const std::vector<std::size_t>& layer_dims) {
  if (layer_dims.size() < 2) {
    throw ConfigError("model needs at least an input and an output layer");
  }
  for (std::size_t d : layer_dims) {
    if (d == 0) throw ConfigError("layer dims must be positive");
  }
  if (layer_dims.back() != 1) {
    throw ConfigError("output layer dim must be 1, got " +
                      std::to_string(layer_dims.back()));
  }
}

void check_input(const MlpModel& model, const Matrix& features) {
  if (features.cols != model.input_dim()) {
    throw ShapeError("feature width " + std::to_string(features.cols) +
                     " does not match model input dim " +
                     std::to_string(model.input_dim()));
  }
}

double clamp_prob(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

}  // namespace

MlpModel init_model(const std::vector<std::size_t>& layer_dims,
                    std::uint64_t seed) {
  check_architecture(layer_dims);
  MlpModel model;
  model.layer_dims = layer_dims;
  model.params = ParamVector::zeros(ParamLayout::dense_mlp(layer_dims));

  Rng rng(seed);
  for (const TensorSlot& slot : model.params.layout.slots()) {
    if (slot.role != TensorRole::kWeight) continue;  // biases stay zero
    const std::size_t fan_in = slot.shape[1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (double& w : model.params.slot_span(slot)) {
      w = rng.uniform(-limit, limit);
    }
  }
  return model;
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<double> forward(const MlpModel& model, const Matrix& features) {
  check_input(model, features);
  const auto& slots = model.params.layout.slots();
  const std::size_t layers = model.layer_count();

  std::vector<double> probs(features.rows);
  std::vector<double> buf_in, buf_out;
  for (std::size_t r = 0; r < features.rows; ++r) {
    const auto x = features.row(r);
    buf_in.assign(x.begin(), x.end());
    for (std::size_t l = 0; l < layers; ++l) {
      const auto w = model.params.slot_span(slots[2 * l]);
      const auto b = model.params.slot_span(slots[2 * l + 1]);
      const std::size_t in = model.layer_dims[l];
      const std::size_t out = model.layer_dims[l + 1];
      buf_out.assign(b.begin(), b.end());
      for (std::size_t o = 0; o < out; ++o) {
        const double* wrow = w.data() + o * in;
        double z = buf_out[o];
        for (std::size_t i = 0; i < in; ++i) z += wrow[i] * buf_in[i];
        buf_out[o] = z;
      }
      if (l + 1 < layers) {
        for (double& z : buf_out) z = z > 0.0 ? z : 0.0;  // ReLU
        buf_in.swap(buf_out);
      }
    }
    probs[r] = sigmoid(buf_out[0]);
  }
  return probs;
}

double bce_loss(std::span<const double> probs, std::span<const int> labels) {
  if (probs.size() != labels.size()) {
    throw ShapeError("bce_loss: " + std::to_string(probs.size()) +
                     " probabilities vs " + std::to_string(labels.size()) +
                     " labels");
  }
  if (probs.empty()) {
    throw ShapeError("bce_loss: empty input");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = clamp_prob(probs[i]);
    sum -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return sum / static_cast<double>(probs.size());
}

GradResult grad(const MlpModel& model, const Batch& batch,
                const Penalty& penalty) {
  batch.check_consistent();
  if (batch.size() == 0) {
    throw ShapeError("grad: empty batch");
  }
  check_input(model, batch.features);

  const auto& slots = model.params.layout.slots();
  const std::size_t layers = model.layer_count();
  const std::size_t n = batch.size();

  ParamVector gradient = ParamVector::zeros(model.params.layout);
  double loss_sum = 0.0;

  // Per-example forward caches; reused across the batch.
  std::vector<std::vector<double>> pre(layers);   // pre-activations z_l
  std::vector<std::vector<double>> act(layers);   // post-activations a_l
  std::vector<double> delta, delta_prev;

  for (std::size_t r = 0; r < n; ++r) {
    const auto x = batch.features.row(r);

    // Forward with caching.
    std::span<const double> prev(x);
    for (std::size_t l = 0; l < layers; ++l) {
      const auto w = model.params.slot_span(slots[2 * l]);
      const auto b = model.params.slot_span(slots[2 * l + 1]);
      const std::size_t in = model.layer_dims[l];
      const std::size_t out = model.layer_dims[l + 1];
      pre[l].assign(b.begin(), b.end());
      for (std::size_t o = 0; o < out; ++o) {
        const double* wrow = w.data() + o * in;
        double z = pre[l][o];
        for (std::size_t i = 0; i < in; ++i) z += wrow[i] * prev[i];
        pre[l][o] = z;
      }
      if (!all_finite(pre[l])) {
        throw NumericalError("non-finite pre-activation in layer " +
                             std::to_string(l));
      }
      if (l + 1 < layers) {
        act[l] = pre[l];
        for (double& z : act[l]) z = z > 0.0 ? z : 0.0;
        prev = act[l];
      }
    }

    const double p = sigmoid(pre[layers - 1][0]);
    const double y = static_cast<double>(batch.labels[r]);
    const double pc = clamp_prob(p);
    loss_sum -= batch.labels[r] == 1 ? std::log(pc) : std::log(1.0 - pc);

    // Backward. d(BCE o sigmoid)/dz at the output is (p - y).
    delta.assign(1, p - y);
    for (std::size_t l = layers; l-- > 0;) {
      const auto w = model.params.slot_span(slots[2 * l]);
      auto gw = gradient.slot_span(slots[2 * l]);
      auto gb = gradient.slot_span(slots[2 * l + 1]);
      const std::size_t in = model.layer_dims[l];
      const std::size_t out = model.layer_dims[l + 1];
      const std::span<const double> below =
          l == 0 ? x : std::span<const double>(act[l - 1]);

      for (std::size_t o = 0; o < out; ++o) {
        const double d = delta[o];
        gb[o] += d;
        double* gwrow = gw.data() + o * in;
        for (std::size_t i = 0; i < in; ++i) gwrow[i] += d * below[i];
      }
      if (l == 0) break;

      delta_prev.assign(in, 0.0);
      for (std::size_t o = 0; o < out; ++o) {
        const double d = delta[o];
        const double* wrow = w.data() + o * in;
        for (std::size_t i = 0; i < in; ++i) delta_prev[i] += d * wrow[i];
      }
      for (std::size_t i = 0; i < in; ++i) {
        if (pre[l - 1][i] <= 0.0) delta_prev[i] = 0.0;  // ReLU gate
      }
      delta.swap(delta_prev);
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  scale_in_place(gradient, inv_n);
  double total_loss = loss_sum * inv_n;

  PenaltyTerm term = penalty.evaluate(model.params);
  require_compatible(gradient, term.gradient, "grad: penalty gradient");
  add_in_place(gradient, term.gradient);
  total_loss += term.loss;

  return {total_loss, std::move(gradient)};
}

}  // namespace forgetbench
