#include "slicerl/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace slicerl::nn {

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("MlpSpec: need at least input and output sizes");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("MlpSpec: layer sizes must be >= 1");
}

Layout Layout::from_spec(const MlpSpec& spec) {
  spec.validate();
  Layout layout;
  int offset = 0;
  for (int l = 0; l < spec.num_affine(); ++l) {
    Layer layer;
    layer.in = spec.layer_sizes[static_cast<size_t>(l)];
    layer.out = spec.layer_sizes[static_cast<size_t>(l) + 1];
    layer.w_offset = offset;
    offset += layer.in * layer.out;
    layer.b_offset = offset;
    offset += layer.out;
    layout.layers.push_back(layer);
  }
  layout.total = offset;
  return layout;
}

ParamVector init_params(const MlpSpec& spec, Rng& rng, double out_scale) {
  Layout layout = Layout::from_spec(spec);
  ParamVector params(static_cast<size_t>(layout.total), 0.0);
  for (size_t l = 0; l < layout.layers.size(); ++l) {
    const Layout::Layer& layer = layout.layers[l];
    double limit = std::sqrt(6.0 / (layer.in + layer.out));
    if (l + 1 == layout.layers.size()) limit *= out_scale;
    std::uniform_real_distribution<double> u(-limit, limit);
    for (int k = 0; k < layer.in * layer.out; ++k)
      params[static_cast<size_t>(layer.w_offset + k)] = u(rng);
  }
  return params;
}

void forward_batch(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                   std::span<const double> input, int batch, Workspace& ws) {
  if (static_cast<int>(params.size()) != layout.total)
    throw std::invalid_argument("forward_batch: params length != layout total");
  if (batch < 1) throw std::invalid_argument("forward_batch: batch must be >= 1");
  if (static_cast<int>(input.size()) != batch * spec.input_size())
    throw std::invalid_argument("forward_batch: input length != batch * input_size");

  size_t n_aff = layout.layers.size();
  ws.batch = batch;
  ws.acts.resize(n_aff + 1);
  ws.preacts.resize(n_aff);
  ws.acts[0].assign(input.begin(), input.end());

  for (size_t l = 0; l < n_aff; ++l) {
    const Layout::Layer& layer = layout.layers[l];
    bool last = l + 1 == n_aff;
    ws.preacts[l].resize(static_cast<size_t>(batch) * layer.out);
    ws.acts[l + 1].resize(static_cast<size_t>(batch) * layer.out);
    const double* x = ws.acts[l].data();
    double* z = ws.preacts[l].data();
    double* y = ws.acts[l + 1].data();
    for (int b = 0; b < batch; ++b) {
      const double* xb = x + static_cast<size_t>(b) * layer.in;
      double* zb = z + static_cast<size_t>(b) * layer.out;
      double* yb = y + static_cast<size_t>(b) * layer.out;
      for (int o = 0; o < layer.out; ++o) {
        const double* w = params.data() + layer.w_offset + static_cast<size_t>(o) * layer.in;
        double acc = params[static_cast<size_t>(layer.b_offset + o)];
        for (int i = 0; i < layer.in; ++i) acc += w[i] * xb[i];
        zb[o] = acc;
        yb[o] = last ? acc : (acc > 0 ? acc : 0.0);
      }
    }
  }
}

void backward_batch(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                    std::span<const double> upstream, Workspace& ws, ParamVector& param_grad,
                    std::vector<double>* input_grad) {
  size_t n_aff = layout.layers.size();
  if (ws.batch < 1 || ws.acts.size() != n_aff + 1)
    throw std::logic_error("backward_batch: run forward_batch first");
  if (static_cast<int>(upstream.size()) != ws.batch * spec.output_size())
    throw std::invalid_argument("backward_batch: upstream length != batch * output_size");
  if (static_cast<int>(param_grad.size()) != layout.total)
    throw std::invalid_argument("backward_batch: param_grad length != layout total");

  int batch = ws.batch;
  ws.delta.assign(upstream.begin(), upstream.end());
  for (size_t li = n_aff; li-- > 0;) {
    const Layout::Layer& layer = layout.layers[li];
    const double* x = ws.acts[li].data();
    const double* d = ws.delta.data();
    bool want_dx = li > 0 || input_grad != nullptr;
    if (want_dx) ws.delta_next.assign(static_cast<size_t>(batch) * layer.in, 0.0);
    for (int b = 0; b < batch; ++b) {
      const double* xb = x + static_cast<size_t>(b) * layer.in;
      const double* db = d + static_cast<size_t>(b) * layer.out;
      double* dxb = want_dx ? ws.delta_next.data() + static_cast<size_t>(b) * layer.in : nullptr;
      for (int o = 0; o < layer.out; ++o) {
        double g = db[o];
        if (g == 0.0) continue;
        double* dw = param_grad.data() + layer.w_offset + static_cast<size_t>(o) * layer.in;
        const double* w = params.data() + layer.w_offset + static_cast<size_t>(o) * layer.in;
        for (int i = 0; i < layer.in; ++i) dw[i] += g * xb[i];
        param_grad[static_cast<size_t>(layer.b_offset + o)] += g;
        if (dxb)
          for (int i = 0; i < layer.in; ++i) dxb[i] += g * w[i];
      }
    }
    if (li > 0) {
      // relu gate of the previous layer; derivative at exactly 0 is 0
      const double* z_prev = ws.preacts[li - 1].data();
      for (size_t k = 0; k < ws.delta_next.size(); ++k)
        ws.delta_next[k] = z_prev[k] > 0 ? ws.delta_next[k] : 0.0;
      std::swap(ws.delta, ws.delta_next);
    } else if (input_grad) {
      *input_grad = ws.delta_next;
    }
  }
}

std::vector<double> mlp_forward(const ParamVector& params, const MlpSpec& spec,
                                const Layout& layout, std::span<const double> input) {
  Workspace ws;
  forward_batch(params, spec, layout, input, 1, ws);
  return ws.acts.back();
}

ParamVector mlp_backward(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                         std::span<const double> input, std::span<const double> upstream,
                         std::vector<double>* input_grad) {
  Workspace ws;
  forward_batch(params, spec, layout, input, 1, ws);
  ParamVector grad(params.size(), 0.0);
  backward_batch(params, spec, layout, upstream, ws, grad, input_grad);
  return grad;
}

}  // namespace slicerl::nn
