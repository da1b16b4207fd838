#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "disguise/matrix.hpp"

namespace disguise {

enum class Activation : std::uint8_t { relu = 0, sigmoid = 1, linear = 2 };

const char* to_string(Activation a);

/// Two-layer perceptron parameters: y = out_act(w2 * hidden_act(w1 x + b1) + b2).
struct MlpParams {
    Matrix w1;  // hidden x in
    Matrix b1;  // hidden x 1
    Matrix w2;  // out x hidden
    Matrix b2;  // out x 1
    Activation hidden_act = Activation::relu;
    Activation out_act = Activation::linear;

    std::size_t in_dim() const { return w1.cols(); }
    std::size_t hidden_dim() const { return w1.rows(); }
    std::size_t out_dim() const { return w2.rows(); }
    std::size_t param_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

    bool operator==(const MlpParams&) const = default;
};

/// Intermediates of one forward pass, kept for backpropagation.
struct ForwardCache {
    Matrix input;
    Matrix z1;  // w1 x + b1
    Matrix a1;  // hidden_act(z1)
    Matrix z2;  // w2 a1 + b2
    Matrix output;
};

struct Gradients {
    Matrix w1, b1, w2, b2;
};

Gradients add(Gradients a, const Gradients& b);

/// Glorot-uniform weights (per-layer bound sqrt(6/(fan_in+fan_out))), zero biases.
/// Consumes the prng: w1 is drawn first, then w2, both row-major.
MlpParams init_mlp(Prng& prng, std::size_t in_dim, std::size_t hidden_dim, std::size_t out_dim,
                   Activation hidden_act, Activation out_act);

std::pair<Matrix, ForwardCache> forward(const MlpParams& p, const Matrix& x);

/// Exact analytic gradients of a scalar loss L with respect to every
/// parameter, given dL/dy from downstream.
Gradients backward(const MlpParams& p, const ForwardCache& cache, const Matrix& dl_dy);

/// dL/dx alone; used to chain a loss through a frozen network.
Matrix input_gradient(const MlpParams& p, const ForwardCache& cache, const Matrix& dl_dy);

/// Scalar loss of the network output together with its analytic gradient.
struct ScalarLoss {
    std::function<double(const Matrix&)> value;
    std::function<Matrix(const Matrix&)> grad;
};

/// Central-difference gradients of loss(forward(p, x)) — the independent
/// oracle backward() is checked against. Only sensible for small nets.
Gradients numeric_gradients(const MlpParams& p, const Matrix& x, const ScalarLoss& loss,
                            double step = 1e-5);

/// max over entries of |a - b| / max(1e-8, |a| + |b|).
double max_rel_error(const Gradients& a, const Gradients& b);

/// Compares backward() against numeric_gradients() and returns the max
/// relative error. Rejects nets above 1000 parameters.
double gradient_check(const MlpParams& p, const Matrix& x, const ScalarLoss& loss);

}  // namespace disguise
