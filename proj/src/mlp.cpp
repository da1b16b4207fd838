#include "disguise/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace disguise {

namespace {

Matrix apply_activation(Activation a, const Matrix& z) {
    switch (a) {
        case Activation::relu:
            return map_elementwise(z, [](double v) { return v > 0.0 ? v : 0.0; });
        case Activation::sigmoid:
            return map_elementwise(z, [](double v) { return 1.0 / (1.0 + std::exp(-v)); });
        case Activation::linear:
            return z;
    }
    throw std::invalid_argument("mlp: unknown activation");
}

// Derivative of the activation at z, expressed through z and act(z).
Matrix activation_gradient(Activation a, const Matrix& z, const Matrix& out) {
    switch (a) {
        case Activation::relu:
            return map_elementwise(z, [](double v) { return v > 0.0 ? 1.0 : 0.0; });
        case Activation::sigmoid:
            return map_elementwise(out, [](double y) { return y * (1.0 - y); });
        case Activation::linear:
            return map_elementwise(z, [](double) { return 1.0; });
    }
    throw std::invalid_argument("mlp: unknown activation");
}

// Backprops dL/dy to the hidden pre-activation gradients shared by
// backward() and input_gradient().
struct Deltas {
    Matrix dz1, dz2;
};

Deltas deltas(const MlpParams& p, const ForwardCache& cache, const Matrix& dl_dy) {
    if (dl_dy.rows() != p.out_dim() || dl_dy.cols() != 1)
        throw std::invalid_argument("backward: dl_dy shape mismatch");
    if (!all_finite(dl_dy)) throw std::invalid_argument("backward: dl_dy must be finite");
    if (cache.input.rows() != p.in_dim() || cache.a1.rows() != p.hidden_dim())
        throw std::invalid_argument("backward: cache does not match params");
    Matrix dz2 = hadamard(dl_dy, activation_gradient(p.out_act, cache.z2, cache.output));
    Matrix da1 = matmul(transpose(p.w2), dz2);
    Matrix dz1 = hadamard(da1, activation_gradient(p.hidden_act, cache.z1, cache.a1));
    return {std::move(dz1), std::move(dz2)};
}

}  // namespace

const char* to_string(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::linear: return "linear";
    }
    return "?";
}

Gradients add(Gradients a, const Gradients& b) {
    a.w1 = add(a.w1, b.w1);
    a.b1 = add(a.b1, b.b1);
    a.w2 = add(a.w2, b.w2);
    a.b2 = add(a.b2, b.b2);
    return a;
}

MlpParams init_mlp(Prng& prng, std::size_t in_dim, std::size_t hidden_dim, std::size_t out_dim,
                   Activation hidden_act, Activation out_act) {
    if (in_dim == 0 || hidden_dim == 0 || out_dim == 0)
        throw std::invalid_argument("init_mlp: dimensions must be positive");
    const double s1 = std::sqrt(6.0 / static_cast<double>(in_dim + hidden_dim));
    const double s2 = std::sqrt(6.0 / static_cast<double>(hidden_dim + out_dim));
    MlpParams p;
    p.w1 = uniform(prng, hidden_dim, in_dim, -s1, s1);
    p.b1 = Matrix(hidden_dim, 1);
    p.w2 = uniform(prng, out_dim, hidden_dim, -s2, s2);
    p.b2 = Matrix(out_dim, 1);
    p.hidden_act = hidden_act;
    p.out_act = out_act;
    return p;
}

std::pair<Matrix, ForwardCache> forward(const MlpParams& p, const Matrix& x) {
    if (x.rows() != p.in_dim() || x.cols() != 1)
        throw std::invalid_argument("forward: input shape mismatch");
    if (!all_finite(x)) throw std::invalid_argument("forward: input must be finite");
    ForwardCache c;
    c.input = x;
    c.z1 = add(matmul(p.w1, x), p.b1);
    c.a1 = apply_activation(p.hidden_act, c.z1);
    c.z2 = add(matmul(p.w2, c.a1), p.b2);
    c.output = apply_activation(p.out_act, c.z2);
    return {c.output, std::move(c)};
}

Gradients backward(const MlpParams& p, const ForwardCache& cache, const Matrix& dl_dy) {
    Deltas d = deltas(p, cache, dl_dy);
    Gradients g;
    g.w2 = matmul(d.dz2, transpose(cache.a1));
    g.b2 = d.dz2;
    g.w1 = matmul(d.dz1, transpose(cache.input));
    g.b1 = d.dz1;
    return g;
}

Matrix input_gradient(const MlpParams& p, const ForwardCache& cache, const Matrix& dl_dy) {
    Deltas d = deltas(p, cache, dl_dy);
    return matmul(transpose(p.w1), d.dz1);
}

Gradients numeric_gradients(const MlpParams& p, const Matrix& x, const ScalarLoss& loss,
                            double step) {
    auto diff_matrix = [&](Matrix MlpParams::* field) {
        MlpParams probe = p;
        Matrix& m = probe.*field;
        Matrix grad(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double saved = m.data()[i];
            m.data()[i] = saved + step;
            const double up = loss.value(forward(probe, x).first);
            m.data()[i] = saved - step;
            const double down = loss.value(forward(probe, x).first);
            m.data()[i] = saved;
            grad.data()[i] = (up - down) / (2.0 * step);
        }
        return grad;
    };
    Gradients g;
    g.w1 = diff_matrix(&MlpParams::w1);
    g.b1 = diff_matrix(&MlpParams::b1);
    g.w2 = diff_matrix(&MlpParams::w2);
    g.b2 = diff_matrix(&MlpParams::b2);
    return g;
}

double max_rel_error(const Gradients& a, const Gradients& b) {
    double worst = 0.0;
    auto scan = [&](const Matrix& x, const Matrix& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double ax = x.data()[i], ay = y.data()[i];
            const double rel = std::abs(ax - ay) / std::max(1e-8, std::abs(ax) + std::abs(ay));
            worst = std::max(worst, rel);
        }
    };
    scan(a.w1, b.w1);
    scan(a.b1, b.b1);
    scan(a.w2, b.w2);
    scan(a.b2, b.b2);
    return worst;
}

double gradient_check(const MlpParams& p, const Matrix& x, const ScalarLoss& loss) {
    if (p.param_count() > 1000)
        throw std::invalid_argument("gradient_check: net too large to finite-difference");
    auto [y, cache] = forward(p, x);
    Gradients analytic = backward(p, cache, loss.grad(y));
    Gradients numeric = numeric_gradients(p, x, loss);
    return max_rel_error(analytic, numeric);
}

}  // namespace disguise
