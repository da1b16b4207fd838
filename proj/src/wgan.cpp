#include "disguise/wgan.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "disguise/metrics.hpp"

namespace disguise {

namespace {

void validate(const TrainConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate must be positive");
    if (cfg.clip_c <= 0.0) throw std::invalid_argument("train: clip_c must be positive");
    if (cfg.n_critic < 1) throw std::invalid_argument("train: n_critic must be at least 1");
    if (cfg.image_side < 1) throw std::invalid_argument("train: image_side must be positive");
}

Matrix rmsprop_update(Matrix param, const Matrix& grad, Matrix& accum, double lr) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad.data()[i];
        double& s = accum.data()[i];
        s = RmsPropState::decay * s + (1.0 - RmsPropState::decay) * g * g;
        param.data()[i] -= lr * g / (std::sqrt(s) + RmsPropState::epsilon);
    }
    return param;
}

void check_clipped(const MlpParams& critic, double c) {
    for (const Matrix* m : {&critic.w1, &critic.b1, &critic.w2, &critic.b2})
        for (double v : m->data())
            if (v < -c || v > c)
                throw std::logic_error("train: critic parameter escaped the clipping range");
}

}  // namespace

RmsPropState RmsPropState::zeros_like(const MlpParams& p) {
    RmsPropState s;
    s.w1 = Matrix(p.w1.rows(), p.w1.cols());
    s.b1 = Matrix(p.b1.rows(), p.b1.cols());
    s.w2 = Matrix(p.w2.rows(), p.w2.cols());
    s.b2 = Matrix(p.b2.rows(), p.b2.cols());
    return s;
}

double critic_loss(const Matrix& f_fake, const Matrix& f_real) {
    if (f_fake.cols() != 1 || f_real.cols() != 1 || f_fake.rows() != f_real.rows())
        throw std::invalid_argument("critic_loss: score vectors must be equal-length columns");
    return mean(f_fake) - mean(f_real);
}

double generator_loss(const Matrix& f_fake) {
    if (f_fake.cols() != 1) throw std::invalid_argument("generator_loss: scores must be a column");
    return -mean(f_fake);
}

std::pair<MlpParams, RmsPropState> rmsprop_step(MlpParams params, const Gradients& grads,
                                                RmsPropState state, double lr) {
    if (lr <= 0.0) throw std::invalid_argument("rmsprop_step: lr must be positive");
    if (!grads.w1.same_shape(params.w1) || !grads.b1.same_shape(params.b1) ||
        !grads.w2.same_shape(params.w2) || !grads.b2.same_shape(params.b2) ||
        !state.w1.same_shape(params.w1) || !state.b1.same_shape(params.b1) ||
        !state.w2.same_shape(params.w2) || !state.b2.same_shape(params.b2))
        throw std::invalid_argument("rmsprop_step: shape mismatch");
    params.w1 = rmsprop_update(std::move(params.w1), grads.w1, state.w1, lr);
    params.b1 = rmsprop_update(std::move(params.b1), grads.b1, state.b1, lr);
    params.w2 = rmsprop_update(std::move(params.w2), grads.w2, state.w2, lr);
    params.b2 = rmsprop_update(std::move(params.b2), grads.b2, state.b2, lr);
    return {std::move(params), std::move(state)};
}

MlpParams clip_critic(MlpParams critic, double c) {
    if (c <= 0.0) throw std::invalid_argument("clip_critic: c must be positive");
    critic.w1 = clamp(critic.w1, -c, c);
    critic.b1 = clamp(critic.b1, -c, c);
    critic.w2 = clamp(critic.w2, -c, c);
    critic.b2 = clamp(critic.b2, -c, c);
    return critic;
}

TrainResult train_pair(const Image& disguise, const Image& original, const TrainConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.image_side;
    if (disguise.width != n || disguise.height != n || original.width != n || original.height != n)
        throw std::invalid_argument("train: images must be image_side x image_side");

    const Matrix x = to_vector(disguise);
    const Matrix target = to_vector(original);
    const std::size_t dim = n * n;

    // Single prng stream: generator weights drawn first, then critic.
    Prng prng(cfg.seed);
    MlpParams gen = init_mlp(prng, dim, kHiddenWidth, dim, Activation::relu, Activation::sigmoid);
    MlpParams critic = init_mlp(prng, dim, kHiddenWidth, 1, Activation::relu, Activation::linear);
    RmsPropState gen_state = RmsPropState::zeros_like(gen);
    RmsPropState critic_state = RmsPropState::zeros_like(critic);

    const Matrix d_up = Matrix::from_rows({{1.0}});
    const Matrix d_down = Matrix::from_rows({{-1.0}});

    TrainHistory history;
    history.reserve(cfg.max_iters);

    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        // The real sample is the fixed original and the fake its current
        // reconstruction, so both expectations collapse to single scores.
        for (std::size_t k = 0; k < cfg.n_critic; ++k) {
            const Matrix fake = forward(gen, x).first;
            auto [f_fake, cache_fake] = forward(critic, fake);
            auto [f_real, cache_real] = forward(critic, target);
            Gradients g = add(backward(critic, cache_fake, d_up),
                              backward(critic, cache_real, d_down));
            std::tie(critic, critic_state) =
                rmsprop_step(std::move(critic), g, std::move(critic_state), cfg.learning_rate);
            critic = clip_critic(std::move(critic), cfg.clip_c);
            if (cfg.verify_clipping) check_clipped(critic, cfg.clip_c);
        }

        auto [fake, gen_cache] = forward(gen, x);
        auto [f_fake, critic_cache] = forward(critic, fake);
        const Matrix f_real = forward(critic, target).first;
        IterationRecord rec;
        rec.iter = it;
        rec.critic_loss = critic_loss(f_fake, f_real);
        rec.gen_loss = generator_loss(f_fake);
        rec.w_estimate = -rec.critic_loss;

        // Generator gradient flows through the frozen critic.
        const Matrix d_fake = input_gradient(critic, critic_cache, d_down);
        Gradients gen_grads = backward(gen, gen_cache, d_fake);
        std::tie(gen, gen_state) =
            rmsprop_step(std::move(gen), gen_grads, std::move(gen_state), cfg.learning_rate);

        rec.mse = mse(from_vector(forward(gen, x).first, n), original);
        history.push_back(rec);

        if (cfg.target_psnr_db) {
            const double p = rec.mse == 0.0 ? std::numeric_limits<double>::infinity()
                                            : 10.0 * std::log10(255.0 * 255.0 / rec.mse);
            if (p >= *cfg.target_psnr_db) break;
        }
    }

    return {std::move(gen), std::move(history)};
}

Image reveal(const MlpParams& generator, const Image& disguise) {
    if (disguise.width != disguise.height)
        throw std::invalid_argument("reveal: disguise image must be square");
    if (disguise.width * disguise.height != generator.in_dim())
        throw std::invalid_argument("reveal: disguise size does not match the generator input");
    const std::size_t out_side =
        static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(generator.out_dim()))));
    if (out_side * out_side != generator.out_dim())
        throw std::invalid_argument("reveal: generator output is not a square image");
    return from_vector(forward(generator, to_vector(disguise)).first, out_side);
}

void write_history(std::ostream& out, const TrainHistory& history) {
    char line[160];
    for (const IterationRecord& r : history) {
        std::snprintf(line, sizeof line, "%zu\t%.9g\t%.9g\t%.9g\t%.9g\n", r.iter, r.critic_loss,
                      r.gen_loss, r.w_estimate, r.mse);
        out << line;
    }
}

}  // namespace disguise
