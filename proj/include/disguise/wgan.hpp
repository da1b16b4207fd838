#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "disguise/image.hpp"
#include "disguise/mlp.hpp"

namespace disguise {

/// Width of the single hidden layer in both the generator and the critic.
inline constexpr std::size_t kHiddenWidth = 64;

struct TrainConfig {
    double learning_rate = 5e-5;
    double clip_c = 0.01;
    std::size_t n_critic = 5;
    std::size_t max_iters = 2000;
    std::uint64_t seed = 1;
    std::optional<double> target_psnr_db;  // early stop once reconstruction reaches this
    std::size_t image_side = 256;
    bool verify_clipping = false;  // test hook: assert the critic stays in [-c, c] after every step
};

/// Per-parameter squared-gradient accumulators for RMSProp.
struct RmsPropState {
    Matrix w1, b1, w2, b2;

    static constexpr double decay = 0.9;
    static constexpr double epsilon = 1e-8;

    static RmsPropState zeros_like(const MlpParams& p);
};

struct IterationRecord {
    std::size_t iter;     // generator iteration, 0-based
    double critic_loss;   // mean f(fake) - mean f(real), before the generator update
    double gen_loss;      // -mean f(fake), before the generator update
    double w_estimate;    // mean f(real) - mean f(fake): the Wasserstein progress signal
    double mse;           // reconstruction vs original in 8-bit units^2, after the update
};
using TrainHistory = std::vector<IterationRecord>;

struct TrainResult {
    MlpParams generator;
    TrainHistory history;
};

/// mean(f_fake) - mean(f_real); what the critic minimizes.
double critic_loss(const Matrix& f_fake, const Matrix& f_real);

/// -mean(f_fake); what the generator minimizes.
double generator_loss(const Matrix& f_fake);

/// One RMSProp update: s' = decay*s + (1-decay)*g^2, theta' = theta - lr*g/(sqrt(s')+eps).
/// Pass lvalues to keep the inputs untouched; move them to update in place.
std::pair<MlpParams, RmsPropState> rmsprop_step(MlpParams params, const Gradients& grads,
                                                RmsPropState state, double lr);

/// Every weight and bias clamped to [-c, c]; the Lipschitz surrogate.
MlpParams clip_critic(MlpParams critic, double c);

/// Adversarial memorization of one image pair: per generator iteration the
/// critic is updated n_critic times (loss, step, clip), then the generator
/// takes one step against the frozen critic. Deterministic given cfg.seed.
TrainResult train_pair(const Image& disguise, const Image& original, const TrainConfig& cfg);

/// Pushes the disguise image through the generator and denormalizes.
Image reveal(const MlpParams& generator, const Image& disguise);

/// One tab-separated line per record: iter, critic_loss, gen_loss, w_estimate, mse.
void write_history(std::ostream& out, const TrainHistory& history);

}  // namespace disguise
