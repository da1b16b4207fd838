// Command-line front end for the image disguise protocol: train a generator
// keyfile from a (disguise, original) pair, reveal an original through a
// keyfile, and inspect/verify the artifacts involved.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "disguise/errors.hpp"
#include "disguise/image.hpp"
#include "disguise/keyfile.hpp"
#include "disguise/metrics.hpp"
#include "disguise/wgan.hpp"

namespace {

// 0 success, 1 usage, 2 I/O or malformed input, 3 keyfile corruption/version.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitKey = 3;

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct TrainArgs {
    std::string disguise, original, key_out, log;
    disguise::TrainConfig cfg;
    double target_psnr = 0.0;
    bool has_target = false;
};

int run_train(const TrainArgs& a) {
    disguise::TrainConfig cfg = a.cfg;
    if (a.has_target) cfg.target_psnr_db = a.target_psnr;

    const disguise::Image img = disguise::load_pgm(a.disguise);
    const disguise::Image original = disguise::load_pgm(a.original);

    disguise::TrainResult result = disguise::train_pair(img, original, cfg);
    disguise::save_key_file(result.generator, a.key_out);

    if (!a.log.empty()) {
        std::ofstream log(a.log, std::ios::trunc);
        if (!log) throw disguise::IoError("cannot create " + a.log);
        disguise::write_history(log, result.history);
        if (!log.flush()) throw disguise::IoError("write failed on " + a.log);
    }

    const disguise::Fidelity f =
        disguise::fidelity(disguise::reveal(result.generator, img), original);
    std::cout << "iterations=" << result.history.size() << "\n"
              << "mse=" << fmt_double(f.mse) << "\n"
              << "psnr_db=" << fmt_double(f.psnr_db) << "\n";
    return kExitOk;
}

int run_reveal(const std::string& disguise_path, const std::string& key_path,
               const std::string& out_path) {
    const disguise::MlpParams generator = disguise::load_key_file(key_path);
    const disguise::Image img = disguise::load_pgm(disguise_path);
    disguise::save_pgm(disguise::reveal(generator, img), out_path);
    return kExitOk;
}

int run_verify(const std::string& a_path, const std::string& b_path) {
    const disguise::Fidelity f =
        disguise::fidelity(disguise::load_pgm(a_path), disguise::load_pgm(b_path));
    std::cout << "mse=" << fmt_double(f.mse) << "\n"
              << "psnr_db=" << fmt_double(f.psnr_db) << "\n";
    return kExitOk;
}

int run_inspect(const std::string& key_path) {
    const disguise::MlpParams p = disguise::load_key_file(key_path);
    std::cout << "version=" << disguise::kKeyVersion << "\n"
              << "in_dim=" << p.in_dim() << "\n"
              << "hidden_dim=" << p.hidden_dim() << "\n"
              << "out_dim=" << p.out_dim() << "\n"
              << "hidden_act=" << disguise::to_string(p.hidden_act) << "\n"
              << "out_act=" << disguise::to_string(p.out_act) << "\n"
              << "parameters=" << p.param_count() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Image disguise: hide an image as the trained weights of a "
                 "generator that reproduces it from an unrelated cover image"};
    app.require_subcommand(1);

    TrainArgs targs;
    CLI::App* train = app.add_subcommand(
        "train", "Train a generator mapping a disguise image to an original and save the keyfile");
    train->add_option("--disguise", targs.disguise, "Disguise image (PGM)")->required();
    train->add_option("--original", targs.original, "Original image to protect (PGM)")->required();
    train->add_option("--key-out", targs.key_out, "Output keyfile path")->required();
    train->add_option("--size", targs.cfg.image_side, "Image side length N (inputs must be NxN)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    train->add_option("--iters", targs.cfg.max_iters, "Generator iteration budget")
        ->capture_default_str();
    train->add_option("--lr", targs.cfg.learning_rate, "RMSProp learning rate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    train->add_option("--clip", targs.cfg.clip_c, "Critic weight clipping bound c")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    train->add_option("--n-critic", targs.cfg.n_critic, "Critic updates per generator update")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    train->add_option("--seed", targs.cfg.seed, "Deterministic training seed")
        ->capture_default_str();
    CLI::Option* tp = train->add_option("--target-psnr", targs.target_psnr,
                                        "Stop early once reconstruction PSNR (dB) reaches this");
    train->add_option("--log", targs.log, "Write per-iteration training log (TSV)");

    std::string reveal_disguise, reveal_key, reveal_out;
    CLI::App* reveal = app.add_subcommand(
        "reveal", "Reconstruct the original by feeding a disguise image through a keyfile");
    reveal->add_option("--disguise", reveal_disguise, "Disguise image (PGM)")->required();
    reveal->add_option("--key", reveal_key, "Keyfile path")->required();
    reveal->add_option("--out", reveal_out, "Output image path (PGM)")->required();

    std::string verify_a, verify_b;
    CLI::App* verify = app.add_subcommand("verify", "Print mse/psnr between two images");
    verify->add_option("--a", verify_a, "First image (PGM)")->required();
    verify->add_option("--b", verify_b, "Second image (PGM)")->required();

    std::string inspect_key;
    CLI::App* inspect = app.add_subcommand("inspect", "Print keyfile dimensions and metadata");
    inspect->add_option("--key", inspect_key, "Keyfile path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (train->parsed()) {
            targs.has_target = tp->count() > 0;
            return run_train(targs);
        }
        if (reveal->parsed()) return run_reveal(reveal_disguise, reveal_key, reveal_out);
        if (verify->parsed()) return run_verify(verify_a, verify_b);
        return run_inspect(inspect_key);
    } catch (const disguise::KeyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitKey;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
