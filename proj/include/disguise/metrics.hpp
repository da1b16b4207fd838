#pragma once

#include "disguise/image.hpp"

namespace disguise {

/// Fidelity between two 8-bit images. psnr_db is +infinity when mse == 0.
struct Fidelity {
    double mse = 0.0;
    double psnr_db = 0.0;
};

/// Mean squared pixel difference in 8-bit units squared.
double mse(const Image& a, const Image& b);

/// 10*log10(255^2 / mse); +infinity for identical images.
double psnr(const Image& a, const Image& b);

Fidelity fidelity(const Image& a, const Image& b);

}  // namespace disguise
