#include "disguise/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace disguise {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    require(rows > 0 && cols > 0, "matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    require(rows > 0 && cols > 0, "matrix: dimensions must be positive");
    require(data_.size() == rows * cols, "matrix: data length must equal rows*cols");
    for (double v : data_)
        require(std::isfinite(v), "matrix: entries must be finite");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    require(rows.size() > 0 && rows.begin()->size() > 0, "matrix: dimensions must be positive");
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.begin()->size());
    for (const auto& r : rows) {
        require(r.size() == rows.begin()->size(), "matrix: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), rows.begin()->size(), std::move(flat));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matmul: a.cols must equal b.rows");
    Matrix out(a.rows(), b.cols());
    const double* ad = a.data().data();
    const double* bd = b.data().data();
    double* od = out.data().data();
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    // i-k-j loop order keeps both b and out accesses sequential.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double av = ad[i * k + p];
            if (av == 0.0) continue;
            const double* brow = bd + p * m;
            double* orow = od + i * m;
            for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
        }
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require(a.same_shape(b), "add: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    require(a.same_shape(b), "sub: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    require(a.same_shape(b), "hadamard: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= b.data()[i];
    return out;
}

Matrix scale(const Matrix& a, double s) {
    Matrix out = a;
    for (double& v : out.data()) v *= s;
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Matrix clamp(const Matrix& a, double lo, double hi) {
    require(lo <= hi, "clamp: lo must not exceed hi");
    Matrix out = a;
    for (double& v : out.data()) v = std::min(hi, std::max(lo, v));
    return out;
}

double mean(const Matrix& a) {
    double sum = 0.0;
    for (double v : a.data()) sum += v;
    return sum / static_cast<double>(a.size());
}

bool all_finite(const Matrix& a) {
    return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

double Prng::next_uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: lo must be less than hi");
    // 53-bit mantissa draw in [0,1); avoids distribution objects whose output
    // ordering the standard leaves unspecified.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    double v = lo + u * (hi - lo);
    if (v >= hi) v = std::nextafter(hi, lo);  // guard the half-open bound against rounding
    return v;
}

Matrix uniform(Prng& prng, std::size_t rows, std::size_t cols, double lo, double hi) {
    Matrix out(rows, cols);
    for (double& v : out.data()) v = prng.next_uniform(lo, hi);
    return out;
}

}  // namespace disguise
