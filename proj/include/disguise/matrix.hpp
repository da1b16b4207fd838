#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace disguise {

/// Dense row-major matrix of doubles. Operations return fresh values;
/// existing matrices are never mutated, so sharing across threads is safe.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-filled
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
Matrix transpose(const Matrix& a);

/// Every entry clamped to [lo, hi]. Requires lo <= hi.
Matrix clamp(const Matrix& a, double lo, double hi);

double mean(const Matrix& a);
bool all_finite(const Matrix& a);

template <typename F>
Matrix map_elementwise(const Matrix& a, F&& f) {
    std::vector<double> out(a.size());
    const auto& in = a.data();
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
    return Matrix(a.rows(), a.cols(), std::move(out));  // ctor re-checks finiteness
}

/// Seeded deterministic generator (mt19937_64 stream). The same seed always
/// reproduces the same sequence within one build. Single-owner: never share
/// one instance across threads.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [lo, hi). Requires lo < hi.
    double next_uniform(double lo, double hi);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// rows x cols matrix of i.i.d. uniform draws in [lo, hi), consuming the prng.
Matrix uniform(Prng& prng, std::size_t rows, std::size_t cols, double lo, double hi);

}  // namespace disguise
