#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>

#include "disguise/matrix.hpp"
#include "doctest.h"

using disguise::Matrix;
using disguise::Prng;

namespace {

// Independent oracle: textbook triple loop, no shortcuts shared with the
// library implementation.
Matrix naive_matmul(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

TEST_CASE("construction and shape") {
    Matrix z(2, 3);
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 3);
    CHECK(z.size() == 6);
    for (double v : z.data()) CHECK(v == 0.0);

    Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 0) == 3.0);
    CHECK(m(1, 1) == 4.0);
    CHECK(m.same_shape(Matrix(2, 2)));
    CHECK_FALSE(m.same_shape(z));
    CHECK(m == Matrix(2, 2, {1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Matrix(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(Matrix(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Matrix(1, 1, {std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Matrix::from_rows({{1.0, 2.0}, {3.0}}), std::invalid_argument);
}

TEST_CASE("matmul matches hand-computed product") {
    Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    Matrix b = Matrix::from_rows({{5.0, 6.0}, {7.0, 8.0}});
    CHECK(matmul(a, b) == Matrix::from_rows({{19.0, 22.0}, {43.0, 50.0}}));
}

TEST_CASE("matmul matches the naive triple loop on random shapes") {
    Prng prng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 1 + prng.next_u64() % 7;
        const std::size_t k = 1 + prng.next_u64() % 7;
        const std::size_t n = 1 + prng.next_u64() % 7;
        Matrix a = uniform(prng, m, k, -2.0, 2.0);
        Matrix b = uniform(prng, k, n, -2.0, 2.0);
        Matrix got = matmul(a, b);
        Matrix want = naive_matmul(a, b);
        REQUIRE(got.same_shape(want));
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-12));
    }
}

TEST_CASE("matmul rejects mismatched shapes") {
    CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("elementwise operations") {
    Matrix a = Matrix::from_rows({{1.0, -2.0}, {3.0, 0.5}});
    Matrix b = Matrix::from_rows({{4.0, 1.0}, {-1.0, 2.0}});
    CHECK(add(a, b) == Matrix::from_rows({{5.0, -1.0}, {2.0, 2.5}}));
    CHECK(sub(a, b) == Matrix::from_rows({{-3.0, -3.0}, {4.0, -1.5}}));
    CHECK(hadamard(a, b) == Matrix::from_rows({{4.0, -2.0}, {-3.0, 1.0}}));
    CHECK(scale(a, -2.0) == Matrix::from_rows({{-2.0, 4.0}, {-6.0, -1.0}}));
    CHECK(transpose(a) == Matrix::from_rows({{1.0, 3.0}, {-2.0, 0.5}}));
    CHECK_THROWS_AS(add(a, Matrix(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(sub(a, Matrix(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(hadamard(a, Matrix(1, 2)), std::invalid_argument);
}

TEST_CASE("transpose of transpose is identity") {
    Prng prng(5);
    Matrix a = uniform(prng, 4, 7, -1.0, 1.0);
    CHECK(transpose(transpose(a)) == a);
}

TEST_CASE("clamp bounds every entry") {
    Matrix a = Matrix::from_rows({{-5.0, 0.005, 5.0}});
    CHECK(clamp(a, -0.01, 0.01) == Matrix::from_rows({{-0.01, 0.005, 0.01}}));
    CHECK_THROWS_AS(clamp(a, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("mean and finiteness") {
    CHECK(mean(Matrix::from_rows({{1.0, 2.0}, {3.0, 6.0}})) == doctest::Approx(3.0));
    CHECK(all_finite(Matrix(3, 3)));
}

TEST_CASE("map_elementwise applies and re-validates") {
    Matrix a = Matrix::from_rows({{1.0, 4.0}});
    CHECK(map_elementwise(a, [](double v) { return v * v; }) ==
          Matrix::from_rows({{1.0, 16.0}}));
    CHECK_THROWS_AS(map_elementwise(a, [](double) { return std::nan(""); }),
                    std::invalid_argument);
}

TEST_CASE("prng reproduces the standard mt19937_64 stream") {
    Prng prng(7);
    std::mt19937_64 ref(7);
    for (int i = 0; i < 100; ++i) CHECK(prng.next_u64() == ref());
}

TEST_CASE("prng uniform mapping is the documented bit arithmetic") {
    Prng prng(123);
    std::mt19937_64 ref(123);
    for (int i = 0; i < 100; ++i) {
        const double want = static_cast<double>(ref() >> 11) * 0x1.0p-53;
        CHECK(prng.next_uniform(0.0, 1.0) == want);
    }
}

TEST_CASE("prng draws stay inside the half-open interval") {
    Prng prng(99);
    for (int i = 0; i < 10000; ++i) {
        const double v = prng.next_uniform(-0.25, 0.25);
        CHECK(v >= -0.25);
        CHECK(v < 0.25);
    }
    CHECK_THROWS_AS(prng.next_uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(prng.next_uniform(2.0, -2.0), std::invalid_argument);
}

TEST_CASE("same seed, same matrix; different seed, different matrix") {
    Prng p1(42), p2(42), p3(43);
    Matrix a = uniform(p1, 5, 5, -1.0, 1.0);
    Matrix b = uniform(p2, 5, 5, -1.0, 1.0);
    Matrix c = uniform(p3, 5, 5, -1.0, 1.0);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(p1.seed() == 42);
}
