#pragma once

#include <cstddef>
#include <vector>

namespace disguise {

/// Finite point set with uniform weights 1/n; every point has the same
/// dimension d >= 1.
struct PointCloud {
    std::vector<std::vector<double>> points;

    explicit PointCloud(std::vector<std::vector<double>> pts);

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.front().size(); }
};

/// Exact Wasserstein-1 distance between equal-size 1-D clouds: sort both
/// sides and average the coordinate gaps (the optimal coupling on the line).
double wasserstein_1d(const PointCloud& a, const PointCloud& b);

struct Transport {
    double cost;
    std::vector<std::size_t> matching;  // a.points[i] pairs with b.points[matching[i]]
};

/// Exact earth-mover distance under the Euclidean norm by brute force over
/// all n! assignments. Equal sizes, n <= 9.
Transport emd_exact(const PointCloud& a, const PointCloud& b);

}  // namespace disguise
