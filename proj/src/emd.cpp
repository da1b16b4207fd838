#include "disguise/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace disguise {

namespace {

void require_comparable(const PointCloud& a, const PointCloud& b) {
    if (a.size() != b.size()) throw std::invalid_argument("emd: cloud sizes differ");
    if (a.dim() != b.dim()) throw std::invalid_argument("emd: point dimensions differ");
}

double euclidean(const std::vector<double>& p, const std::vector<double>& q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - q[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

PointCloud::PointCloud(std::vector<std::vector<double>> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("point cloud: must be nonempty");
    const std::size_t d = points.front().size();
    if (d == 0) throw std::invalid_argument("point cloud: dimension must be positive");
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("point cloud: mixed dimensions");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("point cloud: coordinates must be finite");
    }
}

double wasserstein_1d(const PointCloud& a, const PointCloud& b) {
    require_comparable(a, b);
    if (a.dim() != 1) throw std::invalid_argument("wasserstein_1d: clouds must be 1-D");
    std::vector<double> xs(a.size()), ys(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) xs[i] = a.points[i][0];
    for (std::size_t i = 0; i < b.size(); ++i) ys[i] = b.points[i][0];
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += std::abs(xs[i] - ys[i]);
    return sum / static_cast<double>(xs.size());
}

Transport emd_exact(const PointCloud& a, const PointCloud& b) {
    require_comparable(a, b);
    const std::size_t n = a.size();
    if (n > 9) throw std::invalid_argument("emd_exact: brute force capped at n <= 9");

    // With equal sizes and uniform weights the optimal coupling is a
    // permutation, so enumerating assignments is exact.
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = euclidean(a.points[i], b.points[j]);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    double best_total = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
        if (total < best_total) {
            best_total = total;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return {best_total / static_cast<double>(n), std::move(best)};
}

}  // namespace disguise
