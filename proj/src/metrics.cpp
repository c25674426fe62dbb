#include "defog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace defog {

namespace {

void check_dims(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("metric: image dims mismatch");
}

}  // namespace

double mean_abs_error(const Image& a, const Image& b) {
    check_dims(a, b);
    double sum = 0.0;
    const std::size_t n = a.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        sum += std::abs(a.r[i] - b.r[i]);
        sum += std::abs(a.g[i] - b.g[i]);
        sum += std::abs(a.b[i] - b.b[i]);
    }
    return sum / (3.0 * n);
}

double mean_saturation(const Image& img) {
    double sum = 0.0;
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double mx = std::max({img.r[i], img.g[i], img.b[i]});
        const double mn = std::min({img.r[i], img.g[i], img.b[i]});
        if (mx > 0.0) sum += (mx - mn) / mx;
    }
    return sum / n;
}

double psnr(const Image& a, const Image& b) {
    check_dims(a, b);
    double sq = 0.0;
    const std::size_t n = a.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = a.r[i] - b.r[i];
        const double dg = a.g[i] - b.g[i];
        const double db = a.b[i] - b.b[i];
        sq += dr * dr + dg * dg + db * db;
    }
    const double mse = sq / (3.0 * n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

}  // namespace defog
