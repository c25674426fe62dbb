#include "defog/airlight.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "defog/dark_channel.hpp"

namespace defog {

namespace {
constexpr double kComponentFloor = 0.05;
}

Airlight estimate_airlight(const Image& img, const DarkChannelResult& dark) {
    if (img.width != dark.values.width || img.height != dark.values.height)
        throw std::invalid_argument("estimate_airlight: image/dark-channel dims mismatch");

    const std::size_t n = img.pixel_count();
    const std::size_t candidates = std::max<std::size_t>(1, (n + 999) / 1000);

    // top 0.1% by dark value; ties resolved toward raster order
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + candidates, order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double da = dark.values.values[a];
                          const double db = dark.values.values[b];
                          if (da != db) return da > db;
                          return a < b;
                      });

    std::size_t best = order[0];
    double best_sum = img.r[best] + img.g[best] + img.b[best];
    for (std::size_t k = 1; k < candidates; ++k) {
        const std::size_t i = order[k];
        const double sum = img.r[i] + img.g[i] + img.b[i];
        if (sum > best_sum || (sum == best_sum && i < best)) {
            best_sum = sum;
            best = i;
        }
    }

    Airlight a{img.r[best], img.g[best], img.b[best]};
    a.r = std::max(a.r, kComponentFloor);
    a.g = std::max(a.g, kComponentFloor);
    a.b = std::max(a.b, kComponentFloor);
    return a;
}

}  // namespace defog
