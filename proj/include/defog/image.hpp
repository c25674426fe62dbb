#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace defog {

enum class Channel : std::uint8_t { R = 0, G = 1, B = 2 };

inline constexpr int kNumChannels = 3;

// Planar RGB raster. Samples are linear intensities in [0,1], stored as
// doubles (the matting solve dominates precision requirements downstream).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> r, g, b;

    Image() = default;

    Image(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("Image: dimensions must be positive");
        const std::size_t n = static_cast<std::size_t>(w) * h;
        r.assign(n, fill);
        g.assign(n, fill);
        b.assign(n, fill);
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    std::vector<double>& plane(Channel c) {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }

    const std::vector<double>& plane(Channel c) const {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }

    double& at(Channel c, int x, int y) { return plane(c)[idx(x, y)]; }
    double at(Channel c, int x, int y) const { return plane(c)[idx(x, y)]; }
};

// Single-channel raster (transmittance maps, dark channels, depth maps).
struct ScalarMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    ScalarMap() = default;

    ScalarMap(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("ScalarMap: dimensions must be positive");
        values.assign(static_cast<std::size_t>(w) * h, fill);
    }

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }

    double& at(int x, int y) { return values[idx(x, y)]; }
    double at(int x, int y) const { return values[idx(x, y)]; }
};

// Per-pixel color-channel label in {R,G,B}.
struct ChannelIndexMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;

    ChannelIndexMap() = default;

    ChannelIndexMap(int w, int h, Channel fill = Channel::R)
        : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("ChannelIndexMap: dimensions must be positive");
        labels.assign(static_cast<std::size_t>(w) * h,
                      static_cast<std::uint8_t>(fill));
    }

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }

    Channel at(int x, int y) const {
        return static_cast<Channel>(labels[idx(x, y)]);
    }

    void set(int x, int y, Channel c) {
        labels[idx(x, y)] = static_cast<std::uint8_t>(c);
    }
};

inline double clamp01(double v) {
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace defog
