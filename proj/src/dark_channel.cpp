#include "defog/dark_channel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace defog {

namespace {

void check_airlight(const Airlight& a) {
    if (a.r <= 0.0 || a.g <= 0.0 || a.b <= 0.0)
        throw std::invalid_argument("normalized_dark_channel: airlight components must be > 0");
}

// Per-channel source, optionally divided by the airlight component. The
// division happens per sample, exactly as the brute-force definition does,
// so the two paths stay bit-identical.
std::vector<double> scaled_plane(const Image& img, Channel c, const Airlight* a) {
    std::vector<double> p = img.plane(c);
    if (a) {
        const double ac = a->component(c);
        for (double& v : p) v /= ac;
    }
    return p;
}

// Windowed min of one plane via two separable passes; the window is
// truncated at the borders (no padding).
void window_min(const std::vector<double>& in, int w, int h, int r,
                std::vector<double>& tmp, std::vector<double>& out) {
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const double* src = in.data() + static_cast<std::size_t>(y) * w;
        double* dst = tmp.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r);
            const int x1 = std::min(w - 1, x + r);
            double m = src[x0];
            for (int u = x0 + 1; u <= x1; ++u) m = std::min(m, src[u]);
            dst[x] = m;
        }
    }
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r);
        const int y1 = std::min(h - 1, y + r);
        double* dst = out.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double m = tmp[static_cast<std::size_t>(y0) * w + x];
            for (int v = y0 + 1; v <= y1; ++v)
                m = std::min(m, tmp[static_cast<std::size_t>(v) * w + x]);
            dst[x] = m;
        }
    }
}

DarkChannelResult run(const Image& img, const Airlight* a, int r,
                      ChannelAttribution attribution) {
    if (r < 0) throw std::invalid_argument("dark_channel: window_radius < 0");
    const int w = img.width, h = img.height;
    const std::size_t n = img.pixel_count();

    std::vector<double> planes[3];
    std::vector<double> mins[3];
    std::vector<double> tmp(n);
    for (int c = 0; c < kNumChannels; ++c) {
        planes[c] = scaled_plane(img, static_cast<Channel>(c), a);
        mins[c].resize(n);
        window_min(planes[c], w, h, r, tmp, mins[c]);
    }

    DarkChannelResult res{ScalarMap(w, h), ChannelIndexMap(w, h)};
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            double best = mins[0][i];
            int bc = 0;
            if (mins[1][i] < best) { best = mins[1][i]; bc = 1; }
            if (mins[2][i] < best) { best = mins[2][i]; bc = 2; }
            res.values.values[i] = best;
            if (attribution == ChannelAttribution::CenterPixel) {
                double cb = planes[0][i];
                int cc = 0;
                if (planes[1][i] < cb) { cb = planes[1][i]; cc = 1; }
                if (planes[2][i] < cb) { cb = planes[2][i]; cc = 2; }
                bc = cc;
            }
            res.channel.labels[i] = static_cast<std::uint8_t>(bc);
        }
    }
    return res;
}

DarkChannelResult run_serial(const Image& img, const Airlight* a, int r,
                             ChannelAttribution attribution) {
    if (r < 0) throw std::invalid_argument("dark_channel: window_radius < 0");
    const int w = img.width, h = img.height;

    std::vector<double> planes[3];
    for (int c = 0; c < kNumChannels; ++c)
        planes[c] = scaled_plane(img, static_cast<Channel>(c), a);

    DarkChannelResult res{ScalarMap(w, h), ChannelIndexMap(w, h)};
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r);
        const int y1 = std::min(h - 1, y + r);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r);
            const int x1 = std::min(w - 1, x + r);
            double best = std::numeric_limits<double>::infinity();
            int bc = 0;
            for (int c = 0; c < kNumChannels; ++c) {
                for (int v = y0; v <= y1; ++v) {
                    for (int u = x0; u <= x1; ++u) {
                        const double val = planes[c][static_cast<std::size_t>(v) * w + u];
                        if (val < best) {
                            best = val;
                            bc = c;
                        }
                    }
                }
            }
            if (attribution == ChannelAttribution::CenterPixel) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                double cb = planes[0][i];
                int cc = 0;
                if (planes[1][i] < cb) { cb = planes[1][i]; cc = 1; }
                if (planes[2][i] < cb) { cb = planes[2][i]; cc = 2; }
                bc = cc;
            }
            res.values.at(x, y) = best;
            res.channel.set(x, y, static_cast<Channel>(bc));
        }
    }
    return res;
}

}  // namespace

DarkChannelResult dark_channel(const Image& img, int window_radius,
                               ChannelAttribution attribution) {
    return run(img, nullptr, window_radius, attribution);
}

DarkChannelResult normalized_dark_channel(const Image& img,
                                          const Airlight& airlight,
                                          int window_radius,
                                          ChannelAttribution attribution) {
    check_airlight(airlight);
    return run(img, &airlight, window_radius, attribution);
}

namespace serial {

DarkChannelResult dark_channel(const Image& img, int window_radius,
                               ChannelAttribution attribution) {
    return run_serial(img, nullptr, window_radius, attribution);
}

DarkChannelResult normalized_dark_channel(const Image& img,
                                          const Airlight& airlight,
                                          int window_radius,
                                          ChannelAttribution attribution) {
    check_airlight(airlight);
    return run_serial(img, &airlight, window_radius, attribution);
}

}  // namespace serial

}  // namespace defog
