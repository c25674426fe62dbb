#include "defog/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace defog {

namespace {

// Mean of the input block covering output pixel (ox,oy). Edge blocks use
// their actual coverage so borders are not biased dark.
void downsample_plane(const std::vector<double>& in, int w, int h, int factor,
                      std::vector<double>& out, int ow, int oh) {
#pragma omp parallel for
    for (int oy = 0; oy < oh; ++oy) {
        const int y0 = oy * factor;
        const int y1 = std::min(y0 + factor, h);
        for (int ox = 0; ox < ow; ++ox) {
            const int x0 = ox * factor;
            const int x1 = std::min(x0 + factor, w);
            double sum = 0.0;
            for (int y = y0; y < y1; ++y) {
                const double* row = in.data() + static_cast<std::size_t>(y) * w;
                for (int x = x0; x < x1; ++x) sum += row[x];
            }
            out[static_cast<std::size_t>(oy) * ow + ox] =
                sum / ((y1 - y0) * (x1 - x0));
        }
    }
}

inline int out_dim(int in, int factor) { return (in + factor - 1) / factor; }

// Catmull-Rom weights for fractional offset t in [0,1), taps at -1,0,1,2.
inline void catmull_rom_weights(double t, double w[4]) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    w[0] = -0.5 * t3 + t2 - 0.5 * t;
    w[1] = 1.5 * t3 - 2.5 * t2 + 1.0;
    w[2] = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
    w[3] = 0.5 * t3 - 0.5 * t2;
}

inline int clamp_index(int i, int n) {
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

// Source coordinate for output index i under the pixel-center convention.
inline double src_coord(int i, int n_out, int n_in) {
    return (i + 0.5) * (static_cast<double>(n_in) / n_out) - 0.5;
}

struct Taps {
    int idx[4];
    double w[4];
};

std::vector<Taps> make_taps(int n_out, int n_in) {
    std::vector<Taps> taps(n_out);
    for (int i = 0; i < n_out; ++i) {
        const double s = src_coord(i, n_out, n_in);
        const double fl = std::floor(s);
        const int base = static_cast<int>(fl);
        catmull_rom_weights(s - fl, taps[i].w);
        for (int k = 0; k < 4; ++k)
            taps[i].idx[k] = clamp_index(base - 1 + k, n_in);
    }
    return taps;
}

}  // namespace

Image downsample_area(const Image& img, int factor) {
    if (factor < 1) throw std::invalid_argument("downsample_area: factor < 1");
    if (factor == 1) return img;
    const int ow = out_dim(img.width, factor);
    const int oh = out_dim(img.height, factor);
    Image out(ow, oh);
    downsample_plane(img.r, img.width, img.height, factor, out.r, ow, oh);
    downsample_plane(img.g, img.width, img.height, factor, out.g, ow, oh);
    downsample_plane(img.b, img.width, img.height, factor, out.b, ow, oh);
    return out;
}

ScalarMap downsample_area(const ScalarMap& map, int factor) {
    if (factor < 1) throw std::invalid_argument("downsample_area: factor < 1");
    if (factor == 1) return map;
    const int ow = out_dim(map.width, factor);
    const int oh = out_dim(map.height, factor);
    ScalarMap out(ow, oh);
    downsample_plane(map.values, map.width, map.height, factor, out.values, ow, oh);
    return out;
}

ScalarMap upsample_bicubic(const ScalarMap& map, int target_w, int target_h) {
    if (target_w < 1 || target_h < 1)
        throw std::invalid_argument("upsample_bicubic: target dims must be positive");
    if (target_w == map.width && target_h == map.height) return map;

    const auto tx = make_taps(target_w, map.width);
    const auto ty = make_taps(target_h, map.height);

    // horizontal pass
    std::vector<double> mid(static_cast<std::size_t>(map.height) * target_w);
#pragma omp parallel for
    for (int y = 0; y < map.height; ++y) {
        const double* row = map.values.data() + static_cast<std::size_t>(y) * map.width;
        double* dst = mid.data() + static_cast<std::size_t>(y) * target_w;
        for (int x = 0; x < target_w; ++x) {
            const Taps& t = tx[x];
            dst[x] = t.w[0] * row[t.idx[0]] + t.w[1] * row[t.idx[1]] +
                     t.w[2] * row[t.idx[2]] + t.w[3] * row[t.idx[3]];
        }
    }

    // vertical pass
    ScalarMap out(target_w, target_h);
#pragma omp parallel for
    for (int y = 0; y < target_h; ++y) {
        const Taps& t = ty[y];
        const double* r0 = mid.data() + static_cast<std::size_t>(t.idx[0]) * target_w;
        const double* r1 = mid.data() + static_cast<std::size_t>(t.idx[1]) * target_w;
        const double* r2 = mid.data() + static_cast<std::size_t>(t.idx[2]) * target_w;
        const double* r3 = mid.data() + static_cast<std::size_t>(t.idx[3]) * target_w;
        double* dst = out.values.data() + static_cast<std::size_t>(y) * target_w;
        for (int x = 0; x < target_w; ++x) {
            dst[x] = clamp01(t.w[0] * r0[x] + t.w[1] * r1[x] + t.w[2] * r2[x] +
                             t.w[3] * r3[x]);
        }
    }
    return out;
}

namespace serial {

ScalarMap upsample_bicubic(const ScalarMap& map, int target_w, int target_h) {
    if (target_w < 1 || target_h < 1)
        throw std::invalid_argument("upsample_bicubic: target dims must be positive");
    if (target_w == map.width && target_h == map.height) return map;

    ScalarMap out(target_w, target_h);
    for (int y = 0; y < target_h; ++y) {
        const double sy = src_coord(y, target_h, map.height);
        const double fy = std::floor(sy);
        const int by = static_cast<int>(fy);
        double wy[4];
        catmull_rom_weights(sy - fy, wy);
        for (int x = 0; x < target_w; ++x) {
            const double sx = src_coord(x, target_w, map.width);
            const double fx = std::floor(sx);
            const int bx = static_cast<int>(fx);
            double wx[4];
            catmull_rom_weights(sx - fx, wx);
            double acc = 0.0;
            for (int ky = 0; ky < 4; ++ky) {
                const int yy = clamp_index(by - 1 + ky, map.height);
                for (int kx = 0; kx < 4; ++kx) {
                    const int xx = clamp_index(bx - 1 + kx, map.width);
                    acc += wy[ky] * wx[kx] * map.at(xx, yy);
                }
            }
            out.at(x, y) = clamp01(acc);
        }
    }
    return out;
}

}  // namespace serial

}  // namespace defog
