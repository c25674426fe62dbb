#include "defog/restore.hpp"

#include <algorithm>
#include <stdexcept>

namespace defog {

namespace {

void check_restore_args(const Image& img, int tw, int th, double t0) {
    if (img.width != tw || img.height != th)
        throw std::invalid_argument("restore: image/transmittance dims mismatch");
    if (!(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("restore: t0 must be in (0,1)");
}

}  // namespace

Image restore(const Image& img, const ChannelTransmittances& t,
              const Airlight& A, double t0) {
    check_restore_args(img, t.r.width, t.r.height, t0);
    Image out(img.width, img.height);
    const double a[3] = {A.r, A.g, A.b};
    const std::vector<double>* tp[3] = {&t.r.values, &t.g.values, &t.b.values};
    const std::vector<double>* ip[3] = {&img.r, &img.g, &img.b};
    std::vector<double>* op[3] = {&out.r, &out.g, &out.b};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(img.pixel_count());

    for (int c = 0; c < kNumChannels; ++c) {
        const std::vector<double>& tc = *tp[c];
        const std::vector<double>& ic = *ip[c];
        std::vector<double>& oc = *op[c];
        const double ac = a[c];
#pragma omp parallel for
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double denom = std::max(tc[i], t0);
            // unit transmittance is the identity; skip the round trip through
            // (I-A)+A, which is not exact in floating point
            oc[i] = denom == 1.0 ? clamp01(ic[i])
                                 : clamp01((ic[i] - ac) / denom + ac);
        }
    }
    return out;
}

Image restore_single(const Image& img, const ScalarMap& t, const Airlight& A,
                     double t0) {
    check_restore_args(img, t.width, t.height, t0);
    Image out(img.width, img.height);
    const double a[3] = {A.r, A.g, A.b};
    const std::vector<double>* ip[3] = {&img.r, &img.g, &img.b};
    std::vector<double>* op[3] = {&out.r, &out.g, &out.b};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(img.pixel_count());

    for (int c = 0; c < kNumChannels; ++c) {
        const std::vector<double>& ic = *ip[c];
        std::vector<double>& oc = *op[c];
        const double ac = a[c];
#pragma omp parallel for
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double denom = std::max(t.values[i], t0);
            oc[i] = denom == 1.0 ? clamp01(ic[i])
                                 : clamp01((ic[i] - ac) / denom + ac);
        }
    }
    return out;
}

}  // namespace defog
