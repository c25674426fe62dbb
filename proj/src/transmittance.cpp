#include "defog/transmittance.hpp"

#include <cmath>
#include <stdexcept>

#include "defog/resample.hpp"

namespace defog {

void DehazeParams::validate() const {
    if (!(omega > 0.0 && omega <= 1.0))
        throw std::invalid_argument("omega must be in (0,1]");
    if (window_radius < 0)
        throw std::invalid_argument("window radius must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (!(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("t0 must be in (0,1)");
    if (!(betas.r > 0.0 && betas.g > 0.0 && betas.b > 0.0))
        throw std::invalid_argument("beta ratios must be > 0");
    if (downsample_factor < 1)
        throw std::invalid_argument("downsample factor must be >= 1");
    if (!(cg_tol > 0.0)) throw std::invalid_argument("cg tolerance must be > 0");
    if (cg_max_iter < 1) throw std::invalid_argument("cg max iterations must be >= 1");
}

ScalarMap rough_transmittance(const DarkChannelResult& dark_norm, double omega) {
    if (!(omega > 0.0 && omega <= 1.0))
        throw std::invalid_argument("rough_transmittance: omega must be in (0,1]");
    const ScalarMap& v = dark_norm.values;
    ScalarMap t(v.width, v.height);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.values.size());
#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < n; ++i)
        t.values[i] = clamp01(1.0 - omega * v.values[i]);
    return t;
}

RefineResult refine_pipeline(const Image& img, const DehazeParams& params,
                             const Airlight& airlight) {
    params.validate();

    const Image small = downsample_area(img, params.downsample_factor);
    if (small.width < 3 || small.height < 3)
        throw std::invalid_argument("refine_pipeline: image too small after downsampling");

    const DarkChannelResult dark_small =
        normalized_dark_channel(small, airlight, params.window_radius, params.attribution);
    const ScalarMap t_rough = rough_transmittance(dark_small, params.omega);

    const SparseSymMatrix L = build_matting_laplacian(small, params.eps);
    auto [t_small, report] = refine_transmittance(L, t_rough, params.lambda,
                                                  params.cg_tol, params.cg_max_iter);

    RefineResult res;
    res.t_d = upsample_bicubic(t_small, img.width, img.height);
    res.solve = report;

    // Per-channel exponents apply per full-resolution pixel, so the label
    // map comes from the original image, not the downsampled one.
    res.d = normalized_dark_channel(img, airlight, params.window_radius,
                                    params.attribution)
                .channel;
    return res;
}

ChannelTransmittances per_channel_transmittance(const ScalarMap& t_d,
                                                const ChannelIndexMap& d,
                                                const BetaRatios& betas) {
    if (t_d.width != d.width || t_d.height != d.height)
        throw std::invalid_argument("per_channel_transmittance: dims mismatch");
    if (!(betas.r > 0.0 && betas.g > 0.0 && betas.b > 0.0))
        throw std::invalid_argument("per_channel_transmittance: betas must be > 0");

    ChannelTransmittances t{ScalarMap(t_d.width, t_d.height),
                            ScalarMap(t_d.width, t_d.height),
                            ScalarMap(t_d.width, t_d.height)};
    const double beta[3] = {betas.r, betas.g, betas.b};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t_d.values.size());

#pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double base = t_d.values[i];
        const int dc = d.labels[i];
        double out[3];
        for (int c = 0; c < kNumChannels; ++c) {
            if (c == dc) {
                out[c] = base;
            } else if (base == 0.0) {
                out[c] = 0.0;  // limit of base^e for e > 0
            } else {
                const double e = beta[c] / beta[dc];
                out[c] = (e == 1.0) ? base : std::pow(base, e);
            }
        }
        t.r.values[i] = out[0];
        t.g.values[i] = out[1];
        t.b.values[i] = out[2];
    }
    return t;
}

}  // namespace defog
