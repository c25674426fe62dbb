#pragma once

#include "defog/airlight.hpp"
#include "defog/dark_channel.hpp"
#include "defog/image.hpp"
#include "defog/matting.hpp"

namespace defog {

// Relative attenuation coefficients per color channel. Only ratios matter
// to the dehazer; 1:1.28:1.61 (R:G:B) is the default.
struct BetaRatios {
    double r = 1.0;
    double g = 1.28;
    double b = 1.61;

    double component(Channel c) const {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }
};

struct ChannelTransmittances {
    ScalarMap r, g, b;

    ScalarMap& plane(Channel c) {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }
    const ScalarMap& plane(Channel c) const {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }
};

struct DehazeParams {
    double omega = 0.95;        // fog retention, (0,1]
    int window_radius = 2;      // dark-channel window radius (2 -> 5x5)
    double lambda = 1e-4;       // matting data-term weight
    double eps = 1e-7;          // matting regularizer
    double t0 = 0.1;            // transmittance floor in restoration
    BetaRatios betas;
    int downsample_factor = 4;
    double cg_tol = 1e-6;
    int cg_max_iter = 2000;
    ChannelAttribution attribution = ChannelAttribution::WindowedMin;

    void validate() const;
};

// t~(x) = clamp(1 - omega * dark value, 0, 1). Expects a dark channel
// computed with airlight normalization.
ScalarMap rough_transmittance(const DarkChannelResult& dark_norm, double omega);

struct RefineResult {
    ScalarMap t_d;            // refined transmittance at full resolution
    ChannelIndexMap d;        // full-resolution dark-channel label map
    SolveReport solve;
};

// The coarse-to-fine refinement: downsample -> normalized dark channel ->
// rough transmittance -> matting refine -> bicubic upsample -> clamp.
// The label map d is computed at full resolution from the original image so
// the per-channel exponents apply per full-res pixel. Solver
// non-convergence is reported, not thrown.
RefineResult refine_pipeline(const Image& img, const DehazeParams& params,
                             const Airlight& airlight);

// Per-channel transmittance from the exponent law: at a pixel whose dark
// channel is d, t_d stays as-is and t_c = t_d^(beta_c/beta_d) for c != d.
// An exact 0 maps to 0 for any positive exponent.
ChannelTransmittances per_channel_transmittance(const ScalarMap& t_d,
                                                const ChannelIndexMap& d,
                                                const BetaRatios& betas);

}  // namespace defog
