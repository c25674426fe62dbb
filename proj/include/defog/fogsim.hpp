#pragma once

#include "defog/airlight.hpp"
#include "defog/image.hpp"
#include "defog/transmittance.hpp"

namespace defog {

// Forward scattering scene: fog-free radiance, per-pixel depth (arbitrary
// length units), airlight and absolute per-channel attenuation (1/length).
struct FogScene {
    Image radiance;
    ScalarMap depth;
    Airlight airlight;
    BetaRatios betas;

    void validate() const;
};

// I_c(x) = J_c(x) e^(-beta_c d(x)) + A_c (1 - e^(-beta_c d(x))), clamped to
// [0,1]. The ground-truth generator for the inverse pipeline.
Image synthesize(const FogScene& scene);

// t_c(x) = e^(-beta_c d(x)).
ChannelTransmittances transmittance_of(const FogScene& scene);

}  // namespace defog
