#include "defog/fogsim.hpp"

#include <cmath>
#include <stdexcept>

namespace defog {

void FogScene::validate() const {
    if (radiance.width != depth.width || radiance.height != depth.height)
        throw std::invalid_argument("FogScene: radiance/depth dims mismatch");
    if (!(betas.r > 0.0 && betas.g > 0.0 && betas.b > 0.0))
        throw std::invalid_argument("FogScene: betas must be > 0");
    for (double av : {airlight.r, airlight.g, airlight.b})
        if (!(av > 0.0 && av <= 1.0))
            throw std::invalid_argument("FogScene: airlight components must be in (0,1]");
    for (double dv : depth.values)
        if (!(dv >= 0.0)) throw std::invalid_argument("FogScene: depth must be >= 0");
}

Image synthesize(const FogScene& scene) {
    scene.validate();
    const Image& J = scene.radiance;
    Image out(J.width, J.height);
    const double a[3] = {scene.airlight.r, scene.airlight.g, scene.airlight.b};
    const double beta[3] = {scene.betas.r, scene.betas.g, scene.betas.b};
    const std::vector<double>* jp[3] = {&J.r, &J.g, &J.b};
    std::vector<double>* op[3] = {&out.r, &out.g, &out.b};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(J.pixel_count());

    for (int c = 0; c < kNumChannels; ++c) {
        const std::vector<double>& jc = *jp[c];
        std::vector<double>& oc = *op[c];
        const double ac = a[c], bc = beta[c];
#pragma omp parallel for
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double t = std::exp(-bc * scene.depth.values[i]);
            oc[i] = clamp01(jc[i] * t + ac * (1.0 - t));
        }
    }
    return out;
}

ChannelTransmittances transmittance_of(const FogScene& scene) {
    scene.validate();
    const int w = scene.depth.width, h = scene.depth.height;
    ChannelTransmittances t{ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h)};
    const double beta[3] = {scene.betas.r, scene.betas.g, scene.betas.b};
    std::vector<double>* tp[3] = {&t.r.values, &t.g.values, &t.b.values};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(scene.depth.values.size());

    for (int c = 0; c < kNumChannels; ++c) {
        std::vector<double>& tc = *tp[c];
        const double bc = beta[c];
#pragma omp parallel for
        for (std::ptrdiff_t i = 0; i < n; ++i)
            tc[i] = std::exp(-bc * scene.depth.values[i]);
    }
    return t;
}

}  // namespace defog
