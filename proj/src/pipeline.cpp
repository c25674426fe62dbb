#include "defog/pipeline.hpp"

namespace defog {

DehazeResult dehaze(const Image& img, const DehazeParams& params,
                    std::optional<Airlight> airlight_override) {
    params.validate();

    DehazeResult res;
    if (airlight_override) {
        res.airlight = *airlight_override;
    } else {
        const DarkChannelResult dark = dark_channel(img, params.window_radius);
        res.airlight = estimate_airlight(img, dark);
    }

    RefineResult refined = refine_pipeline(img, params, res.airlight);
    res.t_d = std::move(refined.t_d);
    res.d = std::move(refined.d);
    res.solve = refined.solve;

    res.t = per_channel_transmittance(res.t_d, res.d, params.betas);
    res.output = restore(img, res.t, res.airlight, params.t0);
    return res;
}

}  // namespace defog
