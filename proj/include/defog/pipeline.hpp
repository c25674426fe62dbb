#pragma once

#include <optional>

#include "defog/airlight.hpp"
#include "defog/dark_channel.hpp"
#include "defog/image.hpp"
#include "defog/restore.hpp"
#include "defog/transmittance.hpp"

namespace defog {

struct DehazeResult {
    Image output;
    Airlight airlight;
    ScalarMap t_d;               // refined base transmittance
    ChannelIndexMap d;           // full-res dark-channel labels
    ChannelTransmittances t;     // per-channel maps fed to restoration
    SolveReport solve;
};

// End-to-end dehaze: airlight estimation (unless overridden), coarse-to-fine
// transmittance refinement, per-channel expansion, restoration.
DehazeResult dehaze(const Image& img, const DehazeParams& params,
                    std::optional<Airlight> airlight_override = std::nullopt);

}  // namespace defog
