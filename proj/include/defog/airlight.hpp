#pragma once

#include "defog/image.hpp"

namespace defog {

struct DarkChannelResult;

// Atmospheric light, one intensity per color channel, each in (0,1].
struct Airlight {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;

    double component(Channel c) const {
        switch (c) {
        case Channel::R: return r;
        case Channel::G: return g;
        default: return b;
        }
    }
};

// Picks the atmospheric light from the brightest of the top 0.1% of pixels
// ranked by dark-channel value (at least one candidate). "Brightest" means
// greatest R+G+B in the source image; ties break in raster order.
// Components below 0.05 are raised to 0.05.
Airlight estimate_airlight(const Image& img, const DarkChannelResult& dark);

}  // namespace defog
