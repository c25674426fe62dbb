#pragma once

#include "defog/airlight.hpp"
#include "defog/image.hpp"
#include "defog/transmittance.hpp"

namespace defog {

// Scene radiance recovery, per channel:
//   J_c(x) = (I_c(x) - A_c) / max(t_c(x), t0) + A_c, clamped to [0,1].
Image restore(const Image& img, const ChannelTransmittances& t,
              const Airlight& A, double t0);

// Single-transmittance variant: the same map divides every channel.
Image restore_single(const Image& img, const ScalarMap& t, const Airlight& A,
                     double t0);

}  // namespace defog
