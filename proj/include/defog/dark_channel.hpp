#pragma once

#include "defog/airlight.hpp"
#include "defog/image.hpp"

namespace defog {

// Which color channel gets recorded per pixel: the channel of the winning
// (channel, position) pair over the whole window, or the channel of the
// center pixel's own cross-channel minimum.
enum class ChannelAttribution { WindowedMin, CenterPixel };

struct DarkChannelResult {
    ScalarMap values;        // min over channels and window
    ChannelIndexMap channel; // channel attaining it (ties: R < G < B)
};

// Dark channel over a (2r+1)^2 window centered at each pixel, truncated at
// image borders. Radius 0 degenerates to the per-pixel channel minimum.
DarkChannelResult dark_channel(const Image& img, int window_radius,
                               ChannelAttribution attribution =
                                   ChannelAttribution::WindowedMin);

// Same minimum but over I^c(y)/A^c. Values may exceed 1 where I > A.
// Throws std::invalid_argument if any airlight component is <= 0.
DarkChannelResult normalized_dark_channel(const Image& img,
                                          const Airlight& airlight,
                                          int window_radius,
                                          ChannelAttribution attribution =
                                              ChannelAttribution::WindowedMin);

namespace serial {

// Exhaustive triple-loop reference (channel, window row, window column).
// The production kernels above must match it bit for bit.
DarkChannelResult dark_channel(const Image& img, int window_radius,
                               ChannelAttribution attribution =
                                   ChannelAttribution::WindowedMin);

DarkChannelResult normalized_dark_channel(const Image& img,
                                          const Airlight& airlight,
                                          int window_radius,
                                          ChannelAttribution attribution =
                                              ChannelAttribution::WindowedMin);

}  // namespace serial

}  // namespace defog
