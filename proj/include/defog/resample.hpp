#pragma once

#include "defog/image.hpp"

namespace defog {

// Area (box) downsampling. Output dims are ceil(in/factor) per axis; each
// output sample is the mean of the covered input block. Partial blocks at
// the right/bottom edge are averaged over their actual coverage.
Image downsample_area(const Image& img, int factor);
ScalarMap downsample_area(const ScalarMap& map, int factor);

// Catmull-Rom bicubic upsampling with edge-clamped tap addressing.
// The result is clamped to [0,1] (the kernel can overshoot).
ScalarMap upsample_bicubic(const ScalarMap& map, int target_w, int target_h);

namespace serial {

// Reference bicubic: evaluates the full 4x4 tap window per output pixel,
// no separable passes. Kept for tests and the kernel benchmark.
ScalarMap upsample_bicubic(const ScalarMap& map, int target_w, int target_h);

}  // namespace serial

}  // namespace defog
