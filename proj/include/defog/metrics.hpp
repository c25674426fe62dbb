#pragma once

#include "defog/image.hpp"

namespace defog {

// Mean over all pixels and channels of |a-b|. Throws on dimension mismatch.
double mean_abs_error(const Image& a, const Image& b);

// Mean HSV saturation: (max_c - min_c)/max_c per pixel, 0 where max_c <= 0.
double mean_saturation(const Image& img);

// 10*log10(1/MSE); +inf for identical images.
double psnr(const Image& a, const Image& b);

}  // namespace defog
