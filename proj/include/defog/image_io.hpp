#pragma once

#include <string>

#include "defog/image.hpp"

namespace defog {

// Raised for unreadable files, unsupported formats/bit depths and
// unwritable paths.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loads an 8-bit PNG or binary PPM (P6, maxval 255). The format is sniffed
// from the file's magic bytes, not the extension. Samples map u/255 -> [0,1];
// grayscale and palette PNGs are expanded to RGB, alpha is dropped.
Image load_image(const std::string& path);

// Writes 8-bit PNG or P6 PPM depending on the extension (.png/.ppm).
// Samples map round(s*255), clamped to [0,255].
void save_image(const Image& img, const std::string& path);

// Replicates a scalar map into the three planes of an Image so it can be
// saved as a grayscale picture. Values are clamped to [0,1].
Image scalar_to_image(const ScalarMap& map);

// Renders a channel-label map as an image: R -> red, G -> green, B -> blue.
Image channel_map_to_image(const ChannelIndexMap& map);

}  // namespace defog
