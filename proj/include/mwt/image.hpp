#ifndef MWT_IMAGE_HPP
#define MWT_IMAGE_HPP

#include <vector>

namespace mwt {

// Grayscale raster with real-valued samples and a declared peak (255 for
// 8-bit data, 65535 for 16-bit plates).
struct ImageBuffer {
    int width = 0;
    int height = 0;
    double peak = 255.0;
    std::vector<double> samples;  // row-major, width*height

    double& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
};

// Validates dimensions and peak; throws std::invalid_argument.
ImageBuffer make_image(int width, int height, double peak, double fill = 0.0);

}  // namespace mwt

#endif
