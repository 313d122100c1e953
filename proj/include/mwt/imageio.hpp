#ifndef MWT_IMAGEIO_HPP
#define MWT_IMAGEIO_HPP

#include "mwt/image.hpp"

#include <filesystem>

namespace mwt {

// Parsed primary-HDU header of the supported FITS subset.
struct FitsHeader {
    int bitpix = 0;
    int naxis = 0;
    int naxis1 = 0;
    int naxis2 = 0;
    double bscale = 1.0;
    double bzero = 0.0;
};

// Reads the primary HDU of a SIMPLE FITS file with BITPIX 8 or 16 and
// NAXIS = 2. Data are big-endian integers; physical = bscale*raw + bzero.
// peak is 255 for BITPIX 8, 65535 for BITPIX 16. Violations raise
// std::runtime_error naming the offending card.
ImageBuffer read_fits(const std::filesystem::path& path);

// Binary PGM (P5). Samples are rounded half away from zero and clamped to
// [0, peak]; the return value is the number of clamped samples. maxval is
// the image peak; 16-bit samples are written big-endian per the format.
std::size_t write_pgm(const ImageBuffer& img, const std::filesystem::path& path);

ImageBuffer read_pgm(const std::filesystem::path& path);

}  // namespace mwt

#endif
