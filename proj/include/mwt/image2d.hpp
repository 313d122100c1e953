#ifndef MWT_IMAGE2D_HPP
#define MWT_IMAGE2D_HPP

#include "mwt/filterbank.hpp"
#include "mwt/image.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mwt {

// One rectangular sub-block of the coefficient plane. Band letters name the
// channels per axis, first letter horizontal: "HL" is highpass along x,
// lowpass along y. comp_x/comp_y are the vector components (always 1 for
// scalar filters).
struct SubbandBlock {
    int level = 0;
    std::string band;  // LL, HL, LH or HH
    int comp_x = 1;
    int comp_y = 1;
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
};

// In-place multilevel coefficient plane. Level l rewrites the top-left
// region of size (width, height)/2^(l-1); detail blocks of earlier levels
// stay where they were written. channel_map lists every sub-block of every
// level (16 per level for r=2 banks, 4 for scalar filters); LL blocks of
// level l < levels are subdivided by level l+1.
struct SubbandPyramid {
    int width = 0;
    int height = 0;
    int levels = 0;
    int multiplicity = 1;   // 1 scalar, 2 multiwavelet
    std::string bank_name;  // registry name of the producing filter
    std::vector<double> plane;  // row-major, width*height
    std::vector<SubbandBlock> channel_map;

    double& at(int x, int y) { return plane[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return plane[static_cast<std::size_t>(y) * width + x]; }
};

// Feasible level count for the given geometry: every level needs the region
// to stay transformable along both axes.
int max_levels_2d(int width, int height, const MultiFilterBank& bank);
int max_levels_2d(int width, int height, const ScalarFilter& f);

// Separable multilevel analysis (rows then columns per level, recursing on
// the lowpass region). Throws when levels exceeds the feasible maximum,
// naming it.
SubbandPyramid decompose2d(const ImageBuffer& img, const MultiFilterBank& bank, int levels);
SubbandPyramid decompose2d(const ImageBuffer& img, const ScalarFilter& f, int levels);

// Exact inverse (up to roundoff). The filter must be the one recorded in the
// pyramid. The returned image carries the given peak declaration.
ImageBuffer reconstruct2d(const SubbandPyramid& pyr, const MultiFilterBank& bank, double peak = 255.0);
ImageBuffer reconstruct2d(const SubbandPyramid& pyr, const ScalarFilter& f, double peak = 255.0);

// Copy with every detail block of levels 1..keep_levels zeroed.
SubbandPyramid approx_only(const SubbandPyramid& pyr, int keep_levels);

// Binary container: magic, width, height, levels, multiplicity, bank name,
// then the plane as little-endian float64, then the channel map as text.
void save_pyramid(const SubbandPyramid& pyr, const std::filesystem::path& path);
SubbandPyramid load_pyramid(const std::filesystem::path& path);

}  // namespace mwt

#endif
