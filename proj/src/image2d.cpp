#include "mwt/image2d.hpp"

#include "mwt/transform1d.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mwt {

namespace {

// Strided view of one row or column of the plane.
struct Line {
    double* base;
    std::size_t stride;
    double& operator[](std::size_t i) const { return base[i * stride]; }
};

int max_levels_axis_vec(int extent, std::size_t taps) {
    int levels = 0;
    while (extent % 4 == 0 && static_cast<std::size_t>(extent / 2) >= taps) {
        ++levels;
        extent /= 2;
    }
    return levels;
}

int max_levels_axis_scalar(int extent, std::size_t taps) {
    int levels = 0;
    while (extent % 2 == 0 && static_cast<std::size_t>(extent) >= taps && extent >= 2) {
        ++levels;
        extent /= 2;
    }
    return levels;
}

void check_levels_2d(int width, int height, int levels, int feasible, const std::string& name) {
    if (levels < 1) throw std::invalid_argument("decompose2d: levels must be >= 1");
    if (levels > feasible)
        throw std::invalid_argument("decompose2d: " + std::to_string(levels) +
                                    " levels requested but at most " + std::to_string(feasible) +
                                    " are feasible for " + std::to_string(width) + "x" +
                                    std::to_string(height) + " with filter " + name);
}

void check_image(const ImageBuffer& img, const char* who) {
    if (img.width < 1 || img.height < 1 ||
        img.samples.size() != static_cast<std::size_t>(img.width) * img.height)
        throw std::invalid_argument(std::string(who) + ": malformed image buffer");
}

// One forward/inverse level along one axis of the region. The gather rule
// depends on the level: level 1 pairs adjacent samples (plain vectorization
// of raw data), deeper levels read the two vector components from the planar
// halves the previous level wrote. Output is always planar
// [A1 | A2 | D1 | D2].
void forward_line_vec(const Line& line, int n, int level, const MultiFilterBank& bank,
                      VectorSignal& scratch) {
    const int nv = n / 2;
    scratch.resize(nv);
    if (level == 1) {
        for (int m = 0; m < nv; ++m) scratch[m] = Vec2(line[2 * m], line[2 * m + 1]);
    } else {
        for (int m = 0; m < nv; ++m) scratch[m] = Vec2(line[m], line[m + nv]);
    }
    const Coeffs1D c = analyze_vec(scratch, bank);
    const int nb = nv / 2;
    for (int m = 0; m < nb; ++m) {
        line[m] = c.approx[m](0);
        line[nb + m] = c.approx[m](1);
        line[2 * nb + m] = c.detail[m](0);
        line[3 * nb + m] = c.detail[m](1);
    }
}

void inverse_line_vec(const Line& line, int n, int level, const MultiFilterBank& bank,
                      Coeffs1D& scratch) {
    const int nb = n / 4;
    scratch.approx.resize(nb);
    scratch.detail.resize(nb);
    for (int m = 0; m < nb; ++m) {
        scratch.approx[m] = Vec2(line[m], line[nb + m]);
        scratch.detail[m] = Vec2(line[2 * nb + m], line[3 * nb + m]);
    }
    const VectorSignal v = synthesize_vec(scratch, bank);
    if (level == 1) {
        for (int m = 0; m < n / 2; ++m) {
            line[2 * m] = v[m](0);
            line[2 * m + 1] = v[m](1);
        }
    } else {
        for (int m = 0; m < n / 2; ++m) {
            line[m] = v[m](0);
            line[m + n / 2] = v[m](1);
        }
    }
}

void forward_line_scalar(const Line& line, int n, const ScalarFilter& f,
                         std::vector<double>& scratch) {
    scratch.resize(n);
    for (int i = 0; i < n; ++i) scratch[i] = line[i];
    const ScalarCoeffs1D c = analyze_scalar(scratch, f);
    for (int m = 0; m < n / 2; ++m) {
        line[m] = c.approx[m];
        line[n / 2 + m] = c.detail[m];
    }
}

void inverse_line_scalar(const Line& line, int n, const ScalarFilter& f, ScalarCoeffs1D& scratch) {
    scratch.approx.resize(n / 2);
    scratch.detail.resize(n / 2);
    for (int m = 0; m < n / 2; ++m) {
        scratch.approx[m] = line[m];
        scratch.detail[m] = line[n / 2 + m];
    }
    const std::vector<double> x = synthesize_scalar(scratch, f);
    for (int i = 0; i < n; ++i) line[i] = x[i];
}

template <typename PerLine>
void for_each_row(std::vector<double>& plane, int stride, int rh, PerLine&& fn) {
    for (int y = 0; y < rh; ++y) fn(Line{plane.data() + static_cast<std::size_t>(y) * stride, 1});
}

template <typename PerLine>
void for_each_col(std::vector<double>& plane, int stride, int rw, PerLine&& fn) {
    for (int x = 0; x < rw; ++x)
        fn(Line{plane.data() + x, static_cast<std::size_t>(stride)});
}

std::vector<SubbandBlock> build_channel_map(int width, int height, int levels, int multiplicity) {
    std::vector<SubbandBlock> map;
    const int per_axis = (multiplicity == 2) ? 4 : 2;
    for (int level = 1; level <= levels; ++level) {
        const int rw = width >> (level - 1);
        const int rh = height >> (level - 1);
        const int bw = rw / per_axis;
        const int bh = rh / per_axis;
        for (int yi = 0; yi < per_axis; ++yi) {
            for (int xi = 0; xi < per_axis; ++xi) {
                SubbandBlock b;
                b.level = level;
                const bool x_high = (multiplicity == 2) ? xi >= 2 : xi == 1;
                const bool y_high = (multiplicity == 2) ? yi >= 2 : yi == 1;
                b.band = std::string(1, x_high ? 'H' : 'L') + (y_high ? 'H' : 'L');
                b.comp_x = (multiplicity == 2) ? xi % 2 + 1 : 1;
                b.comp_y = (multiplicity == 2) ? yi % 2 + 1 : 1;
                b.x0 = xi * bw;
                b.y0 = yi * bh;
                b.width = bw;
                b.height = bh;
                map.push_back(std::move(b));
            }
        }
    }
    return map;
}

void check_bank_match(const SubbandPyramid& pyr, const std::string& name, int multiplicity) {
    if (pyr.bank_name != name || pyr.multiplicity != multiplicity)
        throw std::invalid_argument("reconstruct2d: pyramid was produced with filter '" +
                                    pyr.bank_name + "' (r=" + std::to_string(pyr.multiplicity) +
                                    "), got '" + name + "' (r=" + std::to_string(multiplicity) +
                                    ")");
    if (pyr.plane.size() != static_cast<std::size_t>(pyr.width) * pyr.height)
        throw std::invalid_argument("reconstruct2d: plane size does not match dimensions");
}

void le_put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t le_get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

constexpr char kPyramidMagic[4] = {'M', 'W', 'P', 'Y'};

}  // namespace

int max_levels_2d(int width, int height, const MultiFilterBank& bank) {
    return std::min(max_levels_axis_vec(width, bank.taps()),
                    max_levels_axis_vec(height, bank.taps()));
}

int max_levels_2d(int width, int height, const ScalarFilter& f) {
    return std::min(max_levels_axis_scalar(width, f.length()),
                    max_levels_axis_scalar(height, f.length()));
}

SubbandPyramid decompose2d(const ImageBuffer& img, const MultiFilterBank& bank, int levels) {
    check_image(img, "decompose2d");
    check_levels_2d(img.width, img.height, levels, max_levels_2d(img.width, img.height, bank),
                    bank.name);

    SubbandPyramid pyr;
    pyr.width = img.width;
    pyr.height = img.height;
    pyr.levels = levels;
    pyr.multiplicity = 2;
    pyr.bank_name = bank.name;
    pyr.plane = img.samples;
    pyr.channel_map = build_channel_map(img.width, img.height, levels, 2);

    VectorSignal scratch;
    for (int level = 1; level <= levels; ++level) {
        const int rw = img.width >> (level - 1);
        const int rh = img.height >> (level - 1);
        for_each_row(pyr.plane, img.width, rh,
                     [&](const Line& l) { forward_line_vec(l, rw, level, bank, scratch); });
        for_each_col(pyr.plane, img.width, rw,
                     [&](const Line& l) { forward_line_vec(l, rh, level, bank, scratch); });
    }
    return pyr;
}

SubbandPyramid decompose2d(const ImageBuffer& img, const ScalarFilter& f, int levels) {
    check_image(img, "decompose2d");
    check_levels_2d(img.width, img.height, levels, max_levels_2d(img.width, img.height, f),
                    f.name);

    SubbandPyramid pyr;
    pyr.width = img.width;
    pyr.height = img.height;
    pyr.levels = levels;
    pyr.multiplicity = 1;
    pyr.bank_name = f.name;
    pyr.plane = img.samples;
    pyr.channel_map = build_channel_map(img.width, img.height, levels, 1);

    std::vector<double> scratch;
    for (int level = 1; level <= levels; ++level) {
        const int rw = img.width >> (level - 1);
        const int rh = img.height >> (level - 1);
        for_each_row(pyr.plane, img.width, rh,
                     [&](const Line& l) { forward_line_scalar(l, rw, f, scratch); });
        for_each_col(pyr.plane, img.width, rw,
                     [&](const Line& l) { forward_line_scalar(l, rh, f, scratch); });
    }
    return pyr;
}

ImageBuffer reconstruct2d(const SubbandPyramid& pyr, const MultiFilterBank& bank, double peak) {
    check_bank_match(pyr, bank.name, 2);

    ImageBuffer img = make_image(pyr.width, pyr.height, peak);
    img.samples = pyr.plane;
    Coeffs1D scratch;
    for (int level = pyr.levels; level >= 1; --level) {
        const int rw = pyr.width >> (level - 1);
        const int rh = pyr.height >> (level - 1);
        for_each_col(img.samples, pyr.width, rw,
                     [&](const Line& l) { inverse_line_vec(l, rh, level, bank, scratch); });
        for_each_row(img.samples, pyr.width, rh,
                     [&](const Line& l) { inverse_line_vec(l, rw, level, bank, scratch); });
    }
    return img;
}

ImageBuffer reconstruct2d(const SubbandPyramid& pyr, const ScalarFilter& f, double peak) {
    check_bank_match(pyr, f.name, 1);

    ImageBuffer img = make_image(pyr.width, pyr.height, peak);
    img.samples = pyr.plane;
    ScalarCoeffs1D scratch;
    for (int level = pyr.levels; level >= 1; --level) {
        const int rw = pyr.width >> (level - 1);
        const int rh = pyr.height >> (level - 1);
        for_each_col(img.samples, pyr.width, rw,
                     [&](const Line& l) { inverse_line_scalar(l, rh, f, scratch); });
        for_each_row(img.samples, pyr.width, rh,
                     [&](const Line& l) { inverse_line_scalar(l, rw, f, scratch); });
    }
    return img;
}

SubbandPyramid approx_only(const SubbandPyramid& pyr, int keep_levels) {
    if (keep_levels < 1 || keep_levels > pyr.levels)
        throw std::invalid_argument("approx_only: keep_levels must be in [1, " +
                                    std::to_string(pyr.levels) + "], got " +
                                    std::to_string(keep_levels));

    SubbandPyramid out = pyr;
    for (const SubbandBlock& b : out.channel_map) {
        if (b.level > keep_levels || b.band == "LL") continue;
        for (int y = b.y0; y < b.y0 + b.height; ++y)
            for (int x = b.x0; x < b.x0 + b.width; ++x) out.at(x, y) = 0.0;
    }
    return out;
}

void save_pyramid(const SubbandPyramid& pyr, const std::filesystem::path& path) {
    std::string header(kPyramidMagic, sizeof(kPyramidMagic));
    le_put_u32(header, static_cast<std::uint32_t>(pyr.width));
    le_put_u32(header, static_cast<std::uint32_t>(pyr.height));
    le_put_u32(header, static_cast<std::uint32_t>(pyr.levels));
    le_put_u32(header, static_cast<std::uint32_t>(pyr.multiplicity));
    le_put_u32(header, static_cast<std::uint32_t>(pyr.bank_name.size()));
    header += pyr.bank_name;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_pyramid: cannot open " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));

    std::string data;
    data.reserve(pyr.plane.size() * 8);
    for (double v : pyr.plane) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) data.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));

    std::ostringstream trailer;
    for (const SubbandBlock& b : pyr.channel_map)
        trailer << b.level << ' ' << b.band << ' ' << b.comp_x << ' ' << b.comp_y << ' ' << b.x0
                << ' ' << b.y0 << ' ' << b.width << ' ' << b.height << '\n';
    const std::string t = trailer.str();
    out.write(t.data(), static_cast<std::streamsize>(t.size()));
    if (!out) throw std::runtime_error("save_pyramid: write failed for " + path.string());
}

SubbandPyramid load_pyramid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_pyramid: cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());

    if (bytes.size() < 24 || std::memcmp(bytes.data(), kPyramidMagic, 4) != 0)
        throw std::runtime_error("load_pyramid: bad magic in " + path.string());

    SubbandPyramid pyr;
    pyr.width = static_cast<int>(le_get_u32(p + 4));
    pyr.height = static_cast<int>(le_get_u32(p + 8));
    pyr.levels = static_cast<int>(le_get_u32(p + 12));
    pyr.multiplicity = static_cast<int>(le_get_u32(p + 16));
    const std::size_t name_len = le_get_u32(p + 20);
    if (pyr.width < 1 || pyr.height < 1 || pyr.levels < 1 ||
        (pyr.multiplicity != 1 && pyr.multiplicity != 2))
        throw std::runtime_error("load_pyramid: malformed header in " + path.string());
    std::size_t off = 24;
    if (bytes.size() < off + name_len) throw std::runtime_error("load_pyramid: truncated header");
    pyr.bank_name = bytes.substr(off, name_len);
    off += name_len;

    const std::size_t count = static_cast<std::size_t>(pyr.width) * pyr.height;
    if (bytes.size() < off + count * 8)
        throw std::runtime_error("load_pyramid: truncated coefficient plane");
    pyr.plane.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 7; b >= 0; --b) bits = (bits << 8) | p[off + i * 8 + b];
        pyr.plane[i] = std::bit_cast<double>(bits);
    }
    off += count * 8;

    pyr.channel_map = build_channel_map(pyr.width, pyr.height, pyr.levels, pyr.multiplicity);
    std::istringstream trailer(bytes.substr(off));
    for (const SubbandBlock& b : pyr.channel_map) {
        SubbandBlock r;
        if (!(trailer >> r.level >> r.band >> r.comp_x >> r.comp_y >> r.x0 >> r.y0 >> r.width >>
              r.height))
            throw std::runtime_error("load_pyramid: truncated channel map");
        if (r.level != b.level || r.band != b.band || r.comp_x != b.comp_x ||
            r.comp_y != b.comp_y || r.x0 != b.x0 || r.y0 != b.y0 || r.width != b.width ||
            r.height != b.height)
            throw std::runtime_error("load_pyramid: channel map does not match the header geometry");
    }
    return pyr;
}

}  // namespace mwt
