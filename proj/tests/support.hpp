// Shared fixtures and oracle helpers for the test binaries.
#ifndef MWT_TESTS_SUPPORT_HPP
#define MWT_TESTS_SUPPORT_HPP

#include "mwt/image.hpp"
#include "mwt/image2d.hpp"
#include "mwt/transform1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testsup {

inline std::vector<double> random_signal(std::size_t n, unsigned seed, double lo = -1.0,
                                         double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> x(n);
    for (double& v : x) v = dist(rng);
    return x;
}

inline mwt::VectorSignal random_vector_signal(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    mwt::VectorSignal v(n);
    for (auto& e : v) e = mwt::Vec2(dist(rng), dist(rng));
    return v;
}

inline mwt::ImageBuffer random_image(int w, int h, unsigned seed, double peak = 255.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, peak);
    mwt::ImageBuffer img = mwt::make_image(w, h, peak);
    for (double& s : img.samples) s = dist(rng);
    return img;
}

inline mwt::ImageBuffer random_integer_image(int w, int h, unsigned seed, double peak = 65535.0) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, static_cast<int>(peak));
    mwt::ImageBuffer img = mwt::make_image(w, h, peak);
    for (double& s : img.samples) s = static_cast<double>(dist(rng));
    return img;
}

// 16-bit star field: smooth sloping background plus Gaussian spots,
// quantized to integers.
inline mwt::ImageBuffer make_star_field(int size, unsigned seed, int stars = 120) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, static_cast<double>(size));
    std::uniform_real_distribution<double> amp(2000.0, 40000.0);
    std::uniform_real_distribution<double> sigma(0.8, 3.0);

    mwt::ImageBuffer img = mwt::make_image(size, size, 65535.0);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double u = static_cast<double>(x) / size;
            const double v = static_cast<double>(y) / size;
            img.at(x, y) = 2500.0 + 1800.0 * u + 1200.0 * v + 900.0 * u * v;
        }
    }
    for (int s = 0; s < stars; ++s) {
        const double cx = pos(rng), cy = pos(rng), a = amp(rng), sg = sigma(rng);
        const int r = static_cast<int>(std::ceil(4.0 * sg));
        const int x0 = std::max(0, static_cast<int>(cx) - r);
        const int x1 = std::min(size - 1, static_cast<int>(cx) + r);
        const int y0 = std::max(0, static_cast<int>(cy) - r);
        const int y1 = std::min(size - 1, static_cast<int>(cy) + r);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                img.at(x, y) += a * std::exp(-d2 / (2.0 * sg * sg));
            }
        }
    }
    for (double& v : img.samples) v = std::clamp(std::round(v), 0.0, 65535.0);
    return img;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double linf_vec(const mwt::VectorSignal& a, const mwt::VectorSignal& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
    return worst;
}

inline double max_abs(const std::vector<double>& a) {
    double worst = 0.0;
    for (double v : a) worst = std::max(worst, std::abs(v));
    return worst;
}

inline double signal_energy(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

inline double signal_energy(const mwt::VectorSignal& v) {
    double acc = 0.0;
    for (const auto& e : v) acc += e.squaredNorm();
    return acc;
}

// Rearranges an r=2 pyramid plane into the scalar subband layout using the
// channel map: component j of lowpass block entries lands at 2*offset+j-1
// inside the approx half, detail blocks likewise inside the detail half.
// This is the mechanical link between the double-shift banks and their
// scalar parents.
inline std::vector<double> depermute_to_scalar(const mwt::SubbandPyramid& pyr) {
    std::vector<double> out(pyr.plane.size(), 0.0);
    auto scalar_pos = [](bool lowpass, int region, int offset, int comp) {
        return lowpass ? 2 * offset + comp - 1 : region / 2 + 2 * offset + comp - 1;
    };
    for (const auto& b : pyr.channel_map) {
        if (b.band == "LL" && b.level != pyr.levels) continue;  // subdivided further
        const int rw = pyr.width >> (b.level - 1);
        const int rh = pyr.height >> (b.level - 1);
        const bool x_low = b.band[0] == 'L';
        const bool y_low = b.band[1] == 'L';
        for (int my = 0; my < b.height; ++my) {
            for (int mx = 0; mx < b.width; ++mx) {
                const int sx = scalar_pos(x_low, rw, mx, b.comp_x);
                const int sy = scalar_pos(y_low, rh, my, b.comp_y);
                out[static_cast<std::size_t>(sy) * pyr.width + sx] =
                    pyr.at(b.x0 + mx, b.y0 + my);
            }
        }
    }
    return out;
}

class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("mwt-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string fits_card(const std::string& keyword, const std::string& value) {
    std::string card = keyword;
    card.resize(8, ' ');
    card += "= ";
    card += std::string(value.size() < 20 ? 20 - value.size() : 0, ' ') + value;
    card.resize(80, ' ');
    return card;
}

inline std::string fits_bare_card(const std::string& keyword) {
    std::string card = keyword;
    card.resize(80, ' ');
    return card;
}

// Minimal FITS file: given header cards (END appended) and big-endian
// payload bytes, both padded to 2880-byte records.
inline void write_fits_file(const std::filesystem::path& path, std::vector<std::string> cards,
                            const std::vector<unsigned char>& payload) {
    cards.push_back(fits_bare_card("END"));
    std::string header;
    for (const std::string& c : cards) header += c;
    header.resize((header.size() + 2879) / 2880 * 2880, ' ');

    std::string data(payload.begin(), payload.end());
    data.resize((data.size() + 2879) / 2880 * 2880, '\0');

    std::ofstream out(path, std::ios::binary);
    out << header << data;
}

// 16-bit fixture with the given samples (row-major, values in [-32768, 65535]
// depending on bzero).
inline void write_fits_int16(const std::filesystem::path& path, int width, int height,
                             const std::vector<int>& raw,
                             const std::vector<std::string>& extra_cards = {}) {
    std::vector<std::string> cards = {
        fits_card("SIMPLE", "T"),
        fits_card("BITPIX", "16"),
        fits_card("NAXIS", "2"),
        fits_card("NAXIS1", std::to_string(width)),
        fits_card("NAXIS2", std::to_string(height)),
    };
    cards.insert(cards.end(), extra_cards.begin(), extra_cards.end());
    std::vector<unsigned char> payload;
    payload.reserve(raw.size() * 2);
    for (int v : raw) {
        const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
        payload.push_back(static_cast<unsigned char>(u >> 8));
        payload.push_back(static_cast<unsigned char>(u & 0xff));
    }
    write_fits_file(path, std::move(cards), payload);
}

}  // namespace testsup

#endif
