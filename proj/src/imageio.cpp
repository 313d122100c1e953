#include "mwt/imageio.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwt {

namespace {

constexpr std::size_t kFitsRecord = 2880;
constexpr std::size_t kFitsCard = 80;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Fixed-format card: keyword in bytes 0-7, "= " in bytes 8-9, value (with
// optional /comment) afterwards. Cards never span record boundaries.
struct Card {
    std::string keyword;
    std::string value;
};

Card parse_card(const char* data) {
    Card c;
    c.keyword = trim(std::string(data, 8));
    if (data[8] == '=' && data[9] == ' ') {
        std::string rest(data + 10, kFitsCard - 10);
        const std::size_t slash = rest.find('/');
        if (slash != std::string::npos) rest = rest.substr(0, slash);
        c.value = trim(rest);
    }
    return c;
}

long require_long(const Card& c) {
    try {
        return std::stol(c.value);
    } catch (const std::exception&) {
        throw std::runtime_error("FITS: card " + c.keyword + " has a non-integer value '" +
                                 c.value + "'");
    }
}

double require_double(const Card& c) {
    try {
        return std::stod(c.value);
    } catch (const std::exception&) {
        throw std::runtime_error("FITS: card " + c.keyword + " has a non-numeric value '" +
                                 c.value + "'");
    }
}

std::vector<char> read_all(const std::filesystem::path& path, const char* who) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(std::string(who) + ": cannot open " + path.string());
    return std::vector<char>((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
}

}  // namespace

ImageBuffer read_fits(const std::filesystem::path& path) {
    const std::vector<char> bytes = read_all(path, "read_fits");
    if (bytes.size() < kFitsRecord)
        throw std::runtime_error("FITS: file shorter than one 2880-byte header record");

    bool end_seen = false;
    bool have_bitpix = false, have_naxis = false, have_naxis1 = false, have_naxis2 = false;
    FitsHeader hdr;

    std::size_t record = 0;
    for (; !end_seen; ++record) {
        const std::size_t base = record * kFitsRecord;
        if (base + kFitsRecord > bytes.size())
            throw std::runtime_error("FITS: missing END card");
        for (std::size_t ci = 0; ci < kFitsRecord / kFitsCard; ++ci) {
            const Card card = parse_card(bytes.data() + base + ci * kFitsCard);
            if (record == 0 && ci == 0) {
                if (card.keyword != "SIMPLE")
                    throw std::runtime_error("FITS: first card is not SIMPLE");
                if (card.value != "T")
                    throw std::runtime_error("FITS: SIMPLE is not T");
                continue;
            }
            if (card.keyword == "END") {
                end_seen = true;
                break;
            }
            if (card.keyword == "BITPIX") {
                hdr.bitpix = static_cast<int>(require_long(card));
                have_bitpix = true;
            } else if (card.keyword == "NAXIS") {
                hdr.naxis = static_cast<int>(require_long(card));
                have_naxis = true;
            } else if (card.keyword == "NAXIS1") {
                hdr.naxis1 = static_cast<int>(require_long(card));
                have_naxis1 = true;
            } else if (card.keyword == "NAXIS2") {
                hdr.naxis2 = static_cast<int>(require_long(card));
                have_naxis2 = true;
            } else if (card.keyword == "BSCALE") {
                hdr.bscale = require_double(card);
            } else if (card.keyword == "BZERO") {
                hdr.bzero = require_double(card);
            }
        }
    }

    if (!have_bitpix) throw std::runtime_error("FITS: missing BITPIX card");
    if (!have_naxis) throw std::runtime_error("FITS: missing NAXIS card");
    if (hdr.bitpix != 8 && hdr.bitpix != 16)
        throw std::runtime_error("FITS: unsupported BITPIX " + std::to_string(hdr.bitpix) +
                                 " (only 8 and 16 are supported)");
    if (hdr.naxis != 2)
        throw std::runtime_error("FITS: NAXIS is " + std::to_string(hdr.naxis) +
                                 ", only NAXIS = 2 is supported");
    if (!have_naxis1) throw std::runtime_error("FITS: missing NAXIS1 card");
    if (!have_naxis2) throw std::runtime_error("FITS: missing NAXIS2 card");
    if (hdr.naxis1 < 1 || hdr.naxis2 < 1)
        throw std::runtime_error("FITS: NAXIS1/NAXIS2 must be >= 1");

    const std::size_t data_start = record * kFitsRecord;
    const std::size_t count = static_cast<std::size_t>(hdr.naxis1) * hdr.naxis2;
    const std::size_t bytes_per = static_cast<std::size_t>(hdr.bitpix) / 8;
    if (bytes.size() < data_start + count * bytes_per)
        throw std::runtime_error("FITS: truncated data (expected " +
                                 std::to_string(count * bytes_per) + " bytes after the header)");

    ImageBuffer img = make_image(hdr.naxis1, hdr.naxis2, hdr.bitpix == 8 ? 255.0 : 65535.0);
    const auto* d = reinterpret_cast<const unsigned char*>(bytes.data()) + data_start;
    for (std::size_t i = 0; i < count; ++i) {
        double raw;
        if (hdr.bitpix == 8) {
            raw = static_cast<double>(d[i]);
        } else {
            const std::uint16_t hi = d[2 * i], lo = d[2 * i + 1];
            raw = static_cast<double>(static_cast<std::int16_t>(hi << 8 | lo));
        }
        img.samples[i] = hdr.bscale * raw + hdr.bzero;
    }
    return img;
}

std::size_t write_pgm(const ImageBuffer& img, const std::filesystem::path& path) {
    if (img.width < 1 || img.height < 1 ||
        img.samples.size() != static_cast<std::size_t>(img.width) * img.height)
        throw std::invalid_argument("write_pgm: malformed image buffer");
    if (img.peak != 255.0 && img.peak != 65535.0)
        throw std::invalid_argument("write_pgm: peak must be 255 or 65535");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path.string());
    out << "P5\n" << img.width << ' ' << img.height << '\n' << static_cast<long>(img.peak) << '\n';

    std::size_t clamped = 0;
    std::string data;
    data.reserve(img.samples.size() * (img.peak == 255.0 ? 1 : 2));
    for (double v : img.samples) {
        double r = std::round(v);  // half away from zero
        if (r < 0.0) {
            r = 0.0;
            ++clamped;
        } else if (r > img.peak) {
            r = img.peak;
            ++clamped;
        }
        const auto q = static_cast<std::uint16_t>(r);
        if (img.peak == 255.0) {
            data.push_back(static_cast<char>(q & 0xff));
        } else {
            data.push_back(static_cast<char>(q >> 8));
            data.push_back(static_cast<char>(q & 0xff));
        }
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write_pgm: write failed for " + path.string());
    return clamped;
}

ImageBuffer read_pgm(const std::filesystem::path& path) {
    const std::vector<char> bytes = read_all(path, "read_pgm");
    std::size_t pos = 0;

    // Header tokens may be separated by whitespace and '#' comments.
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return std::string(bytes.data() + start, pos - start);
    };

    if (next_token() != "P5") throw std::runtime_error("PGM: bad magic, expected P5");
    long w, h, maxval;
    try {
        w = std::stol(next_token());
        h = std::stol(next_token());
        maxval = std::stol(next_token());
    } catch (const std::exception&) {
        throw std::runtime_error("PGM: malformed header in " + path.string());
    }
    if (w < 1 || h < 1) throw std::runtime_error("PGM: dimensions must be >= 1");
    if (maxval < 1 || maxval > 65535)
        throw std::runtime_error("PGM: maxval " + std::to_string(maxval) +
                                 " out of range [1, 65535]");
    ++pos;  // single whitespace after maxval

    const bool wide = maxval > 255;
    const std::size_t count = static_cast<std::size_t>(w) * h;
    if (bytes.size() < pos + count * (wide ? 2 : 1))
        throw std::runtime_error("PGM: truncated pixel data in " + path.string());

    ImageBuffer img = make_image(static_cast<int>(w), static_cast<int>(h), wide ? 65535.0 : 255.0);
    const auto* d = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
    for (std::size_t i = 0; i < count; ++i) {
        img.samples[i] = wide ? static_cast<double>(d[2 * i] << 8 | d[2 * i + 1])
                              : static_cast<double>(d[i]);
    }
    return img;
}

}  // namespace mwt
