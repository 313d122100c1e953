#include "mwt/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mwt {

ImageBuffer make_image(int width, int height, double peak, double fill) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("make_image: dimensions must be positive");
    if (peak != 255.0 && peak != 65535.0)
        throw std::invalid_argument("make_image: peak must be 255 or 65535");
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.peak = peak;
    img.samples.assign(static_cast<std::size_t>(width) * height, fill);
    return img;
}

double mse(const ImageBuffer& x, const ImageBuffer& y) {
    if (x.width != y.width || x.height != y.height)
        throw std::invalid_argument("mse: image dimensions differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
        const double d = x.samples[i] - y.samples[i];
        acc += d * d;
    }
    return acc / static_cast<double>(x.samples.size());
}

double psnr(const ImageBuffer& x, const ImageBuffer& y, double peak) {
    if (peak <= 0.0) throw std::invalid_argument("psnr: peak must be positive");
    const double m = mse(x, y);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / m);
}

double energy(std::span<const double> samples) {
    double acc = 0.0;
    for (double s : samples) acc += s * s;
    return acc;
}

double energy(const ImageBuffer& img) {
    return energy(std::span<const double>(img.samples));
}

MetricsReport compare(const ImageBuffer& x, const ImageBuffer& y, double peak) {
    MetricsReport r;
    r.mse = mse(x, y);
    r.psnr_db = (r.mse == 0.0) ? std::numeric_limits<double>::infinity()
                               : 10.0 * std::log10(peak * peak / r.mse);
    r.peak = peak;
    r.width = x.width;
    r.height = x.height;
    return r;
}

void write_metrics_csv_header(std::ostream& out) {
    out << "level,filter,mse,psnr_db\n";
}

void write_metrics_csv_row(std::ostream& out, int level, std::string_view filter, double mse_value,
                           double psnr_value) {
    char buf[64];
    out << level << ',' << filter << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", mse_value);
    out << buf << ',';
    if (std::isinf(psnr_value)) {
        out << "inf";
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", psnr_value);
        out << buf;
    }
    out << '\n';
}

}  // namespace mwt
