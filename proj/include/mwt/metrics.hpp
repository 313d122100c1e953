#ifndef MWT_METRICS_HPP
#define MWT_METRICS_HPP

#include "mwt/image.hpp"

#include <iosfwd>
#include <span>
#include <string_view>

namespace mwt {

struct MetricsReport {
    double mse = 0.0;
    double psnr_db = 0.0;  // +infinity when mse == 0
    double peak = 0.0;
    int width = 0;
    int height = 0;
};

// Mean squared error; dimensions must match.
double mse(const ImageBuffer& x, const ImageBuffer& y);

// 10*log10(peak^2/mse), +infinity when mse == 0. peak must be positive.
double psnr(const ImageBuffer& x, const ImageBuffer& y, double peak);

// Sum of squared samples.
double energy(std::span<const double> samples);
double energy(const ImageBuffer& img);

MetricsReport compare(const ImageBuffer& x, const ImageBuffer& y, double peak);

// CSV row "level,filter,mse,psnr_db"; infinite PSNR renders as "inf".
void write_metrics_csv_header(std::ostream& out);
void write_metrics_csv_row(std::ostream& out, int level, std::string_view filter, double mse_value,
                           double psnr_value);

}  // namespace mwt

#endif
