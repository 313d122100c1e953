#include "mwt/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mwt {

namespace {

std::vector<double> alternating_flip(const std::vector<double>& lowpass) {
    const std::size_t L = lowpass.size();
    std::vector<double> d(L);
    for (std::size_t k = 0; k < L; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        d[k] = sign * lowpass[L - 1 - k];
    }
    return d;
}

// Tap at index k, zero outside [0, M).
Mat2 tap_or_zero(const std::vector<Mat2>& taps, long k) {
    if (k < 0 || k >= static_cast<long>(taps.size())) return Mat2::Zero();
    return taps[static_cast<std::size_t>(k)];
}

double scalar_shift_sum(const std::vector<double>& a, const std::vector<double>& b, long shift) {
    const long L = static_cast<long>(a.size());
    double s = 0.0;
    for (long k = 0; k < L; ++k) {
        const long j = k + shift;
        if (j >= 0 && j < static_cast<long>(b.size())) s += a[k] * b[j];
    }
    return s;
}

}  // namespace

ScalarFilter haar_scalar() {
    const double c = 1.0 / std::sqrt(2.0);
    ScalarFilter f;
    f.name = "haar";
    f.lowpass = {c, c};
    f.highpass = alternating_flip(f.lowpass);
    return f;
}

ScalarFilter db4_scalar() {
    const double s3 = std::sqrt(3.0);
    const double denom = 4.0 * std::sqrt(2.0);
    ScalarFilter f;
    f.name = "db4";
    f.lowpass = {(1.0 + s3) / denom, (3.0 + s3) / denom, (3.0 - s3) / denom, (1.0 - s3) / denom};
    f.highpass = alternating_flip(f.lowpass);
    return f;
}

double scalar_orthonormality_residual(const ScalarFilter& f) {
    const long L = static_cast<long>(f.length());
    double worst = 0.0;
    for (long l = -(L - 1); l <= L - 1; ++l) {
        const double target = (l == 0) ? 1.0 : 0.0;
        const double s = scalar_shift_sum(f.lowpass, f.lowpass, 2 * l);
        worst = std::max(worst, std::abs(s - target));
    }
    return worst;
}

MultiFilterBank double_shift_multifilter(const ScalarFilter& base) {
    const std::size_t L = base.length();
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("double_shift_multifilter: filter length must be even and >= 2");
    if (base.highpass.size() != L)
        throw std::invalid_argument("double_shift_multifilter: lowpass/highpass lengths differ");
    if (scalar_orthonormality_residual(base) > 1e-12)
        throw std::invalid_argument("double_shift_multifilter: base filter is not orthonormal");
    for (std::size_t k = 0; k < L; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        if (base.highpass[k] != sign * base.lowpass[L - 1 - k])
            throw std::invalid_argument("double_shift_multifilter: highpass is not the alternating flip of the lowpass");
    }

    auto scalar_at = [](const std::vector<double>& c, long k) {
        return (k >= 0 && k < static_cast<long>(c.size())) ? c[static_cast<std::size_t>(k)] : 0.0;
    };

    MultiFilterBank bank;
    bank.name = base.name + "-multi";
    const std::size_t M = L / 2 + 1;
    bank.lowpass_taps.reserve(M);
    bank.highpass_taps.reserve(M);
    for (std::size_t m = 0; m < M; ++m) {
        const long i = 2 * static_cast<long>(m);
        Mat2 H, G;
        H << scalar_at(base.lowpass, i), scalar_at(base.lowpass, i + 1),
             scalar_at(base.lowpass, i - 2), scalar_at(base.lowpass, i - 1);
        G << scalar_at(base.highpass, i), scalar_at(base.highpass, i + 1),
             scalar_at(base.highpass, i - 2), scalar_at(base.highpass, i - 1);
        bank.lowpass_taps.push_back(H);
        bank.highpass_taps.push_back(G);
    }
    return bank;
}

MultiFilterBank ghm_multifilter() {
    const double s2 = std::sqrt(2.0);

    MultiFilterBank bank;
    bank.name = "ghm";
    bank.lowpass_taps.resize(4);
    bank.highpass_taps.resize(4);

    bank.lowpass_taps[0] << 3.0 / (5.0 * s2), 4.0 / 5.0,
                            -1.0 / 20.0, -3.0 / (10.0 * s2);
    bank.lowpass_taps[1] << 3.0 / (5.0 * s2), 0.0,
                            9.0 / 20.0, 1.0 / s2;
    bank.lowpass_taps[2] << 0.0, 0.0,
                            9.0 / 20.0, -3.0 / (10.0 * s2);
    bank.lowpass_taps[3] << 0.0, 0.0,
                            -1.0 / 20.0, 0.0;

    bank.highpass_taps[0] << -1.0 / 20.0, -3.0 / (10.0 * s2),
                             1.0 / (10.0 * s2), 3.0 / 10.0;
    bank.highpass_taps[1] << 9.0 / 20.0, -1.0 / s2,
                             -9.0 / (10.0 * s2), 0.0;
    bank.highpass_taps[2] << 9.0 / 20.0, -3.0 / (10.0 * s2),
                             9.0 / (10.0 * s2), -3.0 / 10.0;
    bank.highpass_taps[3] << -1.0 / 20.0, 0.0,
                             -1.0 / (10.0 * s2), 0.0;

    return bank;
}

std::vector<ShiftResidual> orthogonality_residuals(const MultiFilterBank& bank) {
    if (bank.lowpass_taps.size() != bank.highpass_taps.size())
        throw std::invalid_argument("orthogonality_residuals: lowpass/highpass tap counts differ");

    const long M = static_cast<long>(bank.taps());
    std::vector<ShiftResidual> out;
    out.reserve(static_cast<std::size_t>(2 * M - 1));
    for (long l = -(M - 1); l <= M - 1; ++l) {
        Mat2 hh = Mat2::Zero(), gg = Mat2::Zero(), hg = Mat2::Zero();
        for (long k = 0; k < M; ++k) {
            hh += bank.lowpass_taps[k] * tap_or_zero(bank.lowpass_taps, k + 2 * l).transpose();
            gg += bank.highpass_taps[k] * tap_or_zero(bank.highpass_taps, k + 2 * l).transpose();
            hg += bank.lowpass_taps[k] * tap_or_zero(bank.highpass_taps, k + 2 * l).transpose();
        }
        const Mat2 target = (l == 0) ? Mat2(Mat2::Identity()) : Mat2(Mat2::Zero());
        out.push_back({l, (hh - target).cwiseAbs().maxCoeff(), (gg - target).cwiseAbs().maxCoeff(),
                       hg.cwiseAbs().maxCoeff()});
    }
    return out;
}

std::vector<ShiftResidual> scalar_orthonormality_residuals(const ScalarFilter& f) {
    if (f.highpass.size() != f.lowpass.size())
        throw std::invalid_argument(
            "scalar_orthonormality_residuals: lowpass/highpass lengths differ");

    const long L = static_cast<long>(f.length());
    std::vector<ShiftResidual> out;
    out.reserve(static_cast<std::size_t>(2 * L - 1));
    for (long l = -(L - 1); l <= L - 1; ++l) {
        const double target = (l == 0) ? 1.0 : 0.0;
        out.push_back({l, std::abs(scalar_shift_sum(f.lowpass, f.lowpass, 2 * l) - target),
                       std::abs(scalar_shift_sum(f.highpass, f.highpass, 2 * l) - target),
                       std::abs(scalar_shift_sum(f.lowpass, f.highpass, 2 * l))});
    }
    return out;
}

namespace {

OrthogonalityReport summarize(const std::vector<ShiftResidual>& residuals, double tolerance) {
    if (tolerance <= 0.0) throw std::invalid_argument("verify: tolerance must be positive");
    OrthogonalityReport rep;
    rep.tolerance = tolerance;
    for (const ShiftResidual& r : residuals) {
        rep.max_residual_HH = std::max(rep.max_residual_HH, r.hh);
        rep.max_residual_GG = std::max(rep.max_residual_GG, r.gg);
        rep.max_residual_HG = std::max(rep.max_residual_HG, r.hg);
    }
    rep.passed = rep.max_residual_HH <= tolerance && rep.max_residual_GG <= tolerance &&
                 rep.max_residual_HG <= tolerance;
    return rep;
}

}  // namespace

OrthogonalityReport verify_orthogonality(const MultiFilterBank& bank, double tolerance) {
    return summarize(orthogonality_residuals(bank), tolerance);
}

OrthogonalityReport verify_scalar_orthonormality(const ScalarFilter& f, double tolerance) {
    return summarize(scalar_orthonormality_residuals(f), tolerance);
}

std::vector<FrequencySample> frequency_response(const MultiFilterBank& bank, int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("frequency_response: n_points must be >= 2");

    const double pi = std::acos(-1.0);
    std::vector<FrequencySample> table(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double omega = pi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        FrequencySample& s = table[static_cast<std::size_t>(i)];
        s.omega = omega;
        s.lowpass = CMat2::Zero();
        s.highpass = CMat2::Zero();
        for (std::size_t k = 0; k < bank.taps(); ++k) {
            const std::complex<double> w = std::polar(1.0, -omega * static_cast<double>(k));
            s.lowpass += w * bank.lowpass_taps[k];
            s.highpass += w * bank.highpass_taps[k];
        }
    }
    return table;
}

void write_frequency_csv(std::ostream& out, const std::vector<FrequencySample>& table) {
    out << "omega,component,row,col,magnitude\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const FrequencySample& s : table) {
        for (int comp = 0; comp < 2; ++comp) {
            const CMat2& m = (comp == 0) ? s.lowpass : s.highpass;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    out << fmt(s.omega) << ',' << (comp == 0 ? 'H' : 'G') << ',' << (r + 1)
                        << ',' << (c + 1) << ',' << fmt(std::abs(m(r, c))) << '\n';
        }
    }
}

}  // namespace mwt
