#include "mwt/transform1d.hpp"

#include <stdexcept>
#include <string>

namespace mwt {

namespace {

void check_analyzable(std::size_t len, std::size_t taps, const char* who) {
    if (len % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": length must be even");
    if (len < taps)
        throw std::invalid_argument(std::string(who) + ": signal shorter than the filter (" +
                                    std::to_string(len) + " < " + std::to_string(taps) + ")");
}

int max_levels_impl(std::size_t n, std::size_t taps) {
    int levels = 0;
    while (n % 2 == 0 && n >= taps && n >= 2) {
        ++levels;
        n /= 2;
    }
    return levels;
}

void check_levels(std::size_t n, std::size_t taps, int levels, const char* who) {
    if (levels < 1)
        throw std::invalid_argument(std::string(who) + ": levels must be >= 1");
    const int feasible = max_levels_impl(n, taps);
    if (levels > feasible)
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(levels) +
                                    " levels requested but at most " + std::to_string(feasible) +
                                    " are feasible for length " + std::to_string(n));
}

}  // namespace

VectorSignal vectorize(std::span<const double> x) {
    if (x.size() % 2 != 0)
        throw std::invalid_argument("vectorize: length must be even");
    VectorSignal v(x.size() / 2);
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = Vec2(x[2 * n], x[2 * n + 1]);
    return v;
}

std::vector<double> devectorize(const VectorSignal& v) {
    std::vector<double> x(2 * v.size());
    for (std::size_t n = 0; n < v.size(); ++n) {
        x[2 * n] = v[n](0);
        x[2 * n + 1] = v[n](1);
    }
    return x;
}

Coeffs1D analyze_vec(const VectorSignal& v, const MultiFilterBank& bank) {
    const std::size_t len = v.size();
    const std::size_t M = bank.taps();
    check_analyzable(len, M, "analyze_vec");

    Coeffs1D c;
    c.approx.assign(len / 2, Vec2::Zero());
    c.detail.assign(len / 2, Vec2::Zero());
    for (std::size_t n = 0; n < len / 2; ++n) {
        Vec2 a = Vec2::Zero(), d = Vec2::Zero();
        for (std::size_t k = 0; k < M; ++k) {
            const Vec2& s = v[(2 * n + k) % len];
            a += bank.lowpass_taps[k] * s;
            d += bank.highpass_taps[k] * s;
        }
        c.approx[n] = a;
        c.detail[n] = d;
    }
    return c;
}

VectorSignal synthesize_vec(const Coeffs1D& c, const MultiFilterBank& bank) {
    if (c.approx.size() != c.detail.size())
        throw std::invalid_argument("synthesize_vec: approx/detail lengths differ");

    const std::size_t len = 2 * c.approx.size();
    const std::size_t M = bank.taps();
    VectorSignal v(len, Vec2::Zero());
    for (std::size_t n = 0; n < c.approx.size(); ++n) {
        for (std::size_t k = 0; k < M; ++k) {
            v[(2 * n + k) % len] += bank.lowpass_taps[k].transpose() * c.approx[n] +
                                    bank.highpass_taps[k].transpose() * c.detail[n];
        }
    }
    return v;
}

ScalarCoeffs1D analyze_scalar(std::span<const double> x, const ScalarFilter& f) {
    const std::size_t len = x.size();
    const std::size_t L = f.length();
    check_analyzable(len, L, "analyze_scalar");

    ScalarCoeffs1D c;
    c.approx.assign(len / 2, 0.0);
    c.detail.assign(len / 2, 0.0);
    for (std::size_t n = 0; n < len / 2; ++n) {
        double a = 0.0, d = 0.0;
        for (std::size_t k = 0; k < L; ++k) {
            const double s = x[(2 * n + k) % len];
            a += f.lowpass[k] * s;
            d += f.highpass[k] * s;
        }
        c.approx[n] = a;
        c.detail[n] = d;
    }
    return c;
}

std::vector<double> synthesize_scalar(const ScalarCoeffs1D& c, const ScalarFilter& f) {
    if (c.approx.size() != c.detail.size())
        throw std::invalid_argument("synthesize_scalar: approx/detail lengths differ");

    const std::size_t len = 2 * c.approx.size();
    const std::size_t L = f.length();
    std::vector<double> x(len, 0.0);
    for (std::size_t n = 0; n < c.approx.size(); ++n) {
        for (std::size_t k = 0; k < L; ++k) {
            x[(2 * n + k) % len] += f.lowpass[k] * c.approx[n] + f.highpass[k] * c.detail[n];
        }
    }
    return x;
}

int max_levels(std::size_t signal_length, const MultiFilterBank& bank) {
    return max_levels_impl(signal_length, bank.taps());
}

int max_levels(std::size_t signal_length, const ScalarFilter& f) {
    return max_levels_impl(signal_length, f.length());
}

MultilevelVec multilevel_analyze(const VectorSignal& v, const MultiFilterBank& bank, int levels) {
    check_levels(v.size(), bank.taps(), levels, "multilevel_analyze");
    MultilevelVec out;
    VectorSignal cur = v;
    for (int l = 0; l < levels; ++l) {
        Coeffs1D c = analyze_vec(cur, bank);
        out.details.push_back(std::move(c.detail));
        cur = std::move(c.approx);
    }
    out.approx = std::move(cur);
    return out;
}

VectorSignal multilevel_synthesize(const MultilevelVec& m, const MultiFilterBank& bank) {
    VectorSignal cur = m.approx;
    for (std::size_t l = m.details.size(); l-- > 0;) {
        Coeffs1D c;
        c.approx = std::move(cur);
        c.detail = m.details[l];
        cur = synthesize_vec(c, bank);
    }
    return cur;
}

MultilevelScalar multilevel_analyze(std::span<const double> x, const ScalarFilter& f, int levels) {
    check_levels(x.size(), f.length(), levels, "multilevel_analyze");
    MultilevelScalar out;
    std::vector<double> cur(x.begin(), x.end());
    for (int l = 0; l < levels; ++l) {
        ScalarCoeffs1D c = analyze_scalar(cur, f);
        out.details.push_back(std::move(c.detail));
        cur = std::move(c.approx);
    }
    out.approx = std::move(cur);
    return out;
}

std::vector<double> multilevel_synthesize(const MultilevelScalar& m, const ScalarFilter& f) {
    std::vector<double> cur = m.approx;
    for (std::size_t l = m.details.size(); l-- > 0;) {
        ScalarCoeffs1D c;
        c.approx = std::move(cur);
        c.detail = m.details[l];
        cur = synthesize_scalar(c, f);
    }
    return cur;
}

}  // namespace mwt
