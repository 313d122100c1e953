#ifndef MWT_TRANSFORM1D_HPP
#define MWT_TRANSFORM1D_HPP

#include "mwt/filterbank.hpp"

#include <span>
#include <vector>

namespace mwt {

// Critically sampled sequence of 2-vectors.
using VectorSignal = std::vector<Vec2>;

// One analysis step: lowpass channel A and highpass channel D, half the
// input length each.
struct Coeffs1D {
    VectorSignal approx;
    VectorSignal detail;
};

struct ScalarCoeffs1D {
    std::vector<double> approx;
    std::vector<double> detail;
};

// Pairs consecutive samples, v[n] = (x[2n], x[2n+1]). Length must be even.
VectorSignal vectorize(std::span<const double> x);

// Interleaves components back; exact inverse of vectorize.
std::vector<double> devectorize(const VectorSignal& v);

// A[n] = sum_k H_k v[(2n+k) mod len], D[n] = sum_k G_k v[(2n+k) mod len].
// The signal length must be even and at least the tap count.
Coeffs1D analyze_vec(const VectorSignal& v, const MultiFilterBank& bank);

// v[m] = sum_n (H_{m-2n}^T A[n] + G_{m-2n}^T D[n]) with periodic indexing;
// inverse of analyze_vec for orthogonal banks.
VectorSignal synthesize_vec(const Coeffs1D& c, const MultiFilterBank& bank);

// a[n] = sum_k c_k x[(2n+k) mod len], d[n] = sum_k d_k x[(2n+k) mod len].
ScalarCoeffs1D analyze_scalar(std::span<const double> x, const ScalarFilter& f);

std::vector<double> synthesize_scalar(const ScalarCoeffs1D& c, const ScalarFilter& f);

// Detail channels per level (finest first) plus the coarsest approximation.
struct MultilevelVec {
    std::vector<VectorSignal> details;
    VectorSignal approx;
};

struct MultilevelScalar {
    std::vector<std::vector<double>> details;
    std::vector<double> approx;
};

// Largest level count the signal supports: each level needs the running
// length to stay even and at least the tap count.
int max_levels(std::size_t signal_length, const MultiFilterBank& bank);
int max_levels(std::size_t signal_length, const ScalarFilter& f);

// Recursive analysis of the approximation channel; throws when levels
// exceeds the feasible maximum, naming it.
MultilevelVec multilevel_analyze(const VectorSignal& v, const MultiFilterBank& bank, int levels);
VectorSignal multilevel_synthesize(const MultilevelVec& m, const MultiFilterBank& bank);

MultilevelScalar multilevel_analyze(std::span<const double> x, const ScalarFilter& f, int levels);
std::vector<double> multilevel_synthesize(const MultilevelScalar& m, const ScalarFilter& f);

}  // namespace mwt

#endif
