#ifndef MWT_FILTERBANK_HPP
#define MWT_FILTERBANK_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mwt {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using CMat2 = Eigen::Matrix2cd;

// Finite real tap sequence of an orthogonal scalar wavelet. The highpass is
// the alternating flip of the lowpass, d_k = (-1)^k c_{L-1-k}.
struct ScalarFilter {
    std::string name;
    std::vector<double> lowpass;   // c_0 .. c_{L-1}
    std::vector<double> highpass;  // d_0 .. d_{L-1}

    std::size_t length() const { return lowpass.size(); }
};

// Matrix filter pair (H, G) of an r=2 orthogonal multiwavelet.
struct MultiFilterBank {
    std::string name;
    int multiplicity = 2;
    std::vector<Mat2> lowpass_taps;   // H_0 .. H_{M-1}
    std::vector<Mat2> highpass_taps;  // G_0 .. G_{M-1}

    std::size_t taps() const { return lowpass_taps.size(); }
};

// Residuals of the three orthogonality identities
//   sum_k H_k H_{k+2l}^T = delta_{0l} I
//   sum_k G_k G_{k+2l}^T = delta_{0l} I
//   sum_k H_k G_{k+2l}^T = 0
// maximised entrywise over all shifts |l| < tap count.
struct OrthogonalityReport {
    double max_residual_HH = 0.0;
    double max_residual_GG = 0.0;
    double max_residual_HG = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

// Haar filter: c_0 = c_1 = 1/sqrt(2).
ScalarFilter haar_scalar();

// Four-tap Daubechies filter with the closed-form taps
// c_0 = (1+sqrt(3))/(4 sqrt(2)), c_1 = (3+sqrt(3))/(4 sqrt(2)),
// c_2 = (3-sqrt(3))/(4 sqrt(2)), c_3 = (1-sqrt(3))/(4 sqrt(2)).
ScalarFilter db4_scalar();

// Largest residual of sum_k c_k c_{k+2l} - delta_{0l} over all shifts l.
double scalar_orthonormality_residual(const ScalarFilter& f);

// Builds the r=2 multifilter whose tap m has row 1 = (c_{2m}, c_{2m+1}) and
// row 2 = (c_{2m-2}, c_{2m-1}), out-of-range indices reading as zero; G taps
// are built the same way from the highpass. M = L/2 + 1 taps. The base filter
// must be orthonormal (residual <= 1e-12) with an alternating-flip highpass,
// otherwise std::invalid_argument is thrown.
MultiFilterBank double_shift_multifilter(const ScalarFilter& base);

// The classical Geronimo-Hardin-Massopust bank (4 taps, multiplicity 2).
MultiFilterBank ghm_multifilter();

// Entrywise residuals of the three identities at one shift.
struct ShiftResidual {
    long shift = 0;
    double hh = 0.0;
    double gg = 0.0;
    double hg = 0.0;
};

// Residuals for every shift l in {-(M-1) .. M-1}.
std::vector<ShiftResidual> orthogonality_residuals(const MultiFilterBank& bank);
std::vector<ShiftResidual> scalar_orthonormality_residuals(const ScalarFilter& f);

// Checks the three identities above; tolerance must be positive.
OrthogonalityReport verify_orthogonality(const MultiFilterBank& bank, double tolerance);

// Scalar analogue: cc, dd and cd shift residuals reported through the same
// struct (HH = cc, GG = dd, HG = cd).
OrthogonalityReport verify_scalar_orthonormality(const ScalarFilter& f, double tolerance);

// DTFT sample of the bank at one frequency: H_hat(w) = sum_k H_k e^{-ikw},
// G_hat likewise.
struct FrequencySample {
    double omega = 0.0;
    CMat2 lowpass;   // H_hat(omega)
    CMat2 highpass;  // G_hat(omega)
};

// Samples the matrix frequency response at n_points frequencies uniformly on
// [0, pi], endpoints included. n_points must be >= 2.
std::vector<FrequencySample> frequency_response(const MultiFilterBank& bank, int n_points);

// CSV export, header "omega,component,row,col,magnitude"; component is H or G,
// row/col are 1-based, one line per matrix entry per frequency.
void write_frequency_csv(std::ostream& out, const std::vector<FrequencySample>& table);

}  // namespace mwt

#endif
