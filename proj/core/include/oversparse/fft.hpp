#pragma once

#include "oversparse/grid.hpp"

namespace oversparse {

/// Unitary 2-D DFT (scaled by 1/sqrt(W*H)), DC at (0, 0).
ComplexGrid fft2(const ComplexGrid& x);
ComplexGrid fft2(const RealGrid& x);

/// Inverse of fft2.
ComplexGrid ifft2(const ComplexGrid& X);

/// Unscaled forward DFT, sum_n x[n] exp(-2 pi i k n / N) per axis.
ComplexGrid dft2_unnormalized(const ComplexGrid& x);

RealGrid real_part(const ComplexGrid& x);
RealGrid imag_part(const ComplexGrid& x);
ComplexGrid to_complex(const RealGrid& x);

}  // namespace oversparse
