#pragma once

#include <complex>
#include <span>

namespace opfactor::detail {

/// In-place unnormalized forward (sign -1) or backward (sign +1) DFT.
/// Each call owns its plan and scratch buffer, so concurrent calls are safe.
void fft_inplace(std::span<std::complex<double>> data, bool forward);

}  // namespace opfactor::detail
