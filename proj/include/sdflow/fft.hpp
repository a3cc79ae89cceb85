// Thin FFTW wrapper: cached complex-to-complex 2-D plans per grid size.
// Plans are created once under a lock with FFTW_ESTIMATE (deterministic
// algorithm choice); execution uses per-call aligned buffers so concurrent
// transforms of different fields are safe.
#ifndef SDFLOW_FFT_HPP
#define SDFLOW_FFT_HPP

#include <complex>

namespace sdflow::fft {

// out = DFT(in) / (nx*nt), layout row-major nx x nt
void forward(int nx, int nt, const std::complex<double>* in, std::complex<double>* out);
// out = sum_k in_k e^{+i...} (unnormalized inverse)
void inverse(int nx, int nt, const std::complex<double>* in, std::complex<double>* out);

}  // namespace sdflow::fft

#endif
