#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "scn/grid.hpp"

namespace scn {

/// Global lock guarding all FFTW plan creation/destruction.
std::mutex& fftw_plan_lock();

/// Cubic r2c/c2r FFT of size n^3 with persistent FFTW plans and buffers.
/// Transforms are unnormalized (c2r(r2c(x)) = n^3 * x). Instances are not
/// thread-safe; use fft3_for() to get a per-thread cached instance.
class Fft3 {
public:
    explicit Fft3(int n);
    ~Fft3();
    Fft3(const Fft3&) = delete;
    Fft3& operator=(const Fft3&) = delete;

    int n;
    std::size_t real_size() const { return static_cast<std::size_t>(n) * n * n; }
    std::size_t complex_size() const { return static_cast<std::size_t>(n) * n * (n / 2 + 1); }

    void forward(const double* in, std::complex<double>* out);
    void backward(const std::complex<double>* in, double* out);

private:
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double* rbuf_ = nullptr;
    void* cbuf_ = nullptr;
};

Fft3& fft3_for(int n);

/// Integer frequency for index i of an n-point DFT (i <= n/2 ? i : i-n).
inline int dft_freq(int i, int n) { return i <= n / 2 ? i : i - n; }

/// -Laplacian symbol |k|^2 tables for a box (one per axis index).
std::vector<double> ksq_axis(const Box3& box);

/// Spectral (Fourier) Laplacian of a periodically extended field.
ScalarField3 laplacian(const ScalarField3& u);

/// Solves (-Laplacian + shift) g = rhs spectrally (shift > 0).
ScalarField3 helmholtz_solve(const ScalarField3& rhs, double shift);

/// Dirichlet energy bilinear form: sum \nabla u . \nabla v h^3 via Parseval.
double dirichlet_inner(const ScalarField3& u, const ScalarField3& v);

}  // namespace scn
