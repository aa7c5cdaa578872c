#include "scn/fft3.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace scn {

// FFTW plan creation/destruction is not thread-safe.
std::mutex& fftw_plan_lock() {
    static std::mutex m;
    return m;
}

Fft3::Fft3(int n_) : n(n_) {
    std::lock_guard<std::mutex> lock(fftw_plan_lock());
    rbuf_ = fftw_alloc_real(real_size());
    cbuf_ = fftw_alloc_complex(complex_size());
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    plan_fwd_ = fftw_plan_dft_r2c_3d(n, n, n, rbuf_, static_cast<fftw_complex*>(cbuf_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_3d(n, n, n, static_cast<fftw_complex*>(cbuf_), rbuf_, FFTW_ESTIMATE);
}

Fft3::~Fft3() {
    std::lock_guard<std::mutex> lock(fftw_plan_lock());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(rbuf_);
    fftw_free(cbuf_);
}

void Fft3::forward(const double* in, std::complex<double>* out) {
    std::memcpy(rbuf_, in, real_size() * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, cbuf_, complex_size() * sizeof(std::complex<double>));
}

void Fft3::backward(const std::complex<double>* in, double* out) {
    std::memcpy(cbuf_, in, complex_size() * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::memcpy(out, rbuf_, real_size() * sizeof(double));
}

Fft3& fft3_for(int n) {
    thread_local std::map<int, std::unique_ptr<Fft3>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft3>(n);
    return *slot;
}

std::vector<double> ksq_axis(const Box3& box) {
    std::vector<double> out(box.n);
    const double dk = std::numbers::pi / box.L;  // 2*pi / (2L)
    for (int i = 0; i < box.n; ++i) {
        const double k = dk * dft_freq(i, box.n);
        out[i] = k * k;
    }
    return out;
}

namespace {

// applies u_hat *= f(kx2+ky2+kz2) and transforms back
template <typename F>
ScalarField3 apply_symbol(const ScalarField3& u, F&& f) {
    const int n = u.box.n;
    Fft3& fft = fft3_for(n);
    std::vector<std::complex<double>> hat(fft.complex_size());
    fft.forward(u.values.data(), hat.data());
    const auto k2 = ksq_axis(u.box);
    const int nz = n / 2 + 1;
    const double scale = 1.0 / (static_cast<double>(n) * n * n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nz; ++k, ++idx) hat[idx] *= f(k2[i] + k2[j] + k2[k]) * scale;
    ScalarField3 out(u.box);
    fft.backward(hat.data(), out.values.data());
    return out;
}

}  // namespace

ScalarField3 laplacian(const ScalarField3& u) {
    return apply_symbol(u, [](double ksq) { return -ksq; });
}

ScalarField3 helmholtz_solve(const ScalarField3& rhs, double shift) {
    if (!(shift > 0.0)) throw std::invalid_argument("helmholtz_solve: shift must be positive");
    return apply_symbol(rhs, [shift](double ksq) { return 1.0 / (ksq + shift); });
}

double dirichlet_inner(const ScalarField3& u, const ScalarField3& v) {
    require_same_box(u, v);
    const int n = u.box.n;
    Fft3& fft = fft3_for(n);
    std::vector<std::complex<double>> uh(fft.complex_size()), vh(fft.complex_size());
    fft.forward(u.values.data(), uh.data());
    fft.forward(v.values.data(), vh.data());
    const auto k2 = ksq_axis(u.box);
    const int nz = n / 2 + 1;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nz; ++k, ++idx) {
                // r2c keeps half the spectrum; interior kz planes count twice
                const double w = (k == 0 || k == n / 2) ? 1.0 : 2.0;
                const double re = uh[idx].real() * vh[idx].real() + uh[idx].imag() * vh[idx].imag();
                acc += w * (k2[i] + k2[j] + k2[k]) * re;
            }
    const double h = u.box.h();
    const double norm = static_cast<double>(n) * n * n;
    return acc * h * h * h / (norm * norm);
}

}  // namespace scn
