#include "scn/coulomb.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "scn/fft3.hpp"

namespace scn {

namespace {

constexpr double pi = std::numbers::pi;

// Antiderivative of 1/|x| over a corner box [0,x]x[0,y]x[0,z]; the integral
// over any box follows by inclusion-exclusion over the 8 corners.
double corner_integral(double x, double y, double z) {
    const double tiny = 1e-300;
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r < 1e-14) return 0.0;
    double s = 0.0;
    s += x * y * std::log((z + r) / std::sqrt(x * x + y * y + tiny));
    s += y * z * std::log((x + r) / std::sqrt(y * y + z * z + tiny));
    s += z * x * std::log((y + r) / std::sqrt(z * z + x * x + tiny));
    s -= 0.5 * x * x * std::atan2(y * z, x * r);
    s -= 0.5 * y * y * std::atan2(z * x, y * r);
    s -= 0.5 * z * z * std::atan2(x * y, z * r);
    return s;
}

}  // namespace

double coulomb_cell_average(double h) {
    // integral over [-h/2,h/2]^3 equals 8 * corner integral at (h/2,h/2,h/2)
    const double integral = 8.0 * corner_integral(0.5 * h, 0.5 * h, 0.5 * h);
    return integral / (4.0 * pi * h * h * h);
}

CoulombSolver::CoulombSolver(int n, double h, CoulombKernel mode) : n_(n), h_(h) {
    const int np = 2 * n;  // padded size
    const std::size_t np3 = static_cast<std::size_t>(np) * np * np;
    std::vector<double> table(np3, 0.0);

    // octant kernel values K(d*h) for integer displacements d in [0, n]^3
    const int m = n + 1;
    std::vector<double> oct(static_cast<std::size_t>(m) * m * m);

    if (mode == CoulombKernel::point_tabulated) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    const double r = h * std::sqrt(double(a) * a + double(b) * b + double(c) * c);
                    oct[(static_cast<std::size_t>(a) * m + b) * m + c] =
                        (a == 0 && b == 0 && c == 0) ? coulomb_cell_average(h) : 1.0 / (4.0 * pi * r);
                }
    } else {
        // Samples of the truncated kernel K_T, T inside the oversampled period,
        // obtained from its closed-form transform (1 - cos(T|k|))/|k|^2 by one
        // even (DCT-I) inverse transform; periodization is exact because
        // supp K_T fits the oversampled cell.
        const int no = 4 * n;              // oversampled logical size
        const int mo = 2 * n + 1;          // octant points of the even transform
        const double period = no * h;
        const double T = 1.9 * n * h;      // >= sqrt(3)*n*h, <= period/2
        const double dk = 2.0 * pi / period;
        std::vector<double> hat(static_cast<std::size_t>(mo) * mo * mo);
        for (int a = 0; a < mo; ++a)
            for (int b = 0; b < mo; ++b)
                for (int c = 0; c < mo; ++c) {
                    const double k = dk * std::sqrt(double(a) * a + double(b) * b + double(c) * c);
                    // transform of 1_{|x|<T}/(4 pi |x|); the 4 pi cancels
                    const double v = (k == 0.0) ? 0.5 * T * T : (1.0 - std::cos(T * k)) / (k * k);
                    hat[(static_cast<std::size_t>(a) * mo + b) * mo + c] = v;
                }
        std::vector<double> out(hat.size());
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(fftw_plan_lock());
            plan = fftw_plan_r2r_3d(mo, mo, mo, hat.data(), out.data(), FFTW_REDFT00, FFTW_REDFT00,
                                    FFTW_REDFT00, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        {
            std::lock_guard<std::mutex> lock(fftw_plan_lock());
            fftw_destroy_plan(plan);
        }
        // continuum normalization: K(x) = (dk/2pi)^3 * sum_k Khat e^{ikx}
        const double scale = 1.0 / (period * period * period);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    oct[(static_cast<std::size_t>(a) * m + b) * m + c] =
                        scale * out[(static_cast<std::size_t>(a) * mo + b) * mo + c];
    }

    // scatter octant into the 2n-periodic displacement table
    for (int a = -n; a < n; ++a)
        for (int b = -n; b < n; ++b)
            for (int c = -n; c < n; ++c) {
                const int ia = (a + np) % np, ib = (b + np) % np, ic = (c + np) % np;
                table[(static_cast<std::size_t>(ia) * np + ib) * np + ic] =
                    oct[(static_cast<std::size_t>(std::abs(a)) * m + std::abs(b)) * m + std::abs(c)];
            }

    Fft3& fft = fft3_for(np);
    kernel_hat_.resize(fft.complex_size());
    fft.forward(table.data(), kernel_hat_.data());
}

ScalarField3 CoulombSolver::convolve(const ScalarField3& rho) const {
    if (rho.box.n != n_) throw std::invalid_argument("CoulombSolver: box size mismatch");
    if (!all_finite(rho)) throw std::invalid_argument("coulomb_convolve: non-finite input");
    const int n = n_, np = 2 * n;
    Fft3& fft = fft3_for(np);

    std::vector<double> padded(static_cast<std::size_t>(np) * np * np, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = &rho.values[rho.box.index(i, j, 0)];
            double* dst = &padded[(static_cast<std::size_t>(i) * np + j) * np];
            std::copy(src, src + n, dst);
        }

    std::vector<std::complex<double>> hat(fft.complex_size());
    fft.forward(padded.data(), hat.data());
    const double w = h_ * h_ * h_ / (static_cast<double>(np) * np * np);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= kernel_hat_[i] * w;
    fft.backward(hat.data(), padded.data());

    ScalarField3 out(rho.box);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = &padded[(static_cast<std::size_t>(i) * np + j) * np];
            std::copy(src, src + n, &out.values[out.box.index(i, j, 0)]);
        }
    return out;
}

std::shared_ptr<const CoulombSolver> coulomb_solver_for(const Box3& box, CoulombKernel mode) {
    static std::mutex mtx;
    static std::map<std::tuple<int, double, int>, std::shared_ptr<const CoulombSolver>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(box.n, box.h(), static_cast<int>(mode));
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<CoulombSolver>(box.n, box.h(), mode);
    return slot;
}

ScalarField3 coulomb_convolve(const ScalarField3& rho, CoulombKernel mode) {
    return coulomb_solver_for(rho.box, mode)->convolve(rho);
}

}  // namespace scn
