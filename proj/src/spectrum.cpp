#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "scn/radial.hpp"

namespace scn {

std::vector<SectorSpectrum> linearized_spectrum(const RadialProfile& p, int ell_max, int k,
                                                const SpectrumParams& params) {
    if (ell_max < 2) throw std::invalid_argument("linearized_spectrum: ell_max must be >= 2");
    if (k < 3) throw std::invalid_argument("linearized_spectrum: k must be >= 3");

    // resample the profile onto the eigenproblem grid
    const RadialGrid grid(params.r_max, params.n);
    const double h = grid.h();
    const int m = grid.n - 2;  // interior nodes; v(0) = v(r_max) = 0
    const auto u_itp = profile_interp(p);
    const auto phi_itp = potential_interp(p);
    std::vector<double> r(m), u(m), phi(m);
    for (int i = 0; i < m; ++i) {
        r[i] = grid.r(i + 1);
        u[i] = u_itp.value(r[i]);
        phi[i] = phi_itp.value(r[i]);
    }
    const double a = p.mass_parameter;

    std::vector<SectorSpectrum> out;
    std::vector<double> mat(static_cast<std::size_t>(m) * m);
    for (int ell = 0; ell <= ell_max; ++ell) {
        // symmetric operator on v = r phi:
        //   -v'' + [l(l+1)/r^2 + a - Phi] v - 2 U(r) int min^{l+1}/max^l U v
        std::fill(mat.begin(), mat.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            mat[static_cast<std::size_t>(i) * m + i] =
                2.0 / (h * h) + ell * (ell + 1.0) / (r[i] * r[i]) + a - phi[i];
            if (i + 1 < m) {
                mat[static_cast<std::size_t>(i) * m + i + 1] = -1.0 / (h * h);
                mat[static_cast<std::size_t>(i + 1) * m + i] = -1.0 / (h * h);
            }
        }
        const double cker = 2.0 * h / (2.0 * ell + 1.0);
        for (int i = 0; i < m; ++i) {
            const double wi = cker * u[i];
            for (int j = 0; j <= i; ++j) {
                // min(r_i,r_j)^{l+1} / max^l, computed in log form for large l
                const double kern = r[j] * std::pow(r[j] / r[i], ell);
                const double val = wi * kern * u[j];
                mat[static_cast<std::size_t>(i) * m + j] -= val;
                if (j != i) mat[static_cast<std::size_t>(j) * m + i] -= val;
            }
        }

        std::vector<double> evals(m), evecs(static_cast<std::size_t>(m) * k);
        std::vector<lapack_int> isuppz(2 * std::max(1, k));
        lapack_int found = 0;
        const lapack_int info = LAPACKE_dsyevr(LAPACK_ROW_MAJOR, 'V', 'I', 'U', m, mat.data(), m, 0.0,
                                               0.0, 1, k, 0.0, &found, evals.data(), evecs.data(), k,
                                               isuppz.data());
        if (info != 0 || found < k) throw std::runtime_error("linearized_spectrum: eigensolver failed");

        SectorSpectrum spec;
        spec.ell = ell;
        spec.radii = r;
        spec.eigenvalues.assign(evals.begin(), evals.begin() + k);
        spec.eigenvectors.resize(k);
        for (int q = 0; q < k; ++q) {
            auto& vec = spec.eigenvectors[q];
            vec.resize(m);
            double nrm = 0.0;
            for (int i = 0; i < m; ++i) {
                vec[i] = evecs[static_cast<std::size_t>(i) * k + q];
                nrm += vec[i] * vec[i] * h;
            }
            nrm = std::sqrt(nrm);
            // back to phi = v/r, normalized in the r^2 dr weight
            for (int i = 0; i < m; ++i) vec[i] = vec[i] / (nrm * r[i]);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

}  // namespace scn
