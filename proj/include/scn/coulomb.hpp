#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "scn/grid.hpp"

namespace scn {

/// How the Coulomb kernel 1/(4*pi*|x|) is tabulated for the padded-grid
/// convolution.
enum class CoulombKernel {
    /// k-space samples of the exactly truncated kernel, inverse-transformed on
    /// an oversampled grid and folded; spectrally accurate for resolved fields.
    truncated_spectral,
    /// point samples of 1/(4*pi*|x|) with the origin cell replaced by the cell
    /// average of the kernel; classic Hockney tabulation, ~2nd order.
    point_tabulated,
};

/// Average of 1/(4*pi*|x|) over the cube [-h/2, h/2]^3 (exact corner formula).
double coulomb_cell_average(double h);

/// Free-space convolution with W(x) = 1/(4*pi*|x|) on the zero-padded doubled
/// box. Kernel transforms are cached per (n, h, mode); instances are shared
/// and safe for concurrent convolve() calls.
class CoulombSolver {
public:
    CoulombSolver(int n, double h, CoulombKernel mode);

    ScalarField3 convolve(const ScalarField3& rho) const;

    int n() const { return n_; }
    double h() const { return h_; }

private:
    int n_;
    double h_;
    std::vector<std::complex<double>> kernel_hat_;  // on the 2n^3 padded grid
};

/// Cached accessor keyed by the box geometry.
std::shared_ptr<const CoulombSolver> coulomb_solver_for(const Box3& box,
                                                        CoulombKernel mode = CoulombKernel::truncated_spectral);

/// Convolution entry point used by the field functional machinery.
ScalarField3 coulomb_convolve(const ScalarField3& rho,
                              CoulombKernel mode = CoulombKernel::truncated_spectral);

}  // namespace scn
