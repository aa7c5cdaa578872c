#include <cmath>
#include <stdexcept>

#include "scn/radial.hpp"

namespace scn {

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw std::invalid_argument("cumulative_integral: need at least 4 nodes");
    std::vector<double> out(n, 0.0);
    // integral over each interval of the cubic through the 4 nearest nodes
    auto seg = [&](int j) {
        if (j == 0) return h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
        if (j == n - 2) return h * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]) / 24.0;
        return h * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]) / 24.0;
    };
    for (int j = 0; j < n - 1; ++j) out[j + 1] = out[j] + seg(j);
    return out;
}

std::vector<double> radial_newton_potential(const std::vector<double>& rho, const RadialGrid& grid) {
    const int n = grid.n;
    if (static_cast<int>(rho.size()) != n)
        throw std::invalid_argument("radial_newton_potential: density size mismatch");
    for (double v : rho)
        if (!std::isfinite(v)) throw std::invalid_argument("radial_newton_potential: non-finite density");
    const double h = grid.h();

    // cumulative trapezoid of f1 = s^2 rho (from 0) and f2 = s rho (to r_max)
    std::vector<double> phi(n);
    std::vector<double> c1(n, 0.0), c2(n, 0.0);
    auto f1 = [&](int i) { const double r = grid.r(i); return r * r * rho[i]; };
    auto f2 = [&](int i) { const double r = grid.r(i); return r * rho[i]; };
    for (int i = 1; i < n; ++i) c1[i] = c1[i - 1] + 0.5 * h * (f1(i - 1) + f1(i));
    for (int i = n - 2; i >= 0; --i) c2[i] = c2[i + 1] + 0.5 * h * (f2(i) + f2(i + 1));

    // Euler-Maclaurin endpoint corrections collapse to -(h^2/12) rho at interior
    // radii and +(h^2/12) rho at the origin (density assumed decayed at r_max).
    const double em = h * h / 12.0;
    phi[0] = c2[0] + em * rho[0];
    for (int i = 1; i < n; ++i) phi[i] = c1[i] / grid.r(i) + c2[i] - em * rho[i];
    return phi;
}

}  // namespace scn
