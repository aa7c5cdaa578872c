#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "scn/radial.hpp"
#include "radial_internal.hpp"

namespace scn {

double TailFit::value(double r) const {
    return amplitude * std::pow(r, power) * std::exp(-rate * r);
}

double TailFit::log_derivative(double r) const { return power / r - rate; }

namespace {

// centered cardinal quintic B-spline, support [-3, 3]
double bq5(double x) {
    static const double c[7] = {1, -6, 15, -20, 15, -6, 1};
    double s = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double t = x + 3.0 - k;
        if (t > 0.0) s += c[k] * t * t * t * t * t;
    }
    return s / 120.0;
}

double bq5_deriv(double x) {
    static const double c[7] = {1, -6, 15, -20, 15, -6, 1};
    double s = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double t = x + 3.0 - k;
        if (t > 0.0) s += c[k] * t * t * t * t;
    }
    return s / 24.0;
}

// banded Gaussian elimination with partial pivoting, bandwidth kl = ku = 2
void solve_pentadiagonal(std::vector<std::array<double, 7>>& band, std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    const int kl = 2, ku = 2, w = kl + ku + 1 + kl;  // working width with fill-in
    (void)w;
    std::vector<int> piv(n);
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int row = col + 1; row < std::min(n, col + kl + 1); ++row)
            if (std::abs(band[row][col - row + 4]) > std::abs(band[best][col - best + 4])) best = row;
        if (best != col) {
            std::swap(band[col], band[best]);
            std::swap(rhs[col], rhs[best]);
        }
        piv[col] = best;
        const double d = band[col][4];
        for (int row = col + 1; row < std::min(n, col + kl + 1); ++row) {
            const double f = band[row][col - row + 4] / d;
            if (f == 0.0) continue;
            for (int j = col; j < std::min(n, col + ku + kl + 1); ++j)
                band[row][j - row + 4] -= f * band[col][j - col + 4];
            rhs[row] -= f * rhs[col];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        double acc = rhs[col];
        for (int j = col + 1; j < std::min(n, col + ku + kl + 1); ++j)
            acc -= band[col][j - col + 4] * rhs[j];
        rhs[col] = acc / band[col][4];
    }
    (void)piv;
}

}  // namespace

RadialInterp::RadialInterp(const RadialGrid& grid, const std::vector<double>& samples,
                           const TailFit& tail)
    : r_max_(grid.r_max), h_(grid.h()), tail_(tail) {
    const int n = static_cast<int>(samples.size());
    if (n != grid.n) throw std::invalid_argument("RadialInterp: sample count mismatch");

    // mirrored data: nodes x_i = (i - ghosts_) h, i = 0..m-1
    const int ng = ghosts_;
    const int m = n + ng;
    std::vector<double> y(m);
    for (int i = 0; i < ng; ++i) y[i] = samples[ng - i];
    for (int i = 0; i < n; ++i) y[ng + i] = samples[i];

    // interpolation rows (c_{i-2} + 26 c_{i-1} + 66 c_i + 26 c_{i+1} + c_{i+2})/120 = y_i
    // plus vanishing 4th difference of the coefficients at both ends
    const int nc = m + 4;  // coefficients c_{-2}..c_{m+1}, stored shifted by 2
    std::vector<std::array<double, 7>> band(nc);
    for (auto& row : band) row.fill(0.0);
    std::vector<double> rhs(nc, 0.0);
    auto set = [&](int row, int col, double v) { band[row][col - row + 4] = v; };
    static const double d4[5] = {1, -4, 6, -4, 1};
    for (int j = 0; j < 5; ++j) {
        set(0, j, d4[j]);
        set(1, 1 + j, d4[j]);
        set(nc - 2, nc - 6 + j, d4[j]);
        set(nc - 1, nc - 5 + j, d4[j]);
    }
    for (int i = 0; i < m; ++i) {
        const int row = i + 2;
        set(row, i, 1.0 / 120.0);
        set(row, i + 1, 26.0 / 120.0);
        set(row, i + 2, 66.0 / 120.0);
        set(row, i + 3, 26.0 / 120.0);
        set(row, i + 4, 1.0 / 120.0);
        rhs[row] = y[i];
    }
    solve_pentadiagonal(band, rhs);
    coef_ = std::move(rhs);

    const double tail_at_seam = tail_.value(r_max_);
    seam_scale_ = tail_at_seam > 0.0 ? samples.back() / tail_at_seam : 0.0;
}

double RadialInterp::value(double r) const {
    if (!(r >= 0.0)) throw std::invalid_argument("RadialInterp: r must be >= 0");
    if (r > r_max_) return seam_scale_ * tail_.value(r);
    const double u = r / h_ + ghosts_;  // node coordinate in the extended grid
    const int i0 = static_cast<int>(u);
    double s = 0.0;
    for (int j = i0 - 2; j <= i0 + 3; ++j) {
        const int idx = j + 2;
        if (idx < 0 || idx >= static_cast<int>(coef_.size())) continue;
        s += coef_[idx] * bq5(u - j);
    }
    return s;
}

double RadialInterp::derivative(double r) const {
    if (!(r >= 0.0)) throw std::invalid_argument("RadialInterp: r must be >= 0");
    if (r > r_max_) return seam_scale_ * tail_.value(r) * tail_.log_derivative(r);
    const double u = r / h_ + ghosts_;
    const int i0 = static_cast<int>(u);
    double s = 0.0;
    for (int j = i0 - 2; j <= i0 + 3; ++j) {
        const int idx = j + 2;
        if (idx < 0 || idx >= static_cast<int>(coef_.size())) continue;
        s += coef_[idx] * bq5_deriv(u - j);
    }
    return s / h_;
}

RadialInterp profile_interp(const RadialProfile& p) {
    return RadialInterp(p.grid, p.values, p.tail);
}

RadialInterp potential_interp(const RadialProfile& p) {
    // Phi ~ (net mass)/r in the far field
    TailFit t{p.potential_values.back() * p.grid.r_max, 0.0, -1.0};
    return RadialInterp(p.grid, p.potential_values, t);
}

double evaluate_profile(const RadialProfile& p, double r) {
    return profile_interp(p).value(r);
}

RadialProfile scale_profile(const RadialProfile& p, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("scale_profile: a must be positive");
    if (a == 1.0) return p;
    RadialProfile out;
    out.grid = p.grid;
    out.mass_parameter = a * p.mass_parameter;
    out.solve_tol = p.solve_tol;
    const double sq = std::sqrt(a);
    const auto u = profile_interp(p);
    const auto phi = potential_interp(p);
    out.values.resize(p.grid.n);
    out.potential_values.resize(p.grid.n);
    for (int i = 0; i < p.grid.n; ++i) {
        const double r = p.grid.r(i);
        out.values[i] = a * u.value(sq * r);
        out.potential_values[i] = a * phi.value(sq * r);
    }
    out.tail = TailFit{p.tail.amplitude * std::pow(a, 1.0 + 0.5 * p.tail.power),
                       p.tail.rate * sq, p.tail.power};
    return out;
}

ResidualReport residual(const RadialProfile& p) {
    const int n = p.grid.n;
    const double h = p.grid.h();
    std::vector<double> rho(n);
    for (int i = 0; i < n; ++i) rho[i] = p.values[i] * p.values[i];
    const auto phi = radial_newton_potential(rho, p.grid);

    std::vector<double> vu(n), vphi(n);
    for (int i = 0; i < n; ++i) {
        vu[i] = p.grid.r(i) * p.values[i];
        vphi[i] = p.grid.r(i) * p.potential_values[i];
    }
    ResidualReport rep;
    // the v-frame stencil divides by r; the first few rows amplify sampling
    // noise by 1/r without reflecting solution quality, so the sup starts
    // clear of that axis layer
    for (int i = 6; i <= n - 4; ++i) {
        const double r = p.grid.r(i);
        const double lap_u = detail::d2_odd6(vu, h, i) / r;
        const double lap_phi = detail::d2_odd6(vphi, h, i) / r;
        const double ru = std::abs(-lap_u + p.mass_parameter * p.values[i] - phi[i] * p.values[i]);
        const double rp = std::abs(-lap_phi - rho[i]);
        rep.u_equation = std::max(rep.u_equation, ru);
        rep.phi_equation = std::max(rep.phi_equation, rp);
    }
    return rep;
}

}  // namespace scn
