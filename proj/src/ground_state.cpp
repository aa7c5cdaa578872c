#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scn/radial.hpp"
#include "radial_internal.hpp"

namespace scn {

namespace {

// Shooting frame: U(0) = 1 fixed, S = Phi - 1 with S(0) = s0 the free
// parameter; -Delta U = S U, -Delta S = U^2. The decaying branch is rescaled
// afterwards through (U, S) -> (l^2 U(l x), l^2 S(l x)) so that S(inf) = -1.
struct ShootSample {
    double r, u, s;
};

enum class ShootOutcome { crossed_zero, diverged, ran_out };

struct ShootTrace {
    ShootOutcome outcome;
    std::vector<ShootSample> samples;
    double q_cum = 0.0;  // int_0^r s^2 U^2 ds along the trajectory
};

using State = std::array<double, 4>;  // U, U', S, S'

State rhs(double r, const State& y) {
    const double u = y[0], up = y[1], s = y[2], sp = y[3];
    return {up, -2.0 / r * up - s * u, sp, -2.0 / r * sp - u * u};
}

// Cash-Karp embedded RK45 step
bool rk45_step(double& r, State& y, double& h_step, double tol) {
    static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
    static const double b21 = 1.0 / 5;
    static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                        b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
    static const double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                        d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336, d6 = c6 - 1.0 / 4;

    const double h = h_step;
    auto add = [](const State& y0, std::initializer_list<std::pair<double, const State*>> terms,
                  double h) {
        State out = y0;
        for (auto& [w, k] : terms)
            for (int i = 0; i < 4; ++i) out[i] += h * w * (*k)[i];
        return out;
    };
    const State k1 = rhs(r, y);
    const State k2 = rhs(r + a2 * h, add(y, {{b21, &k1}}, h));
    const State k3 = rhs(r + a3 * h, add(y, {{b31, &k1}, {b32, &k2}}, h));
    const State k4 = rhs(r + a4 * h, add(y, {{b41, &k1}, {b42, &k2}, {b43, &k3}}, h));
    const State k5 = rhs(r + a5 * h, add(y, {{b51, &k1}, {b52, &k2}, {b53, &k3}, {b54, &k4}}, h));
    const State k6 =
        rhs(r + a6 * h, add(y, {{b61, &k1}, {b62, &k2}, {b63, &k3}, {b64, &k4}, {b65, &k5}}, h));

    State ynew = y;
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
        ynew[i] += h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
        const double e = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
        err = std::max(err, std::abs(e) / (std::abs(ynew[i]) + 1.0));
    }
    if (err > tol) {
        h_step *= std::max(0.2, 0.9 * std::pow(tol / err, 0.25));
        return false;
    }
    r += h;
    y = ynew;
    h_step = std::min(h_step * std::min(5.0, 0.9 * std::pow(tol / (err + 1e-300), 0.2)), 0.02);
    return true;
}

ShootTrace shoot(double s0, double r_end) {
    ShootTrace trace;
    // series start: U = 1 - s0 r^2/6, S = s0 - r^2/6
    const double r0 = 1e-4;
    double r = r0;
    State y{1.0 - s0 * r0 * r0 / 6.0, -s0 * r0 / 3.0, s0 - r0 * r0 / 6.0, -r0 / 3.0};
    trace.samples.push_back({r, y[0], y[2]});
    double h = 1e-5;
    double q = 0.0;
    double r_prev = r, u_prev = y[0];
    while (r < r_end) {
        if (!rk45_step(r, y, h, 1e-12)) continue;
        q += 0.5 * (r - r_prev) * (r_prev * r_prev * u_prev * u_prev + r * r * y[0] * y[0]);
        r_prev = r;
        u_prev = y[0];
        trace.samples.push_back({r, y[0], y[2]});
        trace.q_cum = q;
        if (y[0] <= 0.0) {
            trace.outcome = ShootOutcome::crossed_zero;
            return trace;
        }
        if (y[0] > 2.0 || (y[1] > 0.0 && y[2] < -0.05)) {
            trace.outcome = ShootOutcome::diverged;
            return trace;
        }
    }
    trace.outcome = ShootOutcome::ran_out;
    return trace;
}

struct NewtonSystem {
    const RadialGrid& grid;
    int mc;                       // last solved row; rows 1..mc are unknowns
    std::vector<double> v;        // full v = r U, entries > mc come from the tail fill
    std::vector<double> rho;      // U^2 on the full grid
    std::vector<double> phi;      // Newtonian potential of rho

    void refresh_density() {
        const int n = grid.n;
        rho.assign(n, 0.0);
        for (int i = 1; i < n; ++i) {
            const double u = v[i] / grid.r(i);
            rho[i] = u * u;
        }
        const double u0 = (4.0 * v[1] / grid.r(1) - v[2] / grid.r(2)) / 3.0;  // even series limit
        rho[0] = u0 * u0;
        phi = radial_newton_potential(rho, grid);
    }

    // F_i = -(v'' )_i + (1 - Phi_i) v_i for rows 1..mc (6th-order stencil,
    // odd ghosts on the left, tail fill on the right)
    void residual_vec(std::vector<double>& out) {
        const double h = grid.h();
        out.assign(mc, 0.0);
        for (int i = 1; i <= mc; ++i)
            out[i - 1] = -detail::d2_odd6(v, h, i) + (1.0 - phi[i]) * v[i];
    }

    // action of the Jacobian on delta (delta lives on rows 1..mc)
    void jacobian_apply(const std::vector<double>& delta, std::vector<double>& out) const {
        const int n = grid.n;
        const double h = grid.h();
        std::vector<double> dfull(n, 0.0);
        for (int i = 1; i <= mc; ++i) dfull[i] = delta[i - 1];
        std::vector<double> drho(n, 0.0);
        for (int i = 1; i < n; ++i) drho[i] = 2.0 * v[i] * dfull[i] / (grid.r(i) * grid.r(i));
        drho[0] = drho[1];
        const auto dphi = radial_newton_potential(drho, grid);
        out.assign(mc, 0.0);
        for (int i = 1; i <= mc; ++i)
            out[i - 1] = -detail::d2_odd6(dfull, h, i) + (1.0 - phi[i]) * dfull[i] - dphi[i] * v[i];
    }
};

}  // namespace

RadialProfile solve_ground_state(const RadialGrid& grid, double tol) {
    if (!(tol >= 2.3e-13)) throw std::invalid_argument("solve_ground_state: tol below 1e3 x machine precision");

    // --- bracket the shooting parameter ---
    const double r_shoot_end = 30.0;
    double lo = 0.0, hi = 0.0;
    {
        double prev_s0 = 0.0;
        ShootOutcome prev = ShootOutcome::ran_out;
        for (double s0 = 0.25; s0 <= 16.0; s0 *= 1.4142135623730951) {
            const auto tr = shoot(s0, r_shoot_end);
            if (tr.outcome == ShootOutcome::diverged) {
                lo = s0;
            } else if (tr.outcome == ShootOutcome::crossed_zero) {
                if (lo == 0.0 && prev == ShootOutcome::diverged) lo = prev_s0;
                hi = s0;
                break;
            }
            prev = tr.outcome;
            prev_s0 = s0;
        }
        if (lo == 0.0 || hi == 0.0)
            throw std::runtime_error("solve_ground_state: shooting bracket not found");
    }

    // --- bisection; keep the deepest diverging trajectory as the guess ---
    ShootTrace best;
    best.outcome = ShootOutcome::ran_out;
    double best_reach = 0.0;
    for (int it = 0; it < 90 && (hi - lo) > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto tr = shoot(mid, r_shoot_end);
        if (tr.outcome == ShootOutcome::crossed_zero)
            hi = mid;
        else
            lo = mid;
        const double reach = tr.samples.back().r;
        if (reach > best_reach) {
            best_reach = reach;
            best = std::move(tr);
        }
    }

    // --- rescale the trusted part so that S(inf) = -1 ---
    // drop the trailing 15% of the trajectory (contaminated by the unstable mode)
    std::vector<double> rs, us;
    const double r_trust = 0.85 * best_reach;
    double s_at_trust = 0.0, q_at_trust = 0.0, q = 0.0;
    for (std::size_t i = 0; i + 1 < best.samples.size(); ++i) {
        const auto& a = best.samples[i];
        const auto& b = best.samples[i + 1];
        q += 0.5 * (b.r - a.r) * (a.r * a.r * a.u * a.u + b.r * b.r * b.u * b.u);
        if (b.r <= r_trust) {
            s_at_trust = b.s;
            q_at_trust = q;
        }
    }
    const double s_inf = s_at_trust - q_at_trust / r_trust;
    if (!(s_inf < 0.0)) throw std::runtime_error("solve_ground_state: shooting did not reach decay regime");
    const double sigma = -s_inf;
    const double lam = 1.0 / std::sqrt(sigma);  // U_final(x) = lam^2 U_shoot(lam x)

    for (const auto& smp : best.samples) {
        if (smp.r > r_trust) break;
        rs.push_back(smp.r / lam);
        us.push_back(smp.u / sigma);
    }

    // --- initial guess on the target grid (linear interp + exponential tail) ---
    const int n = grid.n;
    const double h = grid.h();
    std::vector<double> u_guess(n);
    {
        // tail exponent guess from the last clean decade
        std::size_t j0 = rs.size() * 4 / 5;
        const double kappa_g =
            -std::log(us.back() / us[j0]) / (rs.back() - rs[j0]);
        std::size_t j = 0;
        for (int i = 0; i < n; ++i) {
            const double r = grid.r(i);
            if (r <= rs.back()) {
                while (j + 2 < rs.size() && rs[j + 1] < r) ++j;
                const double t = (r - rs[j]) / (rs[j + 1] - rs[j]);
                u_guess[i] = (1.0 - t) * us[j] + t * us[j + 1];
            } else {
                u_guess[i] = us.back() * std::exp(-kappa_g * (r - rs.back()));
            }
        }
    }

    // --- Newton polish of the discrete system ---
    NewtonSystem sys{grid, 0, {}, {}, {}};
    sys.v.assign(n, 0.0);
    for (int i = 0; i < n; ++i) sys.v[i] = grid.r(i) * u_guess[i];
    const double u0_scale = u_guess[0] > 0 ? u_guess[0] : 1.0;

    // solved region ends where the guess drops below 1e-10 of the peak; deeper
    // rows would be dominated by linear-solver noise and are owned by the tail
    int mc = n - 4;
    for (int i = 0; i < n; ++i)
        if (u_guess[i] < 1e-10 * u0_scale) {
            mc = std::min(mc, std::max(i, 8));
            break;
        }
    sys.mc = mc;

    TailFit tail{};
    auto refit_tail_and_fill = [&]() {
        // far-field structure: Phi ~ M/r gives U ~ A r^{M/2-1} e^{-kappa r};
        // prescribe the power from the current mass integral and fit (A, kappa)
        // on the last 20% of the solved region
        std::vector<double> f1(n);
        for (int i = 0; i < n; ++i) {
            const double u = i == 0 ? 0.0 : sys.v[i] / grid.r(i);
            f1[i] = grid.r(i) * grid.r(i) * u * u;
        }
        const double mass = cumulative_integral(f1, h).back();
        const double power = 0.5 * mass - 1.0;

        const int w1 = mc;
        const int w0 = std::max(4, mc - std::max(8, mc / 5));
        std::vector<double> rw, fw;
        for (int i = w0; i <= w1; ++i) {
            rw.push_back(grid.r(i));
            fw.push_back(sys.v[i] / grid.r(i));
        }
        const auto fit = detail::fit_exponential_tail(rw, fw, power);
        tail = TailFit{fit.amplitude, fit.rate, fit.power};
        const double seam = (sys.v[mc] / grid.r(mc)) / tail.value(grid.r(mc));
        for (int i = mc + 1; i < n; ++i) sys.v[i] = grid.r(i) * seam * tail.value(grid.r(i));
    };

    std::vector<double> F, delta;
    double fnorm = 1e300;
    for (int outer = 0; outer < 6; ++outer) {
        // round 0 solves against the shooting-based fill; later rounds refresh
        // the pinned tail from the solved data until both are consistent
        refit_tail_and_fill();
        for (int newton = 0; newton < 20; ++newton) {
            sys.refresh_density();
            sys.residual_vec(F);
            fnorm = 0.0;
            for (double f : F) fnorm = std::max(fnorm, std::abs(f));
            if (fnorm <= 2e-13 * u0_scale * grid.r_max) break;
            // symmetric tridiagonal preconditioner M = -D2 + max(1 - Phi, 0.1),
            // applied as an explicit congruence L^-1 J L^-T with M = L L^T
            const double ih2 = 1.0 / (h * h);
            std::vector<double> cd(mc), ce(mc);  // Cholesky diag / subdiagonal
            for (int i = 0; i < mc; ++i) {
                double d = 2.0 * ih2 + std::max(1.0 - sys.phi[i + 1], 0.1);
                if (i > 0) d -= ce[i - 1] * ce[i - 1];
                cd[i] = std::sqrt(d);
                if (i + 1 < mc) ce[i] = -ih2 / cd[i];
            }
            auto lower_solve = [&](std::vector<double>& x) {
                for (int i = 0; i < mc; ++i) x[i] = (x[i] - (i > 0 ? ce[i - 1] * x[i - 1] : 0.0)) / cd[i];
            };
            auto lower_t_solve = [&](std::vector<double>& x) {
                for (int i = mc - 1; i >= 0; --i)
                    x[i] = (x[i] - (i + 1 < mc ? ce[i] * x[i + 1] : 0.0)) / cd[i];
            };
            std::vector<double> rhs_vec(F);
            for (double& f : rhs_vec) f = -f;
            lower_solve(rhs_vec);
            std::vector<double> jin(mc), jout(mc);
            delta = detail::minres(
                [&](const std::vector<double>& x, std::vector<double>& y) {
                    jin = x;
                    lower_t_solve(jin);
                    sys.jacobian_apply(jin, jout);
                    y = jout;
                    lower_solve(y);
                },
                rhs_vec, 1e-12, 3000);
            lower_t_solve(delta);
            // damped update
            double step = 1.0;
            const double f_before = fnorm;
            std::vector<double> v_save(sys.v);
            for (int tries = 0; tries < 8; ++tries) {
                for (int i = 1; i <= mc; ++i) sys.v[i] = v_save[i] + step * delta[i - 1];
                sys.refresh_density();
                sys.residual_vec(F);
                double fn = 0.0;
                for (double f : F) fn = std::max(fn, std::abs(f));
                if (fn < f_before) break;
                step *= 0.5;
                sys.v = v_save;
            }
        }
        if (outer >= 1 && fnorm <= 2e-13 * u0_scale * grid.r_max) break;
    }
    refit_tail_and_fill();
    sys.refresh_density();

    RadialProfile p;
    p.grid = grid;
    p.mass_parameter = 1.0;
    p.solve_tol = tol;
    p.tail = tail;
    p.values.resize(n);
    p.potential_values = sys.phi;
    p.values[0] = 0.0;
    for (int i = 1; i < n; ++i) p.values[i] = sys.v[i] / grid.r(i);
    // r = 0 by the even series: U(0) from the quadratic through the first nodes
    p.values[0] = (4.0 * p.values[1] - p.values[2]) / 3.0;

    // contract checks: positivity, strict monotonicity, decay, residual
    for (int i = 0; i < n; ++i)
        if (!(p.values[i] > 0.0)) throw std::runtime_error("solve_ground_state: nonpositive profile");
    for (int i = 0; i + 1 < n; ++i)
        if (!(p.values[i + 1] < p.values[i]))
            throw std::runtime_error("solve_ground_state: non-monotone profile (wrong shooting branch)");
    if (!(p.values[n - 1] < 1e-8 * p.values[0]))
        throw std::runtime_error("solve_ground_state: grid too short for decay invariant");
    const auto rep = residual(p);
    if (!(rep.u_equation <= tol))
        throw std::runtime_error("solve_ground_state: residual above tolerance");
    return p;
}

}  // namespace scn
