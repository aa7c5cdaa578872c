#include <cmath>
#include <stdexcept>

#include "radial_internal.hpp"

namespace scn::detail {

namespace {
double nrm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}
double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace

std::vector<double> minres(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                           const std::vector<double>& b, double rtol, int maxit, bool* converged) {
    // Paige-Saunders MINRES (no preconditioner)
    const std::size_t n = b.size();
    std::vector<double> x(n, 0.0), v_prev(n, 0.0), v(n), v_next(n), w(n, 0.0), w_prev(n, 0.0), tmp(n);
    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {
        if (converged) *converged = true;
        return x;
    }
    double beta = bnorm;
    v = b;
    for (double& e : v) e /= beta;
    double eta = beta;
    double c_old = 1.0, c = 1.0, s_old = 0.0, s = 0.0;
    double beta_old = 0.0;
    bool ok = false;
    for (int it = 0; it < maxit; ++it) {
        apply(v, tmp);
        const double alpha = dotv(v, tmp);
        for (std::size_t i = 0; i < n; ++i) v_next[i] = tmp[i] - alpha * v[i] - beta * v_prev[i];
        const double beta_next = nrm2(v_next);
        if (beta_next > 0.0)
            for (double& e : v_next) e /= beta_next;

        // two Givens rotations fold the new column of the tridiagonal
        const double delta = c * alpha - c_old * s * beta;
        const double rho1 = std::sqrt(delta * delta + beta_next * beta_next);
        const double rho2 = s * alpha + c_old * c * beta;
        const double rho3 = s_old * beta;
        if (rho1 == 0.0) break;
        const double c_next = delta / rho1;
        const double s_next = beta_next / rho1;

        for (std::size_t i = 0; i < n; ++i) {
            const double wn = (v[i] - rho3 * w_prev[i] - rho2 * w[i]) / rho1;
            w_prev[i] = w[i];
            w[i] = wn;
            x[i] += c_next * eta * wn;
        }
        eta = -s_next * eta;

        v_prev.swap(v);
        v.swap(v_next);
        beta_old = beta;
        beta = beta_next;
        c_old = c;
        c = c_next;
        s_old = s;
        s = s_next;
        (void)beta_old;
        if (std::abs(eta) <= rtol * bnorm) {
            ok = true;
            break;
        }
    }
    if (converged) *converged = ok;
    return x;
}

TailWindowFit fit_exponential_tail(const std::vector<double>& r, const std::vector<double>& f,
                                   double power) {
    if (r.size() != f.size() || r.size() < 8)
        throw std::invalid_argument("fit_exponential_tail: need >= 8 samples");
    // linear least squares for log f - power log r = c0 - kappa r
    double s1 = 0.0, sr = 0.0, srr = 0.0, sy = 0.0, sry = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(f[i] > 0.0)) throw std::invalid_argument("fit_exponential_tail: nonpositive sample");
        const double y = std::log(f[i]) - power * std::log(r[i]);
        s1 += 1.0;
        sr += r[i];
        srr += r[i] * r[i];
        sy += y;
        sry += r[i] * y;
    }
    const double det = s1 * srr - sr * sr;
    const double c0 = (srr * sy - sr * sry) / det;
    const double kappa = -(s1 * sry - sr * sy) / det;
    TailWindowFit out{std::exp(c0), kappa, power, 0.0};
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double model = out.amplitude * std::pow(r[i], out.power) * std::exp(-out.rate * r[i]);
        out.max_rel_misfit = std::max(out.max_rel_misfit, std::abs(model - f[i]) / f[i]);
    }
    return out;
}

}  // namespace scn::detail
