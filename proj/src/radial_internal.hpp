#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace scn::detail {

/// 6th-order second derivative of an odd-extended sequence (v[-j] = -v[j]) on
/// a uniform grid; valid for 1 <= i <= n-4.
inline double d2_odd6(const std::vector<double>& v, double h, int i) {
    auto at = [&](int j) { return j >= 0 ? v[j] : -v[-j]; };
    const double s = 2.0 * (at(i - 3) + at(i + 3)) - 27.0 * (at(i - 2) + at(i + 2)) +
                     270.0 * (at(i - 1) + at(i + 1)) - 490.0 * at(i);
    return s / (180.0 * h * h);
}

/// MINRES for symmetric (possibly indefinite) operators on raw vectors.
/// Returns the iterate once ||A x - b|| <= rtol * ||b|| or maxit is reached.
std::vector<double> minres(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                           const std::vector<double>& b, double rtol, int maxit, bool* converged = nullptr);

/// Least-squares fit of log f = log A + power log r - kappa r over a window,
/// with the power prescribed (the free 3-parameter problem is rank-deficient
/// on short windows: log r is nearly constant there).
struct TailWindowFit {
    double amplitude, rate, power;
    double max_rel_misfit;
};
TailWindowFit fit_exponential_tail(const std::vector<double>& r, const std::vector<double>& f,
                                   double power);

}  // namespace scn::detail
