#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scn/coulomb.hpp"
#include "scn/fft3.hpp"
#include "scn/grid.hpp"

using namespace scn;

namespace {

constexpr double pi = std::numbers::pi;

ScalarField3 gaussian_density(const Box3& box, double sigma, const Vec3& c = {0, 0, 0}) {
    const double norm = std::pow(2.0 * pi * sigma * sigma, -1.5);
    return sample(box, [&](const Vec3& x) {
        const double r2 = dot(x - c, x - c);
        return norm * std::exp(-0.5 * r2 / (sigma * sigma));
    });
}

// exact Coulomb potential of the normalized Gaussian
double gaussian_potential(double r, double sigma) {
    if (r < 1e-12) return 1.0 / (4.0 * pi * sigma) * std::sqrt(2.0 / pi);
    return std::erf(r / (std::sqrt(2.0) * sigma)) / (4.0 * pi * r);
}

}  // namespace

TEST_CASE("cell average of the kernel matches brute-force quadrature") {
    // midpoint subdivision oracle over the unit cell, singular cell refined
    const double h = 0.8;
    const int m = 96;
    const double dh = h / m;
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double x = -0.5 * h + (i + 0.5) * dh;
                const double y = -0.5 * h + (j + 0.5) * dh;
                const double z = -0.5 * h + (k + 0.5) * dh;
                acc += dh * dh * dh / (4.0 * pi * std::sqrt(x * x + y * y + z * z));
            }
    const double oracle = acc / (h * h * h);
    const double exact = coulomb_cell_average(h);
    CHECK(std::abs(exact - oracle) / oracle < 2e-3);  // midpoint rule is crude near 1/r
    // scale invariance: average ~ 1/h
    CHECK(coulomb_cell_average(2.0 * h) == doctest::Approx(0.5 * exact).epsilon(1e-12));
}

TEST_CASE("gaussian potential reproduced to 1e-6 at n=64") {
    const double L = 8.0;
    Box3 box({0, 0, 0}, L, 64);
    const double sigma = L / 8.0;
    auto rho = gaussian_density(box, sigma);
    auto phi = coulomb_convolve(rho);

    double worst = 0.0;
    for (int i = 0; i < box.n; i += 3)
        for (int j = 0; j < box.n; j += 3)
            for (int k = 0; k < box.n; k += 3) {
                const double r = norm(box.point(i, j, k));
                const double ref = gaussian_potential(r, sigma);
                worst = std::max(worst, std::abs(phi(i, j, k) - ref) / ref);
            }
    CHECK(worst < 1e-6);
}

TEST_CASE("point-tabulated kernel is the documented fallback (order of magnitude)") {
    const double L = 8.0;
    Box3 box({0, 0, 0}, L, 64);
    const double sigma = L / 8.0;
    auto rho = gaussian_density(box, sigma);
    auto phi = coulomb_convolve(rho, CoulombKernel::point_tabulated);
    double worst = 0.0;
    for (int i = 0; i < box.n; i += 3)
        for (int j = 0; j < box.n; j += 3)
            for (int k = 0; k < box.n; k += 3) {
                const double r = norm(box.point(i, j, k));
                const double ref = gaussian_potential(r, sigma);
                worst = std::max(worst, std::abs(phi(i, j, k) - ref) / ref);
            }
    CHECK(worst < 5e-3);
    CHECK(worst > 1e-5);  // documents why truncated_spectral is the default
}

TEST_CASE("zero density maps to zero, convolution is linear") {
    Box3 box({0, 0, 0}, 4.0, 32);
    ScalarField3 zero(box);
    auto out = coulomb_convolve(zero);
    CHECK(max_abs(out) == 0.0);

    auto rho = gaussian_density(box, 0.5);
    auto a = coulomb_convolve(2.0 * rho);
    auto b = coulomb_convolve(rho);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - 2.0 * b.values[i]));
    CHECK(worst < 1e-14 * max_abs(b));
}

TEST_CASE("kernel self-adjointness and positivity") {
    Box3 box({0, 0, 0}, 4.0, 32);
    std::mt19937 rng(1234);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto envelope = sample(box, [&](const Vec3& x) { return std::exp(-dot(x, x)); });
    ScalarField3 f(box), g(box);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        f.values[i] = gauss(rng) * envelope.values[i];
        g.values[i] = gauss(rng) * envelope.values[i];
    }
    const double lhs = dot_volume(coulomb_convolve(f), g);
    const double rhs = dot_volume(coulomb_convolve(g), f);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), 1e-30));

    auto rho = gaussian_density(box, 0.7);
    auto phi = coulomb_convolve(rho);
    double min_v = 1e300;
    for (double v : phi.values) min_v = std::min(min_v, v);
    CHECK(min_v > -1e-12 * max_abs(phi));
}

TEST_CASE("uniform ball far field matches Newton's theorem") {
    // mass-1 ball of radius 1; the sampled edge shifts the discrete mass by
    // O(h^2), so the far field is compared against the discrete mass
    Box3 box({0, 0, 0}, 4.0, 64);
    auto rho = sample(box, [](const Vec3& x) { return norm(x) <= 1.0 ? 3.0 / (4.0 * pi) : 0.0; });
    const double h = box.h();
    double mass = 0.0;
    for (double v : rho.values) mass += v;
    mass *= h * h * h;
    auto phi = coulomb_convolve(rho);
    double worst = 0.0;
    for (int i = 0; i < box.n; ++i) {
        const double r = std::abs(box.coord(0, i));
        if (r < 2.0) continue;
        const double ref = mass / (4.0 * pi * r);
        worst = std::max(worst, std::abs(phi(i, box.n / 2, box.n / 2) - ref) / ref);
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("weak form: <phi, -Laplacian psi> = <rho, psi> for localized psi") {
    // pairing against smooth interior test functions avoids the face kinks the
    // long-range potential puts into the periodized spectral Laplacian
    Box3 box({0, 0, 0}, 8.0, 64);
    auto rho = gaussian_density(box, 1.2);
    auto phi = coulomb_convolve(rho);
    for (const Vec3& c : {Vec3{0, 0, 0}, Vec3{1.5, -1.0, 0.5}}) {
        auto psi = sample(box, [&](const Vec3& x) { return std::exp(-dot(x - c, x - c)); });
        const double lhs = dot_volume(phi, -1.0 * laplacian(psi));
        const double rhs = dot_volume(rho, psi);
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs));
    }
}

TEST_CASE("power-of-two box validation") {
    CHECK_THROWS(Box3({0, 0, 0}, 4.0, 48));
    CHECK_THROWS(Box3({0, 0, 0}, 4.0, 16));
    Box3 ok({0, 0, 0}, 4.0, 32);
    ScalarField3 f(ok);
    f.values[0] = std::nan("");
    CHECK_THROWS(coulomb_convolve(f));
}
