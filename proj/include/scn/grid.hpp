#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scn {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Uniform radial grid on [0, r_max] with r_0 = 0.
struct RadialGrid {
    double r_max = 0.0;
    int n = 0;

    RadialGrid() = default;
    RadialGrid(double r_max_, int n_) : r_max(r_max_), n(n_) {
        if (!(r_max >= 30.0)) throw std::invalid_argument("RadialGrid: r_max must be >= 30");
        if (n < 1000) throw std::invalid_argument("RadialGrid: n must be >= 1000");
    }

    double h() const { return r_max / (n - 1); }
    double r(int i) const { return i * h(); }
};

/// Cubic computational box: n nodes per axis at x_i = center - L + i*h, h = 2L/n.
struct Box3 {
    Vec3 center{0.0, 0.0, 0.0};
    double L = 0.0;
    int n = 0;

    Box3() = default;
    Box3(const Vec3& c, double half_width, int nodes) : center(c), L(half_width), n(nodes) {
        if (!(L > 0.0)) throw std::invalid_argument("Box3: half width must be positive");
        if (n < 32 || (n & (n - 1)) != 0) throw std::invalid_argument("Box3: n must be a power of two >= 32");
    }

    double h() const { return 2.0 * L / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double coord(int axis, int i) const { return center[axis] - L + i * h(); }
    Vec3 point(int i, int j, int k) const { return {coord(0, i), coord(1, j), coord(2, k)}; }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    bool same_geometry(const Box3& o) const {
        return n == o.n && L == o.L && center == o.center;
    }
};

/// Sampled scalar field on a Box3 (row-major over i,j,k).
struct ScalarField3 {
    Box3 box;
    std::vector<double> values;

    ScalarField3() = default;
    explicit ScalarField3(const Box3& b, double fill = 0.0) : box(b), values(b.size(), fill) {}

    double& operator()(int i, int j, int k) { return values[box.index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return values[box.index(i, j, k)]; }
    std::size_t size() const { return values.size(); }
};

void require_same_box(const ScalarField3& a, const ScalarField3& b);
bool all_finite(const ScalarField3& f);

// elementwise helpers; a and b must share a box
ScalarField3 operator+(const ScalarField3& a, const ScalarField3& b);
ScalarField3 operator-(const ScalarField3& a, const ScalarField3& b);
ScalarField3 operator*(double s, const ScalarField3& a);
void axpy(double alpha, const ScalarField3& x, ScalarField3& y);  // y += alpha*x
ScalarField3 pointwise_mul(const ScalarField3& a, const ScalarField3& b);

/// Plain l2 grid inner product with the h^3 volume weight.
double dot_volume(const ScalarField3& a, const ScalarField3& b);
double max_abs(const ScalarField3& f);

/// Samples an analytic function f(x) on the box.
template <typename F>
ScalarField3 sample(const Box3& box, F&& f) {
    ScalarField3 out(box);
    for (int i = 0; i < box.n; ++i)
        for (int j = 0; j < box.n; ++j)
            for (int k = 0; k < box.n; ++k)
                out(i, j, k) = f(box.point(i, j, k));
    return out;
}

}  // namespace scn
