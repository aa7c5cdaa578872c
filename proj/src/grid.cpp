#include "scn/grid.hpp"

#include <algorithm>
#include <cmath>

namespace scn {

void require_same_box(const ScalarField3& a, const ScalarField3& b) {
    if (!a.box.same_geometry(b.box)) throw std::invalid_argument("field box mismatch");
}

bool all_finite(const ScalarField3& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

ScalarField3 operator+(const ScalarField3& a, const ScalarField3& b) {
    require_same_box(a, b);
    ScalarField3 out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

ScalarField3 operator-(const ScalarField3& a, const ScalarField3& b) {
    require_same_box(a, b);
    ScalarField3 out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

ScalarField3 operator*(double s, const ScalarField3& a) {
    ScalarField3 out = a;
    for (double& v : out.values) v *= s;
    return out;
}

void axpy(double alpha, const ScalarField3& x, ScalarField3& y) {
    require_same_box(x, y);
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += alpha * x.values[i];
}

ScalarField3 pointwise_mul(const ScalarField3& a, const ScalarField3& b) {
    require_same_box(a, b);
    ScalarField3 out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

double dot_volume(const ScalarField3& a, const ScalarField3& b) {
    require_same_box(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    const double h = a.box.h();
    return s * h * h * h;
}

double max_abs(const ScalarField3& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace scn
