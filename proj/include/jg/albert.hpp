#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "jg/complex_matrix.hpp"
#include "jg/errors.hpp"
#include "jg/octonion.hpp"

namespace jg {

// Element of H3(O): Hermitian 3x3 octonion matrix in the cyclic layout
//
//   [ a1   x3   x2* ]
//   [ x3*  a2   x1  ]
//   [ x2   x1*  a3  ]
//
// so x_i sits opposite diagonal entry i. 27 real dimensions.
struct AlbertReal {
    std::array<double, 3> a{};
    std::array<Octonion, 3> x{};

    static AlbertReal identity() {
        AlbertReal r;
        r.a = {1.0, 1.0, 1.0};
        return r;
    }

    static AlbertReal diag_unit(int i) {
        AlbertReal r;
        r.a[i] = 1.0;
        return r;
    }

    AlbertReal& operator+=(const AlbertReal& o) {
        for (int i = 0; i < 3; ++i) {
            a[i] += o.a[i];
            x[i] += o.x[i];
        }
        return *this;
    }
    AlbertReal& operator-=(const AlbertReal& o) {
        for (int i = 0; i < 3; ++i) {
            a[i] -= o.a[i];
            x[i] -= o.x[i];
        }
        return *this;
    }
    AlbertReal& operator*=(double s) {
        for (int i = 0; i < 3; ++i) {
            a[i] *= s;
            x[i] *= s;
        }
        return *this;
    }
    friend AlbertReal operator+(AlbertReal p, const AlbertReal& q) { return p += q; }
    friend AlbertReal operator-(AlbertReal p, const AlbertReal& q) { return p -= q; }
    friend AlbertReal operator*(double s, AlbertReal p) { return p *= s; }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) {
            m = std::max(m, std::abs(a[i]));
            for (int k = 0; k < 8; ++k) m = std::max(m, std::abs(x[i][k]));
        }
        return m;
    }

    double coord_norm_sq() const {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += a[i] * a[i] + x[i].norm_sq();
        return s;
    }
};

// Jordan product in coordinates; derived from the symmetrized octonion matrix
// product of the layout above.
inline AlbertReal albert_mul(const AlbertReal& p, const AlbertReal& q) {
    AlbertReal r;
    const auto& A = p.a;
    const auto& B = q.a;
    const auto& X = p.x;
    const auto& Y = q.x;
    r.a[0] = A[0] * B[0] + oct_inner(X[2], Y[2]) + oct_inner(X[1], Y[1]);
    r.a[1] = A[1] * B[1] + oct_inner(X[0], Y[0]) + oct_inner(X[2], Y[2]);
    r.a[2] = A[2] * B[2] + oct_inner(X[1], Y[1]) + oct_inner(X[0], Y[0]);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Octonion z = 0.5 * ((A[j] + A[k]) * Y[i] + (B[j] + B[k]) * X[i]);
        z += 0.5 * (oct_mul(X[j], Y[k]) + oct_mul(Y[j], X[k])).conj();
        r.x[i] = z;
    }
    return r;
}

inline double albert_trace(const AlbertReal& p) { return p.a[0] + p.a[1] + p.a[2]; }

// trace form T(p o q), written out directly
inline double albert_trace_form(const AlbertReal& p, const AlbertReal& q) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += p.a[i] * q.a[i] + 2.0 * oct_inner(p.x[i], q.x[i]);
    return s;
}

struct CubicForm {
    double T, S, N;
};

// Generic trace, quadratic trace and Freudenthal determinant: the element
// satisfies a^3 - T a^2 + S a - N 1 = 0. The octonion association order in
// the determinant is fixed as Re((x1 x2) x3).
inline CubicForm cubic_form(const AlbertReal& p) {
    CubicForm f;
    f.T = albert_trace(p);
    f.S = p.a[0] * p.a[1] + p.a[1] * p.a[2] + p.a[2] * p.a[0] - p.x[0].norm_sq() -
          p.x[1].norm_sq() - p.x[2].norm_sq();
    f.N = p.a[0] * p.a[1] * p.a[2] - p.a[0] * p.x[0].norm_sq() - p.a[1] * p.x[1].norm_sq() -
          p.a[2] * p.x[2].norm_sq() + 2.0 * oct_mul(oct_mul(p.x[0], p.x[1]), p.x[2]).real();
    return f;
}

namespace detail {

// Orthonormal-coordinate vector of an element under the trace form
// <x, y> = T(x o y): the diagonal units have norm 1, the 24 octonion-slot
// units have norm sqrt(2).
inline std::array<double, 27> albert_coords(const AlbertReal& r) {
    std::array<double, 27> c{};
    for (int i = 0; i < 3; ++i) c[i] = r.a[i];
    const double s2 = std::sqrt(2.0);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 8; ++k) c[3 + 8 * i + k] = s2 * r.x[i][k];
    return c;
}

inline AlbertReal albert_basis_element(int j) {
    AlbertReal b;
    if (j < 3) {
        b.a[j] = 1.0;
    } else {
        const int i = (j - 3) / 8, k = (j - 3) % 8;
        b.x[i] = (1.0 / std::sqrt(2.0)) * Octonion::unit(k);
    }
    return b;
}

// Extreme eigenvalues of the multiplication operator M_a on the 27-dim real
// space: its spectrum is {l_i} on the diagonal Peirce spaces and the pair
// means (l_i + l_j)/2 elsewhere, so min/max of M_a are the extreme
// eigenvalues of a itself, and the middle follows from the trace. This path
// avoids the sqrt(eps) ill-conditioning of degenerate characteristic roots.
inline std::array<double, 3> albert_eigenvalues_structural(const AlbertReal& el) {
    CMat m(27);
    for (int j = 0; j < 27; ++j) {
        const auto col = albert_coords(albert_mul(el, albert_basis_element(j)));
        for (int i = 0; i < 27; ++i) m(i, j) = col[i];
    }
    const auto eig = hermitian_eig(m);
    const double lo = eig.values.front();
    const double hi = eig.values.back();
    const double trace = el.a[0] + el.a[1] + el.a[2];
    std::array<double, 3> r{lo, trace - lo - hi, hi};
    std::sort(r.begin(), r.end());
    return r;
}

} // namespace detail

// Roots of l^3 - T l^2 + S l - N, ascending. Real spectrum is guaranteed for
// Hermitian elements; the trigonometric method is used with the acos argument
// clamped to [-1, 1] to absorb rounding. Near-degenerate root pairs are
// ill-conditioned as polynomial roots, so those fall back to the spectrum of
// the multiplication operator.
inline std::array<double, 3> albert_eigenvalues(const AlbertReal& el) {
    const CubicForm f = cubic_form(el);
    const double m = f.T / 3.0;
    double p = f.S - f.T * f.T / 3.0;
    const double q = -2.0 * f.T * f.T * f.T / 27.0 + f.S * f.T / 3.0 - f.N;
    std::array<double, 3> r{};
    if (p > 0.0) p = 0.0;
    const double u = std::sqrt(-p / 3.0);
    if (u < 1e-150) {
        r = {m, m, m};
        return r;
    }
    double w = -q / (2.0 * u * u * u);
    w = std::min(1.0, std::max(-1.0, w));
    const double phi = std::acos(w) / 3.0;
    for (int k = 0; k < 3; ++k) r[k] = m + 2.0 * u * std::cos(phi - 2.0 * M_PI * k / 3.0);
    std::sort(r.begin(), r.end());
    // Degenerate pairs are ill-conditioned as polynomial roots, but only when
    // the spectrum also has real spread: the absolute trig error is O(3e-8)
    // times the spread, so tightly clustered spectra are already accurate.
    const double scale = 1.0 + std::abs(r[0]) + std::abs(r[2]);
    const double spread = r[2] - r[0];
    if (spread > 1e-7 * scale && std::min(r[1] - r[0], r[2] - r[1]) < 1e-6 * scale)
        return detail::albert_eigenvalues_structural(el);
    return r;
}

struct AlbertEigenPair {
    double value;
    int multiplicity;
    AlbertReal projection;
};

// Spectral resolution via Lagrange interpolation in the (associative)
// subalgebra generated by the element. Roots closer than merge_tol are
// merged before interpolating.
inline std::vector<AlbertEigenPair> albert_spectral(const AlbertReal& el,
                                                    double merge_tol = 1e-7) {
    const auto lam = albert_eigenvalues(el);
    std::vector<std::pair<double, int>> groups;  // (mean value, multiplicity)
    for (double l : lam) {
        if (!groups.empty() && l - groups.back().first < merge_tol) {
            auto& g = groups.back();
            g.first = (g.first * g.second + l) / (g.second + 1);
            g.second += 1;
        } else {
            groups.push_back({l, 1});
        }
    }
    std::vector<AlbertEigenPair> out;
    const AlbertReal one = AlbertReal::identity();
    if (groups.size() == 1) {
        out.push_back({groups[0].first, 3, one});
        return out;
    }
    if (groups.size() == 2) {
        const double l0 = groups[0].first, l1 = groups[1].first;
        AlbertReal p0 = (1.0 / (l0 - l1)) * (el - l1 * one);
        out.push_back({l0, groups[0].second, p0});
        out.push_back({l1, groups[1].second, one - p0});
        return out;
    }
    const AlbertReal sq = albert_mul(el, el);
    for (int i = 0; i < 3; ++i) {
        const double li = groups[i].first;
        const double lj = groups[(i + 1) % 3].first;
        const double lk = groups[(i + 2) % 3].first;
        AlbertReal pi = sq - (lj + lk) * el + (lj * lk) * one;
        pi *= 1.0 / ((li - lj) * (li - lk));
        out.push_back({li, 1, pi});
    }
    std::sort(out.begin(), out.end(),
              [](const AlbertEigenPair& a, const AlbertEigenPair& b) { return a.value < b.value; });
    return out;
}

} // namespace jg
