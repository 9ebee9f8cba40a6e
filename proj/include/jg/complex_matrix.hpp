#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "jg/errors.hpp"

namespace jg {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Sizes in this library are tiny
// (n <= 12 or so), so everything is straightforward O(n^3) arithmetic.
class CMat {
public:
    CMat() : n_(0) {}
    explicit CMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx(0.0, 0.0)) {}

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    CMat& operator+=(const CMat& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMat& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        assert(a.n_ == b.n_);
        const int n = a.n_;
        CMat c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    CMat adjoint() const {
        CMat c(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) c(j, i) = std::conj((*this)(i, j));
        return c;
    }

    CMat transpose() const {
        CMat c(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) c(j, i) = (*this)(i, j);
        return c;
    }

    CMat conj() const {
        CMat c(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) c(i, j) = std::conj((*this)(i, j));
        return c;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const auto& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

    // max_ij |a_ij - conj(a_ji)|
    double hermitian_defect() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                s = std::max(s, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return s;
    }

    double symmetry_defect() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s = std::max(s, std::abs((*this)(i, j) - (*this)(j, i)));
        return s;
    }

    double max_imag() const {
        double s = 0.0;
        for (const auto& v : a_) s = std::max(s, std::abs(v.imag()));
        return s;
    }

private:
    int n_;
    std::vector<cplx> a_;
};

inline CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    const int n = static_cast<int>(u.size());
    CMat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

inline std::vector<cplx> matvec(const CMat& m, const std::vector<cplx>& v) {
    const int n = m.n();
    std::vector<cplx> r(n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline cplx dot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

struct HermitianEig {
    std::vector<double> values;  // ascending
    CMat vectors;                // columns are eigenvectors, in the same order
};

// Cyclic Jacobi for complex Hermitian matrices. Deterministic sweep order
// (row-major over the upper triangle); convergence once the off-diagonal
// Frobenius mass drops below 1e-14 * ||x||_F.
inline HermitianEig hermitian_eig(const CMat& x) {
    const int n = x.n();
    CMat a = x;
    // enforce exact Hermitian symmetry of the working copy
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    CMat v = CMat::identity(n);
    const double scale = x.frobenius();
    const double stop = (scale > 0.0) ? 1e-14 * scale : 0.0;

    auto offdiag_mass = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_mass() <= stop) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq == 0.0 || abs_apq <= stop / (4.0 * n * n + 1.0)) continue;
                // Write apq = |apq| g. With D = diag(1, conj(g)) the block
                // D^* A D is real symmetric, handled by a real rotation G;
                // the applied unitary is U = D G.
                const cplx g = apq / abs_apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * abs_apq);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx u_pp = c;
                const cplx u_pq = s;
                const cplx u_qp = -std::conj(g) * s;
                const cplx u_qq = std::conj(g) * c;
                // A <- A U
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                // A <- U^* A
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                // V <- V U
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }

    HermitianEig out;
    out.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });
    out.vectors = CMat(n);
    for (int c = 0; c < n; ++c) {
        out.values[c] = diag[order[c]];
        for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

// Operator norm of a Hermitian matrix: max |eigenvalue|.
inline double hermitian_norm(const CMat& x) {
    if (x.n() == 0) return 0.0;
    const auto eig = hermitian_eig(x);
    double s = 0.0;
    for (double l : eig.values) s = std::max(s, std::abs(l));
    return s;
}

// Largest singular value of a general matrix, via eigenvalues of A^* A.
inline double spectral_norm(const CMat& x) {
    if (x.n() == 0) return 0.0;
    const auto eig = hermitian_eig(x.adjoint() * x);
    double l = eig.values.empty() ? 0.0 : eig.values.back();
    return std::sqrt(std::max(0.0, l));
}

} // namespace jg
