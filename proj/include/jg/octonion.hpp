#pragma once

#include <array>
#include <cmath>

namespace jg {

// Real octonion over the basis e0..e7, built by Cayley-Dickson doubling of
// the quaternions: (a, b)(c, d) = (ac - conj(d)b, da + b conj(c)).
struct Octonion {
    std::array<double, 8> c{};

    Octonion() = default;
    explicit Octonion(double real) { c[0] = real; }

    static Octonion unit(int k) {
        Octonion o;
        o.c[k] = 1.0;
        return o;
    }

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    Octonion& operator+=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) c[i] += o.c[i];
        return *this;
    }
    Octonion& operator-=(const Octonion& o) {
        for (int i = 0; i < 8; ++i) c[i] -= o.c[i];
        return *this;
    }
    Octonion& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator*(double s, Octonion a) { return a *= s; }
    friend Octonion operator-(Octonion a) { return -1.0 * a; }

    double real() const { return c[0]; }

    Octonion conj() const {
        Octonion o = *this;
        for (int i = 1; i < 8; ++i) o.c[i] = -o.c[i];
        return o;
    }

    double norm_sq() const {
        double s = 0.0;
        for (double v : c) s += v * v;
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline double oct_inner(const Octonion& a, const Octonion& b) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += a.c[i] * b.c[i];
    return s;
}

namespace detail {

struct Quat {
    double w, x, y, z;
};

inline Quat qmul(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat qconj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }

} // namespace detail

inline Octonion oct_mul(const Octonion& a, const Octonion& b) {
    using detail::qconj;
    using detail::qmul;
    const detail::Quat a1{a.c[0], a.c[1], a.c[2], a.c[3]};
    const detail::Quat a2{a.c[4], a.c[5], a.c[6], a.c[7]};
    const detail::Quat b1{b.c[0], b.c[1], b.c[2], b.c[3]};
    const detail::Quat b2{b.c[4], b.c[5], b.c[6], b.c[7]};
    const detail::Quat r1 = [&] {
        auto p = qmul(a1, b1);
        auto q = qmul(qconj(b2), a2);
        return detail::Quat{p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
    }();
    const detail::Quat r2 = [&] {
        auto p = qmul(b2, a1);
        auto q = qmul(a2, qconj(b1));
        return detail::Quat{p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
    }();
    Octonion r;
    r.c = {r1.w, r1.x, r1.y, r1.z, r2.w, r2.x, r2.y, r2.z};
    return r;
}

} // namespace jg
