#pragma once

#include <string>
#include <variant>
#include <vector>

#include "jg/albert.hpp"
#include "jg/complex_matrix.hpp"
#include "jg/errors.hpp"

namespace jg {

enum class Factor { matrix, symmetric, spin, albert };

struct FactorKind {
    Factor kind;
    int dim;  // n for matrix/symmetric factors, spin dimension k for spin, 3 for albert

    bool operator==(const FactorKind&) const = default;
};

inline FactorKind matrix_factor(int n) {
    if (n < 1) fail(errc::parse_error, "matrix factor needs dimension >= 1");
    return {Factor::matrix, n};
}
inline FactorKind symmetric_factor(int n) {
    if (n < 1) fail(errc::parse_error, "symmetric factor needs dimension >= 1");
    return {Factor::symmetric, n};
}
inline FactorKind spin_factor(int k) {
    if (k < 2) fail(errc::dimension_too_small, "spin factor needs dimension >= 2");
    return {Factor::spin, k};
}
inline FactorKind albert_factor() { return {Factor::albert, 3}; }

struct AlgebraDescriptor {
    std::vector<FactorKind> summands;

    bool operator==(const AlgebraDescriptor&) const = default;

    static AlgebraDescriptor single(FactorKind k) { return {{k}}; }

    // grammar: lowercase tokens joined by '+': mN, sN, spinK, albert
    static AlgebraDescriptor parse(const std::string& text);

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < summands.size(); ++i) {
            if (i) s += '+';
            const auto& f = summands[i];
            switch (f.kind) {
                case Factor::matrix: s += "m" + std::to_string(f.dim); break;
                case Factor::symmetric: s += "s" + std::to_string(f.dim); break;
                case Factor::spin: s += "spin" + std::to_string(f.dim); break;
                case Factor::albert: s += "albert"; break;
            }
        }
        return s;
    }

    // real dimension of the self-adjoint part
    int sa_dim() const {
        int d = 0;
        for (const auto& f : summands) {
            switch (f.kind) {
                case Factor::matrix: d += f.dim * f.dim; break;
                case Factor::symmetric: d += f.dim * (f.dim + 1) / 2; break;
                case Factor::spin: d += f.dim + 1; break;
                case Factor::albert: d += 27; break;
            }
        }
        return d;
    }
};

inline AlgebraDescriptor AlgebraDescriptor::parse(const std::string& text) {
    AlgebraDescriptor d;
    size_t pos = 0;
    if (text.empty()) fail(errc::parse_error, "empty algebra descriptor");
    while (pos <= text.size()) {
        const size_t next = text.find('+', pos);
        const std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        auto num = [&](size_t off) -> int {
            if (off >= tok.size()) fail(errc::parse_error, "missing dimension in token '" + tok + "'");
            int v = 0;
            for (size_t i = off; i < tok.size(); ++i) {
                if (tok[i] < '0' || tok[i] > '9')
                    fail(errc::parse_error, "bad dimension in token '" + tok + "'");
                v = v * 10 + (tok[i] - '0');
            }
            if (v < 1) fail(errc::parse_error, "dimension must be positive in '" + tok + "'");
            return v;
        };
        if (tok == "albert")
            d.summands.push_back(albert_factor());
        else if (tok.rfind("spin", 0) == 0)
            d.summands.push_back(spin_factor(num(4)));
        else if (!tok.empty() && tok[0] == 'm')
            d.summands.push_back(matrix_factor(num(1)));
        else if (!tok.empty() && tok[0] == 's')
            d.summands.push_back(symmetric_factor(num(1)));
        else
            fail(errc::parse_error, "unrecognized algebra token '" + tok + "'");
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return d;
}

// ---- payloads ----

struct SpinElem {
    cplx a;                  // coefficient of the unit
    std::vector<cplx> u;     // coefficients of the spin generators

    double max_abs() const {
        double m = std::abs(a);
        for (const auto& v : u) m = std::max(m, std::abs(v));
        return m;
    }
};

// complexified Albert element re + i*im with re, im in H3(O)
struct AlbertElem {
    AlbertReal re, im;

    double max_abs() const { return std::max(re.max_abs(), im.max_abs()); }
};

using Payload = std::variant<CMat, SpinElem, AlbertElem>;

struct Element {
    AlgebraDescriptor desc;
    std::vector<Payload> parts;

    const CMat& mat(size_t s) const { return std::get<CMat>(parts[s]); }
    CMat& mat(size_t s) { return std::get<CMat>(parts[s]); }
    const SpinElem& spin(size_t s) const { return std::get<SpinElem>(parts[s]); }
    SpinElem& spin(size_t s) { return std::get<SpinElem>(parts[s]); }
    const AlbertElem& albert(size_t s) const { return std::get<AlbertElem>(parts[s]); }
    AlbertElem& albert(size_t s) { return std::get<AlbertElem>(parts[s]); }
};

inline Payload payload_zero(const FactorKind& f) {
    switch (f.kind) {
        case Factor::matrix:
        case Factor::symmetric: return CMat(f.dim);
        case Factor::spin: return SpinElem{cplx(0.0), std::vector<cplx>(f.dim, cplx(0.0))};
        case Factor::albert: return AlbertElem{};
    }
    fail(errc::parse_error, "bad factor");
}

inline Payload payload_unit(const FactorKind& f) {
    switch (f.kind) {
        case Factor::matrix:
        case Factor::symmetric: return CMat::identity(f.dim);
        case Factor::spin: return SpinElem{cplx(1.0), std::vector<cplx>(f.dim, cplx(0.0))};
        case Factor::albert: return AlbertElem{AlbertReal::identity(), AlbertReal{}};
    }
    fail(errc::parse_error, "bad factor");
}

inline Element zero(const AlgebraDescriptor& d) {
    Element e{d, {}};
    e.parts.reserve(d.summands.size());
    for (const auto& f : d.summands) e.parts.push_back(payload_zero(f));
    return e;
}

inline Element unit(const AlgebraDescriptor& d) {
    Element e{d, {}};
    e.parts.reserve(d.summands.size());
    for (const auto& f : d.summands) e.parts.push_back(payload_unit(f));
    return e;
}

inline void require_same_descriptor(const Element& a, const Element& b) {
    if (!(a.desc == b.desc))
        fail(errc::descriptor_mismatch,
             "descriptor mismatch: " + a.desc.str() + " vs " + b.desc.str());
}

namespace detail {

inline AlbertReal scale_combine(const AlbertReal& x, const AlbertReal& y, double cx, double cy) {
    return cx * x + cy * y;
}

} // namespace detail

inline Element operator+(const Element& a, const Element& b) {
    require_same_descriptor(a, b);
    Element r = a;
    for (size_t s = 0; s < r.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: r.mat(s) += b.mat(s); break;
            case Factor::spin: {
                auto& x = r.spin(s);
                const auto& y = b.spin(s);
                x.a += y.a;
                for (size_t i = 0; i < x.u.size(); ++i) x.u[i] += y.u[i];
                break;
            }
            case Factor::albert: {
                auto& x = r.albert(s);
                const auto& y = b.albert(s);
                x.re += y.re;
                x.im += y.im;
                break;
            }
        }
    }
    return r;
}

inline Element operator*(cplx c, const Element& a) {
    Element r = a;
    for (size_t s = 0; s < r.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: r.mat(s) *= c; break;
            case Factor::spin: {
                auto& x = r.spin(s);
                x.a *= c;
                for (auto& v : x.u) v *= c;
                break;
            }
            case Factor::albert: {
                auto& x = r.albert(s);
                const AlbertReal re = detail::scale_combine(x.re, x.im, c.real(), -c.imag());
                const AlbertReal im = detail::scale_combine(x.re, x.im, c.imag(), c.real());
                x.re = re;
                x.im = im;
                break;
            }
        }
    }
    return r;
}

inline Element operator*(double c, const Element& a) { return cplx(c, 0.0) * a; }
inline Element operator-(const Element& a, const Element& b) { return a + (-1.0 * b); }
inline Element operator-(const Element& a) { return -1.0 * a; }

inline Element involution(const Element& a) {
    Element r = a;
    for (size_t s = 0; s < r.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: r.mat(s) = r.mat(s).adjoint(); break;
            case Factor::spin: {
                auto& x = r.spin(s);
                x.a = std::conj(x.a);
                for (auto& v : x.u) v = std::conj(v);
                break;
            }
            case Factor::albert: r.albert(s).im *= -1.0; break;
        }
    }
    return r;
}

inline Element jordan_mul(const Element& a, const Element& b) {
    require_same_descriptor(a, b);
    Element r = zero(a.desc);
    for (size_t s = 0; s < r.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: {
                const CMat& x = a.mat(s);
                const CMat& y = b.mat(s);
                r.mat(s) = 0.5 * (x * y + y * x);
                break;
            }
            case Factor::spin: {
                const auto& x = a.spin(s);
                const auto& y = b.spin(s);
                auto& o = r.spin(s);
                cplx dotxy = 0.0;
                for (size_t i = 0; i < x.u.size(); ++i) dotxy += x.u[i] * y.u[i];
                o.a = x.a * y.a + dotxy;
                for (size_t i = 0; i < x.u.size(); ++i) o.u[i] = x.a * y.u[i] + y.a * x.u[i];
                break;
            }
            case Factor::albert: {
                const auto& x = a.albert(s);
                const auto& y = b.albert(s);
                auto& o = r.albert(s);
                o.re = albert_mul(x.re, y.re) - albert_mul(x.im, y.im);
                o.im = albert_mul(x.re, y.im) + albert_mul(x.im, y.re);
                break;
            }
        }
    }
    return r;
}

// U_{a,c}(b) = (a o b) o c + (b o c) o a - (a o c) o b
inline Element u_bilinear(const Element& a, const Element& c, const Element& b) {
    require_same_descriptor(a, b);
    require_same_descriptor(a, c);
    return jordan_mul(jordan_mul(a, b), c) + jordan_mul(jordan_mul(b, c), a) -
           jordan_mul(jordan_mul(a, c), b);
}

inline Element u_map(const Element& a, const Element& b) {
    // U_a(b) = 2 (a o b) o a - a^2 o b
    require_same_descriptor(a, b);
    return 2.0 * jordan_mul(jordan_mul(a, b), a) - jordan_mul(jordan_mul(a, a), b);
}

// {a, b, c} = U_{a,c}(b^*)
inline Element triple_product(const Element& a, const Element& b, const Element& c) {
    return u_bilinear(a, c, involution(b));
}

inline double max_abs(const Element& a) {
    double m = 0.0;
    for (size_t s = 0; s < a.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: m = std::max(m, a.mat(s).max_abs()); break;
            case Factor::spin: m = std::max(m, a.spin(s).max_abs()); break;
            case Factor::albert: m = std::max(m, a.albert(s).max_abs()); break;
        }
    }
    return m;
}

// embeds a single-summand payload into the zero element of d at position s
inline Element embed(const AlgebraDescriptor& d, size_t s, Payload p) {
    Element e = zero(d);
    e.parts[s] = std::move(p);
    return e;
}

} // namespace jg
