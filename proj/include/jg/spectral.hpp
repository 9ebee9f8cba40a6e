#pragma once

#include <cstdio>
#include <functional>
#include <limits>
#include <utility>

#include "jg/algebra.hpp"

namespace jg {

inline constexpr double tol_sym = 1e-12;   // symmetric-payload transpose defect
inline constexpr double tol_proj = 1e-9;   // projection certification
inline constexpr double cluster_tol = 1e-8;

namespace detail {

struct EigenAtom {
    double value;
    int multiplicity;
    Payload proj;  // projection onto the eigenspace, within one summand
};

// eigenvalues with multiplicity of the self-adjoint part of one summand;
// imaginary residue of the coefficients is discarded
inline std::vector<double> summand_eigenvalues(const Element& x, size_t s) {
    switch (x.desc.summands[s].kind) {
        case Factor::matrix:
        case Factor::symmetric: return hermitian_eig(x.mat(s)).values;
        case Factor::spin: {
            const auto& sp = x.spin(s);
            const double a = sp.a.real();
            double nu = 0.0;
            for (const auto& v : sp.u) nu += v.real() * v.real();
            nu = std::sqrt(nu);
            return {a - nu, a + nu};
        }
        case Factor::albert: {
            const auto lam = albert_eigenvalues(x.albert(s).re);
            return {lam[0], lam[1], lam[2]};
        }
    }
    fail(errc::parse_error, "bad factor");
}

inline std::vector<EigenAtom> summand_eigen_atoms(const Element& x, size_t s) {
    std::vector<EigenAtom> atoms;
    const auto& fk = x.desc.summands[s];
    switch (fk.kind) {
        case Factor::matrix:
        case Factor::symmetric: {
            const auto eig = hermitian_eig(x.mat(s));
            const int n = fk.dim;
            for (int c = 0; c < n; ++c) {
                std::vector<cplx> v(n);
                for (int r = 0; r < n; ++r) v[r] = eig.vectors(r, c);
                atoms.push_back({eig.values[c], 1, outer(v, v)});
            }
            break;
        }
        case Factor::spin: {
            const auto& sp = x.spin(s);
            const double a = sp.a.real();
            std::vector<double> u(sp.u.size());
            double nu = 0.0;
            for (size_t i = 0; i < u.size(); ++i) {
                u[i] = sp.u[i].real();
                nu += u[i] * u[i];
            }
            nu = std::sqrt(nu);
            if (nu < 1e-300) {
                atoms.push_back({a, 2, payload_unit(fk)});
            } else {
                for (int sign : {-1, +1}) {
                    SpinElem p{cplx(0.5), std::vector<cplx>(u.size())};
                    for (size_t i = 0; i < u.size(); ++i) p.u[i] = sign * u[i] / (2.0 * nu);
                    atoms.push_back({a + sign * nu, 1, std::move(p)});
                }
            }
            break;
        }
        case Factor::albert: {
            for (const auto& e : albert_spectral(x.albert(s).re))
                atoms.push_back({e.value, e.multiplicity, AlbertElem{e.projection, AlbertReal{}}});
            break;
        }
    }
    return atoms;
}

inline double opnorm_sa_unchecked(const Element& x) {
    double m = 0.0;
    for (size_t s = 0; s < x.parts.size(); ++s)
        for (double l : summand_eigenvalues(x, s)) m = std::max(m, std::abs(l));
    return m;
}

} // namespace detail

// operator norm of x - x^* (which is i times a self-adjoint element)
inline double sa_defect(const Element& x) {
    const Element y = cplx(0.0, 1.0) * (x - involution(x));
    return detail::opnorm_sa_unchecked(y);
}

inline bool is_self_adjoint(const Element& x, double tol = tol_proj) { return sa_defect(x) <= tol; }

inline std::string fmt_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline void require_self_adjoint(const Element& x, double tol = tol_proj) {
    const double d = sa_defect(x);
    if (d > tol)
        fail(errc::not_self_adjoint, "element is not self-adjoint (defect " + fmt_residual(d) + ")");
}

inline double operator_norm_sa(const Element& x) {
    require_self_adjoint(x);
    return detail::opnorm_sa_unchecked(x);
}

inline double min_eigenvalue_sa(const Element& x) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < x.parts.size(); ++s)
        for (double l : detail::summand_eigenvalues(x, s)) m = std::min(m, l);
    return m;
}

inline double max_eigenvalue_sa(const Element& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < x.parts.size(); ++s)
        for (double l : detail::summand_eigenvalues(x, s)) m = std::max(m, l);
    return m;
}

// distance between self-adjoint elements in the operator norm
inline double dist_sa(const Element& a, const Element& b) {
    return detail::opnorm_sa_unchecked(a - b);
}

// norm of a general (not necessarily self-adjoint) element; defined on
// envelope-representable factors via the largest singular value
inline double norm_general(const Element& x) {
    if (is_self_adjoint(x)) return detail::opnorm_sa_unchecked(x);
    double m = 0.0;
    for (size_t s = 0; s < x.parts.size(); ++s) {
        switch (x.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: m = std::max(m, spectral_norm(x.mat(s))); break;
            default:
                fail(errc::unsupported_factor,
                     "general-element norm is only defined on matrix/symmetric factors");
        }
    }
    return m;
}

inline bool is_positive(const Element& x) {
    if (!is_self_adjoint(x, tol_proj)) return false;
    return min_eigenvalue_sa(x) >= -1e-9;
}

struct Projection {
    Element el;
    std::vector<int> rank;  // per summand

    const AlgebraDescriptor& desc() const { return el.desc; }
    int total_rank() const {
        int r = 0;
        for (int v : rank) r += v;
        return r;
    }
    bool is_zero() const { return total_rank() == 0; }
};

// Certifies idempotency and self-adjointness within tol and derives the rank
// vector (eigenvalues >= 1/2, counted with multiplicity, per summand).
inline Projection certify_projection(Element e, double tol = tol_proj) {
    const double dsa = sa_defect(e);
    if (dsa > tol)
        fail(errc::not_a_projection, "projection defect: ||p* - p|| = " + fmt_residual(dsa));
    const double didem = dist_sa(jordan_mul(e, e), e);
    if (didem > tol)
        fail(errc::not_a_projection, "projection defect: ||p o p - p|| = " + fmt_residual(didem));
    for (size_t s = 0; s < e.parts.size(); ++s) {
        if (e.desc.summands[s].kind == Factor::symmetric &&
            e.mat(s).symmetry_defect() > tol_sym)
            fail(errc::not_a_projection, "symmetric-factor payload is not symmetric");
    }
    Projection p{std::move(e), {}};
    p.rank.reserve(p.el.parts.size());
    for (size_t s = 0; s < p.el.parts.size(); ++s) {
        int r = 0;
        for (double l : detail::summand_eigenvalues(p.el, s))
            if (l >= 0.5) ++r;
        p.rank.push_back(r);
    }
    return p;
}

inline Projection zero_projection(const AlgebraDescriptor& d) { return certify_projection(zero(d)); }
inline Projection unit_projection(const AlgebraDescriptor& d) { return certify_projection(unit(d)); }

struct SpectralResolution {
    std::vector<std::pair<double, Projection>> pairs;  // eigenvalues ascending
};

// Spectral resolution of a self-adjoint element. Eigenvalues within
// cluster_tol of each other (chained, after global ascending sort across all
// summands) share one spectral projection. The zero element has an empty
// resolution by convention.
inline SpectralResolution spectral_resolution(const Element& x, double tol = cluster_tol) {
    require_self_adjoint(x);
    SpectralResolution out;
    if (max_abs(x) == 0.0) return out;

    struct Entry {
        double value;
        int multiplicity;
        size_t summand;
        Payload proj;
    };
    std::vector<Entry> entries;
    for (size_t s = 0; s < x.parts.size(); ++s)
        for (auto& a : detail::summand_eigen_atoms(x, s))
            entries.push_back({a.value, a.multiplicity, s, std::move(a.proj)});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.value < b.value; });

    size_t i = 0;
    while (i < entries.size()) {
        size_t j = i + 1;
        double last = entries[i].value;
        while (j < entries.size() && entries[j].value - last < tol) {
            last = entries[j].value;
            ++j;
        }
        Element proj = zero(x.desc);
        double wsum = 0.0;
        int mult = 0;
        for (size_t k = i; k < j; ++k) {
            proj = proj + embed(x.desc, entries[k].summand, entries[k].proj);
            wsum += entries[k].value * entries[k].multiplicity;
            mult += entries[k].multiplicity;
        }
        out.pairs.emplace_back(wsum / mult, certify_projection(std::move(proj)));
        i = j;
    }
    return out;
}

// ---- spectral functions (per-eigenvector calculus, no clustering) ----

inline Element apply_spectral(const Element& x, const std::function<double(double)>& f) {
    require_self_adjoint(x);
    Element out = zero(x.desc);
    for (size_t s = 0; s < x.parts.size(); ++s) {
        const auto& fk = x.desc.summands[s];
        switch (fk.kind) {
            case Factor::matrix:
            case Factor::symmetric: {
                const auto eig = hermitian_eig(x.mat(s));
                CMat m(fk.dim);
                for (int c = 0; c < fk.dim; ++c) {
                    const double fv = f(eig.values[c]);
                    if (fv == 0.0) continue;
                    std::vector<cplx> v(fk.dim);
                    for (int r = 0; r < fk.dim; ++r) v[r] = eig.vectors(r, c);
                    m += fv * outer(v, v);
                }
                out.parts[s] = std::move(m);
                break;
            }
            case Factor::spin: {
                const auto& sp = x.spin(s);
                const double a = sp.a.real();
                std::vector<double> u(sp.u.size());
                double nu = 0.0;
                for (size_t i = 0; i < u.size(); ++i) {
                    u[i] = sp.u[i].real();
                    nu += u[i] * u[i];
                }
                nu = std::sqrt(nu);
                SpinElem r{cplx(0.0), std::vector<cplx>(u.size(), cplx(0.0))};
                if (nu < 1e-300) {
                    r.a = f(a);
                } else {
                    const double fp = f(a + nu), fm = f(a - nu);
                    r.a = 0.5 * (fp + fm);
                    const double c = (fp - fm) / (2.0 * nu);
                    for (size_t i = 0; i < u.size(); ++i) r.u[i] = c * u[i];
                }
                out.parts[s] = std::move(r);
                break;
            }
            case Factor::albert: {
                AlbertReal r;
                for (const auto& e : albert_spectral(x.albert(s).re))
                    r += f(e.value) * e.projection;
                out.parts[s] = AlbertElem{r, AlbertReal{}};
                break;
            }
        }
    }
    return out;
}

// Square root of a positive element. Eigenvalues in [-clamp, 0) are clamped;
// eigenvalues below 1e-13 * scale count as structural zeros, since the square
// root would otherwise amplify eigensolver noise on true kernels into ~1e-8.
inline Element sqrt_psd(const Element& x, double clamp = 1e-8) {
    const double mn = min_eigenvalue_sa(x);
    if (mn < -clamp)
        fail(errc::not_positive, "sqrt of a non-positive element (min eigenvalue " +
                                     fmt_residual(mn) + ")");
    const double floor = 1e-13 * std::max(1.0, detail::opnorm_sa_unchecked(x));
    return apply_spectral(x, [floor](double l) { return l > floor ? std::sqrt(l) : 0.0; });
}

// c^{-1/2} by spectral calculus, refusing eigenvalues below the floor
inline Element inv_sqrt(const Element& x, double floor = 1e-12) {
    const double mn = min_eigenvalue_sa(x);
    if (mn < floor)
        fail(errc::inversion_ill_conditioned,
             "inverse square root: eigenvalue " + fmt_residual(mn) + " below floor");
    return apply_spectral(x, [](double l) { return 1.0 / std::sqrt(l); });
}

inline Element positive_part(const Element& x) {
    return apply_spectral(x, [](double l) { return std::max(l, 0.0); });
}
inline Element negative_part(const Element& x) {
    return apply_spectral(x, [](double l) { return std::max(-l, 0.0); });
}

} // namespace jg
