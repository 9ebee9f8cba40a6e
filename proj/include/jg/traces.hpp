#pragma once

#include "jg/lattice.hpp"

namespace jg {

// The centre of a finite direct sum of factors: one real scalar per summand.
struct CentreValue {
    std::vector<double> v;

    double operator[](size_t i) const { return v[i]; }
    size_t size() const { return v.size(); }

    friend CentreValue operator+(CentreValue a, const CentreValue& b) {
        for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
        return a;
    }
    friend CentreValue operator-(CentreValue a, const CentreValue& b) {
        for (size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
        return a;
    }
    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

// Normalized trace, per summand: matrix trace / n, the scalar part of a spin
// element, T(a)/3 on the Albert factor. Unital, positive, U_s-invariant.
inline CentreValue normalized_trace(const Element& x) {
    require_self_adjoint(x);
    CentreValue t;
    t.v.reserve(x.parts.size());
    for (size_t s = 0; s < x.parts.size(); ++s) {
        switch (x.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric:
                t.v.push_back(x.mat(s).trace().real() / x.desc.summands[s].dim);
                break;
            case Factor::spin: t.v.push_back(x.spin(s).a.real()); break;
            case Factor::albert: t.v.push_back(albert_trace(x.albert(s).re) / 3.0); break;
        }
    }
    return t;
}

enum class Ordering { less, equal, greater };

// entrywise comparison of normalized traces; in matrix factors this agrees
// exactly with rank comparison of projections
inline std::vector<Ordering> trace_compare(const Projection& p, const Projection& q,
                                           double tol = 1e-9) {
    require_same_descriptor(p.el, q.el);
    const CentreValue tp = normalized_trace(p.el);
    const CentreValue tq = normalized_trace(q.el);
    std::vector<Ordering> out;
    out.reserve(tp.size());
    for (size_t i = 0; i < tp.size(); ++i) {
        if (std::abs(tp[i] - tq[i]) <= tol)
            out.push_back(Ordering::equal);
        else
            out.push_back(tp[i] < tq[i] ? Ordering::less : Ordering::greater);
    }
    return out;
}

namespace detail {

// number of trace steps per summand: tau(P(J)) = {0, 1/steps, ..., 1}
inline int trace_steps(const FactorKind& f) {
    switch (f.kind) {
        case Factor::matrix:
        case Factor::symmetric: return f.dim;
        case Factor::spin: return 2;
        case Factor::albert: return 3;
    }
    fail(errc::parse_error, "bad factor");
}

// deterministic rank-one frame under an Albert projection: the spectral atoms
// of U_p(d) for a fixed generic diagonal d
inline std::vector<AlbertReal> albert_frame(const Element& full, size_t s, int rank) {
    std::vector<AlbertReal> frame;
    if (rank == 0) return frame;
    Element d = zero(full.desc);
    AlbertReal diag;
    diag.a = {1.0, 2.2360679774997896, 3.6055512754639891};
    d.parts[s] = AlbertElem{diag, AlbertReal{}};
    const Element c = u_map(full, d);
    for (const auto& atom : albert_spectral(c.albert(s).re, 1e-9))
        if (std::abs(atom.value) > 1e-8)
            for (int m = 0; m < atom.multiplicity; ++m) frame.push_back(atom.projection);
    // multiplicity > 1 would mean the generic compression degenerated; the
    // frame is then unusable for splitting, which the caller detects by size
    if (static_cast<int>(frame.size()) != rank) frame.clear();
    return frame;
}

} // namespace detail

// Picks q <= p with tau(q) = w for w on the attainable discrete grid
// (multiples of 1/n, 1/2, 1/3 per summand kind, bounded by tau(p)).
// Selection is deterministic: lowest-index eigenvectors of p.
inline Projection subprojection_with_trace(const Projection& p, const CentreValue& w,
                                           double grid_tol = 1e-9) {
    if (w.size() != p.el.parts.size())
        fail(errc::trace_unreachable, "centre value has wrong summand count");
    Element q = zero(p.el.desc);
    for (size_t s = 0; s < p.el.parts.size(); ++s) {
        const auto& fk = p.el.desc.summands[s];
        const int steps = detail::trace_steps(fk);
        const double target = w[s] * steps;
        const int k = static_cast<int>(std::lround(target));
        if (std::abs(target - k) > grid_tol * steps || k < 0 || k > p.rank[s])
            fail(errc::trace_unreachable,
                 "trace value " + std::to_string(w[s]) + " unattainable in summand " +
                     std::to_string(s) + " (grid 1/" + std::to_string(steps) + ", cap " +
                     std::to_string(p.rank[s]) + "/" + std::to_string(steps) + ")");
        if (k == 0) continue;
        switch (fk.kind) {
            case Factor::matrix:
            case Factor::symmetric: {
                const auto eig = hermitian_eig(p.el.mat(s));
                CMat m(fk.dim);
                int taken = 0;
                for (int c = 0; c < fk.dim && taken < k; ++c) {
                    if (eig.values[c] < 0.5) continue;
                    std::vector<cplx> v(fk.dim);
                    for (int r = 0; r < fk.dim; ++r) v[r] = eig.vectors(r, c);
                    m += outer(v, v);
                    ++taken;
                }
                q.parts[s] = std::move(m);
                break;
            }
            case Factor::spin: {
                if (k == p.rank[s]) {
                    q.parts[s] = p.el.parts[s];
                } else {
                    // k = 1 under the full projection: canonical rank-one
                    SpinElem e{cplx(0.5), std::vector<cplx>(fk.dim, cplx(0.0))};
                    e.u[0] = 0.5;
                    q.parts[s] = std::move(e);
                }
                break;
            }
            case Factor::albert: {
                if (k == p.rank[s]) {
                    q.parts[s] = p.el.parts[s];
                } else {
                    auto frame = detail::albert_frame(p.el, s, p.rank[s]);
                    if (frame.empty())
                        fail(errc::trace_unreachable,
                             "degenerate Albert frame; cannot split this projection");
                    AlbertReal acc;
                    for (int i = 0; i < k; ++i) acc += frame[i];
                    q.parts[s] = AlbertElem{acc, AlbertReal{}};
                }
                break;
            }
        }
    }
    return certify_projection(std::move(q));
}

} // namespace jg
