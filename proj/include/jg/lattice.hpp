#pragma once

#include "jg/spectral.hpp"

namespace jg {

inline constexpr double lattice_tol = 1e-8;

// p <= q in P(J) iff p o q = p
inline bool leq(const Projection& p, const Projection& q, double tol = lattice_tol) {
    require_same_descriptor(p.el, q.el);
    return dist_sa(jordan_mul(p.el, q.el), p.el) <= tol;
}

inline bool orthogonal(const Projection& p, const Projection& q, double tol = lattice_tol) {
    require_same_descriptor(p.el, q.el);
    return detail::opnorm_sa_unchecked(jordan_mul(p.el, q.el)) <= tol;
}

inline Projection complement(const Projection& p) {
    return certify_projection(unit(p.el.desc) - p.el);
}

// Infimum, computed as the spectral projection of p + q at eigenvalue 2.
// The acceptance window (1e-6) is looser than the clustering tolerance
// because p + q can be ill-conditioned near tangency; eigenvalues landing in
// (2 - 1e-4, 2 - 1e-6) are treated as not intersecting.
inline Projection meet(const Projection& p, const Projection& q, double window = 1e-6) {
    require_same_descriptor(p.el, q.el);
    const Element s = p.el + q.el;
    Element m = zero(p.el.desc);
    for (size_t i = 0; i < s.parts.size(); ++i)
        for (auto& atom : detail::summand_eigen_atoms(s, i))
            if (std::abs(atom.value - 2.0) <= window)
                m = m + embed(s.desc, i, std::move(atom.proj));
    return certify_projection(std::move(m));
}

inline Projection join(const Projection& p, const Projection& q) {
    return complement(meet(complement(p), complement(q)));
}

// smallest central projection dominating p: per summand, the summand unit
// whenever the component of p is nonzero
inline Projection central_cover(const Projection& p) {
    Element c = zero(p.el.desc);
    for (size_t s = 0; s < c.parts.size(); ++s)
        if (p.rank[s] > 0) c.parts[s] = payload_unit(c.desc.summands[s]);
    return certify_projection(std::move(c));
}

// support projection of a positive element: sum of spectral projections with
// eigenvalue > 1e-8
inline Projection range_projection(const Element& x, double eps = 1e-8) {
    if (!is_positive(x)) fail(errc::not_positive, "range_projection needs a positive element");
    return certify_projection(apply_spectral(x, [eps](double l) { return l > eps ? 1.0 : 0.0; }));
}

} // namespace jg
