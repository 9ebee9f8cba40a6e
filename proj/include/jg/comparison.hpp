#pragma once

#include "jg/traces.hpp"

namespace jg {

namespace detail {

// associative product per summand; envelope-representable factors only
inline Element env_mul(const Element& a, const Element& b) {
    require_same_descriptor(a, b);
    Element r = zero(a.desc);
    for (size_t s = 0; s < r.parts.size(); ++s) {
        switch (a.desc.summands[s].kind) {
            case Factor::matrix:
            case Factor::symmetric: r.parts[s] = a.mat(s) * b.mat(s); break;
            default:
                fail(errc::unsupported_factor,
                     "envelope product requires matrix or symmetric factors");
        }
    }
    return r;
}

inline void require_envelope(const AlgebraDescriptor& d, const char* who) {
    for (const auto& f : d.summands)
        if (f.kind != Factor::matrix && f.kind != Factor::symmetric)
            fail(errc::unsupported_factor, std::string(who) + " is only exposed on "
                                               "matrix/symmetric factor summands");
}

inline bool is_symmetry(const Element& s, double tol = 1e-8) {
    return sa_defect(s) <= tol && dist_sa(jordan_mul(s, s), unit(s.desc)) <= tol;
}

// columns spanning the range of a projection payload (eigenvalue >= 1/2),
// in ascending eigenvalue order
inline std::vector<std::vector<cplx>> range_basis(const CMat& p) {
    const auto eig = hermitian_eig(p);
    std::vector<std::vector<cplx>> basis;
    for (int c = 0; c < p.n(); ++c) {
        if (eig.values[c] < 0.5) continue;
        std::vector<cplx> v(p.n());
        for (int r = 0; r < p.n(); ++r) v[r] = eig.vectors(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

// Exchange symmetry s = c^{-1/2} o (f + g - 1) with c = 1 - (f-g)^2, defined
// whenever ||f - g|| < 1; U_s maps f to g and moves every p <= f by at most
// sqrt(2) ||f-g||^{1/2}.
inline Element exchange_symmetry(const Projection& f, const Projection& g) {
    require_same_descriptor(f.el, g.el);
    const Element diff = f.el - g.el;
    const double dist = detail::opnorm_sa_unchecked(diff);
    if (dist >= 1.0 - 1e-9)
        fail(errc::too_far_apart, "exchange symmetry needs ||f-g|| < 1, got " +
                                      std::to_string(dist));
    const Element c = unit(f.el.desc) - jordan_mul(diff, diff);
    const Element root = inv_sqrt(c);
    return jordan_mul(root, f.el + g.el - unit(f.el.desc));
}

// Jordan equivalence in finite direct sums of factors: equal rank vectors.
inline bool equivalent(const Projection& p, const Projection& q) {
    require_same_descriptor(p.el, q.el);
    return p.rank == q.rank;
}

struct HalveResult {
    Projection half1, half2;
    Projection abelian;   // rank <= 1 per summand, possibly zero
    Element symmetry;     // exchanges half1 and half2
};

// Splits p into two orthogonal equivalent halves plus an abelian remainder,
// with an explicit exchange symmetry for the halves.
inline HalveResult halve(const Projection& p) {
    if (p.is_zero()) fail(errc::zero_projection, "cannot halve the zero projection");
    detail::require_envelope(p.el.desc, "halve");
    Element q1 = zero(p.el.desc), q2 = zero(p.el.desc), rest = zero(p.el.desc);
    Element sym = zero(p.el.desc);
    for (size_t s = 0; s < p.el.parts.size(); ++s) {
        const int n = p.el.desc.summands[s].dim;
        const auto basis = detail::range_basis(p.el.mat(s));
        const int r = static_cast<int>(basis.size());
        const int k = r / 2;
        CMat m1(n), m2(n), mrest(n), msym(n);
        for (int i = 0; i < k; ++i) {
            m1 += outer(basis[i], basis[i]);
            m2 += outer(basis[k + i], basis[k + i]);
            msym += outer(basis[i], basis[k + i]) + outer(basis[k + i], basis[i]);
        }
        if (r % 2 == 1) mrest = outer(basis[r - 1], basis[r - 1]);
        msym += CMat::identity(n) - m1 - m2;
        q1.parts[s] = std::move(m1);
        q2.parts[s] = std::move(m2);
        rest.parts[s] = std::move(mrest);
        sym.parts[s] = std::move(msym);
    }
    return {certify_projection(std::move(q1)), certify_projection(std::move(q2)),
            certify_projection(std::move(rest)), std::move(sym)};
}

// The S2(C) model pair: f = E11 and h at principal angle theta.
inline std::pair<Projection, Projection> isoclinic_model(double theta) {
    if (!(theta >= 0.0 && theta < M_PI / 2.0))
        fail(errc::angle_out_of_range, "isoclinic model angle must lie in [0, pi/2)");
    const AlgebraDescriptor d{{symmetric_factor(2)}};
    const double c = std::cos(theta), s = std::sin(theta);
    Element f = zero(d), h = zero(d);
    f.mat(0)(0, 0) = 1.0;
    h.mat(0)(0, 0) = c * c;
    h.mat(0)(0, 1) = c * s;
    h.mat(0)(1, 0) = c * s;
    h.mat(0)(1, 1) = s * s;
    return {certify_projection(std::move(f)), certify_projection(std::move(h))};
}

// Given close projections f, g and spare room e (e ~ f, e orthogonal to both),
// produces h isoclinic with one fixed angle theta to both f and g, where
// theta = (1/2) asin(||U_f(1-g)||^{1/2}). Built blockwise from the
// two-projection canonical form of (f, g), tilting each angle block towards
// the matching e-direction at the half angle.
inline Projection isoclinic_mid(const Projection& f, const Projection& g, const Projection& e) {
    require_same_descriptor(f.el, g.el);
    require_same_descriptor(f.el, e.el);
    const double dist = detail::opnorm_sa_unchecked(f.el - g.el);
    if (dist >= 1.0 - 1e-9)
        fail(errc::too_far_apart, "isoclinic midpoint needs ||f-g|| < 1");
    if (!equivalent(e, f) || !orthogonal(e, f) || !orthogonal(e, g))
        fail(errc::missing_spare_room,
             "need e ~ f with e orthogonal to both f and g");

    struct Block {
        size_t summand;
        double cos2;                 // cos^2 of the principal angle
        std::vector<cplx> u, w, e;   // f-line, in-plane normal (may be empty), e-line
    };
    std::vector<Block> blocks;

    for (size_t s = 0; s < f.el.parts.size(); ++s) {
        const auto kind = f.el.desc.summands[s].kind;
        if (f.rank[s] == 0) continue;
        if (kind != Factor::matrix && kind != Factor::symmetric)
            fail(errc::unsupported_factor,
                 "isoclinic midpoint acts on matrix/symmetric factor summands");
        const CMat& G = g.el.mat(s);
        const auto fb = detail::range_basis(f.el.mat(s));
        const auto eb = detail::range_basis(e.el.mat(s));
        const int r = static_cast<int>(fb.size());
        const int n = f.el.desc.summands[s].dim;
        // compressed operator B = U_f^* G U_f on range(f)
        CMat B(r);
        std::vector<std::vector<cplx>> gf(r);
        for (int i = 0; i < r; ++i) gf[i] = matvec(G, fb[i]);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) B(i, j) = dot(fb[i], gf[j]);
        const auto eig = hermitian_eig(B);
        for (int c = 0; c < r; ++c) {
            Block blk;
            blk.summand = s;
            blk.cos2 = std::min(1.0, std::max(0.0, eig.values[c]));
            std::vector<cplx> u(n, cplx(0.0));
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < n; ++k) u[k] += eig.vectors(i, c) * fb[i][k];
            std::vector<cplx> gu = matvec(G, u);
            std::vector<cplx> w(n);
            double nu = 0.0;
            for (int k = 0; k < n; ++k) {
                w[k] = gu[k] - blk.cos2 * u[k];
                nu += std::norm(w[k]);
            }
            nu = std::sqrt(nu);
            if (nu > 1e-9)
                for (auto& v : w) v *= 1.0 / nu;
            else
                w.assign(n, cplx(0.0));
            blk.u = std::move(u);
            blk.w = std::move(w);
            blk.e = eb[c];
            blocks.push_back(std::move(blk));
        }
    }

    double cos2_min = 1.0;
    for (const auto& b : blocks) cos2_min = std::min(cos2_min, b.cos2);
    const double sin_phi_max = std::sqrt(std::max(0.0, 1.0 - cos2_min));
    const double theta = 0.5 * std::asin(std::min(1.0, sin_phi_max));
    const double x = std::cos(theta);

    Element h = zero(f.el.desc);
    for (const auto& b : blocks) {
        const double phi = std::acos(std::min(1.0, std::sqrt(b.cos2)));
        const double y = x * std::tan(0.5 * phi);
        const double zz = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
        const int n = static_cast<int>(b.u.size());
        std::vector<cplx> hv(n);
        for (int k = 0; k < n; ++k) hv[k] = x * b.u[k] + y * b.w[k] + zz * b.e[k];
        h = h + embed(f.el.desc, b.summand, outer(hv, hv));
    }
    return certify_projection(std::move(h));
}

struct EpmResult {
    Projection e_minus, e_plus;
    Element c, d;
};

// c = p/2 + (p/4 - eps^4 U_p U_e(q))^{1/2}, d = q/2 - (q/4 - eps^4 U_q U_e(p))^{1/2},
// e_{-+} = c + d +- eps^2 * 2{p,e,q}; both are projections under p + q,
// equivalent to p, with 0 <= p - c <= eps^4 p / 2 and 0 <= d <= eps^4 q / 2.
inline EpmResult e_pm_construct(const Projection& p, const Projection& q, const Projection& e,
                                double eps) {
    require_same_descriptor(p.el, q.el);
    require_same_descriptor(p.el, e.el);
    if (!(eps > 0.0 && eps < 0.5))
        fail(errc::precondition_violation, "epsilon must lie in (0, 1/2)");
    if (!orthogonal(p, q)) fail(errc::not_orthogonal, "p and q must be orthogonal");
    const Projection pq = certify_projection(p.el + q.el);
    if (!leq(e, pq)) fail(errc::not_dominated, "e must be dominated by p + q");

    const double e4 = eps * eps * eps * eps;
    const Element cpart = 0.25 * p.el - e4 * u_map(p.el, u_map(e.el, q.el));
    const Element dpart = 0.25 * q.el - e4 * u_map(q.el, u_map(e.el, p.el));
    const Element c = 0.5 * p.el + sqrt_psd(cpart);
    const Element d = 0.5 * q.el - sqrt_psd(dpart);
    const Element cross = 2.0 * triple_product(p.el, e.el, q.el);
    const Element eminus = c + d + (eps * eps) * cross;
    const Element eplus = c + d - (eps * eps) * cross;
    return {certify_projection(eminus), certify_projection(eplus), c, d};
}

namespace detail {

inline void require_symmetries_and_orthogonal_images(
    const Projection& p, const std::vector<const Element*>& syms) {
    std::vector<Projection> images;
    images.push_back(p);
    for (size_t i = 0; i < syms.size(); ++i) {
        if (!is_symmetry(*syms[i]))
            fail(errc::precondition_violation,
                 "s" + std::to_string(i + 1) + " is not a symmetry");
        images.push_back(certify_projection(u_map(*syms[i], p.el)));
    }
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
            if (!orthogonal(images[i], images[j]))
                fail(errc::precondition_violation,
                     "images U_{s_i}(p) and p must be mutually orthogonal (clause " +
                         std::to_string(i) + "," + std::to_string(j) + ")");
}

inline void require_between(const Element& lo_minus_x, const char* clause, double tol = 1e-8) {
    if (min_eigenvalue_sa(lo_minus_x) < -tol)
        fail(errc::precondition_violation, std::string("violated: ") + clause);
}

} // namespace detail

// Orthogonal projection pair from three exchange symmetries: for
// 0 <= a, b <= p/2 the
// six-term expressions below are orthogonal projections with U_p(r) = a and
// U_p(q) = b. Evaluated entirely through Jordan operations.
inline std::pair<Projection, Projection> christensen_pair(const Projection& p, const Element& s1,
                                                          const Element& s2, const Element& s3,
                                                          const Element& a, const Element& b) {
    detail::require_envelope(p.el.desc, "christensen_pair");
    detail::require_symmetries_and_orthogonal_images(p, {&s1, &s2, &s3});
    detail::require_between(a, "a >= 0");
    detail::require_between(b, "b >= 0");
    detail::require_between(0.5 * p.el - a, "a <= p/2");
    detail::require_between(0.5 * p.el - b, "b <= p/2");

    const Element sqrt_a = sqrt_psd(a);
    const Element sqrt_b = sqrt_psd(b);
    const Element p2a = p.el - 2.0 * a;
    const Element p2b = p.el - 2.0 * b;
    const Element sqrt_p2a = sqrt_psd(p2a);
    const Element sqrt_p2b = sqrt_psd(p2b);

    const Element r = a + 2.0 * jordan_mul(a, s1) + u_map(s1, a) + u_map(s2, p2a) +
                      2.0 * u_bilinear(s2, sqrt_a, sqrt_p2a) +
                      2.0 * u_bilinear(s1, s2, sqrt_psd(jordan_mul(a, p2a)));
    const Element q = b - 2.0 * jordan_mul(b, s1) + u_map(s1, b) + u_map(s3, p2b) +
                      2.0 * u_bilinear(s3, sqrt_b, sqrt_p2b) -
                      2.0 * u_bilinear(s1, s3, sqrt_psd(jordan_mul(b, p2b)));
    return {certify_projection(r), certify_projection(q)};
}

// Five-symmetry variant: orthogonal projections rt, qt with U_p(rt) = c and
// U_p(qt) = d for any 0 <= c, d with c + d <= p. Computed in the envelope as
// rt = z^* z, qt = t^* t from partial isometries
//   z = c^{1/2} + (p - c)^{1/2} s4
//   t = d^{1/2} - d^{1/2} c^{1/2} (p - c)^{+1/2} s4 + (p - d - BB^*)^{1/2} s5
// where ^+ is the spectral pseudo-inverse. With c = d = 0 only the trailing
// terms survive: rt = U_{s4}(p), qt = U_{s5}(p).
inline std::pair<Projection, Projection> reversible_pair(const Projection& p, const Element& s1,
                                                         const Element& s2, const Element& s3,
                                                         const Element& s4, const Element& s5,
                                                         const Element& c, const Element& d) {
    detail::require_envelope(p.el.desc, "reversible_pair");
    detail::require_symmetries_and_orthogonal_images(p, {&s1, &s2, &s3, &s4, &s5});
    detail::require_between(c, "c >= 0");
    detail::require_between(d, "d >= 0");
    detail::require_between(p.el - c - d, "c + d <= p");

    const double pinv_cut = 1e-9;
    const Element sqrt_c = sqrt_psd(c);
    const Element sqrt_d = sqrt_psd(d);
    const Element pmc = p.el - c;
    const Element sqrt_pmc = sqrt_psd(pmc);
    const Element pinv_pmc = apply_spectral(
        pmc, [pinv_cut](double l) { return l > pinv_cut ? 1.0 / std::sqrt(l) : 0.0; });

    using detail::env_mul;
    const Element z = sqrt_c + env_mul(sqrt_pmc, s4);
    const Element bcoef = -1.0 * env_mul(env_mul(sqrt_d, sqrt_c), pinv_pmc);
    const Element rem = p.el - d - env_mul(bcoef, involution(bcoef));
    const Element t = sqrt_d + env_mul(bcoef, s4) + env_mul(sqrt_psd(rem), s5);

    const Element rt = env_mul(involution(z), z);
    const Element qt = env_mul(involution(t), t);
    return {certify_projection(rt), certify_projection(qt)};
}

} // namespace jg
