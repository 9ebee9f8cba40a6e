#pragma once

#include <cstdint>
#include <random>

#include "jg/comparison.hpp"

namespace jg {

// Seeded generator. Gaussian deviates are produced by a hand-rolled
// Box-Muller transform so that runs are reproducible bit-for-bit from the
// seed alone, independent of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {
        return (eng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa in [0,1)
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    cplx cgaussian() { return cplx(gaussian(), gaussian()); }

    // integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (hi - lo + 1.0));
    }

    uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline CMat ginibre(int n, Rng& rng, bool real_entries) {
    CMat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = real_entries ? cplx(rng.gaussian(), 0.0) : rng.cgaussian();
    return m;
}

// Random unitary (orthogonal, for real_entries) via Gram-Schmidt QR of a
// Ginibre matrix. Haar up to column phases, which conjugation never sees.
inline CMat haar_unitary(int n, Rng& rng, bool real_entries = false) {
    CMat g = ginibre(n, rng, real_entries);
    CMat q(n);
    for (int c = 0; c < n; ++c) {
        std::vector<cplx> v(n);
        for (int r = 0; r < n; ++r) v[r] = g(r, c);
        for (int prev = 0; prev < c; ++prev) {
            std::vector<cplx> u(n);
            for (int r = 0; r < n; ++r) u[r] = q(r, prev);
            const cplx proj = dot(u, v);
            for (int r = 0; r < n; ++r) v[r] -= proj * u[r];
        }
        double nv = 0.0;
        for (const auto& x : v) nv += std::norm(x);
        nv = std::sqrt(nv);
        if (nv < 1e-12) return haar_unitary(n, rng, real_entries);  // essentially never
        for (int r = 0; r < n; ++r) q(r, c) = v[r] / nv;
    }
    return q;
}

// general (not self-adjoint unless asked) random element, coordinate Gaussian
inline Element random_element(const AlgebraDescriptor& d, Rng& rng, bool self_adjoint) {
    Element e = zero(d);
    for (size_t s = 0; s < e.parts.size(); ++s) {
        const auto& fk = d.summands[s];
        switch (fk.kind) {
            case Factor::matrix: {
                CMat m = ginibre(fk.dim, rng, false);
                e.parts[s] = self_adjoint ? 0.5 * (m + m.adjoint()) : m;
                break;
            }
            case Factor::symmetric: {
                CMat m = ginibre(fk.dim, rng, self_adjoint);
                e.parts[s] = 0.5 * (m + m.transpose());
                break;
            }
            case Factor::spin: {
                SpinElem sp{self_adjoint ? cplx(rng.gaussian(), 0.0) : rng.cgaussian(),
                            std::vector<cplx>(fk.dim)};
                for (auto& v : sp.u) v = self_adjoint ? cplx(rng.gaussian(), 0.0) : rng.cgaussian();
                e.parts[s] = std::move(sp);
                break;
            }
            case Factor::albert: {
                AlbertElem al;
                for (int i = 0; i < 3; ++i) {
                    al.re.a[i] = rng.gaussian();
                    for (int k = 0; k < 8; ++k) al.re.x[i][k] = rng.gaussian();
                    if (!self_adjoint) {
                        al.im.a[i] = rng.gaussian();
                        for (int k = 0; k < 8; ++k) al.im.x[i][k] = rng.gaussian();
                    }
                }
                e.parts[s] = std::move(al);
                break;
            }
        }
    }
    return e;
}

namespace detail {

inline Payload random_projection_payload(const FactorKind& fk, int rank, Rng& rng) {
    switch (fk.kind) {
        case Factor::matrix:
        case Factor::symmetric: {
            const bool real = fk.kind == Factor::symmetric;
            const CMat u = haar_unitary(fk.dim, rng, real);
            CMat p(fk.dim);
            for (int c = 0; c < rank; ++c) {
                std::vector<cplx> v(fk.dim);
                for (int r = 0; r < fk.dim; ++r) v[r] = u(r, c);
                p += outer(v, v);
            }
            return p;
        }
        case Factor::spin: {
            if (rank == 0) return payload_zero(fk);
            if (rank == 2) return payload_unit(fk);
            SpinElem sp{cplx(0.5), std::vector<cplx>(fk.dim)};
            double nv = 0.0;
            std::vector<double> dir(fk.dim);
            for (auto& v : dir) {
                v = rng.gaussian();
                nv += v * v;
            }
            nv = std::sqrt(nv);
            for (int i = 0; i < fk.dim; ++i) sp.u[i] = 0.5 * dir[i] / nv;
            return sp;
        }
        case Factor::albert: {
            if (rank == 0) return payload_zero(fk);
            if (rank == 3) return payload_unit(fk);
            AlbertElem gen;
            for (int i = 0; i < 3; ++i) {
                gen.re.a[i] = rng.gaussian();
                for (int k = 0; k < 8; ++k) gen.re.x[i][k] = rng.gaussian();
            }
            const auto atoms = albert_spectral(gen.re);
            AlbertReal acc;
            int taken = 0;
            for (const auto& a : atoms) {
                if (a.multiplicity != 1) continue;  // degenerate draw; extremely unlikely
                if (taken == rank) break;
                acc += a.projection;
                ++taken;
            }
            if (taken != rank) return random_projection_payload(fk, rank, rng);
            return AlbertElem{acc, AlbertReal{}};
        }
    }
    fail(errc::parse_error, "bad factor");
}

inline int max_rank(const FactorKind& fk) {
    switch (fk.kind) {
        case Factor::matrix:
        case Factor::symmetric: return fk.dim;
        case Factor::spin: return 2;
        case Factor::albert: return 3;
    }
    return 0;
}

} // namespace detail

// Haar-conjugated projection with the given per-summand ranks (random ranks
// when rank < 0 is passed).
inline Projection random_projection(const AlgebraDescriptor& d, Rng& rng,
                                    const std::vector<int>* ranks = nullptr) {
    Element e = zero(d);
    for (size_t s = 0; s < e.parts.size(); ++s) {
        const int mx = detail::max_rank(d.summands[s]);
        const int r = ranks ? (*ranks)[s] : rng.uniform_int(0, mx);
        e.parts[s] = detail::random_projection_payload(d.summands[s], r, rng);
    }
    return certify_projection(std::move(e));
}

// random projection of rank k under p, built in p's range basis
inline Projection random_subprojection(const Projection& p, Rng& rng, int want_rank = -1) {
    Element e = zero(p.el.desc);
    for (size_t s = 0; s < e.parts.size(); ++s) {
        const auto& fk = p.el.desc.summands[s];
        const int r = p.rank[s];
        const int k = want_rank >= 0 ? std::min(want_rank, r) : rng.uniform_int(0, r);
        if (k == 0) continue;
        if (k == r) {
            e.parts[s] = p.el.parts[s];
            continue;
        }
        switch (fk.kind) {
            case Factor::matrix:
            case Factor::symmetric: {
                const bool real = fk.kind == Factor::symmetric;
                const auto basis = detail::range_basis(p.el.mat(s));
                const CMat mix = haar_unitary(r, rng, real);
                CMat m(fk.dim);
                for (int c = 0; c < k; ++c) {
                    std::vector<cplx> v(fk.dim, cplx(0.0));
                    for (int i = 0; i < r; ++i)
                        for (int t = 0; t < fk.dim; ++t) v[t] += mix(i, c) * basis[i][t];
                    m += outer(v, v);
                }
                e.parts[s] = std::move(m);
                break;
            }
            case Factor::spin: {
                // k = 1 under the unit: any rank-one
                e.parts[s] = detail::random_projection_payload(fk, 1, rng);
                break;
            }
            case Factor::albert: {
                Element probe = zero(p.el.desc);
                AlbertElem gen;
                for (int i = 0; i < 3; ++i) {
                    gen.re.a[i] = rng.gaussian();
                    for (int kk = 0; kk < 8; ++kk) gen.re.x[i][kk] = rng.gaussian();
                }
                probe.parts[s] = std::move(gen);
                const Element comp = u_map(embed(p.el.desc, s, p.el.parts[s]), probe);
                AlbertReal acc;
                int taken = 0;
                for (const auto& a : albert_spectral(comp.albert(s).re, 1e-9))
                    if (std::abs(a.value) > 1e-8 && a.multiplicity == 1 && taken < k) {
                        acc += a.projection;
                        ++taken;
                    }
                if (taken != k)
                    fail(errc::precondition_violation, "degenerate Albert subprojection draw");
                e.parts[s] = AlbertElem{acc, AlbertReal{}};
                break;
            }
        }
    }
    return certify_projection(std::move(e));
}

// pair (f, g) of equal-rank projections with 0 < ||f-g|| <= delta_max,
// produced by conjugating f with a small random rotation
inline std::pair<Projection, Projection> random_close_pair(const AlgebraDescriptor& d, Rng& rng,
                                                           double delta_max,
                                                           const std::vector<int>* ranks = nullptr) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Projection f = random_projection(d, rng, ranks);
        if (f.total_rank() == 0) continue;
        double eps = delta_max * (0.1 + 0.9 * rng.uniform());
        for (int shrink = 0; shrink < 40; ++shrink) {
            Element ge = zero(d);
            for (size_t s = 0; s < ge.parts.size(); ++s) {
                const auto& fk = d.summands[s];
                if (fk.kind == Factor::matrix || fk.kind == Factor::symmetric) {
                    const bool real = fk.kind == Factor::symmetric;
                    CMat u(fk.dim);
                    if (real) {
                        // exp(eps K) for random antisymmetric K, by Taylor series
                        CMat k = ginibre(fk.dim, rng, true);
                        CMat anti = 0.5 * (k - k.transpose());
                        const double an = std::max(1.0, anti.frobenius());
                        anti *= 1.0 / an;
                        CMat rot = CMat::identity(fk.dim);
                        CMat term = CMat::identity(fk.dim);
                        for (int it = 1; it <= 24; ++it) {
                            term = (eps / it) * (term * anti);
                            rot += term;
                        }
                        u = rot;
                    } else {
                        // exp(i eps h) through the eigendecomposition
                        CMat h = ginibre(fk.dim, rng, false);
                        h = 0.5 * (h + h.adjoint());
                        const double hn = hermitian_norm(h);
                        if (hn > 0) h *= 1.0 / hn;
                        const auto eig = hermitian_eig(h);
                        for (int c = 0; c < fk.dim; ++c) {
                            std::vector<cplx> v(fk.dim);
                            for (int r = 0; r < fk.dim; ++r) v[r] = eig.vectors(r, c);
                            u += std::exp(cplx(0.0, eps * eig.values[c])) * outer(v, v);
                        }
                    }
                    ge.parts[s] = (u * f.el.mat(s)) * u.adjoint();
                } else if (fk.kind == Factor::spin) {
                    const auto& sp = f.el.spin(s);
                    if (f.rank[s] != 1) {
                        ge.parts[s] = f.el.parts[s];
                    } else {
                        std::vector<double> u(fk.dim), w(fk.dim);
                        double nw = 0.0;
                        for (int i = 0; i < fk.dim; ++i) u[i] = 2.0 * sp.u[i].real();
                        for (auto& v : w) v = rng.gaussian();
                        double uw = 0.0;
                        for (int i = 0; i < fk.dim; ++i) uw += u[i] * w[i];
                        for (int i = 0; i < fk.dim; ++i) w[i] -= uw * u[i];
                        for (double v : w) nw += v * v;
                        nw = std::sqrt(nw);
                        SpinElem out{cplx(0.5), std::vector<cplx>(fk.dim)};
                        if (nw < 1e-12) {
                            ge.parts[s] = f.el.parts[s];
                        } else {
                            const double ang = eps;
                            for (int i = 0; i < fk.dim; ++i)
                                out.u[i] = 0.5 * (std::cos(ang) * u[i] + std::sin(ang) * w[i] / nw);
                            ge.parts[s] = std::move(out);
                        }
                    }
                } else {
                    ge.parts[s] = f.el.parts[s];  // albert component kept fixed
                }
            }
            Projection g = certify_projection(std::move(ge));
            const double dist = detail::opnorm_sa_unchecked(f.el - g.el);
            if (dist > 1e-12 && dist <= delta_max) return {f, g};
            eps *= 0.6;
        }
    }
    fail(errc::precondition_violation, "failed to sample a close projection pair");
}

// random positive element with eigenvalue range exactly [lo, hi]
inline Element random_positive(const AlgebraDescriptor& d, Rng& rng, double lo, double hi) {
    const Element x = random_element(d, rng, true);
    const double mn = min_eigenvalue_sa(x);
    const double mx = max_eigenvalue_sa(x);
    const double span = std::max(mx - mn, 1e-12);
    return (hi - lo) / span * (x - mn * unit(d)) + lo * unit(d);
}

} // namespace jg
