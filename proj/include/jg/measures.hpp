#pragma once

#include <functional>
#include <optional>

#include "jg/random.hpp"

namespace jg {

// trace pairing <a, b> = sum over summands of tau_s(a o b), unit weights
inline double trace_pairing(const Element& a, const Element& b) {
    const CentreValue t = normalized_trace(jordan_mul(a, b));
    double s = 0.0;
    for (double v : t.v) s += v;
    return s;
}

inline double total_trace_mass(const Element& x) {
    const CentreValue t = normalized_trace(x);
    double s = 0.0;
    for (double v : t.v) s += v;
    return s;
}

// A bounded finitely additive measure on the projection lattice: an
// evaluation oracle with a global bound, optionally carrying the linear
// witness (density) that induces it under the trace pairing.
struct Measure {
    AlgebraDescriptor desc;
    std::function<double(const Projection&)> evaluate;
    double bound = 0.0;
    std::optional<Element> witness;
    std::string name = "witness";

    double operator()(const Projection& p) const { return evaluate(p); }
};

inline Measure from_density(const Element& rho) {
    require_self_adjoint(rho);
    Measure mu;
    mu.desc = rho.desc;
    mu.witness = rho;
    const double pos = total_trace_mass(positive_part(rho));
    const double neg = total_trace_mass(negative_part(rho));
    mu.bound = std::max(pos, neg);
    Element density = rho;
    mu.evaluate = [density](const Projection& p) { return trace_pairing(density, p.el); };
    return mu;
}

namespace detail {

// classification of a rank-one projection of S2(C) against the two diagonal
// units; all projections of S2(C) are real symmetric
inline double kadison_value(const Projection& p, double tol = 1e-10) {
    const int r = p.rank[0];
    if (r == 0) return 0.0;
    if (r == 2) return 1.0;
    const CMat& m = p.el.mat(0);
    if (std::abs(m(0, 0).real() - 1.0) <= tol && std::abs(m(0, 1)) <= tol) return 1.0;
    if (std::abs(m(1, 1).real() - 1.0) <= tol && std::abs(m(0, 1)) <= tol) return 0.0;
    return 0.5;
}

} // namespace detail

// Kadison-style measure on P(S2(C)): 1 at the first diagonal unit, 0 at the
// second, 1/2 at every other rank-one projection. Finitely additive because
// complementary rank-one pairs always sum to 1; it admits no linear extension.
inline Measure kadison_s2() {
    Measure mu;
    mu.desc = AlgebraDescriptor{{symmetric_factor(2)}};
    mu.bound = 1.0;
    mu.name = "kadison_s2";
    mu.evaluate = [](const Projection& p) { return detail::kadison_value(p); };
    return mu;
}

// Extension of the Kadison measure through the embedded three-dimensional
// spin subfactor of SpinFactor(k): rank-one projections whose vector part
// leaves the distinguished 2-dimensional real subspace get 1/2.
inline Measure spin_counterexample(int k) {
    if (k < 2) fail(errc::dimension_too_small, "spin counterexample needs spin dimension >= 2");
    Measure mu;
    mu.desc = AlgebraDescriptor{{spin_factor(k)}};
    mu.bound = 1.0;
    mu.name = "spin_counterexample:" + std::to_string(k);
    const double tol = 1e-10;
    mu.evaluate = [tol](const Projection& p) {
        const int r = p.rank[0];
        if (r == 0) return 0.0;
        if (r == 2) return 1.0;
        const auto& sp = p.el.spin(0);
        for (size_t i = 2; i < sp.u.size(); ++i)
            if (std::abs(sp.u[i]) > tol) return 0.5;  // outside the embedded copy
        const double u0 = sp.u[0].real(), u1 = sp.u[1].real();
        if (std::abs(u0 - 0.5) <= tol && std::abs(u1) <= tol) return 1.0;
        if (std::abs(u0 + 0.5) <= tol && std::abs(u1) <= tol) return 0.0;
        return 0.5;
    };
    return mu;
}

// The quasi-linear extension: on self-adjoint x it is sum_i lambda_i mu(p_i)
// over the spectral resolution; general x splits into real and imaginary
// self-adjoint parts. Linear on every singly generated subalgebra.
inline cplx quasi_linear_extend(const Measure& mu, const Element& x) {
    if (!(x.desc == mu.desc)) fail(errc::descriptor_mismatch, "measure/element algebra mismatch");
    auto real_part_value = [&mu](const Element& h) {
        double v = 0.0;
        for (const auto& [lam, p] : spectral_resolution(h).pairs) v += lam * mu.evaluate(p);
        return v;
    };
    if (is_self_adjoint(x)) return cplx(real_part_value(x), 0.0);
    const Element h = 0.5 * (x + involution(x));
    const Element k = cplx(0.0, -0.5) * (x - involution(x));
    return cplx(real_part_value(h), real_part_value(k));
}

inline double quasi_linear_sa(const Measure& mu, const Element& x) {
    return quasi_linear_extend(mu, x).real();
}

struct SupValue {
    double value;
    bool estimate;  // true when obtained by sampling rather than a witness
};

// alpha_mu(p) = sup { mu(q) : q <= p }. With a witness the supremum is the
// positive trace mass of the compression of the density to p; without one it
// is a sampled lower-bound estimate, flagged as such.
inline SupValue alpha(const Measure& mu, const Projection& p, Rng* rng = nullptr,
                      int samples = 200) {
    if (mu.witness) {
        const Element comp = u_map(p.el, *mu.witness);
        return {total_trace_mass(positive_part(comp)), false};
    }
    double best = 0.0;  // q = 0 is always available
    if (rng) {
        for (int t = 0; t < samples; ++t)
            best = std::max(best, mu.evaluate(random_subprojection(p, *rng)));
    }
    best = std::max(best, mu.evaluate(p));
    return {best, true};
}

// V_mu(p) = sup { |mu(q)| : q <= p }
inline SupValue variation(const Measure& mu, const Projection& p, Rng* rng = nullptr,
                          int samples = 200) {
    if (mu.witness) {
        const Element comp = u_map(p.el, *mu.witness);
        const double pos = total_trace_mass(positive_part(comp));
        const double neg = total_trace_mass(negative_part(comp));
        return {std::max(pos, neg), false};
    }
    double best = 0.0;
    if (rng) {
        for (int t = 0; t < samples; ++t)
            best = std::max(best, std::abs(mu.evaluate(random_subprojection(p, *rng))));
    }
    best = std::max(best, std::abs(mu.evaluate(p)));
    return {best, true};
}

struct SymmetrySupReport {
    double sampled_sup;        // max of mu-bar(2p - 1) over sampled projections
    double predicted;          // 2 alpha_mu(1) - mu(1)
    double variation_bound;    // 2 V_mu(1)
};

inline SymmetrySupReport symmetry_sup_check(const Measure& mu, int trials, Rng& rng) {
    const Projection one = unit_projection(mu.desc);
    const double mu1 = mu.evaluate(one);
    double sup = 2.0 * mu.evaluate(zero_projection(mu.desc)) - mu1;  // s = -1
    sup = std::max(sup, 2.0 * mu.evaluate(one) - mu1);               // s = +1
    for (int t = 0; t < trials; ++t) {
        const Projection p = random_projection(mu.desc, rng);
        sup = std::max(sup, 2.0 * mu.evaluate(p) - mu1);
    }
    return {sup, 2.0 * alpha(mu, one, &rng, trials).value - mu1,
            2.0 * variation(mu, one, &rng, trials).value};
}

// self-adjoint spanning set with diagonal Gram under the trace pairing
inline std::vector<Element> sa_basis(const AlgebraDescriptor& d) {
    std::vector<Element> basis;
    for (size_t s = 0; s < d.summands.size(); ++s) {
        const auto& fk = d.summands[s];
        switch (fk.kind) {
            case Factor::matrix:
            case Factor::symmetric: {
                const int n = fk.dim;
                for (int i = 0; i < n; ++i) {
                    CMat m(n);
                    m(i, i) = 1.0;
                    basis.push_back(embed(d, s, std::move(m)));
                }
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        CMat m(n);
                        m(i, j) = 1.0;
                        m(j, i) = 1.0;
                        basis.push_back(embed(d, s, std::move(m)));
                        if (fk.kind == Factor::matrix) {
                            CMat im(n);
                            im(i, j) = cplx(0.0, 1.0);
                            im(j, i) = cplx(0.0, -1.0);
                            basis.push_back(embed(d, s, std::move(im)));
                        }
                    }
                break;
            }
            case Factor::spin: {
                basis.push_back(embed(d, s, payload_unit(fk)));
                for (int i = 0; i < fk.dim; ++i) {
                    SpinElem e{cplx(0.0), std::vector<cplx>(fk.dim, cplx(0.0))};
                    e.u[i] = 1.0;
                    basis.push_back(embed(d, s, std::move(e)));
                }
                break;
            }
            case Factor::albert: {
                for (int i = 0; i < 3; ++i)
                    basis.push_back(embed(d, s, AlbertElem{AlbertReal::diag_unit(i), AlbertReal{}}));
                for (int slot = 0; slot < 3; ++slot)
                    for (int k = 0; k < 8; ++k) {
                        AlbertReal r;
                        r.x[slot] = Octonion::unit(k);
                        basis.push_back(embed(d, s, AlbertElem{r, AlbertReal{}}));
                    }
                break;
            }
        }
    }
    return basis;
}

struct FitResult {
    Element density;      // rho-hat
    double max_residual;  // max |mu(p) - <rho-hat, p>| over validation projections
};

// Gleason-style linear reconstruction: evaluates the quasi-linear extension
// on the spanning set, recovers the density by dual-basis inversion of the
// trace pairing, then validates on random projections. A large residual is
// the expected outcome for type-I2 counterexample measures.
inline FitResult fit_linear_functional(const Measure& mu, int validation_trials, Rng& rng) {
    Element rho = zero(mu.desc);
    for (const auto& b : sa_basis(mu.desc)) {
        const double g = trace_pairing(b, b);
        const double v = quasi_linear_sa(mu, b);
        rho = rho + (v / g) * b;
    }
    double worst = 0.0;
    for (int t = 0; t < validation_trials; ++t) {
        const Projection p = random_projection(mu.desc, rng);
        worst = std::max(worst, std::abs(mu.evaluate(p) - trace_pairing(rho, p.el)));
    }
    return {std::move(rho), worst};
}

namespace detail {

// per-summand diagonal-axis projections: E_ii on envelope summands, the two
// distinguished rank-ones on spin summands, the diagonal frame on Albert
inline std::vector<Projection> axis_projections(const AlgebraDescriptor& d) {
    std::vector<Projection> out;
    for (size_t s = 0; s < d.summands.size(); ++s) {
        const auto& fk = d.summands[s];
        switch (fk.kind) {
            case Factor::matrix:
            case Factor::symmetric:
                for (int i = 0; i < fk.dim; ++i) {
                    CMat m(fk.dim);
                    m(i, i) = 1.0;
                    out.push_back(certify_projection(embed(d, s, std::move(m))));
                }
                break;
            case Factor::spin:
                for (int sign : {+1, -1}) {
                    SpinElem e{cplx(0.5), std::vector<cplx>(fk.dim, cplx(0.0))};
                    e.u[0] = 0.5 * sign;
                    out.push_back(certify_projection(embed(d, s, std::move(e))));
                }
                break;
            case Factor::albert:
                for (int i = 0; i < 3; ++i)
                    out.push_back(certify_projection(
                        embed(d, s, AlbertElem{AlbertReal::diag_unit(i), AlbertReal{}})));
                break;
        }
    }
    return out;
}

} // namespace detail

// max over sampled pairs (a, b) of positives with a + b <= 1 of
// |mu-bar(a+b) - mu-bar(a) - mu-bar(b)|. The sampling mixes generic Gaussian
// positives with axis-vs-generic projection pairs (a = axis/2, b = random/2),
// which is where the type-I2 defect concentrates.
inline double additivity_residual(const Measure& mu, int trials, Rng& rng) {
    double worst = 0.0;
    auto score = [&](const Element& a, const Element& b) {
        const double v = std::abs(quasi_linear_sa(mu, a + b) - quasi_linear_sa(mu, a) -
                                  quasi_linear_sa(mu, b));
        worst = std::max(worst, v);
    };
    const auto axes = detail::axis_projections(mu.desc);
    for (int t = 0; t < trials; ++t) {
        const double split = rng.uniform();
        const Element a = random_positive(mu.desc, rng, 0.0, split);
        const Element b = random_positive(mu.desc, rng, 0.0, 1.0 - split);
        score(a, b);
        if (!axes.empty()) {
            const Projection r = random_projection(mu.desc, rng);
            const Projection& ax = axes[static_cast<size_t>(t) % axes.size()];
            score(0.5 * ax.el, 0.5 * r.el);
        }
    }
    return worst;
}

struct QuasiLinearReport {
    double additivity_residual;
    double symmetry_sup;
    double alpha_one;
    double mu_one;
    double fit_residual;
    Element fitted_witness;
};

inline QuasiLinearReport quasi_linear_report(const Measure& mu, int trials, Rng& rng) {
    QuasiLinearReport rep{0.0, 0.0, 0.0, 0.0, 0.0, zero(mu.desc)};
    rep.additivity_residual = additivity_residual(mu, trials, rng);
    const auto sym = symmetry_sup_check(mu, trials, rng);
    rep.symmetry_sup = sym.sampled_sup;
    rep.alpha_one = alpha(mu, unit_projection(mu.desc), &rng, trials).value;
    rep.mu_one = mu.evaluate(unit_projection(mu.desc));
    auto fit = fit_linear_functional(mu, std::max(trials, 50), rng);
    rep.fit_residual = fit.max_residual;
    rep.fitted_witness = std::move(fit.density);
    return rep;
}

} // namespace jg
