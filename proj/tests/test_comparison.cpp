#include <catch2/catch_amalgamated.hpp>

#include "jg/jg.hpp"

using namespace jg;

namespace {

Rng& test_rng() {
    static Rng rng(0x5EED);
    return rng;
}

Element swap_symmetry(const AlgebraDescriptor& d, int i, int j, int n) {
    Element s = zero(d);
    CMat& m = s.mat(0);
    m(i, j) = 1.0;
    m(j, i) = 1.0;
    for (int k = 0; k < n; ++k)
        if (k != i && k != j) m(k, k) = 1.0;
    return s;
}

} // namespace

TEST_CASE("exchange symmetry") {
    Rng& rng = test_rng();
    const auto m4 = AlgebraDescriptor::parse("m4");

    // f = g: s = 2f - 1 fixes f
    const Projection f0 = random_projection(m4, rng);
    const Element s0 = exchange_symmetry(f0, f0);
    CHECK(dist_sa(u_map(s0, f0.el), f0.el) < 1e-12);
    CHECK(dist_sa(s0, 2.0 * f0.el - unit(m4)) < 1e-12);

    // the S2 model pair at theta = 0.3
    auto [fm, gm] = isoclinic_model(0.3);
    const Element sm = exchange_symmetry(fm, gm);
    CHECK(dist_sa(u_map(sm, fm.el), gm.el) < 1e-9);

    double worst_map = 0, worst_bound = 0, worst_sym = 0;
    for (int t = 0; t < 200; ++t) {
        auto [f, g] = random_close_pair(m4, rng, 0.9);
        const Element s = exchange_symmetry(f, g);
        worst_sym = std::max(worst_sym, dist_sa(jordan_mul(s, s), unit(m4)));
        worst_map = std::max(worst_map, dist_sa(u_map(s, f.el), g.el));
        const double fg = dist_sa(f.el, g.el);
        for (int j = 0; j < 5; ++j) {
            const Projection p = random_subprojection(f, rng);
            worst_bound = std::max(worst_bound, dist_sa(p.el, u_map(s, p.el)) -
                                                    std::sqrt(2.0) * std::sqrt(fg));
        }
    }
    CHECK(worst_sym < 1e-8);
    CHECK(worst_map < 1e-8);
    CHECK(worst_bound < 1e-6);

    // too far apart: orthogonal rank-ones are at distance 1
    Element a = zero(m4), b = zero(m4);
    a.mat(0)(0, 0) = 1.0;
    b.mat(0)(1, 1) = 1.0;
    CHECK_THROWS_AS(exchange_symmetry(certify_projection(a), certify_projection(b)), error);
}

TEST_CASE("equivalence by rank") {
    Rng& rng = test_rng();
    const auto m3 = AlgebraDescriptor::parse("m3");
    const Projection p = random_projection(m3, rng);
    CHECK(equivalent(p, p));
    std::vector<int> r1{1}, r2{2};
    CHECK_FALSE(equivalent(random_projection(m3, rng, &r1), random_projection(m3, rng, &r2)));
    // unitary conjugation preserves equivalence
    for (int t = 0; t < 30; ++t) {
        const Projection q = random_projection(m3, rng);
        const CMat u = haar_unitary(3, rng);
        Element conj = zero(m3);
        conj.parts[0] = (u * q.el.mat(0)) * u.adjoint();
        CHECK(equivalent(q, certify_projection(std::move(conj))));
    }
}

TEST_CASE("halving") {
    const auto m3 = AlgebraDescriptor::parse("m3");
    Element p2 = zero(m3);
    p2.mat(0)(0, 0) = 1.0;
    p2.mat(0)(1, 1) = 1.0;
    const auto h = halve(certify_projection(p2));
    CHECK(h.half1.el.mat(0)(0, 0).real() == Catch::Approx(1.0));
    CHECK(h.half2.el.mat(0)(1, 1).real() == Catch::Approx(1.0));
    CHECK(h.abelian.total_rank() == 0);
    // symmetry is E12 + E21 + E33
    CHECK(h.symmetry.mat(0)(0, 1).real() == Catch::Approx(1.0));
    CHECK(h.symmetry.mat(0)(2, 2).real() == Catch::Approx(1.0));

    Rng& rng = test_rng();
    std::vector<int> r1{1};
    const Projection rank1 = random_projection(m3, rng, &r1);
    const auto h1 = halve(rank1);
    CHECK(h1.half1.total_rank() == 0);
    CHECK(h1.half2.total_rank() == 0);
    CHECK(dist_sa(h1.abelian.el, rank1.el) < 1e-12);

    const auto m4 = AlgebraDescriptor::parse("m4");
    std::vector<int> r3{3};
    const auto h3 = halve(random_projection(m4, rng, &r3));
    CHECK(h3.half1.rank[0] == 1);
    CHECK(h3.half2.rank[0] == 1);
    CHECK(h3.abelian.rank[0] == 1);

    for (const char* name : {"m4", "s5"}) {
        const auto d = AlgebraDescriptor::parse(name);
        for (int t = 0; t < 30; ++t) {
            std::vector<int> rk{1 + rng.uniform_int(0, d.summands[0].dim - 1)};
            const Projection p = random_projection(d, rng, &rk);
            const auto r = halve(p);
            CHECK(dist_sa(r.half1.el + r.half2.el + r.abelian.el, p.el) < 1e-12);
            CHECK(orthogonal(r.half1, r.half2));
            CHECK(orthogonal(r.half1, r.abelian));
            CHECK(orthogonal(r.half2, r.abelian));
            CHECK(dist_sa(u_map(r.symmetry, r.half1.el), r.half2.el) < 1e-12);
            CHECK(equivalent(r.half1, r.half2));
            CHECK(r.abelian.rank[0] <= 1);
            CHECK(detail::is_symmetry(r.symmetry));
        }
    }
    CHECK_THROWS_AS(halve(zero_projection(m3)), error);
    const auto spin = AlgebraDescriptor::parse("spin4");
    CHECK_THROWS_AS(halve(unit_projection(spin)), error);
}

TEST_CASE("isoclinic model pair") {
    auto [f0, h0] = isoclinic_model(0.0);
    CHECK(dist_sa(f0.el, h0.el) == 0.0);

    auto [f1, h1] = isoclinic_model(M_PI / 4.0);
    CHECK(h1.el.mat(0)(0, 0).real() == Catch::Approx(0.5));
    CHECK(h1.el.mat(0)(0, 1).real() == Catch::Approx(0.5));
    CHECK(dist_sa(f1.el, h1.el) == Catch::Approx(std::sqrt(2.0) / 2.0));

    auto [f, h] = isoclinic_model(0.3);
    const double c2 = std::cos(0.3) * std::cos(0.3);
    CHECK(dist_sa(u_map(f.el, h.el), c2 * f.el) < 1e-12);
    CHECK(dist_sa(u_map(h.el, f.el), c2 * h.el) < 1e-12);
    CHECK(std::abs(dist_sa(f.el, h.el) - std::sin(0.3)) < 1e-12);

    CHECK_THROWS_AS(isoclinic_model(-0.1), error);
    CHECK_THROWS_AS(isoclinic_model(M_PI / 2.0), error);
}

TEST_CASE("isoclinic midpoint") {
    Rng& rng = test_rng();
    const auto m4 = AlgebraDescriptor::parse("m4");

    // f = g: h = f, theta = 0
    std::vector<int> r1{1};
    const Projection ff = random_projection(m4, rng, &r1);
    const Projection ee = random_subprojection(complement(ff), rng, 1);
    CHECK(dist_sa(isoclinic_mid(ff, ff, ee).el, ff.el) < 1e-10);

    // the theta = 0.2 model pair embedded into M4 with e = E33
    const double th0 = 0.2;
    Element fe = zero(m4), ge = zero(m4), e3 = zero(m4);
    fe.mat(0)(0, 0) = 1.0;
    ge.mat(0)(0, 0) = std::cos(th0) * std::cos(th0);
    ge.mat(0)(0, 1) = std::cos(th0) * std::sin(th0);
    ge.mat(0)(1, 0) = ge.mat(0)(0, 1);
    ge.mat(0)(1, 1) = std::sin(th0) * std::sin(th0);
    e3.mat(0)(2, 2) = 1.0;
    const Projection f = certify_projection(fe), g = certify_projection(ge),
                     e = certify_projection(e3);
    const Projection h = isoclinic_mid(f, g, e);
    const double theta = 0.5 * std::asin(std::sin(th0));
    const double c2 = std::cos(theta) * std::cos(theta);
    CHECK(dist_sa(u_map(f.el, h.el), c2 * f.el) < 1e-7);
    CHECK(dist_sa(u_map(g.el, h.el), c2 * g.el) < 1e-7);
    CHECK(dist_sa(f.el, h.el) <= dist_sa(f.el, g.el) + 1e-7);
    CHECK(dist_sa(g.el, h.el) <= dist_sa(f.el, g.el) + 1e-7);

    // random close pairs in M5
    const auto m5 = AlgebraDescriptor::parse("m5");
    double worst_u = 0, worst_n = 0, worst_iso = 0;
    for (int t = 0; t < 100; ++t) {
        auto [f2, g2] = random_close_pair(m5, rng, 0.8, &r1);
        const Projection room = complement(join(f2, g2));
        const Projection e2 = random_subprojection(room, rng, 1);
        const Projection h2 = isoclinic_mid(f2, g2, e2);
        const double th =
            0.5 * std::asin(std::min(1.0, std::sqrt(operator_norm_sa(
                                              u_map(f2.el, unit(m5) - g2.el)))));
        const double cc = std::cos(th) * std::cos(th);
        worst_u = std::max({worst_u, dist_sa(u_map(f2.el, h2.el), cc * f2.el),
                            dist_sa(u_map(g2.el, h2.el), cc * g2.el)});
        const double fg = dist_sa(f2.el, g2.el);
        worst_n = std::max({worst_n, dist_sa(f2.el, h2.el) - fg, dist_sa(g2.el, h2.el) - fg});
        const CMat prod = f2.el.mat(0) * h2.el.mat(0);
        for (double l : hermitian_eig(prod.adjoint() * prod).values)
            if (l > 1e-8) worst_iso = std::max(worst_iso, std::abs(std::sqrt(l) - std::cos(th)));
    }
    CHECK(worst_u < 1e-7);
    CHECK(worst_n < 1e-7);
    CHECK(worst_iso < 1e-7);

    // rejects inputs without spare room
    const Projection bad_e = random_projection(m4, rng, &r1);
    if (!orthogonal(bad_e, f) || !orthogonal(bad_e, g))
        CHECK_THROWS_AS(isoclinic_mid(f, g, bad_e), error);
    std::vector<int> r2{2};
    CHECK_THROWS_AS(isoclinic_mid(f, g, random_projection(m4, rng, &r2)), error);
}

TEST_CASE("e_pm construction") {
    Rng& rng = test_rng();
    const auto m6 = AlgebraDescriptor::parse("m6");

    // e = p forces e_+ = e_- = p, c = p, d = 0
    std::vector<int> r2{2};
    const Projection p0 = random_projection(m6, rng, &r2);
    const Projection q0 = random_subprojection(complement(p0), rng, 2);
    const auto triv = e_pm_construct(p0, q0, p0, 0.2);
    CHECK(dist_sa(triv.e_minus.el, p0.el) < 1e-10);
    CHECK(dist_sa(triv.e_plus.el, p0.el) < 1e-10);
    CHECK(dist_sa(triv.c, p0.el) < 1e-10);
    CHECK(max_abs(triv.d) < 1e-10);

    // e <= q: same degenerate outcome
    const Projection esub = random_subprojection(q0, rng, 1);
    const auto triv2 = e_pm_construct(p0, q0, esub, 0.3);
    CHECK(dist_sa(triv2.e_minus.el, p0.el) < 1e-10);
    CHECK(max_abs(triv2.d) < 1e-10);

    double worst = 0, worst_id = 0;
    for (int t = 0; t < 100; ++t) {
        const double eps = 0.2;
        const double e4 = eps * eps * eps * eps;
        std::vector<int> rkp{1 + rng.uniform_int(0, 2)};
        const Projection p = random_projection(m6, rng, &rkp);
        const Projection cmp = complement(p);
        const Projection q = random_subprojection(cmp, rng, rng.uniform_int(1, 3));
        const Projection pq = certify_projection(p.el + q.el);
        const Projection e = random_subprojection(pq, rng, rng.uniform_int(1, pq.total_rank()));
        const auto r = e_pm_construct(p, q, e, eps);
        CHECK(leq(r.e_minus, pq));
        CHECK(leq(r.e_plus, pq));
        CHECK(equivalent(r.e_minus, p));
        CHECK(equivalent(r.e_plus, p));
        worst = std::max({worst, -min_eigenvalue_sa(p.el - r.c),
                          -min_eigenvalue_sa(0.5 * e4 * p.el - (p.el - r.c)),
                          -min_eigenvalue_sa(r.d), -min_eigenvalue_sa(0.5 * e4 * q.el - r.d)});
        const Element cross = 2.0 * triple_product(p.el, e.el, q.el);
        worst_id = std::max(worst_id, dist_sa(r.e_minus.el - r.c - r.d, (eps * eps) * cross));
        worst_id = std::max(worst_id, dist_sa(r.e_plus.el - r.c - r.d, -(eps * eps) * cross));
    }
    CHECK(worst < 1e-8);
    CHECK(worst_id < 1e-8);

    // error paths
    std::vector<int> r3{3};
    const Projection pa = random_projection(m6, rng, &r3);
    const Projection pb = random_projection(m6, rng, &r3);
    if (!orthogonal(pa, pb)) CHECK_THROWS_AS(e_pm_construct(pa, pb, pa, 0.2), error);
    const Projection qa = random_subprojection(complement(pa), rng, 2);
    CHECK_THROWS_AS(e_pm_construct(pa, qa, unit_projection(m6), 0.2), error);
    CHECK_THROWS_AS(e_pm_construct(pa, qa, pa, 0.7), error);
}

TEST_CASE("christensen pair") {
    Rng& rng = test_rng();
    const auto m4 = AlgebraDescriptor::parse("m4");
    Element pe = zero(m4);
    pe.mat(0)(0, 0) = 1.0;
    const Projection p = certify_projection(pe);
    const Element s1 = swap_symmetry(m4, 0, 1, 4);
    const Element s2 = swap_symmetry(m4, 0, 2, 4);
    const Element s3 = swap_symmetry(m4, 0, 3, 4);

    // a = b = 0: r = q2, q = q3
    auto [r0, q0] = christensen_pair(p, s1, s2, s3, zero(m4), zero(m4));
    CHECK(dist_sa(r0.el, u_map(s2, pe)) < 1e-12);
    CHECK(dist_sa(q0.el, u_map(s3, pe)) < 1e-12);

    // a = p/2, b = 0
    auto [rh, qh] = christensen_pair(p, s1, s2, s3, 0.5 * pe, zero(m4));
    CHECK(dist_sa(u_map(p.el, rh.el), 0.5 * pe) < 1e-9);
    CHECK(dist_sa(u_map(p.el, qh.el), zero(m4)) < 1e-9);
    CHECK(detail::opnorm_sa_unchecked(jordan_mul(rh.el, qh.el)) < 1e-9);

    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const double ta = 0.5 * rng.uniform(), tb = 0.5 * rng.uniform();
        const Element a = ta * pe, b = tb * pe;
        auto [r, q] = christensen_pair(p, s1, s2, s3, a, b);
        worst = std::max({worst, detail::opnorm_sa_unchecked(jordan_mul(r.el, q.el)),
                          dist_sa(u_map(p.el, r.el), a), dist_sa(u_map(p.el, q.el), b)});
    }
    CHECK(worst < 1e-8);

    // precondition violations are named
    CHECK_THROWS_AS(christensen_pair(p, s1, s1, s3, zero(m4), zero(m4)), error);
    CHECK_THROWS_AS(christensen_pair(p, s1, s2, s3, 0.9 * pe, zero(m4)), error);
    CHECK_THROWS_AS(christensen_pair(p, s1, s2, s3, -0.1 * pe, zero(m4)), error);
}

TEST_CASE("reversible pair") {
    Rng& rng = test_rng();
    const auto m8 = AlgebraDescriptor::parse("m8");
    Element pe = zero(m8);
    pe.mat(0)(0, 0) = 1.0;
    const Projection p = certify_projection(pe);
    const Element s1 = swap_symmetry(m8, 0, 1, 8);
    const Element s2 = swap_symmetry(m8, 0, 2, 8);
    const Element s3 = swap_symmetry(m8, 0, 3, 8);
    const Element s4 = swap_symmetry(m8, 0, 4, 8);
    const Element s5 = swap_symmetry(m8, 0, 5, 8);

    // c = d = 0: only the trailing terms survive
    auto [rt0, qt0] = reversible_pair(p, s1, s2, s3, s4, s5, zero(m8), zero(m8));
    CHECK(dist_sa(rt0.el, u_map(s4, pe)) < 1e-12);
    CHECK(dist_sa(qt0.el, u_map(s5, pe)) < 1e-12);

    // c = p, d = 0: the contract forces U_p(qt) = 0
    auto [rt1, qt1] = reversible_pair(p, s1, s2, s3, s4, s5, pe, zero(m8));
    CHECK(dist_sa(u_map(p.el, qt1.el), zero(m8)) < 1e-12);
    CHECK(dist_sa(u_map(p.el, rt1.el), pe) < 1e-12);

    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const double tc = rng.uniform();
        const double td = rng.uniform() * (1.0 - tc);
        const Element c = tc * pe, d = td * pe;
        auto [rt, qt] = reversible_pair(p, s1, s2, s3, s4, s5, c, d);
        worst = std::max({worst, detail::opnorm_sa_unchecked(jordan_mul(rt.el, qt.el)),
                          dist_sa(u_map(p.el, rt.el), c), dist_sa(u_map(p.el, qt.el), d)});
    }
    CHECK(worst < 1e-8);

    // c + d > p violates the precondition
    CHECK_THROWS_AS(reversible_pair(p, s1, s2, s3, s4, s5, 0.7 * pe, 0.7 * pe), error);
    // spin factors are rejected
    const auto spin = AlgebraDescriptor::parse("spin4");
    const Projection sp = unit_projection(spin);
    CHECK_THROWS_AS(
        reversible_pair(sp, unit(spin), unit(spin), unit(spin), unit(spin), unit(spin),
                        zero(spin), zero(spin)),
        error);
}

TEST_CASE("uniform continuity bound for witness measures") {
    Rng& rng = test_rng();
    const auto m5 = AlgebraDescriptor::parse("m5");
    const Projection one = unit_projection(m5);
    double worst = 0;
    for (int m = 0; m < 3; ++m) {
        const Measure mu = from_density(random_element(m5, rng, true));
        const double coeff = 2.0 * (2.0 * alpha(mu, one).value - mu.evaluate(one));
        for (int t = 0; t < 80; ++t) {
            auto [pp, qq] = random_close_pair(m5, rng, 0.2499);
            const double delta = dist_sa(pp.el, qq.el);
            worst = std::max(worst, std::abs(mu.evaluate(pp) - mu.evaluate(qq)) -
                                        coeff * (delta + std::sqrt(2.0 * delta)));
        }
    }
    CHECK(worst < 1e-6);
}
