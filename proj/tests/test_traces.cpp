#include <catch2/catch_amalgamated.hpp>

#include "jg/jg.hpp"

using namespace jg;

namespace {

Rng& test_rng() {
    static Rng rng(0x7ACE);
    return rng;
}

} // namespace

TEST_CASE("normalized trace basics") {
    const auto d = AlgebraDescriptor::parse("m3+s4+spin5+albert");
    const CentreValue one = normalized_trace(unit(d));
    for (double v : one.v) CHECK(v == Catch::Approx(1.0));

    Rng& rng = test_rng();
    const auto m5 = AlgebraDescriptor::parse("m5");
    for (int k = 0; k <= 5; ++k) {
        std::vector<int> rk{k};
        const Projection p = random_projection(m5, rng, &rk);
        CHECK(normalized_trace(p.el)[0] == Catch::Approx(k / 5.0).margin(1e-12));
    }

    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const Element x = random_element(d, rng, true);
        const Projection p = random_projection(d, rng);
        const Element s = 2.0 * p.el - unit(d);
        worst = std::max(worst,
                         (normalized_trace(u_map(s, x)) - normalized_trace(x)).max_abs());
    }
    CHECK(worst < 1e-11);
    CHECK_THROWS_AS(normalized_trace(random_element(d, rng, false)), error);
}

TEST_CASE("trace compare") {
    Rng& rng = test_rng();
    const auto m3 = AlgebraDescriptor::parse("m3");
    const Projection p = random_projection(m3, rng);
    CHECK(trace_compare(p, p)[0] == Ordering::equal);
    std::vector<int> r1{1}, r2{2};
    CHECK(trace_compare(random_projection(m3, rng, &r1), random_projection(m3, rng, &r2))[0] ==
          Ordering::less);
    // agreement with rank comparison on random pairs across summands
    const auto d = AlgebraDescriptor::parse("m4+s3");
    for (int t = 0; t < 100; ++t) {
        const Projection a = random_projection(d, rng);
        const Projection b = random_projection(d, rng);
        const auto ord = trace_compare(a, b);
        for (size_t s = 0; s < ord.size(); ++s) {
            const Ordering want = a.rank[s] == b.rank[s]
                                      ? Ordering::equal
                                      : (a.rank[s] < b.rank[s] ? Ordering::less
                                                               : Ordering::greater);
            CHECK(ord[s] == want);
        }
    }
}

TEST_CASE("subprojection with prescribed trace") {
    Rng& rng = test_rng();
    const auto m4 = AlgebraDescriptor::parse("m4");
    Element pd = zero(m4);
    pd.mat(0)(0, 0) = 1.0;
    pd.mat(0)(1, 1) = 1.0;
    pd.mat(0)(2, 2) = 1.0;
    const Projection p = certify_projection(pd);
    const Projection q = subprojection_with_trace(p, CentreValue{{0.5}});
    CHECK(q.rank[0] == 2);
    CHECK(leq(q, p));
    CHECK(normalized_trace(q.el)[0] == Catch::Approx(0.5));

    const auto m3 = AlgebraDescriptor::parse("m3");
    CHECK_THROWS_AS(subprojection_with_trace(unit_projection(m3), CentreValue{{0.5}}), error);
    try {
        subprojection_with_trace(unit_projection(m3), CentreValue{{0.5}});
    } catch (const error& e) {
        CHECK(e.code() == errc::trace_unreachable);
    }

    const auto d36 = AlgebraDescriptor::parse("m3+m6");
    const Projection full = unit_projection(d36);
    const Projection q36 = subprojection_with_trace(full, CentreValue{{1.0 / 3, 1.0 / 3}});
    CHECK(q36.rank[0] == 1);
    CHECK(q36.rank[1] == 2);
    CHECK((normalized_trace(q36.el) - CentreValue{{1.0 / 3, 1.0 / 3}}).max_abs() < 1e-12);

    // spin and albert grids
    const auto ds = AlgebraDescriptor::parse("spin4");
    const Projection qs = subprojection_with_trace(unit_projection(ds), CentreValue{{0.5}});
    CHECK(qs.rank[0] == 1);
    CHECK_THROWS_AS(subprojection_with_trace(unit_projection(ds), CentreValue{{0.3}}), error);
    const auto da = AlgebraDescriptor::parse("albert");
    for (int k = 0; k <= 3; ++k) {
        const Projection qa =
            subprojection_with_trace(unit_projection(da), CentreValue{{k / 3.0}});
        CHECK(qa.rank[0] == k);
    }
    // random non-diagonal projections, exhaustive attainable grid
    for (int t = 0; t < 20; ++t) {
        const auto m6 = AlgebraDescriptor::parse("m6");
        const Projection pr = random_projection(m6, rng);
        for (int k = 0; k <= pr.rank[0]; ++k) {
            const Projection qq = subprojection_with_trace(pr, CentreValue{{k / 6.0}});
            CHECK(leq(qq, pr));
            CHECK(normalized_trace(qq.el)[0] == Catch::Approx(k / 6.0).margin(1e-10));
        }
        if (pr.rank[0] < 6) {
            CHECK_THROWS_AS(
                subprojection_with_trace(pr, CentreValue{{(pr.rank[0] + 1) / 6.0}}), error);
        }
    }
}

TEST_CASE("trace faithfulness and positivity at test scale") {
    Rng& rng = test_rng();
    const auto d = AlgebraDescriptor::parse("m3+spin4+albert");
    for (int t = 0; t < 50; ++t) {
        const Element x = random_positive(d, rng, 0.0, 1.0);
        const CentreValue tx = normalized_trace(x);
        for (double v : tx.v) CHECK(v >= -1e-12);
        // tau(x) == 0 with x >= 0 forces x == 0 at finite scale
        double mass = 0.0;
        for (double v : tx.v) mass += v;
        if (mass <= 1e-8) CHECK(operator_norm_sa(x) <= 1e-6);
    }
}
