// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Tolerances, trial counts and algebras are pinned here.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "jg/jg.hpp"

using namespace jg;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double worst_residual(const SuiteReport& rep, bool* ok, std::string* breakdown = nullptr) {
    double worst = 0;
    for (const auto& c : rep.checks) {
        if (!c.lower_bound) worst = std::max(worst, c.residual);
        if (!c.pass) *ok = false;
        if (breakdown && !c.pass) *breakdown += " " + c.name;
    }
    return worst;
}

// criterion 1: axiom suite over each factor kind, residual <= 1e-7,
// >= 500 instances, total runtime <= 30 s
void criterion1() {
    Timer timer;
    bool ok = true;
    double worst = 0;
    for (const char* alg : {"m3", "m5", "s4", "spin5", "albert"}) {
        const auto rep = run_suite("axioms", alg, 500, 20260809, 1e-7);
        worst = std::max(worst, worst_residual(rep, &ok));
    }
    const double secs = timer.seconds();
    ok = ok && secs <= 30.0;
    report(1, "axiom suite on m3,m5,s4,spin5,albert", ok,
           "max residual " + fmt(worst) + " <= 1e-7, " + fmt(secs) + " s <= 30 s");
}

// criterion 2: lattice suite with the exhaustive M4 diagonal oracle,
// residuals <= 1e-8, runtime <= 10 s
void criterion2() {
    Timer timer;
    bool ok = true;
    const auto rep = run_suite("lattice", "m4", 200, 31337, 1e-8);
    const double worst = worst_residual(rep, &ok);
    const double secs = timer.seconds();
    ok = ok && secs <= 10.0;
    report(2, "lattice suite on m4 with exhaustive diagonal oracle", ok,
           "max residual " + fmt(worst) + " <= 1e-8, " + fmt(secs) + " s <= 10 s");
}

// criterion 3: symmetry exchange over >= 200 close pairs in M4 and S4,
// U_s(f) = g within 1e-8, displacement bound within 1e-6, runtime <= 20 s
void criterion3() {
    Timer timer;
    bool ok = true;
    double worst_map = 0, worst_bound = 0;
    for (const char* alg : {"m4", "s4"}) {
        const AlgebraDescriptor d = AlgebraDescriptor::parse(alg);
        Rng rng(555);
        for (int t = 0; t < 200; ++t) {
            auto [f, g] = random_close_pair(d, rng, 0.9);
            const Element s = exchange_symmetry(f, g);
            worst_map = std::max(worst_map, dist_sa(u_map(s, f.el), g.el));
            const double fg = dist_sa(f.el, g.el);
            for (int j = 0; j < 5; ++j) {
                const Projection p = random_subprojection(f, rng);
                worst_bound = std::max(worst_bound, dist_sa(p.el, u_map(s, p.el)) -
                                                        std::sqrt(2.0) * std::sqrt(fg));
            }
        }
    }
    const double secs = timer.seconds();
    ok = worst_map <= 1e-8 && worst_bound <= 1e-6 && secs <= 20.0;
    report(3, "symmetry exchange on m4 and s4 (200 pairs each)", ok,
           "exchange " + fmt(worst_map) + " <= 1e-8, bound slack " + fmt(worst_bound) +
               " <= 1e-6, " + fmt(secs) + " s <= 20 s");
}

// criterion 4: isoclinic model exact to 1e-12 at 20 angles; midpoint
// postconditions within 1e-7 over >= 100 instances in M5
void criterion4() {
    bool ok = true;
    double worst_model = 0;
    for (int k = 0; k < 20; ++k) {
        const double th = k * (M_PI / 2.0 - 1e-3) / 20.0;
        auto [f, h] = isoclinic_model(th);
        const double c2 = std::cos(th) * std::cos(th);
        worst_model = std::max({worst_model, dist_sa(u_map(f.el, h.el), c2 * f.el),
                                dist_sa(u_map(h.el, f.el), c2 * h.el),
                                std::abs(dist_sa(f.el, h.el) - std::sin(th))});
    }
    const AlgebraDescriptor m5 = AlgebraDescriptor::parse("m5");
    Rng rng(4242);
    double worst_mid = 0;
    std::vector<int> r1{1};
    for (int t = 0; t < 100; ++t) {
        auto [f, g] = random_close_pair(m5, rng, 0.8, &r1);
        const Projection e = random_subprojection(complement(join(f, g)), rng, 1);
        const Projection h = isoclinic_mid(f, g, e);
        const double th = 0.5 * std::asin(std::min(
                                    1.0, std::sqrt(operator_norm_sa(
                                             u_map(f.el, unit(m5) - g.el)))));
        const double c2 = std::cos(th) * std::cos(th);
        const double fg = dist_sa(f.el, g.el);
        worst_mid = std::max({worst_mid, dist_sa(u_map(f.el, h.el), c2 * f.el),
                              dist_sa(u_map(g.el, h.el), c2 * g.el),
                              dist_sa(f.el, h.el) - fg, dist_sa(g.el, h.el) - fg});
    }
    ok = worst_model <= 1e-12 && worst_mid <= 1e-7;
    report(4, "isoclinic model (20 angles) and midpoints (100 in m5)", ok,
           "model " + fmt(worst_model) + " <= 1e-12, midpoint " + fmt(worst_mid) + " <= 1e-7");
}

// criterion 5: e_pm over >= 100 instances in M6 at eps in {0.1, 0.2, 0.3},
// all postconditions within 1e-8
void criterion5() {
    bool ok = true;
    std::string breakdown;
    const auto rep = run_suite("epm", "m6", 34, 90210, 1e-8);  // 34 per eps = 102 instances
    const double worst = worst_residual(rep, &ok, &breakdown);
    report(5, "e_pm construction on m6, eps in {0.1,0.2,0.3}", ok,
           "max residual " + fmt(worst) + " <= 1e-8" + breakdown);
}

// criterion 6: both Christensen statements over >= 100 instances in M4 and M8
void criterion6() {
    bool ok = true;
    double worst = 0;
    std::string breakdown;
    for (const char* alg : {"m4", "m8"}) {
        const auto rep = run_suite("christensen", alg, 100, 60606, 1e-8);
        worst = std::max(worst, worst_residual(rep, &ok, &breakdown));
    }
    report(6, "christensen pairs (both statements) on m4 and m8", ok,
           "max residual " + fmt(worst) + " <= 1e-8" + breakdown);
}

// criterion 7: trace axioms within 1e-9; exhaustive rank-comparison oracle;
// exhaustive attainable/unattainable IVP grids on m3, m4, m3+m6
void criterion7() {
    bool ok = true;
    double worst = 0;
    std::string breakdown;
    const auto rep = run_suite("traces", "m3+m4", 300, 7777, 1e-9);
    worst = worst_residual(rep, &ok, &breakdown);
    for (const char* alg : {"m3", "m4", "m3+m6"}) {
        const auto ivp = run_suite("ivp", alg, 6, 7878, 1e-9);
        worst = std::max(worst, worst_residual(ivp, &ok, &breakdown));
    }
    report(7, "trace axioms, rank-comparison oracle, IVP grids", ok,
           "max residual " + fmt(worst) + " <= 1e-9" + breakdown);
}

// criterion 8: gleason round trip, >= 50 witness measures per descriptor,
// recovery and validation within 1e-8, runtime <= 60 s
double criterion8_worst = 0;
void criterion8() {
    Timer timer;
    bool ok = true;
    for (const char* alg : {"m3", "m4", "m3+s4", "spin5", "albert"}) {
        const auto rep = run_suite("gleason", alg, 50, 808080, 1e-8);
        criterion8_worst = std::max(criterion8_worst, worst_residual(rep, &ok));
    }
    const double secs = timer.seconds();
    ok = ok && secs <= 60.0;
    report(8, "gleason round trip (50 witnesses x 5 descriptors)", ok,
           "max residual " + fmt(criterion8_worst) + " <= 1e-8, " + fmt(secs) + " s <= 60 s");
}

// criterion 9: the counterexamples give fit and additivity residuals
// >= 1/6 - 1e-6 while witness measures stay <= 1e-8; verbatim clash values
void criterion9() {
    bool ok = true;
    double least = 1e300;
    for (const char* alg : {"s2", "spin2", "spin3", "spin5"}) {
        const auto rep = run_suite("counterexample", alg, 200, 999, 1e-6);
        for (const auto& c : rep.checks) {
            if (!c.pass) ok = false;
            if (c.lower_bound) least = std::min(least, c.residual);
        }
    }
    const double separation = least / std::max(criterion8_worst, 1e-300);
    ok = ok && least >= 1.0 / 6.0 - 1e-6 && separation >= 1e5;
    report(9, "type-I2 counterexamples vs witness measures", ok,
           "defects >= " + fmt(least) + " (target 1/6), separation x" + fmt(separation) +
               " >= 1e5");
}

// criterion 10: uniform continuity bound over >= 500 pairs in M5
void criterion10() {
    bool ok = true;
    const auto rep = run_suite("uniform-continuity", "m5", 500, 123123, 1e-6);
    const double worst = worst_residual(rep, &ok);
    report(10, "uniform continuity bound on m5 (500 pairs)", ok,
           "bound slack " + fmt(worst) + " <= 1e-6");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
