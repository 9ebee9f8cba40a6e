#include <set>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "jg/jg.hpp"

using namespace jg;

TEST_CASE("suite registry and dispatch") {
    const auto names = suite_names();
    CHECK(names.size() == 11);
    CHECK_THROWS_AS(run_suite("nonsense", "m3", 10, 1, 0.0), error);
    CHECK_THROWS_AS(run_suite("axioms", "zz9", 10, 1, 0.0), error);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    auto strip = [](json j) {
        j.erase("duration_ms");
        return j.dump();
    };
    const auto a = run_suite("lattice", "m3", 40, 7, 0.0);
    const auto b = run_suite("lattice", "m3", 40, 7, 0.0);
    CHECK(strip(report_to_json(a)) == strip(report_to_json(b)));
    const auto c = run_suite("lattice", "m3", 40, 8, 0.0);
    CHECK(strip(report_to_json(a)) != strip(report_to_json(c)));
}

TEST_CASE("report schema") {
    const auto rep = run_suite("traces", "m3", 30, 3, 0.0);
    const json j = report_to_json(rep);
    CHECK(j.at("suite") == "traces");
    CHECK(j.at("algebra") == "m3");
    CHECK(j.at("seed") == 3);
    CHECK(j.contains("trials"));
    CHECK(j.contains("duration_ms"));
    REQUIRE(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
    // every executed check appears exactly once
    std::set<std::string> seen;
    for (const auto& c : j.at("checks")) seen.insert(c.at("name").get<std::string>());
    CHECK(seen.size() == j.at("checks").size());
}

TEST_CASE("small suite runs pass") {
    CHECK(run_suite("axioms", "m3+spin4", 60, 7, 1e-8).all_pass());
    CHECK(run_suite("lattice", "m3", 40, 1, 0.0).all_pass());
    CHECK(run_suite("comparison", "m4", 25, 2, 0.0).all_pass());
    CHECK(run_suite("epm", "m6", 6, 3, 0.0).all_pass());
    CHECK(run_suite("christensen", "m4", 10, 4, 0.0).all_pass());
    CHECK(run_suite("traces", "m3+s3", 40, 5, 0.0).all_pass());
    CHECK(run_suite("ivp", "m3+m6", 3, 6, 0.0).all_pass());
    CHECK(run_suite("quasilinear", "m3", 30, 7, 0.0).all_pass());
    CHECK(run_suite("gleason", "m3", 8, 8, 0.0).all_pass());
    CHECK(run_suite("uniform-continuity", "m4", 60, 9, 0.0).all_pass());
}

TEST_CASE("counterexample suite reports the quantitative defect") {
    const auto rep = run_suite("counterexample", "s2", 0, 42, 1e-6);
    CHECK(rep.all_pass());
    bool saw_fit = false;
    for (const auto& c : rep.checks) {
        if (c.name == "counterexample_fit_residual") {
            saw_fit = true;
            CHECK(c.residual >= 1.0 / 6.0 - 1e-6);
            CHECK(c.lower_bound);
        }
    }
    CHECK(saw_fit);
    CHECK(run_suite("counterexample", "spin3", 0, 42, 1e-6).all_pass());
    // the suite refuses non-spin algebras
    CHECK_THROWS_AS(run_suite("counterexample", "m3", 0, 42, 1e-6), error);
}

TEST_CASE("suites are safe to run concurrently") {
    // everything is immutable values and pure functions; two threads running
    // independent suites must reproduce the serial reports exactly
    auto strip = [](const SuiteReport& r) {
        json j = report_to_json(r);
        j.erase("duration_ms");
        return j.dump();
    };
    const std::string want_a = strip(run_suite("traces", "m3+s3", 40, 21, 0.0));
    const std::string want_b = strip(run_suite("lattice", "m4", 40, 22, 0.0));
    std::string got_a, got_b;
    std::thread ta([&] { got_a = strip(run_suite("traces", "m3+s3", 40, 21, 0.0)); });
    std::thread tb([&] { got_b = strip(run_suite("lattice", "m4", 40, 22, 0.0)); });
    ta.join();
    tb.join();
    CHECK(got_a == want_a);
    CHECK(got_b == want_b);
}

TEST_CASE("gleason on m2 notes that witness measures still extend") {
    const auto rep = run_suite("gleason", "m2", 5, 11, 0.0);
    CHECK(rep.all_pass());
    REQUIRE_FALSE(rep.notes.empty());
    CHECK(rep.notes[0].find("n = 2") != std::string::npos);
    const std::string text = report_to_text(rep);
    CHECK(text.find("note:") != std::string::npos);
}
