// jgverify: runs named verification suites over a chosen algebra, seed and
// trial count, and reports per-check residuals against their tolerances.
//
// exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "jg/jg.hpp"

int main(int argc, char** argv) {
    CLI::App app{"jgverify: JB*-algebra verification suite runner"};
    app.get_formatter()->column_width(34);

    std::string suite;
    std::string algebra = "m4";
    int trials = 0;
    double tol = 0.0;
    bool json_out = false;
    bool list_suites = false;
    long long seed_flag = -1;

    app.add_option("suite", suite, "suite name (see --list-suites)");
    app.add_option("--algebra", algebra,
                   "algebra descriptor: tokens mN, sN, spinK, albert joined by '+'");
    app.add_option("--trials", trials, "trial count (0 = suite default)");
    app.add_option("--seed", seed_flag, "RNG seed (default: JG_DEFAULT_SEED or 42)");
    app.add_option("--tol", tol, "tolerance override (0 = per-check defaults)");
    app.add_flag("--json", json_out, "machine-readable report");
    app.add_flag("--list-suites", list_suites, "list available suites and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list_suites) {
        for (const auto& n : jg::suite_names()) std::cout << n << "\n";
        return 0;
    }
    if (suite.empty()) {
        std::cerr << "error: no suite named; try --list-suites\n";
        return 2;
    }

    uint64_t seed = 42;
    if (seed_flag >= 0) {
        seed = static_cast<uint64_t>(seed_flag);
    } else if (const char* env = std::getenv("JG_DEFAULT_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (...) {
            std::cerr << "error: JG_DEFAULT_SEED is not a number\n";
            return 2;
        }
    }

    try {
        const jg::SuiteReport rep = jg::run_suite(suite, algebra, trials, seed, tol);
        if (json_out)
            std::cout << jg::report_to_json(rep).dump(2) << "\n";
        else
            std::cout << jg::report_to_text(rep);
        return rep.all_pass() ? 0 : 1;
    } catch (const jg::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
