#include <cstdio>
#include <thread>

#include "lambda2/suites.hpp"

/* Runs every verification sweep at its contract bound and prints one line per
 * criterion.  Exits nonzero if any sweep reports a failure or overruns its
 * wall-clock limit. */

int main() {
    struct Criterion {
        const char* suite;
        long limit_ms; /* 0: no wall-clock requirement */
    };
    const Criterion table[] = {
        {"genus", 300000},
        {"scholz-units", 0},
        {"redei-oracle", 0},
        {"scholz-reciprocity", 60000},
        {"hilbert-product", 0},
        {"unit-norm-bridge", 120000},
        {"wide-two-part", 0},
        {"unit-decomposition", 0},
        {"pattern-rank", 0},
        {"classifier-golden", 0},
        {"normalize-invariance", 0},
    };

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    bool all_ok = true;
    for (const Criterion& c : table) {
        lambda2::SweepReport r;
        bool ok = false;
        std::string note;
        try {
            r = lambda2::run_suite(c.suite, 0, workers);
            ok = r.passed();
            if (c.limit_ms > 0 && r.wall_ms > c.limit_ms) {
                ok = false;
                note = " (over the " + std::to_string(c.limit_ms / 1000) + "s limit)";
            }
        } catch (const std::exception& e) {
            note = std::string(" (exception: ") + e.what() + ")";
        }
        std::printf("[%s] %-20s bound=%-7s instances=%-8llu failures=%zu %lldms%s\n",
                    ok ? "PASS" : "FAIL", c.suite, r.bound.get_str().c_str(),
                    (unsigned long long)r.instances, r.failures.size(),
                    (long long)r.wall_ms, note.c_str());
        if (!ok) {
            std::size_t shown = 0;
            for (const auto& f : r.failures) {
                if (++shown > 5) {
                    std::printf("       ... %zu more\n", r.failures.size() - 5);
                    break;
                }
                std::printf("       input=%s expected=%s got=%s\n", f.input.c_str(),
                            f.expected.c_str(), f.got.c_str());
            }
            all_ok = false;
        }
    }
    std::printf("%s\n", all_ok ? "acceptance: all criteria hold"
                               : "acceptance: at least one criterion failed");
    return all_ok ? 0 : 1;
}
