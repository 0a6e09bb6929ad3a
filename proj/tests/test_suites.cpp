#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lambda2/suites.hpp"

using namespace lambda2;

namespace {

struct TempFile {
    std::string path;
    TempFile() {
        auto dir = std::filesystem::temp_directory_path();
        static int seq = 0;
        path = (dir / ("lambda2_cache_" + std::to_string(::getpid()) + "_" +
                       std::to_string(seq++) + ".jsonl"))
                   .string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("the suite table") {
    auto names = suite_names();
    REQUIRE(names.size() == 11);
    CHECK(names[0] == "genus");
    CHECK(names[8] == "pattern-rank");
    CHECK(names[9] == "classifier-golden");
    CHECK(names[10] == "normalize-invariance");
    CHECK_THROWS_AS((void)run_suite("no-such-suite", 0, 1), unknown_suite);
    CHECK_THROWS_AS((void)run_suite("genus", Int("99999999999999999999999"), 1),
                    precondition_violation);
}

TEST_CASE("small sweeps of every suite pass") {
    struct Quick {
        const char* name;
        long bound;
    };
    for (const Quick& s : {Quick{"genus", 600},
                           Quick{"scholz-units", 600},
                           Quick{"redei-oracle", 600},
                           Quick{"scholz-reciprocity", 2000},
                           Quick{"hilbert-product", 40},
                           Quick{"unit-norm-bridge", 3000},
                           Quick{"wide-two-part", 3000},
                           Quick{"unit-decomposition", 1500},
                           Quick{"pattern-rank", 4},
                           Quick{"classifier-golden", 0},
                           Quick{"normalize-invariance", 400}}) {
        auto r = run_suite(s.name, s.bound, 2);
        INFO(emit(r, ReportFormat::Text));
        CHECK(r.passed());
        CHECK(r.instances > 0);
        CHECK(r.suite == s.name);
    }
}

TEST_CASE("reports are identical across worker counts") {
    for (const char* name : {"pattern-rank", "redei-oracle"}) {
        auto one = run_suite(name, name[0] == 'p' ? 6 : 400, 1);
        auto three = run_suite(name, name[0] == 'p' ? 6 : 400, 3);
        CHECK(one == three); /* wall time excluded from equality */
    }
}

TEST_CASE("JSON emission round-trips") {
    SweepReport r;
    r.suite = "genus";
    r.bound = 1234;
    r.instances = 77;
    r.failures.push_back(SweepFailure{"disc=60", "rank 2", "rank 1"});
    r.failures.push_back(SweepFailure{"комма, \"quote\"", "a\nb", ""});
    r.wall_ms = 99;

    auto back = parse_report(emit(r, ReportFormat::Json));
    CHECK(back == r);
    CHECK(back.wall_ms == 0);
    CHECK(emit(back, ReportFormat::Json) == emit(r, ReportFormat::Json));
    CHECK(!back.passed());

    auto live = run_suite("classifier-golden", 0, 1);
    CHECK(parse_report(emit(live, ReportFormat::Json)) == live);

    CHECK_THROWS_AS((void)parse_report("{not json"), lambda2_error);
    CHECK_THROWS_AS((void)parse_report("{\"suite\": \"x\"}"), lambda2_error);
}

TEST_CASE("CSV and text emission shapes") {
    SweepReport r;
    r.suite = "genus";
    r.bound = 50;
    r.instances = 3;
    auto csv = emit(r, ReportFormat::Csv);
    CHECK(csv == "suite,bound,instances,input,expected,got\n");
    r.failures.push_back(SweepFailure{"a,b", "c\"d", "e"});
    csv = emit(r, ReportFormat::Csv);
    CHECK(csv ==
          "suite,bound,instances,input,expected,got\n"
          "genus,50,3,\"a,b\",\"c\"\"d\",e\n");

    auto text = emit(r, ReportFormat::Text);
    CHECK(text.find("genus bound=50 instances=3 failures=1 FAIL") == 0);
    CHECK(text.find("input=a,b expected=c\"d got=e") != std::string::npos);
    r.failures.clear();
    CHECK(emit(r, ReportFormat::Text) == "genus bound=50 instances=3 failures=0 PASS\n");
}

TEST_CASE("cache: miss computes, hit replays, entries persist") {
    TempFile tmp;
    {
        ResultCache cache(tmp.path);
        int calls = 0;
        auto compute = [&] {
            ++calls;
            return std::string("42");
        };
        CHECK(cache.lookup("op", "7", compute) == "42");
        CHECK(calls == 1);
        CHECK(cache.misses() == 1);
        CHECK(cache.lookup("op", "7", compute) == "42");
        CHECK(calls == 1);
        CHECK(cache.hits() == 1);
        CHECK(cache.lookup("op", "8", [] { return std::string("43"); }) == "43");
        CHECK(cache.size() == 2);
    }
    ResultCache reloaded(tmp.path);
    CHECK(reloaded.size() == 2);
    CHECK(reloaded.lookup("op", "7", [] { return std::string("never"); }) == "42");
    CHECK(reloaded.hits() == 1);
    CHECK(reloaded.misses() == 0);
}

TEST_CASE("cache: the same input under a different operation is distinct") {
    TempFile tmp;
    ResultCache cache(tmp.path);
    CHECK(cache.lookup("alpha", "1", [] { return std::string("A"); }) == "A");
    CHECK(cache.lookup("beta", "1", [] { return std::string("B"); }) == "B");
    CHECK(cache.size() == 2);
}

TEST_CASE("cache: every hundredth hit is revalidated") {
    TempFile tmp;
    ResultCache cache(tmp.path);
    int honest_calls = 0;
    auto honest = [&] {
        ++honest_calls;
        return std::string("v");
    };
    CHECK(cache.lookup("op", "k", honest) == "v");
    for (int i = 0; i < 99; ++i) CHECK(cache.lookup("op", "k", honest) == "v");
    /* hits 1..99 served without recompute, hit 100 revalidates */
    CHECK(honest_calls == 1);
    CHECK(cache.lookup("op", "k", honest) == "v");
    CHECK(honest_calls == 2);
    CHECK(cache.hits() == 100);

    TempFile tmp2;
    ResultCache drift(tmp2.path);
    CHECK(drift.lookup("op", "k", [] { return std::string("old"); }) == "old");
    for (int i = 0; i < 99; ++i)
        CHECK(drift.lookup("op", "k", [] { return std::string("new"); }) == "old");
    CHECK_THROWS_AS(
        (void)drift.lookup("op", "k", [] { return std::string("new"); }),
        cache_corruption);
}

TEST_CASE("cache: malformed and contradictory files are rejected on load") {
    TempFile tmp;
    {
        std::ofstream f(tmp.path);
        f << "{\"op\":\"a\",\"input\":\"1\",\"output\":\"x\"}\n";
        f << "this is not json\n";
    }
    CHECK_THROWS_AS(ResultCache{tmp.path}, cache_corruption);

    TempFile tmp2;
    {
        std::ofstream f(tmp2.path);
        f << "{\"op\":\"a\",\"input\":\"1\",\"output\":\"x\"}\n";
        f << "{\"op\":\"a\",\"input\":\"1\",\"output\":\"y\"}\n";
    }
    CHECK_THROWS_AS(ResultCache{tmp2.path}, cache_corruption);

    TempFile tmp3;
    {
        std::ofstream f(tmp3.path);
        f << "{\"op\":\"a\",\"input\":\"1\"}\n"; /* missing output */
    }
    CHECK_THROWS_AS(ResultCache{tmp3.path}, cache_corruption);

    TempFile tmp4;
    {
        std::ofstream f(tmp4.path);
        f << "{\"op\":\"a\",\"input\":\"1\",\"output\":\"x\"}\n";
        f << "{\"op\":\"a\",\"input\":\"1\",\"output\":\"x\"}\n"; /* benign repeat */
    }
    ResultCache ok(tmp4.path);
    CHECK(ok.size() == 1);
}
