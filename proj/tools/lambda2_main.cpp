#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lambda2/classifier.hpp"
#include "lambda2/core.hpp"
#include "lambda2/core_arith.hpp"
#include "lambda2/form_class_group.hpp"
#include "lambda2/quad_field.hpp"
#include "lambda2/redei.hpp"
#include "lambda2/residue_symbols.hpp"
#include "lambda2/suites.hpp"

namespace {

using namespace lambda2;

struct Global {
    bool json = false;
    unsigned workers = 1;
    std::string cache_path;
};

std::string sgn(int v) { return v >= 0 ? "+1" : "-1"; }

int cmd_classify(const std::string& dstr, const Global& g) {
    Int D(dstr);
    if (g.json) {
        auto compute = [&] { return verdict_json(classify(D)); };
        if (!g.cache_path.empty()) {
            ResultCache cache(g.cache_path);
            std::cout << cache.lookup("classify", D.get_str(), compute) << "\n";
        } else {
            std::cout << compute() << "\n";
        }
        return 0;
    }
    Verdict v = classify(D);
    std::cout << "D = " << v.d.get_str() << "\n";
    if (v.normalized_from != 0)
        std::cout << "normalized from " << v.normalized_from.get_str() << "\n";
    std::cout << "status " << to_string(v.status) << "\n";
    if (v.theorem != TheoremTag::None)
        std::cout << "criterion " << tag_name(v.theorem) << ": "
                  << tag_description(v.theorem) << "\n";
    if (!v.open_case.empty()) std::cout << "open case " << v.open_case << "\n";
    if (!v.unverified.empty()) std::cout << "unverified " << v.unverified << "\n";
    std::cout << "evidence:\n";
    for (const auto& [name, value] : v.evidence)
        std::cout << "  " << name << " = " << value << "\n";
    return 0;
}

std::string search_csv(const std::vector<SearchHit>& hits) {
    std::string out =
        "p,q,pq,p_mod_8_is_1,q_mod_16_is_9,kronecker_is_minus,"
        "quartic_product_is_minus,some_quartic_is_minus,status\n";
    for (const auto& h : hits) {
        Int pq = h.p * h.q;
        Verdict v = classify(pq);
        out += h.p.get_str() + "," + h.q.get_str() + "," + pq.get_str() + "," +
               (h.hyp.p_mod8_ok ? "1" : "0") + "," + (h.hyp.q_mod16_ok ? "1" : "0") +
               "," + (h.hyp.kron_minus ? "1" : "0") + "," +
               (h.hyp.quartic_product_minus ? "1" : "0") + "," +
               (h.hyp.some_quartic_minus ? "1" : "0") + "," + to_string(v.status) +
               "\n";
    }
    return out;
}

int cmd_search(const std::string& bound, const std::string& csv_path, const Global& g) {
    auto hits = search_quartic_family(Int(bound));
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw lambda2_error("cannot write " + csv_path);
        f << search_csv(hits);
        return 0;
    }
    if (g.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& h : hits) {
            nlohmann::json row;
            row["p"] = h.p.get_str();
            row["q"] = h.q.get_str();
            row["pq"] = Int(h.p * h.q).get_str();
            nlohmann::json ev;
            for (const auto& [name, value] : h.hyp.evidence()) ev[name] = value;
            row["hypotheses"] = ev;
            row["status"] = to_string(classify(h.p * h.q).status);
            arr.push_back(row);
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::cout << search_csv(hits);
    return 0;
}

int cmd_verify(std::vector<std::string> names, const std::string& bound, bool csv,
               const Global& g) {
    if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
    Int b = bound.empty() ? Int(0) : Int(bound);
    int exit_code = 0;
    for (const auto& name : names) {
        SweepReport r = run_suite(name, b, g.workers);
        ReportFormat fmt =
            g.json ? ReportFormat::Json : (csv ? ReportFormat::Csv : ReportFormat::Text);
        std::cout << emit(r, fmt);
        if (!r.passed()) exit_code = 1;
    }
    return exit_code;
}

int cmd_symbols(const std::string& xs, const std::string& ys, const Global& g) {
    nlohmann::json j;
    Int x(xs);
    if (ys.empty()) {
        if (x < 3 || x % 2 == 0 || !is_prime(x))
            throw precondition_violation("single-argument symbols needs an odd prime");
        j["p"] = x.get_str();
        j["p_mod_8"] = (long)mpz_fdiv_ui(x.get_mpz_t(), 8);
        j["kronecker_2_p"] = kronecker(2, x);
        if (mpz_fdiv_ui(x.get_mpz_t(), 8) == 1) {
            j["quartic_2_p"] = quartic_mod_p(2, x);
            j["quartic_p_2"] = quartic_over_2(x);
            j["scholz"] = scholz_symbol(x);
            j["quartic_product"] = quartic_product(x);
        }
    } else {
        Int y(ys);
        j["x"] = x.get_str();
        j["y"] = y.get_str();
        j["kronecker_x_y"] = kronecker(x, y);
        if (y == 2 && x > 0 && mpz_fdiv_ui(x.get_mpz_t(), 8) == 1)
            j["quartic_x_2"] = quartic_over_2(x);
        else if (y > 2 && is_prime(y) && y % 4 == 1 && kronecker(x, y) == 1)
            j["quartic_x_y"] = quartic_mod_p(x, y);
    }
    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (auto& [key, value] : j.items())
            std::cout << key << " = "
                      << (value.is_string() ? value.get<std::string>() : value.dump())
                      << "\n";
    }
    return 0;
}

int cmd_classgroup(const std::string& dstr, const Global& g) {
    Int disc(dstr);
    FormClassGroup G = FormClassGroup::narrow(disc);
    auto divisors_json = [](const std::vector<long>& ds) {
        nlohmann::json a = nlohmann::json::array();
        for (long d : ds) a.push_back(d);
        return a;
    };
    if (g.json) {
        nlohmann::json j;
        j["disc"] = G.disc();
        j["narrow_class_number"] = G.class_number();
        j["wide_class_number"] = G.wide_order();
        j["elementary_divisors"] = divisors_json(G.elementary_divisors());
        j["two_part"] = divisors_json(G.two_part().divisors);
        j["wide_two_part"] = divisors_json(G.wide_two_part().divisors);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    auto show = [](const std::vector<long>& ds) {
        std::string s = "[";
        for (std::size_t i = 0; i < ds.size(); ++i)
            s += (i ? "," : "") + std::to_string(ds[i]);
        return s + "]";
    };
    std::cout << "disc " << G.disc() << "\n"
              << "narrow class number " << G.class_number() << "\n"
              << "wide class number " << G.wide_order() << "\n"
              << "elementary divisors " << show(G.elementary_divisors()) << "\n"
              << "2-part " << show(G.two_part().divisors) << "\n"
              << "wide 2-part " << show(G.wide_two_part().divisors) << "\n";
    return 0;
}

int cmd_unit(const std::string& dstr, bool decompose, const Global& g) {
    Int D(dstr);
    if (decompose) {
        Epsilon2DDecomposition dec = eps2d_decompose(D);
        if (g.json) {
            nlohmann::json j;
            j["d"] = D.get_str();
            j["r"] = dec.r.get_str();
            j["s"] = dec.s.get_str();
            j["d1"] = dec.d1.get_str();
            j["s1"] = dec.s1.get_str();
            j["d2"] = dec.d2.get_str();
            j["s2"] = dec.s2.get_str();
            j["plus_on_d1"] = dec.plus_on_d1;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "eps_{2D} = " << dec.r.get_str() << " + " << dec.s.get_str()
                      << " sqrt(" << Int(2 * D).get_str() << ")\n"
                      << "r " << (dec.plus_on_d1 ? "+" : "-") << " 1 = " << dec.d1.get_str()
                      << " * " << dec.s1.get_str() << "^2\n"
                      << "r " << (dec.plus_on_d1 ? "-" : "+") << " 1 = 2 * "
                      << dec.d2.get_str() << " * " << dec.s2.get_str() << "^2\n";
        }
        return 0;
    }
    FundamentalUnit u = fundamental_unit(D);
    bool dyadic = splits_at_2(D);
    Int image = dyadic ? eps_image_mod8(D) : Int(0);
    if (g.json) {
        nlohmann::json j;
        j["d"] = D.get_str();
        j["x"] = u.x.get_str();
        j["y"] = u.y.get_str();
        j["halved"] = u.halved;
        j["norm"] = u.norm;
        if (dyadic) j["image_mod_8"] = (long)mpz_fdiv_ui(image.get_mpz_t(), 8);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "eps = (" << u.x.get_str() << " + " << u.y.get_str() << " sqrt("
              << D.get_str() << "))" << (u.halved ? " / 2" : "") << "\n"
              << "norm " << sgn(u.norm) << "\n";
    if (dyadic) std::cout << "dyadic image mod 8 = " << image.get_str() << "\n";
    return 0;
}

int cmd_redei(const std::string& xs, const std::string& ys, const Global& g) {
    if (ys.empty()) {
        Int D(xs);
        F2Matrix m = redei_matrix(D);
        long r4 = r4_narrow_via_redei(D);
        if (g.json) {
            nlohmann::json j;
            j["d"] = D.get_str();
            j["matrix"] = m.to_string();
            j["rank"] = f2_rank(m);
            j["four_rank"] = r4;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << m.to_string() << "rank " << f2_rank(m) << "\n"
                      << "narrow four-rank " << r4 << "\n";
        }
        return 0;
    }
    Int p(xs), q(ys);
    GeneralizedRedeiTower t = generalized_redei_tower(p, q);
    if (g.json) {
        nlohmann::json j;
        j["p"] = p.get_str();
        j["q"] = q.get_str();
        j["M"] = t.M.to_string();
        j["R"] = t.R.to_string();
        j["rank_R"] = t.rank_R;
        j["r2_narrow"] = t.r2_narrow;
        j["r4_zero"] = t.r4_zero;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "M (five ramified places x {-1, eps2}):\n"
                  << t.M.to_string() << "R (odd ramified places x generators):\n"
                  << t.R.to_string() << "rank(R) " << t.rank_R << "\n"
                  << "r2 " << t.r2_narrow << "\n"
                  << "four-rank forced zero: " << (t.r4_zero ? "yes" : "no") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for 2-adic towers over real quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_flag("--json", g.json, "emit JSON instead of text");
    app.add_option("--workers", g.workers, "worker threads for verification sweeps");
    app.add_option("--cache", g.cache_path, "result cache file (JSON lines)");

    auto* sc_classify = app.add_subcommand("classify", "verdict for one radicand");
    std::string classify_d;
    sc_classify->add_option("d,--d", classify_d, "radicand, squarefree and > 1")
        ->required();

    auto* sc_search = app.add_subcommand("search", "enumerate the proven quartic family");
    std::string search_bound, search_csv_path;
    sc_search->add_option("bound,--bound", search_bound, "prime bound")->required();
    sc_search->add_option("--csv", search_csv_path, "write rows to this file");

    auto* sc_verify = app.add_subcommand("verify", "run verification sweeps");
    std::vector<std::string> verify_names;
    std::string verify_bound;
    bool verify_csv = false;
    sc_verify->add_option("suite,--suite", verify_names,
                          "suite names, or 'all' (default: all)");
    sc_verify->add_option("--bound", verify_bound, "override the suite's default bound");
    sc_verify->add_flag("--csv", verify_csv, "emit CSV instead of text");

    auto* sc_symbols = app.add_subcommand("symbols", "residue and quartic symbols");
    std::string sym_x, sym_y;
    sc_symbols->add_option("x", sym_x, "prime, or numerator of a pair")->required();
    sc_symbols->add_option("y", sym_y, "denominator of the pair");

    auto* sc_classgroup =
        app.add_subcommand("classgroup", "narrow and wide class group structure");
    std::string cg_disc;
    sc_classgroup->add_option("disc,--disc", cg_disc, "positive fundamental discriminant")
        ->required();

    auto* sc_unit = app.add_subcommand("unit", "fundamental unit data");
    std::string unit_d;
    bool unit_decompose = false;
    sc_unit->add_option("d,--d", unit_d, "radicand, squarefree and > 1")->required();
    sc_unit->add_flag("--decompose", unit_decompose,
                      "factor eps_{2D} through the divisor split of D");

    auto* sc_redei = app.add_subcommand("redei", "residue-symbol matrices and ranks");
    std::string redei_x, redei_y;
    sc_redei->add_option("d_or_p", redei_x, "radicand, or p of a qualifying pair")
        ->required();
    sc_redei->add_option("q", redei_y, "q of a qualifying pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (const char* env = std::getenv("LAMBDA2_CACHE"); env != nullptr && *env != '\0')
        g.cache_path = env;

    try {
        if (sc_classify->parsed()) return cmd_classify(classify_d, g);
        if (sc_search->parsed()) return cmd_search(search_bound, search_csv_path, g);
        if (sc_verify->parsed()) return cmd_verify(verify_names, verify_bound, verify_csv, g);
        if (sc_symbols->parsed()) return cmd_symbols(sym_x, sym_y, g);
        if (sc_classgroup->parsed()) return cmd_classgroup(cg_disc, g);
        if (sc_unit->parsed()) return cmd_unit(unit_d, unit_decompose, g);
        if (sc_redei->parsed()) return cmd_redei(redei_x, redei_y, g);
    } catch (const not_squarefree& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_violation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const undefined_symbol& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const non_fundamental_discriminant& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unknown_suite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
