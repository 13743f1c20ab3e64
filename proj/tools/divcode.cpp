// Command-line front end: analysis, identities, canonical forms, searches,
// and the built-in verification suite.
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "divcode/canonical.hpp"
#include "divcode/errors.hpp"
#include "divcode/fixtures.hpp"
#include "divcode/identities.hpp"
#include "divcode/search.hpp"
#include "divcode/verify.hpp"

using namespace divcode;

namespace {

Code load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    std::string body = os.str();
    if (body.find_first_of("01") == std::string::npos) throw ParseError("no matrix rows in " + path);
    return Code(BitMatrix::from_text(body));
}

std::string weights_csv(const Code& c) {
    std::string s;
    for (int w : c.weight_enumerator().nonzero_weights()) {
        if (!s.empty()) s += ",";
        s += std::to_string(w);
    }
    return s;
}

int cmd_analyze(const std::string& file, const std::string& format) {
    Code c = load_code(file);
    MomentSystem ms = moment_system_of(c);
    auto res = power_moments_check(ms);
    if (format == "json") {
        nlohmann::json j{{"n", c.length()},
                         {"k", c.dimension()},
                         {"d", c.dimension() ? c.minimum_distance() : 0},
                         {"divisibility", c.dimension() ? c.divisibility() : 0},
                         {"weight_gcd", c.dimension() ? c.weight_gcd() : 0},
                         {"projective", c.projective()},
                         {"full_length", c.full_length()},
                         {"effective_length", c.effective_length()},
                         {"a2_star", ms.a2_star.to_string()},
                         {"a3_star", ms.a3_star.to_string()},
                         {"moment_residuals_zero", res.all_zero()}};
        nlohmann::json en = nlohmann::json::object();
        const auto& dist = c.weight_distribution();
        for (int i = 0; i <= c.length(); ++i)
            if (dist[size_t(i)]) en[std::to_string(i)] = dist[size_t(i)];
        j["enumerator"] = en;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "n=" << c.length() << " k=" << c.dimension();
        if (c.dimension())
            std::cout << " d=" << c.minimum_distance() << " div=" << c.divisibility();
        std::cout << " projective=" << (c.projective() ? "true" : "false")
                  << " full_length=" << (c.full_length() ? "true" : "false") << "\n";
        std::cout << "weights: " << weights_csv(c) << "\n";
        std::cout << "enumerator:\n" << c.weight_enumerator().to_text();
        std::cout << "dual a2*=" << ms.a2_star.to_string() << " a3*=" << ms.a3_star.to_string()
                  << "\n";
        std::cout << "power moment residuals " << (res.all_zero() ? "zero" : "NONZERO") << "\n";
    }
    return 0;
}

int cmd_dual(const std::string& file) {
    Code c = load_code(file);
    WeightEnumerator dual = macwilliams_dual(c.weight_enumerator(), c.dimension());
    std::cout << dual.to_text();
    return 0;
}

int cmd_residual(const std::string& file, const std::string& word, bool keep_zero_columns) {
    Code c = load_code(file);
    BitVec w = BitVec::from_string(word);
    Code r = residual(c, w);
    if (!keep_zero_columns) r = compact(r);
    std::cout << r.generator().to_text();
    return 0;
}

int cmd_canonical(const std::string& file) {
    Code c = compact(load_code(file));
    std::cout << canonical_label(c).to_text();
    return 0;
}

int cmd_equivalent(const std::string& a, const std::string& b) {
    Code ca = compact(load_code(a)), cb = compact(load_code(b));
    bool eq = are_equivalent(ca, cb);
    std::cout << (eq ? "equivalent" : "inequivalent") << "\n";
    return eq ? 0 : 1;
}

int cmd_moments(const std::string& file) {
    Code c = load_code(file);
    MomentSystem ms = moment_system_of(c);
    auto res = power_moments_check(ms);
    for (int i = 0; i < 4; ++i)
        std::cout << "residual_" << (i + 1) << " " << res.r[size_t(i)].to_string() << "\n";
    return res.all_zero() ? 0 : 1;
}

SearchSpec build_spec(const std::vector<std::string>& seed_files, int length, int dim,
                      int divisible, const std::string& weights, int dmin, int new_coords,
                      int jobs, const std::string& checkpoint) {
    SearchSpec spec;
    spec.target_n = length;
    spec.target_k = dim;
    spec.divisor = divisible;
    spec.d_min = dmin;
    spec.new_coords_max = new_coords;
    spec.jobs = jobs;
    spec.checkpoint_path = checkpoint;
    if (!weights.empty()) {
        std::istringstream is(weights);
        std::string tok;
        while (std::getline(is, tok, ',')) spec.allowed_weights.push_back(std::stoi(tok));
    }
    for (const auto& f : seed_files) spec.seeds.push_back(load_code(f));
    return spec;
}

void print_result(const SearchResult& res, const std::string& out_prefix, const std::string& format) {
    if (format == "json") {
        nlohmann::json j{{"classes", res.codes.size()},
                         {"nodes", res.stats.nodes},
                         {"isomorph_rejections", res.stats.isomorph_rejections},
                         {"candidates", res.stats.candidates_checked},
                         {"wall_seconds", res.stats.wall_seconds}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << res.codes.size() << " classes (nodes " << res.stats.nodes << ", rejected "
                  << res.stats.isomorph_rejections << ", " << res.stats.wall_seconds << " s)\n";
    }
    for (size_t i = 0; i < res.codes.size(); ++i) {
        if (out_prefix.empty()) {
            std::cout << "# class " << i << "\n" << res.codes[i].generator().to_text();
        } else {
            std::ofstream out(out_prefix + std::to_string(i) + ".txt");
            out << res.codes[i].generator().to_text();
            std::ofstream lbl(out_prefix + std::to_string(i) + ".label");
            lbl << res.labels[i].to_text();
        }
    }
}

int cmd_verify_paper(const std::string& fixtures, const std::string& tier, int jobs,
                     const std::string& format, const std::string& checkpoint_dir) {
    FixtureSet fx = FixtureSet::load_dir(fixtures);
    std::vector<CheckResult> all;
    auto fxchecks = fx.verify_all(/*include_aut_orders=*/false);
    for (const auto& c : fxchecks)
        all.push_back({"fixture:" + c.fixture + ":" + c.check, "fast", c.pass, c.detail});
    auto fast = run_fast_checks(fx, jobs);
    all.insert(all.end(), fast.begin(), fast.end());
    if (tier == "search" || tier == "long") {
        auto search = run_search_checks(fx, jobs);
        all.insert(all.end(), search.begin(), search.end());
    }
    if (tier == "long") {
        auto lng = run_long_checks(fx, jobs, checkpoint_dir);
        all.insert(all.end(), lng.begin(), lng.end());
    }
    bool ok = true;
    for (const auto& c : all) {
        ok = ok && c.pass;
        if (format == "json") {
            nlohmann::json j{{"check", c.id}, {"tier", c.tier}, {"pass", c.pass}, {"detail", c.detail}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << "  (" << c.detail << ")\n";
        }
    }
    if (format != "json")
        std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << " (" << all.size()
                  << " checks)\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divcode: divisible binary linear code toolkit"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file, file_b, word, out_prefix, weights, checkpoint, fixtures, tier = "search";
    std::vector<std::string> seeds;
    int length = 0, dim = 0, divisible = 1, dmin = 1, new_coords = 1, jobs = 1;
    bool keep_zero = false, full_length = true;

    auto* analyze = app.add_subcommand("analyze", "parameters, enumerator and moment residuals");
    analyze->add_option("file", file)->required();

    auto* dual = app.add_subcommand("dual", "dual weight enumerator via the MacWilliams transform");
    dual->add_option("file", file)->required();

    auto* resid = app.add_subcommand("residual", "residual code at a codeword");
    resid->add_option("file", file)->required();
    resid->add_option("word", word, "codeword as a 0/1 string")->required();
    resid->add_flag("--keep-zero-columns", keep_zero);

    auto* canon = app.add_subcommand("canonical", "canonical form and automorphism group order");
    canon->add_option("file", file)->required();

    auto* equiv = app.add_subcommand("equivalent", "column-permutation equivalence of two codes");
    equiv->add_option("a", file)->required();
    equiv->add_option("b", file_b)->required();

    auto* moments = app.add_subcommand("moments", "first four power-moment residuals");
    moments->add_option("file", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "isomorph-free classification");
    classify_cmd->add_option("--length", length)->required();
    classify_cmd->add_option("--dim", dim, "0 = every dimension");
    classify_cmd->add_option("--divisible", divisible);
    classify_cmd->add_option("--weights", weights, "comma-separated allowed weights");
    classify_cmd->add_option("--d-min", dmin);
    classify_cmd->add_flag("--full-length,!--no-full-length", full_length);
    classify_cmd->add_option("--jobs", jobs);
    classify_cmd->add_option("--checkpoint", checkpoint);
    classify_cmd->add_option("--out", out_prefix, "write class i to <out>i.txt");

    auto* extend_cmd = app.add_subcommand("extend", "one-dimension extensions of a seed");
    extend_cmd->add_option("--seed", seeds, "seed generator matrix file")->required();
    extend_cmd->add_option("--weights", weights, "allowed weights of the new coset")->required();
    extend_cmd->add_option("--max-len", length)->required();
    extend_cmd->add_option("--new-coords", new_coords);
    extend_cmd->add_option("--jobs", jobs);
    extend_cmd->add_option("--checkpoint", checkpoint);
    extend_cmd->add_option("--out", out_prefix);

    int word_weight = 0;
    auto* lengthen_cmd = app.add_subcommand("lengthen", "invert the residual construction");
    lengthen_cmd->add_option("--seed", seeds, "residual class files")->required();
    lengthen_cmd->add_option("--length", length)->required();
    lengthen_cmd->add_option("--dim", dim)->required();
    lengthen_cmd->add_option("--word-weight", word_weight, "weight of the distinguished codeword");
    lengthen_cmd->add_option("--divisible", divisible);
    lengthen_cmd->add_option("--d-min", dmin);
    lengthen_cmd->add_option("--weights", weights);
    lengthen_cmd->add_option("--jobs", jobs);
    lengthen_cmd->add_option("--checkpoint", checkpoint);
    lengthen_cmd->add_option("--out", out_prefix);

    auto* verify = app.add_subcommand("verify-paper", "run the verification suite");
    verify->add_option("--fixtures", fixtures, "fixture directory");
    verify->add_option("--tier", tier, "fast | search | long")
        ->check(CLI::IsMember({"fast", "search", "long"}));
    verify->add_option("--jobs", jobs);
    verify->add_option("--checkpoint-dir", checkpoint);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(file, format);
        if (*dual) return cmd_dual(file);
        if (*resid) return cmd_residual(file, word, keep_zero);
        if (*canon) return cmd_canonical(file);
        if (*equiv) return cmd_equivalent(file, file_b);
        if (*moments) return cmd_moments(file);
        if (*classify_cmd) {
            SearchSpec spec = build_spec({}, length, dim, divisible, weights, dmin, 0, jobs, checkpoint);
            spec.mode = SearchMode::Classify;
            spec.require_full_length = full_length;
            if (spec.allowed_weights.empty() && divisible > 1) spec.d_min = std::max(dmin, divisible);
            print_result(classify(spec), out_prefix, format);
            return 0;
        }
        if (*extend_cmd) {
            SearchSpec spec =
                build_spec(seeds, length, 0, divisible, weights, dmin, new_coords, jobs, checkpoint);
            spec.mode = SearchMode::ExtendDimension;
            print_result(extend_dimension(spec), out_prefix, format);
            return 0;
        }
        if (*lengthen_cmd) {
            SearchSpec spec = build_spec(seeds, length, dim, divisible, weights, dmin, 0, jobs, checkpoint);
            spec.mode = SearchMode::ExtendLength;
            spec.seed_word_weight =
                word_weight ? word_weight
                            : (spec.seeds.empty() ? 0 : length - spec.seeds[0].length());
            print_result(lengthen_from_residual(spec), out_prefix, format);
            return 0;
        }
        if (*verify) return cmd_verify_paper(fixtures, tier, jobs, format, checkpoint);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
