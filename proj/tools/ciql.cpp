// ciql: exact-arithmetic toolkit for canonical genus-5 curve geometry
// over small prime fields and symbolic tautological-class calculus.
//
// Exit codes: 0 success / all checks pass, 1 verification failures
// present, 2 usage error, 3 internal precondition violation.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ciql/cigeom.hpp>
#include <ciql/exactmath.hpp>
#include <ciql/json_io.hpp>
#include <ciql/projgeom.hpp>
#include <ciql/taut_expr.hpp>
#include <ciql/tautcalc.hpp>

namespace {

constexpr const char* kToolVersion = "ciql 0.1.0";

using ciql::Json;

std::string default_log_path() {
    if (const char* env = std::getenv("CIQL_LOG")) return env;
    return "ciql_runlog.jsonl";
}

// One JSON object per line, append-only; the existing file is never
// parsed on write.
void append_run_log(const std::string& path, const std::string& command_echo,
                    std::uint64_t seed, const Json& payload, int outcome) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ciql::math_error("run log not writable: " + path);
    Json rec;
    rec["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    rec["tool_version"] = kToolVersion;
    rec["command"] = command_echo;
    rec["seed"] = seed;
    rec["payload"] = payload;
    rec["outcome"] = outcome;
    out << rec.dump() << "\n";
    if (!out) throw ciql::math_error("run log write failed: " + path);
}

void emit_error(const std::string& kind, const std::string& message) {
    Json err;
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
}

struct CommonState {
    std::string command_echo;
    std::string log_path = default_log_path();
};

void emit(const CommonState& st, std::uint64_t seed, const Json& payload, int outcome) {
    std::cout << payload.dump(2) << "\n";
    append_run_log(st.log_path, st.command_echo, seed, payload, outcome);
}

std::uint32_t checked_p(std::uint32_t p) {
    if (p == 2 || p == 3 || p == 5)
        throw CLI::ValidationError("--p", "characteristic 2, 3 and 5 are excluded");
    if (!ciql::is_prime_u32(p)) throw CLI::ValidationError("--p", "modulus must be prime");
    if (p > ciql::kHardModulusCap)
        throw CLI::ValidationError("--p", "modulus above the hard cap 101");
    return p;
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
}

// Apply repeatable --set NAME=VALUE substitutions; NAME "psi" zeroes or
// sets every psi_i appearing in the polynomial.
ciql::GradedPoly apply_sets(const ciql::GradedPoly& poly,
                            const std::vector<std::string>& sets) {
    std::map<std::string, ciql::GradedPoly> subs;
    int n = poly.truncation();
    for (const std::string& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--set", "expected NAME=VALUE");
        std::string name = s.substr(0, eq);
        ciql::GradedPoly value = ciql::parse_expression(s.substr(eq + 1), n);
        if (name == "psi" || name == "lambda" || name == "kappa") {
            for (const auto& [mono, coef] : poly.terms())
                for (const auto& [gen, e] : mono)
                    if (gen.name.rfind(name, 0) == 0) subs.emplace(gen.name, value);
        } else {
            subs.emplace(name, value);
        }
    }
    return poly.substitute(subs);
}

Json poly_term_map(const ciql::GradedPoly& poly) {
    Json obj = Json::object();
    for (const auto& [mono, coef] : poly.terms()) {
        std::string key;
        if (mono.empty()) key = "1";
        for (const auto& [gen, e] : mono) {
            if (!key.empty()) key += "*";
            key += gen.name;
            if (e > 1) key += "^" + std::to_string(e);
        }
        obj[key] = coef.to_string();
    }
    return obj;
}

int run_verify(const CommonState& st, const std::string& claim, std::uint32_t p,
               std::uint64_t seed, std::size_t curves, std::size_t trials,
               std::size_t subset_budget) {
    using namespace ciql;
    auto start = std::chrono::steady_clock::now();
    VerificationReport agg;
    agg.claim_id = claim;
    agg.p = p;
    agg.seed = seed;

    auto merge = [&agg](const VerificationReport& r) {
        agg.trials += r.trials;
        agg.passes += r.passes;
        agg.skipped += r.skipped;
        for (const auto& f : r.failures) agg.failures.push_back(f);
    };

    if (claim.rfind("prop22-n", 0) == 0) {
        std::size_t n = std::stoul(claim.substr(8));
        for (std::size_t c = 0; c < curves; ++c) {
            CurveSample curve = sample_smooth_canonical_curve(p, c);
            std::vector<HyperplaneSection> sections;
            if (n >= 8) sections = hyperplane_sections(curve);
            merge(verify_independence_dichotomy(curve, n, subset_budget, seed,
                                                n >= 8 ? &sections : nullptr));
        }
    } else if (claim == "lemma31") {
        // classifier verdict vs the rank-7 oracle on random configurations
        for (std::size_t t = 0; t < trials; ++t) {
            SplitMix64 rng = SplitMix64::stream(seed, t);
            std::vector<Point<Fp>> pts;
            while (pts.size() < 7) {
                std::vector<Fp> c(4, Fp(0, p));
                bool nz = false;
                for (auto& x : c) {
                    x = Fp(std::uint32_t(rng.below(p)), p);
                    nz = nz || !x.is_zero();
                }
                if (!nz) continue;
                Point<Fp> pt(c);
                bool dup = false;
                for (const auto& q : pts) dup = dup || q == pt;
                if (!dup) pts.push_back(pt);
            }
            Configuration<Fp> cfg(pts);
            SevenPointClassification cls = classify_seven_points(cfg);
            bool rank7 = evaluation_matrix(cfg, 2).rank() == 7;
            bool contract = cls.independent ==
                            !(cls.coplanar7 || cls.six_on_conic || cls.four_collinear);
            ++agg.trials;
            if (cls.independent == rank7 && contract) {
                ++agg.passes;
            } else {
                agg.failures.push_back(FailureRecord{{}, cfg, rank7 ? 7u : 0u, 7,
                                                     {"classifier-disagreement"}});
            }
        }
    } else if (claim == "lemma31-ci") {
        merge(verify_seven_always_independent_in_p3(trials, p, seed));
    } else if (claim == "disjointness") {
        for (std::size_t c = 0; c < curves; ++c) {
            CurveSample curve = sample_smooth_canonical_curve(p, c);
            merge(verify_disjointness(curve, subset_budget, seed));
        }
    } else if (claim == "cross-count") {
        for (std::size_t c = 0; c < curves; ++c) {
            CurveSample curve = sample_smooth_canonical_curve(p, c);
            CrossCount cc = cross_count_hyperplanar(curve, subset_budget);
            ++agg.trials;
            if (!cc.exhaustive || cc.by_subsets == cc.by_hyperplanes) {
                ++agg.passes;
            } else {
                agg.failures.push_back(FailureRecord{{}, Configuration<Fp>{}, cc.by_subsets,
                                                     cc.by_hyperplanes, {"cross-count-mismatch"}});
            }
        }
    } else {
        throw CLI::ValidationError("--claim", "unknown claim id: " + claim);
    }

    agg.runtime_ms = elapsed_ms(start);
    int outcome = agg.failures.empty() ? 0 : 1;
    emit(st, seed, report_to_json(agg), outcome);
    return outcome;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for canonical genus-5 curve marked-point geometry"};
    app.require_subcommand(1);

    CommonState st;
    for (int i = 0; i < argc; ++i) {
        if (i) st.command_echo += " ";
        st.command_echo += argv[i];
    }

    std::string input, output, claim = "prop22-n7", expr_text;
    std::uint32_t p = 31;
    std::uint64_t seed = 0;
    std::size_t curves = 20, trials = 10000, subset_budget = 200000;
    std::size_t n_points = 8, min_points = 9, max_tries = 64;
    int a_index = 4, b_index = 1, omega_power = 2, genus = 5, truncation = 6;
    std::vector<std::string> sets;
    bool as_json = false;

    app.add_option("--log", st.log_path, "run-log path (JSON lines)");

    auto add_p = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "prime modulus, not 2, 3 or 5")
            ->check([](const std::string& s) -> std::string {
                try {
                    checked_p(std::uint32_t(std::stoul(s)));
                } catch (const CLI::ValidationError& e) {
                    return e.what();
                } catch (const std::exception&) {
                    return "modulus must be a positive integer";
                }
                return {};
            });
    };

    CLI::App* classify = app.add_subcommand("classify", "classify a 7-point fixture in P^3");
    classify->add_option("--input", input, "configuration fixture (JSON)")->required();

    CLI::App* quadrics = app.add_subcommand("quadrics-through", "kernel basis of quadrics through a fixture");
    quadrics->add_option("--input", input, "configuration fixture (JSON)")->required();

    CLI::App* recover = app.add_subcommand("recover-eighth", "recover the eighth base-locus point from 7");
    recover->add_option("--input", input, "7-point fixture in P^3 (JSON)")->required();

    CLI::App* sample = app.add_subcommand("sample-curve", "sample a smooth canonical curve over F_p");
    add_p(sample);
    sample->add_option("--seed", seed, "sampler seed");
    sample->add_option("--min-points", min_points, "minimum rational points");
    sample->add_option("--max-tries", max_tries, "rejection-sampling bound");

    CLI::App* verify = app.add_subcommand("verify", "run a verification sweep");
    verify->add_option("--claim", claim, "claim id")
        ->check(CLI::IsMember({"prop22-n7", "prop22-n8", "prop22-n9", "lemma31", "lemma31-ci",
                               "disjointness", "cross-count"}));
    add_p(verify);
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--curves", curves, "number of curve samples");
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--subset-budget", subset_budget, "subset sweep budget");

    CLI::App* cross = app.add_subcommand("cross-count", "double count hyperplanar 8-subsets vs sections");
    add_p(cross);
    cross->add_option("--seed", seed, "curve sample seed");
    cross->add_option("--subset-budget", subset_budget, "exhaustive-count budget");

    CLI::App* taut = app.add_subcommand("taut", "symbolic tautological-class calculus");
    taut->require_subcommand(1);
    CLI::App* porteous = taut->add_subcommand("porteous", "degeneracy-locus class Delta^b_a");
    porteous->add_option("--n", n_points, "number of psi generators");
    porteous->add_option("--a", a_index, "index a");
    porteous->add_option("--b", b_index, "index b");
    porteous->add_option("--set", sets, "substitution NAME=VALUE (repeatable)");
    porteous->add_option("--truncation", truncation, "grading truncation bound");
    porteous->add_flag("--json", as_json, "emit the JSON term map as well");
    CLI::App* grr = taut->add_subcommand("grr", "Chern character of the pushforward of omega^k");
    grr->add_option("--k", omega_power, "power of omega (>= 2)");
    grr->add_option("--g", genus, "genus");
    grr->add_option("--truncation", truncation, "number of ch components");
    grr->add_flag("--json", as_json, "emit the JSON term map as well");
    CLI::App* relations = taut->add_subcommand("relations", "the named relation table");
    CLI::App* expand = taut->add_subcommand("expand", "parse and expand an expression");
    expand->add_option("expr", expr_text, "expression text")->required();
    expand->add_option("--set", sets, "substitution NAME=VALUE (repeatable)");
    expand->add_option("--truncation", truncation, "grading truncation bound");
    expand->add_flag("--json", as_json, "emit the JSON term map as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        using namespace ciql;
        if (*classify) {
            Configuration<Fp> cfg = load_configuration_fp(load_json_file(input));
            SevenPointClassification cls = classify_seven_points(cfg);
            Json j;
            j["independent"] = cls.independent;
            j["coplanar7"] = cls.coplanar7;
            j["sixOnConic"] = cls.six_on_conic;
            j["fourCollinear"] = cls.four_collinear;
            emit(st, 0, j, 0);
            return 0;
        }
        if (*quadrics) {
            Configuration<Fp> cfg = load_configuration_fp(load_json_file(input));
            std::vector<QuadraticForm> basis = quadrics_through(cfg);
            Json j;
            j["ambient_dim"] = cfg.ambient_dim();
            j["dimension"] = basis.size();
            Json forms = Json::array();
            for (const auto& q : basis) forms.push_back(quadratic_form_to_json(q));
            j["forms"] = forms;
            emit(st, 0, j, 0);
            return 0;
        }
        if (*recover) {
            Configuration<Fp> cfg = load_configuration_fp(load_json_file(input));
            try {
                Point<Fp> eighth = recover_eighth_point(cfg);
                Json j;
                j["point"] = point_to_json(eighth);
                emit(st, 0, j, 0);
                return 0;
            } catch (const recover_error& e) {
                Json err;
                err["error"] = e.kind() == recover_error::Kind::dependent_input
                                   ? "dependent-input"
                                   : "non-transversal";
                err["message"] = e.what();
                if (!e.locus().empty()) {
                    Json locus = Json::array();
                    for (const auto& pt : e.locus()) locus.push_back(point_to_json(pt));
                    err["locus"] = locus;
                }
                std::cerr << err.dump() << "\n";
                return 3;
            }
        }
        if (*sample) {
            checked_p(p);
            CurveSample curve = sample_smooth_canonical_curve(p, seed, max_tries, min_points);
            emit(st, seed, curve_sample_to_json(curve), 0);
            return 0;
        }
        if (*verify) {
            checked_p(p);
            return run_verify(st, claim, p, seed, curves, trials, subset_budget);
        }
        if (*cross) {
            checked_p(p);
            CurveSample curve = sample_smooth_canonical_curve(p, seed);
            CrossCount cc = cross_count_hyperplanar(curve, subset_budget);
            Json j;
            j["p"] = p;
            j["seed"] = seed;
            j["by_subsets"] = cc.by_subsets;
            j["by_hyperplanes"] = cc.by_hyperplanes;
            j["exhaustive"] = cc.exhaustive;
            emit(st, seed, j, 0);
            return 0;
        }
        if (*taut) {
            auto finish = [&](const GradedPoly& poly) {
                Json j;
                j["expression"] = poly.to_string();
                if (as_json) j["terms"] = poly_term_map(poly);
                std::cout << poly.to_string() << "\n";
                if (as_json) std::cout << poly_term_map(poly).dump(2) << "\n";
                append_run_log(st.log_path, st.command_echo, 0, j, 0);
            };
            if (*porteous) {
                int trunc = std::max(truncation, a_index * b_index);
                std::vector<GradedPoly> psi;
                for (std::size_t i = 1; i <= n_points; ++i)
                    psi.push_back(GradedPoly::generator(psi_gen(int(i)), trunc));
                GradedPoly result = porteous_class(psi, a_index, b_index, trunc);
                finish(apply_sets(result, sets));
                return 0;
            }
            if (*grr) {
                std::vector<GradedPoly> ch = grr_pushforward_omega_power(omega_power, genus, truncation);
                Json j = Json::array();
                for (std::size_t m = 0; m < ch.size(); ++m) {
                    std::cout << "ch" << m << " = " << ch[m].to_string() << "\n";
                    Json e;
                    e["index"] = m;
                    e["expression"] = ch[m].to_string();
                    if (as_json) e["terms"] = poly_term_map(ch[m]);
                    j.push_back(e);
                }
                append_run_log(st.log_path, st.command_echo, 0, j, 0);
                return 0;
            }
            if (*relations) {
                Json j = Json::array();
                for (const auto& rel : relation_table(truncation)) {
                    std::cout << rel.name << ": " << rel.lhs.to_string() << " = "
                              << rel.rhs.to_string() << "\n";
                    Json e;
                    e["name"] = rel.name;
                    e["lhs"] = rel.lhs.to_string();
                    e["rhs"] = rel.rhs.to_string();
                    j.push_back(e);
                }
                append_run_log(st.log_path, st.command_echo, 0, j, 0);
                return 0;
            }
            if (*expand) {
                GradedPoly poly = parse_expression(expr_text, truncation);
                finish(apply_sets(poly, sets));
                return 0;
            }
        }
    } catch (const CLI::ValidationError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const ciql::sample_error& e) {
        emit_error("sampling-exhausted", std::string(e.what()) + "; last reason: " + e.reason());
        return 3;
    } catch (const ciql::math_error& e) {
        emit_error("precondition", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
    emit_error("usage", "no subcommand executed");
    return 2;
}
