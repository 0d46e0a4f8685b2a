// metaprop: command-line front end. JSON on stdout unless noted.

#include "metaprop/arith/certificate_json.hpp"
#include "metaprop/arith/comparison.hpp"
#include "metaprop/atlas/demos.hpp"
#include "metaprop/reductions/tt.hpp"
#include "metaprop/theories/handles.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace metaprop;
using nlohmann::json;
namespace mp = machine::programs;

namespace {

std::vector<Natural> parse_list(const std::string& s) {
    std::vector<Natural> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty())
            out.push_back(parse_natural(item));
    return out;
}

// A program given as a file, a decimal index, or a library name.
machine::Program load_program(const std::string& spec) {
    if (std::filesystem::is_regular_file(spec)) {
        std::ifstream in(spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return machine::from_text(ss.str());
    }
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), ::isdigit))
        return machine::decode(parse_natural(spec));
    if (spec.rfind("finite:", 0) == 0)
        return mp::finite_set(parse_list(spec.substr(7)));
    if (spec.rfind("cofinite:", 0) == 0)
        return mp::cofinite_set(parse_list(spec.substr(9)));
    static const std::map<std::string, std::function<machine::Program()>> named{
        {"evens", mp::evens_recognizer}, {"odds", mp::odds_recognizer},   {"identity", mp::identity},
        {"successor", mp::successor},    {"self-loop", mp::self_loop},    {"halt", mp::halt_only},
        {"k", resets::progs::k_program},
    };
    if (auto it = named.find(spec); it != named.end())
        return it->second();
    throw Error("cannot read program '" + spec + "': not a file, an index, or a known name");
}

Natural load_index(const std::string& spec) { return machine::encode(load_program(spec)); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json run_json(const machine::RunResult& r) {
    json j{{"halted", r.halted}};
    if (r.halted) {
        j["value"] = metaprop::to_string(r.value);
        j["steps"] = r.steps;
    }
    return j;
}

json strings(const std::vector<Natural>& xs) {
    json a = json::array();
    for (const auto& x : xs)
        a.push_back(metaprop::to_string(x));
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metaprop: metamathematical properties of RE theories"};
    app.require_subcommand(1);

    // ---- machine ------------------------------------------------------------------
    auto* machine_cmd = app.add_subcommand("machine", "programs and indices");
    machine_cmd->require_subcommand(1);
    std::string prog;
    auto* enc = machine_cmd->add_subcommand("encode", "print the index of a program");
    enc->add_option("program", prog, "file, index or library name")->required();
    enc->callback([&] { std::cout << metaprop::to_string(load_index(prog)) << '\n'; });

    std::string out_file;
    auto* dec = machine_cmd->add_subcommand("decode", "print the program text of an index");
    dec->add_option("program", prog, "file, index or library name")->required();
    dec->add_option("-o,--output", out_file, "write the text to a file");
    dec->callback([&] {
        auto text = machine::to_text(load_program(prog));
        if (out_file.empty()) {
            std::cout << text;
        } else {
            std::ofstream(out_file) << text;
        }
    });

    std::vector<std::string> args_text;
    machine::Budget budget = 10000;
    auto* run_cmd = machine_cmd->add_subcommand("run", "run a program under a step budget");
    run_cmd->add_option("program", prog, "file, index or library name")->required();
    run_cmd->add_option("args", args_text, "inputs");
    run_cmd->add_option("--budget", budget, "step budget");
    run_cmd->callback([&] {
        std::vector<Natural> xs;
        for (const auto& a : args_text)
            xs.push_back(parse_natural(a));
        emit(run_json(machine::run(load_index(prog), xs, budget)));
    });

    // ---- resets ---------------------------------------------------------------------
    auto* resets_cmd = app.add_subcommand("resets", "RE-set demos");
    resets_cmd->require_subcommand(1);
    machine::Budget stage = 100000;
    std::string bound_text = "100";
    auto* k_demo = resets_cmd->add_subcommand("k-demo", "membership in K and the productive function");
    k_demo->add_option("--stage", stage, "stage");
    k_demo->callback([&] {
        json rows = json::array();
        for (const char* name : {"identity", "successor", "halt", "self-loop", "finite:5,9"}) {
            Natural i = load_index(name);
            Natural p = resets::productive(i);
            rows.push_back({{"program", name},
                            {"index", metaprop::to_string(i)},
                            {"in_K", resets::halts_within(resets::creative_K(), i, stage)},
                            {"f(i)_in_W_i", resets::halts_within(resets::ReSet{i}, p, stage)}});
        }
        emit({{"stage", stage}, {"K_index", metaprop::to_string(resets::k_index())}, {"rows", rows}});
    });
    auto* ei_demo = resets_cmd->add_subcommand("ei-demo", "EI witness for the canonical pair");
    ei_demo->add_option("--stage", stage, "stage");
    ei_demo->add_option("--bound", bound_text, "disjointness checked for n <= bound");
    ei_demo->callback([&] {
        json rows = json::array();
        auto pair = resets::canonical_ei_pair();
        bool disjoint = resets::verify_disjoint(pair, parse_natural(bound_text), stage).has_value();
        for (bool swap : {false, true}) {
            Natural i = swap ? resets::k1_index() : resets::k0_index();
            Natural j = swap ? resets::k0_index() : resets::k1_index();
            auto r = resets::check_ei_witness(i, j, stage);
            rows.push_back({{"order", swap ? "K1,K0" : "K0,K1"},
                            {"witness", metaprop::to_string(r.witness)},
                            {"absent_left", r.absent_left},
                            {"absent_right", r.absent_right},
                            {"race_pending", r.race_pending},
                            {"case_split", r.case_split},
                            {"descent", r.descent},
                            {"valid", r.valid()}});
        }
        emit({{"stage", stage}, {"bound", bound_text}, {"disjoint_up_to_bound", disjoint}, {"checks", rows}});
    });

    // ---- certify / rosser -------------------------------------------------------------
    std::string sentence;
    std::string wbudget = "10000";
    auto* certify = app.add_subcommand("certify", "certificates in R");
    certify->require_subcommand(1);
    auto* sigma1 = certify->add_subcommand("sigma1", "certify a true Sigma1 sentence");
    sigma1->add_option("sentence", sentence)->required();
    sigma1->add_option("--budget", wbudget, "witness search bound");
    sigma1->callback([&] {
        auto c = arith::sigma1_prove(logic::parse(sentence), parse_natural(wbudget));
        if (!c) {
            emit({{"certified", false}, {"reason", "no witness within the bound, or the sentence is false"}});
            return;
        }
        auto j = arith::to_json(*c);
        j["accepted"] = arith::check_certificate(*c);
        emit(j);
    });

    std::string pair_name = "evens-odds";
    int upto = 20;
    auto* rosser = app.add_subcommand("rosser", "Rosser separation in R");
    rosser->require_subcommand(1);
    auto* rdemo = rosser->add_subcommand("demo", "separate a disjoint pair with certificates");
    rdemo->add_option("--pair", pair_name, "evens-odds or mod3")->check(CLI::IsMember({"evens-odds", "mod3"}));
    rdemo->add_option("--n", upto, "check n = 0..N");
    rdemo->add_option("--budget", wbudget, "witness search bound");
    rdemo->callback([&] {
        auto sep = pair_name == "evens-odds"
                       ? arith::rosser_separator(logic::parse("(exists y (= (+ y y) x))"),
                                                 logic::parse("(exists y (= (S (+ y y)) x))"))
                       : arith::rosser_separator(resets::DisjointPair{
                             resets::ReSet{machine::encode(mp::mod_recognizer(3, 0))},
                             resets::ReSet{machine::encode(mp::mod_recognizer(3, 1))}});
        json rows = json::array();
        for (int n = 0; n <= upto; ++n) {
            auto p = arith::rosser_prove(sep, n, parse_natural(wbudget));
            auto q = arith::rosser_refute(sep, n, parse_natural(wbudget));
            json row{{"n", n},
                     {"proved", p && arith::check_certificate(*p)},
                     {"refuted", q && arith::check_certificate(*q)}};
            if (p)
                row["certificate"] = arith::to_json(*p);
            else if (q)
                row["certificate"] = arith::to_json(*q);
            rows.push_back(row);
        }
        emit({{"pair", pair_name}, {"psi", logic::print(sep.psi)}, {"instances", rows}});
    });

    // ---- decide / scan ----------------------------------------------------------------
    auto* decide = app.add_subcommand("decide", "decision procedures and stage oracles");
    decide->require_subcommand(1);
    auto* dsucc = decide->add_subcommand("succ", "decide a sentence of Succ");
    dsucc->add_option("sentence", sentence)->required();
    dsucc->callback([&] {
        auto f = logic::parse(sentence, logic::Signature::successor());
        emit({{"theory", "Succ"},
              {"sentence", logic::print(f)},
              {"verdict", theories::to_string(theories::succ_decide(f))},
              {"bounded_oracle", theories::succ_eval_bounded(f)}});
    });
    std::string combo_text, b_set = "finite:", c_set = "finite:";
    stage = 100000;
    auto* dj = decide->add_subcommand("j", "decide a Boolean combination of the A_n in J + B + not C");
    dj->add_option("combo", combo_text, "e.g. (or p2 (not p3))")->required();
    dj->add_option("--b-set", b_set, "program enumerating B");
    dj->add_option("--c-set", c_set, "program enumerating C");
    dj->add_option("--stage", stage, "stage");
    dj->callback([&] {
        auto c = theories::parse_combo(combo_text);
        auto t = theories::derived_theory({load_index(b_set)}, {load_index(c_set)}, theories::Family::janiczak_A);
        emit({{"theory", t.name},
              {"combo", theories::print(c)},
              {"stage", stage},
              {"verdict", theories::to_string(theories::derived_decide(t, c, stage))}});
    });

    std::string theory_name = "succ", formula_text;
    int scan_n = 50;
    auto* scan = app.add_subcommand("scan", "scans over numerals");
    scan->require_subcommand(1);
    auto* weakrep = scan->add_subcommand("weakrep", "which n have T |- phi(n)");
    weakrep->add_option("--theory", theory_name)->check(CLI::IsMember({"succ"}));
    weakrep->add_option("--formula", formula_text)->required();
    weakrep->add_option("--n", scan_n);
    weakrep->callback([&] {
        auto phi = logic::parse(formula_text, logic::Signature::successor());
        auto t = theories::succ_theory();
        auto s = theories::weak_rep_scan(t, phi, scan_n, 1);
        json j{{"theory", t.name}, {"formula", logic::print(phi)}, {"n", scan_n}, {"provable_at", strings(s)}};
        if (auto p = theories::eventual_pattern(s, scan_n))
            j["pattern"] = {{"cofinite", p->cofinite}, {"from", metaprop::to_string(p->from)}};
        else
            j["pattern"] = nullptr;
        emit(j);
    });

    // ---- ttreduce -----------------------------------------------------------------------
    auto* tt = app.add_subcommand("ttreduce", "tt-condition of a Boolean combination (text output)");
    tt->add_option("combo", combo_text)->required();
    tt->callback([&] {
        auto c = reductions::theory_to_set_tt(theories::parse_combo(combo_text));
        std::cout << "queries:";
        for (const auto& q : c.queries)
            std::cout << ' ' << metaprop::to_string(q);
        std::cout << "\nalpha: " << reductions::alpha_bits(c) << '\n';
        std::cout << "# bit i is alpha on the assignment whose binary digits, first query most significant, spell i\n";
    });

    // ---- atlas ----------------------------------------------------------------------------
    auto* atlas_cmd = app.add_subcommand("atlas", "the implication matrix");
    atlas_cmd->require_subcommand(1);
    std::string matrix = atlas::default_matrix_path();
    atlas_cmd->add_option("--matrix", matrix, "matrix JSON file");
    std::string p_text, q_text;
    bool as_json = false;
    auto* query = atlas_cmd->add_subcommand("query", "status of P => Q");
    query->add_option("P", p_text)->required();
    query->add_option("Q", q_text)->required();
    query->add_flag("--json", as_json);
    query->callback([&] {
        auto a = atlas::Atlas::load(matrix);
        auto e = a.query(atlas::parse_property(p_text), atlas::parse_property(q_text));
        if (as_json) {
            emit(atlas::to_json(e));
            return;
        }
        std::cout << atlas::to_string(e.from) << " -> " << atlas::to_string(e.to) << ": " << atlas::to_string(e.status)
                  << "\n  " << e.citation << '\n';
        if (!e.summary.empty())
            std::cout << "  also " << e.summary << '\n';
        if (e.witness_hint)
            std::cout << "  demo: " << *e.witness_hint << '\n';
    });
    std::string focus;
    auto* dot = atlas_cmd->add_subcommand("dot", "Graphviz export (text output)");
    dot->add_option("--focus", focus, "only edges touching this property");
    dot->callback([&] {
        auto a = atlas::Atlas::load(matrix);
        std::optional<atlas::PropertyId> f;
        if (!focus.empty())
            f = atlas::parse_property(focus);
        std::cout << atlas::export_dot(a, f);
    });
    auto* demos_cmd = atlas_cmd->add_subcommand("demos", "list demos");
    demos_cmd->callback([&] {
        for (const auto& d : atlas::demo_registry())
            std::cout << d.name << "  " << d.description << '\n';
    });
    std::string demo_name;
    machine::Budget demo_budget = atlas::default_demo_budget;
    auto* run_demo = atlas_cmd->add_subcommand("run", "run a demo");
    run_demo->add_option("demo", demo_name)->required();
    run_demo->add_option("--budget", demo_budget);
    run_demo->callback([&] {
        auto r = atlas::run_demo(demo_name, demo_budget);
        emit({{"demo", r.name}, {"passed", r.passed}, {"budget", demo_budget}, {"lines", r.lines}});
        if (!r.passed)
            throw CLI::RuntimeError(1);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const metaprop::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
