/*
 * Copyright 2026 The supobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "supobf/attack.hpp"
#include "supobf/encoding.hpp"
#include "supobf/obfuscate.hpp"
#include "supobf/operations.hpp"
#include "supobf/oracle.hpp"
#include "supobf/problem.hpp"

namespace {

using json = nlohmann::json;
using namespace supobf;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Human-readable text moves to stderr when the JSON summary owns stdout.
std::ostream& text_stream(const std::string& json_path) { return json_path == "-" ? std::cerr : std::cout; }

std::string fnv1a(const std::string& bytes, std::uint64_t hash = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

struct Input {
    std::string path;
    std::string supervisor_path;
    bool repair_selfloops = false;

    Problem problem;
    std::string digest;

    void load() {
        std::string text = read_file(path);
        std::istringstream in(text);
        problem = parse_problem(in, {repair_selfloops, path});
        std::string all = text;
        if (!supervisor_path.empty()) {
            std::string sup_text = read_file(supervisor_path);
            std::istringstream sin(sup_text);
            auto automata = parse_automata(sin, problem.alphabet, supervisor_path);
            auto it = automata.find("supervisor");
            if (it == automata.end()) throw Error(supervisor_path + ": missing section [supervisor]");
            problem.supervisor = repair_selfloops ? supobf::repair_selfloops(it->second, problem.control) : it->second;
            all += '\0' + sup_text;
        }
        digest = fnv1a(all);
    }

    /// Validates and prints diagnostics; throws on errors.
    void require_valid() const {
        ProblemDiagnostics d = check_problem(problem);
        for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
        if (!d.errors.empty()) {
            for (const auto& e : d.errors) std::cerr << "error: " << e << '\n';
            throw Error(path + ": validation failed");
        }
    }
};

void add_input(CLI::App* cmd, Input& input) {
    cmd->add_option("file", input.path, "Problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--supervisor", input.supervisor_path, "Replace the supervisor with the one in FILE")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--repair-selfloops", input.repair_selfloops, "Add missing unobservable self-loops");
}

template <typename Fn>
void write_to(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    fn(out);
    if (!out) throw Error("write failure on '" + path + "'");
}

void write_json(const std::string& path, const json& j) {
    write_to(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

json solver_json(const SolverStats& s) {
    return {{"conflicts", s.conflicts},
            {"decisions", s.decisions},
            {"propagations", s.propagations},
            {"restarts", s.restarts},
            {"solves", s.solves}};
}

json witness_json(const AttackWitness& w, const Alphabet& alphabet) {
    json steps = json::array();
    for (const auto& o : w.observations) {
        json cmd = json::array();
        for (Event e : o.command.to_vector()) cmd.push_back(alphabet.name(e));
        steps.push_back({{"observed", o.observed == kEpsilon ? json(nullptr) : json(alphabet.name(o.observed))},
                         {"command", cmd}});
    }
    return {{"observations", steps}, {"event", alphabet.name(w.event)}};
}

std::string automaton_text(const std::string& section, const Automaton& a) {
    std::ostringstream out;
    write_automaton_section(out, section, a);
    return out.str();
}

int run_validate(Input& in) {
    in.load();
    in.require_valid();
    std::cout << "ok\n";
    return kExitOk;
}

int run_closed_loop(Input& in, const std::string& dot) {
    in.load();
    ProductAutomaton k = sync_product(in.problem.plant, in.problem.supervisor);
    std::cout << "# closed loop of " << in.path << '\n' << automaton_text("plant", k.automaton);
    if (!dot.empty()) write_to(dot, [&](std::ostream& out) { write_dot(out, k.automaton, {"closed_loop"}); });
    return kExitOk;
}

int run_check(Input& in, bool witness, const std::string& json_path, const std::string& dot) {
    in.load();
    in.require_valid();
    const Problem& p = in.problem;
    Supervisor s{p.supervisor, p.control};
    AttackVerdict v = non_attackable(p.plant, s, p.damage, p.attack);
    text_stream(json_path) << (v.non_attackable ? "non-attackable" : "attackable") << '\n';
    if (witness && v.witness) text_stream(json_path) << format_witness(*v.witness, *p.alphabet);
    if (!dot.empty()) {
        AnnotatedSupervisor sa = annotate(s);
        GPAutomaton gp = general_product(p.plant, sa, p.damage, p.attack);
        SubsetAutomaton sub = determinize_and_label(attacker_projection(gp), gp, p.attack);
        write_to(dot, [&](std::ostream& out) { write_subset_dot(out, sub, gp, p.plant, p.supervisor, p.damage); });
    }
    if (!json_path.empty()) {
        json j = {{"command", "check"},
                  {"input_digest", in.digest},
                  {"result", {{"non_attackable", v.non_attackable}}},
                  {"work", {{"gp_states", v.gp_states}, {"subset_states", v.subset_states}}}};
        if (v.witness) j["witness"] = witness_json(*v.witness, *p.alphabet);
        write_json(json_path, j);
    }
    return v.non_attackable ? kExitOk : kExitNegative;
}

int run_synth_bp(Input& in, int n, std::optional<std::size_t> limit, const std::string& dimacs, bool no_dedupe) {
    in.load();
    in.require_valid();
    const Problem& p = in.problem;
    if (n < 1) throw Error("-n must be at least 1");
    if (!dimacs.empty()) {
        Encoding enc = encode(n, build_gds(complete(p.plant), complete(p.supervisor)), p.target);
        write_to(dimacs, [&](std::ostream& out) { export_dimacs(out, enc.cnf, &enc.vars, p.alphabet.get()); });
    }
    SupbpResult r = supbp(p.plant, p.supervisor, p.target, n, {!no_dedupe, limit});
    std::cout << "# " << r.supervisors.size() << " behavior-preserving supervisor(s) with " << n << " state(s)"
              << (r.truncated ? " (truncated)" : "") << '\n';
    for (const auto& s : r.supervisors) std::cout << '\n' << automaton_text("supervisor", s);
    return r.supervisors.empty() ? kExitNegative : kExitOk;
}

int run_obfuscate(Input& in, std::optional<int> nmax, bool bisect, std::optional<std::size_t> limit,
                  bool no_dedupe, const std::string& out_path, const std::string& json_path) {
    in.load();
    in.require_valid();
    const Problem& p = in.problem;
    ObfuscationRequest req{p.plant,
                           p.original(),
                           p.target,
                           p.attack,
                           p.damage,
                           nmax.value_or(static_cast<int>(p.supervisor.reachable_states().size())),
                           {bisect, !no_dedupe, limit}};
    ObfuscationResult r = obfuscate(req);
    for (const auto& row : r.trace)
        std::cerr << "n=" << row.n << " candidates=" << row.candidates << " tested=" << row.tested
                  << " resilient=" << row.resilient << (row.truncated ? " truncated" : "") << '\n';
    if (r.found) {
        std::string text = automaton_text("supervisor", *r.supervisor);
        // The JSON summary already embeds the supervisor when it owns stdout.
        if (!out_path.empty())
            write_to(out_path, [&](std::ostream& out) { out << text; });
        else if (json_path != "-")
            std::cout << text;
        std::cerr << "found resilient supervisor with " << r.size << " state(s)\n";
    } else {
        std::cerr << "no resilient behavior-preserving supervisor with at most " << r.n_max << " state(s)\n";
    }
    if (!json_path.empty()) {
        json trace = json::array();
        for (const auto& row : r.trace)
            trace.push_back({{"n", row.n},
                             {"candidates", row.candidates},
                             {"tested", row.tested},
                             {"resilient", row.resilient},
                             {"truncated", row.truncated}});
        json result = {{"found", r.found}, {"n_start", r.n_start}, {"n_max", r.n_max}};
        if (r.found) {
            result["size"] = r.size;
            result["supervisor"] = automaton_text("supervisor", *r.supervisor);
        }
        json options = {{"bisect", bisect}, {"dedupe_isomorphic", !no_dedupe}};
        options["enumeration_limit"] = limit ? json(*limit) : json(nullptr);
        const SupbpStats& e = r.enumeration;
        json j = {{"command", "obfuscate"},
                  {"input_digest", in.digest},
                  {"options", options},
                  {"result", result},
                  {"trace", trace},
                  {"work",
                   {{"candidates_tested", r.candidates_tested},
                    {"models", e.models},
                    {"undersized", e.undersized},
                    {"duplicates", e.duplicates},
                    {"blocking_clauses", e.blocking_clauses},
                    {"solver", solver_json(e.solver)}}}};
        write_json(json_path, j);
    }
    return r.found ? kExitOk : kExitNegative;
}

int run_oracle(Input& in, std::optional<std::size_t> bound, std::size_t budget, const std::string& json_path) {
    in.load();
    in.require_valid();
    const Problem& p = in.problem;
    std::size_t len = bound.value_or(default_oracle_bound(p.plant, p.supervisor, p.damage));
    OracleResult r = brute_force_attackable(p.plant, {p.supervisor, p.control}, p.damage, p.attack, len, budget);
    text_stream(json_path) << to_string(r.verdict) << '\n';
    if (r.verdict == OracleVerdict::Attackable)
        text_stream(json_path) << "string " << format_word(*p.alphabet, r.string) << "\nATTACK " << p.alphabet->name(r.event)
                  << '\n';
    if (!json_path.empty()) {
        json j = {{"command", "oracle"},
                  {"input_digest", in.digest},
                  {"result", {{"verdict", to_string(r.verdict)}, {"bound", len}}},
                  {"work",
                   {{"pairs", r.stats.pairs},
                    {"classes", r.stats.classes},
                    {"complete_depth", r.stats.complete_depth},
                    {"uo_diameter", r.stats.uo_diameter},
                    {"budget_exhausted", r.stats.budget_exhausted}}}};
        if (r.verdict == OracleVerdict::Attackable)
            j["witness"] = {{"string", format_word(*p.alphabet, r.string)}, {"event", p.alphabet->name(r.event)}};
        write_json(json_path, j);
    }
    switch (r.verdict) {
        case OracleVerdict::NotAttackable: return kExitOk;
        case OracleVerdict::Attackable: return kExitNegative;
        case OracleVerdict::Inconclusive: return kExitInconclusive;
    }
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supervisor obfuscation against actuator enablement attacks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "supobf 0.1.0");

    Input in;
    std::string dot, json_path, out_path, dimacs;
    bool witness = false, bisect = false, no_dedupe = false;
    int n = 0;
    std::optional<int> nmax;
    std::optional<std::size_t> limit, bound;
    std::size_t budget = 4'000'000;

    auto* validate = app.add_subcommand("validate", "Run all structural checks");
    add_input(validate, in);

    auto* loop = app.add_subcommand("closed-loop", "Print the closed loop S||G");
    add_input(loop, in);
    loop->add_option("--dot", dot, "Write DOT to PATH ('-' for stdout)");

    auto* check = app.add_subcommand("check", "Verify non-attackability (exit 0 = non-attackable, 1 = attackable)");
    add_input(check, in);
    check->add_flag("--witness", witness, "Print a shortest attack witness");
    check->add_option("--json", json_path, "Write a JSON summary");
    check->add_option("--dot", dot, "Write the labeled attacker-view automaton as DOT");

    auto* synth = app.add_subcommand("synth-bp", "List behavior-preserving supervisors of exactly K states");
    add_input(synth, in);
    synth->add_option("-n", n, "Number of states")->required();
    synth->add_option("--limit", limit, "Stop after M supervisors");
    synth->add_option("--dimacs", dimacs, "Write the CNF to PATH");
    synth->add_flag("--no-dedupe", no_dedupe, "Keep isomorphic copies");

    auto* obf = app.add_subcommand("obfuscate", "Synthesize a minimum-state resilient behavior-preserving supervisor");
    add_input(obf, in);
    obf->add_option("--nmax", nmax, "Largest size to try (default: reachable states of the supervisor)");
    obf->add_flag("--bisect", bisect, "Find the starting size by bisection");
    obf->add_option("--limit", limit, "Stop each size after M candidates");
    obf->add_flag("--no-dedupe", no_dedupe, "Test isomorphic copies separately");
    obf->add_option("--out", out_path, "Write the supervisor to PATH");
    obf->add_option("--json", json_path, "Write a JSON summary");

    auto* oracle = app.add_subcommand("oracle", "Bounded brute-force attackability check (exit 3 = inconclusive)");
    add_input(oracle, in);
    oracle->add_option("--bound", bound, "String length bound (default |Q||X||Z|+2)");
    oracle->add_option("--budget", budget, "Maximum number of explored pairs");
    oracle->add_option("--json", json_path, "Write a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*validate) return run_validate(in);
        if (*loop) return run_closed_loop(in, dot);
        if (*check) return run_check(in, witness, json_path, dot);
        if (*synth) return run_synth_bp(in, n, limit, dimacs, no_dedupe);
        if (*obf) return run_obfuscate(in, nmax, bisect, limit, no_dedupe, out_path, json_path);
        if (*oracle) return run_oracle(in, bound, budget, json_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
