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

#include "supobf/problem.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "supobf/operations.hpp"

namespace supobf {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

struct Section {
    int header_line;
    std::vector<Line> lines;
};

const std::set<std::string> kFlagSections = {"controllable",        "observable",          "attackable",
                                             "attacker-observable", "target-controllable", "target-observable"};
const std::set<std::string> kAutomatonSections = {"plant", "supervisor", "damage"};

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(int line, const std::string& message) const {
        throw Error(source_ + ":" + std::to_string(line) + ": " + message);
    }

    std::map<std::string, Section> split(std::istream& in, bool allow_alphabet) {
        std::map<std::string, Section> sections;
        Section* current = nullptr;
        std::string text;
        int number = 0;
        while (std::getline(in, text)) {
            ++number;
            if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
            std::istringstream ls(text);
            std::vector<std::string> tokens;
            for (std::string tok; ls >> tok;) tokens.push_back(tok);
            if (tokens.empty()) continue;
            if (tokens[0].front() == '[') {
                if (tokens.size() != 1 || tokens[0].back() != ']') fail(number, "malformed section header");
                std::string name = tokens[0].substr(1, tokens[0].size() - 2);
                bool known = kAutomatonSections.count(name) > 0 ||
                             (allow_alphabet && (name == "alphabet" || kFlagSections.count(name) > 0));
                if (!known) fail(number, "unknown section [" + name + "]");
                auto [it, fresh] = sections.emplace(name, Section{number, {}});
                if (!fresh) fail(number, "duplicate section [" + name + "]");
                current = &it->second;
                continue;
            }
            if (current == nullptr) fail(number, "content before the first section");
            current->lines.push_back({number, std::move(tokens)});
        }
        if (in.bad()) throw Error(source_ + ": read failure");
        return sections;
    }

    Event event(const Alphabet& alphabet, const Line& line, const std::string& name) const {
        auto e = alphabet.find(name);
        if (!e) fail(line.number, "unknown event '" + name + "'");
        return *e;
    }

    EventSet event_set(const Alphabet& alphabet, const Section& section) const {
        EventSet set;
        for (const Line& line : section.lines)
            for (const auto& tok : line.tokens) set.insert(event(alphabet, line, tok));
        return set;
    }

    Automaton automaton(const AlphabetPtr& alphabet, const std::string& name, const Section& section) const {
        Automaton a(alphabet);
        std::optional<int> initial_line;
        std::string initial;
        std::optional<std::pair<int, std::vector<std::string>>> marked;
        bool auto_complete = false;
        bool in_trans = false;
        bool has_states = false;

        auto state = [&](const Line& line, const std::string& n) {
            auto s = a.find_state(n);
            if (!s) fail(line.number, "unknown state '" + n + "' in [" + name + "]");
            return *s;
        };

        for (const Line& line : section.lines) {
            const std::string& key = line.tokens[0];
            if (in_trans) {
                if (line.tokens.size() != 3) fail(line.number, "expected '<src> <event> <dst>'");
                State src = state(line, line.tokens[0]);
                Event e = event(*alphabet, line, line.tokens[1]);
                State dst = state(line, line.tokens[2]);
                if (a.defined(src, e)) {
                    if (a.next(src, e) == dst) fail(line.number, "duplicate transition");
                    fail(line.number, "nondeterministic transition: " + line.tokens[0] + " already has a '" +
                                          line.tokens[1] + "' successor");
                }
                a.set_transition(src, e, dst);
            } else if (key == "states:") {
                if (line.tokens.size() < 2) fail(line.number, "states: needs at least one name");
                for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                    if (!Alphabet::valid_name(line.tokens[i]) || line.tokens[i].back() == ':')
                        fail(line.number, "invalid state name '" + line.tokens[i] + "'");
                    if (a.find_state(line.tokens[i])) fail(line.number, "duplicate state '" + line.tokens[i] + "'");
                    a.add_state(line.tokens[i]);
                }
                has_states = true;
            } else if (key == "initial:") {
                if (line.tokens.size() != 2) fail(line.number, "initial: takes exactly one state");
                if (initial_line) fail(line.number, "initial: given twice");
                initial_line = line.number;
                initial = line.tokens[1];
            } else if (key == "marked:") {
                if (marked) fail(line.number, "marked: given twice");
                marked.emplace(line.number, std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end()));
            } else if (key == "auto-complete:") {
                if (line.tokens.size() != 2 || (line.tokens[1] != "true" && line.tokens[1] != "false"))
                    fail(line.number, "auto-complete: takes true or false");
                if (name != "damage") fail(line.number, "auto-complete: is only allowed in [damage]");
                auto_complete = line.tokens[1] == "true";
            } else if (key == "trans:") {
                if (line.tokens.size() != 1) fail(line.number, "trans: takes no arguments");
                if (!has_states) fail(line.number, "trans: before states:");
                in_trans = true;
            } else {
                fail(line.number, "unexpected '" + key + "' in [" + name + "]");
            }
        }
        if (!has_states) fail(section.header_line, "[" + name + "] has no states:");
        if (!initial_line) fail(section.header_line, "[" + name + "] has no initial:");
        a.set_initial(state(Line{*initial_line, {}}, initial));
        if (marked) {
            for (State s = 0; s < a.num_states(); ++s) a.set_marked(s, false);
            for (const auto& n : marked->second) a.set_marked(state(Line{marked->first, {}}, n), true);
        } else if (name == "damage") {
            fail(section.header_line, "[damage] requires marked:");
        }
        if (auto_complete) a = auto_complete_damage(a);
        return a;
    }

private:
    std::string source_;
};

}  // namespace

Problem parse_problem(std::istream& in, const ParseOptions& options) {
    Reader reader(options.source);
    auto sections = reader.split(in, true);
    for (const char* required : {"alphabet", "plant", "supervisor", "damage"})
        if (!sections.count(required)) throw Error(options.source + ": missing section [" + required + "]");

    const Section& alpha = sections.at("alphabet");
    std::vector<EventDecl> decls;
    std::set<std::string> names;
    for (const Line& line : alpha.lines)
        for (const auto& tok : line.tokens) {
            if (!Alphabet::valid_name(tok)) reader.fail(line.number, "invalid event name '" + tok + "'");
            if (!names.insert(tok).second) reader.fail(line.number, "duplicate event '" + tok + "'");
            decls.push_back({tok, {}});
        }
    if (decls.empty()) reader.fail(alpha.header_line, "empty alphabet");
    if (decls.size() > kMaxEvents) reader.fail(alpha.header_line, "more than 64 events");

    Alphabet plain(decls);
    auto flag_set = [&](const char* section) {
        auto it = sections.find(section);
        return it == sections.end() ? EventSet{} : reader.event_set(plain, it->second);
    };
    const EventSet c = flag_set("controllable"), o = flag_set("observable"), ca = flag_set("attackable"),
                   oa = flag_set("attacker-observable");
    for (Event e = 0; e < decls.size(); ++e)
        decls[e].flags = {c.contains(e), o.contains(e), ca.contains(e), oa.contains(e)};
    if (auto problems = Alphabet::check(decls); !problems.empty()) {
        int line = alpha.header_line;
        for (const char* s : {"controllable", "observable", "attackable", "attacker-observable"})
            if (auto it = sections.find(s); it != sections.end()) line = std::max(line, it->second.header_line);
        reader.fail(line, problems.front());
    }

    Problem p;
    p.alphabet = std::make_shared<const Alphabet>(decls);
    p.control = ControlConstraint::from(*p.alphabet);
    p.attack = AttackConstraint::from(*p.alphabet);
    p.has_target = sections.count("target-controllable") || sections.count("target-observable");
    p.target = p.control;
    if (sections.count("target-controllable")) p.target.controllable = flag_set("target-controllable");
    if (sections.count("target-observable")) p.target.observable = flag_set("target-observable");

    p.plant = reader.automaton(p.alphabet, "plant", sections.at("plant"));
    p.supervisor = reader.automaton(p.alphabet, "supervisor", sections.at("supervisor"));
    p.damage = reader.automaton(p.alphabet, "damage", sections.at("damage"));
    if (options.repair_selfloops) p.supervisor = repair_selfloops(p.supervisor, p.control);
    return p;
}

Problem parse_problem_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    ParseOptions opts = options;
    if (opts.source == "<input>") opts.source = path;
    return parse_problem(in, opts);
}

std::map<std::string, Automaton> parse_automata(std::istream& in, const AlphabetPtr& alphabet,
                                                const std::string& source) {
    Reader reader(source);
    std::map<std::string, Automaton> out;
    for (const auto& [name, section] : reader.split(in, false))
        out.emplace(name, reader.automaton(alphabet, name, section));
    return out;
}

ProblemDiagnostics check_problem(const Problem& p) {
    ProblemDiagnostics d;
    for (const auto& v : check_supervisor(p.supervisor, p.control))
        d.errors.push_back("supervisor: " + describe(v, p.supervisor));
    if (!p.target.normal()) d.errors.push_back("target control constraint is not normal");
    if (!p.attack.compatible_with(p.target))
        d.errors.push_back("attack constraint is not compatible with the target control constraint");
    DamageCheck dc = validate_damage(p.damage, closed_loop(p.plant, p.supervisor), &p.plant);
    if (!dc.total) d.errors.push_back("damage automaton is not complete (add 'auto-complete: true')");
    if (dc.damaging_closed_loop_string)
        d.errors.push_back("closed loop generates damaging string " +
                           format_word(*p.alphabet, *dc.damaging_closed_loop_string));
    if (dc.non_plant_string)
        d.warnings.push_back("damage automaton marks string " + format_word(*p.alphabet, *dc.non_plant_string) +
                             " outside the plant language");
    return d;
}

namespace {

void write_events(std::ostream& out, const char* section, const Alphabet& alphabet, EventSet set) {
    out << '[' << section << "]\n";
    if (set.empty()) return;
    bool first = true;
    for (Event e : set.to_vector()) {
        out << (first ? "" : " ") << alphabet.name(e);
        first = false;
    }
    out << '\n';
}

}  // namespace

void write_automaton_section(std::ostream& out, const std::string& section, const Automaton& a) {
    out << '[' << section << "]\nstates:";
    for (State s = 0; s < a.num_states(); ++s) out << ' ' << a.state_name(s);
    out << "\ninitial: " << a.state_name(a.initial()) << '\n';
    if (a.has_marking()) {
        out << "marked:";
        for (State s : a.marked_states()) out << ' ' << a.state_name(s);
        out << '\n';
    }
    out << "trans:\n";
    for (State s = 0; s < a.num_states(); ++s)
        for (Event e = 0; e < a.num_events(); ++e)
            if (a.defined(s, e))
                out << a.state_name(s) << ' ' << a.alphabet().name(e) << ' ' << a.state_name(a.next(s, e)) << '\n';
}

void write_problem(std::ostream& out, const Problem& p) {
    const Alphabet& alphabet = *p.alphabet;
    write_events(out, "alphabet", alphabet, alphabet.all());
    write_events(out, "controllable", alphabet, p.control.controllable);
    write_events(out, "observable", alphabet, p.control.observable);
    write_events(out, "attackable", alphabet, p.attack.attackable);
    write_events(out, "attacker-observable", alphabet, p.attack.attacker_observable);
    if (p.has_target) {
        write_events(out, "target-controllable", alphabet, p.target.controllable);
        write_events(out, "target-observable", alphabet, p.target.observable);
    }
    out << '\n';
    write_automaton_section(out, "plant", p.plant);
    out << '\n';
    write_automaton_section(out, "supervisor", p.supervisor);
    out << '\n';
    write_automaton_section(out, "damage", p.damage);
}

}  // namespace supobf
