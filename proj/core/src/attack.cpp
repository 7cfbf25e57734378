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

#include "supobf/attack.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <set>

namespace supobf {

std::string format_attacker_event(const AttackerEvent& a, const Alphabet& alphabet) {
    std::string obs = a.observed == kEpsilon ? "ε" : alphabet.name(a.observed);
    return "(" + obs + ", " + alphabet.format(a.command) + ")";
}

// ---- annotation -----------------------------------------------------------

AnnotatedSupervisor::AnnotatedSupervisor(Automaton supervisor, ControlConstraint constraint)
    : supervisor_(std::move(supervisor)), constraint_(constraint) {
    commands_.reserve(supervisor_.num_states());
    for (State x = 0; x < supervisor_.num_states(); ++x) commands_.push_back(control_command(supervisor_, x));
}

std::optional<EventSet> AnnotatedSupervisor::label(State x, Event e) const {
    if (!constraint_.observable.contains(e)) return std::nullopt;
    State t = supervisor_.next(x, e);
    if (t == kNoState) return std::nullopt;
    return commands_[t];
}

std::vector<EventSet> AnnotatedSupervisor::command_alphabet() const {
    std::set<EventSet> out;
    for (State x = 0; x < supervisor_.num_states(); ++x)
        for (Event e : constraint_.observable.to_vector())
            if (auto l = label(x, e)) out.insert(*l);
    return {out.begin(), out.end()};
}

AnnotatedSupervisor annotate(const Supervisor& s) {
    if (!check_supervisor(s.automaton, s.constraint).empty())
        throw Error("annotate: supervisor violates its control constraint");
    return AnnotatedSupervisor(s.automaton, s.constraint);
}

// ---- generalized product --------------------------------------------------

AttackOutcome GPAutomaton::attack(State v, Event e) const {
    for (const auto& [ev, outcome] : attacks[v])
        if (ev == e) return outcome;
    return AttackOutcome::None;
}

GPAutomaton general_product(const Automaton& g, const AnnotatedSupervisor& sa, const Automaton& h,
                            const AttackConstraint& ac) {
    const Automaton& s = sa.supervisor();
    if (!h.is_total()) throw Error("general_product: damage automaton must be complete");
    if (!(g.alphabet() == s.alphabet()) || !(g.alphabet() == h.alphabet()))
        throw Error("general_product: automata are over different alphabets");
    const ControlConstraint& c = sa.constraint();
    const std::size_t num_events = g.num_events();

    GPAutomaton gp;
    std::map<std::array<State, 3>, State> index;
    auto intern = [&](const std::array<State, 3>& v) {
        auto [it, fresh] = index.emplace(v, static_cast<State>(gp.states.size()));
        if (fresh) {
            gp.states.push_back(v);
            gp.edges.emplace_back();
            gp.attacks.emplace_back();
        }
        return it->second;
    };
    if (g.num_states() == 0 || s.num_states() == 0 || h.num_states() == 0) return gp;
    intern({g.initial(), s.initial(), h.initial()});

    for (State v = 0; v < gp.states.size(); ++v) {
        const auto [q, x, z] = gp.states[v];
        for (Event e = 0; e < num_events; ++e) {
            const State q2 = g.next(q, e);
            if (q2 == kNoState) continue;
            const State x2 = sa.next(x, e);
            const State z2 = h.next(z, e);
            if (x2 == kNoState) {
                // Rules 4 and 5: the attacker enables a disabled attackable event.
                if (ac.attackable.contains(e))
                    gp.attacks[v].emplace_back(e, h.is_marked(z2) ? AttackOutcome::Top : AttackOutcome::Bottom);
                continue;
            }
            GpEdge edge{e, true, {}, kNoState};
            if (c.observable.contains(e)) {
                // Rule 1 (attacker sees e) or rule 2 (attacker sees only the command).
                edge.silent = false;
                edge.label.observed = ac.attacker_observable.contains(e) ? e : kEpsilon;
                edge.label.command = sa.command(x2);
            }
            edge.target = intern({q2, x2, z2});
            gp.edges[v].push_back(edge);
        }
    }
    return gp;
}

EpsilonAutomaton attacker_projection(const GPAutomaton& gp) {
    EpsilonAutomaton eps;
    eps.edges.resize(gp.size());
    for (State v = 0; v < gp.size(); ++v)
        for (const GpEdge& e : gp.edges[v])
            eps.edges[v].push_back({e.silent ? std::nullopt : std::optional<AttackerEvent>(e.label), e.target});
    return eps;
}

// ---- determinization ------------------------------------------------------

namespace {

std::vector<State> eps_closure(const EpsilonAutomaton& eps, std::vector<State> seed) {
    std::vector<bool> in(eps.size(), false);
    std::vector<State> stack;
    for (State v : seed)
        if (!in[v]) {
            in[v] = true;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        State v = stack.back();
        stack.pop_back();
        for (const auto& e : eps.edges[v])
            if (!e.label && !in[e.target]) {
                in[e.target] = true;
                stack.push_back(e.target);
            }
    }
    std::vector<State> out;
    for (State v = 0; v < eps.size(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

EventSet attack_label(const std::vector<State>& y, const GPAutomaton& gp, const AttackConstraint& ac) {
    EventSet label;
    for (Event e : ac.attackable.to_vector()) {
        bool top = false, bottom = false;
        for (State v : y) {
            AttackOutcome o = gp.attack(v, e);
            top = top || o == AttackOutcome::Top;
            bottom = bottom || o == AttackOutcome::Bottom;
        }
        if (top && !bottom) label.insert(e);
    }
    return label;
}

}  // namespace

std::vector<AttackerEvent> SubsetAutomaton::path_to(std::size_t y) const {
    std::vector<AttackerEvent> path;
    while (y != 0) {
        path.push_back(parent[y].second);
        y = parent[y].first;
    }
    return {path.rbegin(), path.rend()};
}

SubsetAutomaton determinize_and_label(const EpsilonAutomaton& eps, const GPAutomaton& gp,
                                      const AttackConstraint& ac) {
    SubsetAutomaton sub;
    if (eps.size() == 0) return sub;
    std::map<std::vector<State>, std::size_t> index;
    auto intern = [&](std::vector<State> y, std::size_t from, const AttackerEvent& via) {
        auto [it, fresh] = index.emplace(y, sub.subsets.size());
        if (fresh) {
            sub.label.push_back(attack_label(y, gp, ac));
            sub.subsets.push_back(std::move(y));
            sub.transitions.emplace_back();
            sub.parent.emplace_back(from, via);
        }
        return it->second;
    };
    intern(eps_closure(eps, {eps.initial}), 0, {});

    for (std::size_t i = 0; i < sub.subsets.size(); ++i) {
        std::map<AttackerEvent, std::vector<State>> moves;
        for (State v : sub.subsets[i])
            for (const auto& e : eps.edges[v])
                if (e.label) moves[*e.label].push_back(e.target);
        for (auto& [event, targets] : moves) {
            std::size_t j = intern(eps_closure(eps, std::move(targets)), i, event);
            sub.transitions[i].emplace_back(event, j);
        }
    }
    return sub;
}

AttackVerdict non_attackable(const Automaton& g, const Supervisor& s, const Automaton& h,
                             const AttackConstraint& ac) {
    if (!ac.compatible_with(s.constraint))
        throw Error("attack constraint is not compatible with the supervisor's control constraint");
    AnnotatedSupervisor sa = annotate(s);
    GPAutomaton gp = general_product(g, sa, h, ac);
    SubsetAutomaton sub = determinize_and_label(attacker_projection(gp), gp, ac);

    AttackVerdict verdict;
    verdict.gp_states = gp.size();
    verdict.subset_states = sub.size();
    // Subsets are numbered breadth-first, so the first labeled one is closest.
    for (std::size_t y = 0; y < sub.size(); ++y)
        if (!sub.label[y].empty()) {
            verdict.non_attackable = false;
            verdict.witness = AttackWitness{sub.path_to(y), y, sub.label[y].to_vector().front()};
            break;
        }
    return verdict;
}

std::string format_witness(const AttackWitness& w, const Alphabet& alphabet) {
    std::string out;
    for (const auto& o : w.observations) out += format_attacker_event(o, alphabet) + "\n";
    out += "ATTACK " + alphabet.name(w.event) + "\n";
    return out;
}

void write_subset_dot(std::ostream& out, const SubsetAutomaton& sub, const GPAutomaton& gp, const Automaton& g,
                      const Automaton& s, const Automaton& h) {
    const Alphabet& alphabet = g.alphabet();
    auto escape = [](const std::string& in) {
        std::string r;
        for (char c : in) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    };
    out << "digraph sub {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (std::size_t y = 0; y < sub.size(); ++y) {
        std::string label;
        for (State v : sub.subsets[y]) {
            const auto& [q, x, z] = gp.states[v];
            if (!label.empty()) label += "\\n";
            label += "(" + g.state_name(q) + "," + s.state_name(x) + "," + h.state_name(z) + ")";
        }
        out << "  y" << y << " [shape=box, label=\"" << escape(label);
        if (!sub.label[y].empty())
            out << "\\nLf=" << escape(alphabet.format(sub.label[y])) << "\", style=filled, fillcolor=lightcoral";
        else
            out << "\"";
        out << "];\n";
    }
    if (sub.size() > 0) out << "  __init -> y0;\n";
    for (std::size_t y = 0; y < sub.size(); ++y)
        for (const auto& [event, t] : sub.transitions[y])
            out << "  y" << y << " -> y" << t << " [label=\"" << escape(format_attacker_event(event, alphabet))
                << "\"];\n";
    out << "}\n";
}

}  // namespace supobf
