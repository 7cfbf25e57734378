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

#include "supobf/operations.hpp"

#include <deque>
#include <map>
#include <ostream>

namespace supobf {

namespace {

std::string fresh_name(const Automaton& a, std::string base) {
    while (a.find_state(base)) base += '\'';
    return base;
}

void require_same_alphabet(const Automaton& a, const Automaton& b, const char* what) {
    if (a.alphabet_ptr() != b.alphabet_ptr() && !(a.alphabet() == b.alphabet()))
        throw Error(std::string(what) + ": automata are over different alphabets");
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

CompleteDFA complete(const Automaton& p) {
    CompleteDFA c{p, kNoState};
    c.dfa.clear_marking();
    c.dump = c.dfa.add_state(fresh_name(p, "dump"));
    for (State s = 0; s < c.dfa.num_states(); ++s) {
        c.dfa.set_marked(s, s != c.dump);
        for (Event e = 0; e < c.dfa.num_events(); ++e)
            if (!c.dfa.defined(s, e)) c.dfa.set_transition(s, e, c.dump);
    }
    return c;
}

Automaton strip_dump(const CompleteDFA& c) {
    const Automaton& src = c.dfa;
    Automaton out(src.alphabet_ptr());
    std::vector<State> remap(src.num_states(), kNoState);
    for (State s = 0; s < src.num_states(); ++s)
        if (s != c.dump) remap[s] = out.add_state(src.state_name(s));
    for (State s = 0; s < src.num_states(); ++s) {
        if (s == c.dump) continue;
        for (Event e = 0; e < src.num_events(); ++e) {
            State t = src.next(s, e);
            if (t != kNoState && t != c.dump) out.set_transition(remap[s], e, remap[t]);
        }
    }
    if (src.initial() != c.dump && out.num_states() > 0) out.set_initial(remap[src.initial()]);
    return out;
}

ProductAutomaton sync_product(const Automaton& a, const Automaton& b) {
    // Union alphabet: a's events first, then b's new ones.
    AlphabetPtr alphabet = a.alphabet_ptr();
    std::vector<Event> from_a, from_b;  // union event -> local event or kNoState
    bool same = a.alphabet_ptr() == b.alphabet_ptr() || a.alphabet() == b.alphabet();
    if (same) {
        for (Event e = 0; e < a.num_events(); ++e) {
            from_a.push_back(e);
            from_b.push_back(e);
        }
    } else {
        std::vector<EventDecl> decls = a.alphabet().events();
        for (Event e = 0; e < a.num_events(); ++e) {
            from_a.push_back(e);
            auto other = b.alphabet().find(a.alphabet().name(e));
            if (other && !(b.alphabet().flags(*other) == a.alphabet().flags(e)))
                throw Error("sync_product: event '" + a.alphabet().name(e) +
                            "' has conflicting attributes");
            from_b.push_back(other ? *other : kNoState);
        }
        for (Event e = 0; e < b.num_events(); ++e) {
            if (a.alphabet().find(b.alphabet().name(e))) continue;
            decls.push_back(b.alphabet().events()[e]);
            from_a.push_back(kNoState);
            from_b.push_back(e);
        }
        alphabet = std::make_shared<const Alphabet>(std::move(decls));
    }

    ProductAutomaton out{Automaton(alphabet), {}};
    if (a.num_states() == 0 || b.num_states() == 0) return out;
    std::map<std::pair<State, State>, State> index;
    std::deque<State> queue;
    auto intern = [&](std::pair<State, State> p) {
        auto [it, fresh] = index.emplace(p, static_cast<State>(out.components.size()));
        if (fresh) {
            out.automaton.add_state("(" + a.state_name(p.first) + "," + b.state_name(p.second) + ")");
            out.components.push_back(p);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern({a.initial(), b.initial()});
    out.automaton.set_initial(0);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        auto [x, y] = out.components[s];
        for (Event e = 0; e < out.automaton.num_events(); ++e) {
            State nx = x, ny = y;
            if (from_a[e] != kNoState) nx = a.next(x, from_a[e]);
            if (from_b[e] != kNoState) ny = b.next(y, from_b[e]);
            if (nx == kNoState || ny == kNoState) continue;
            State t = intern({nx, ny});
            out.automaton.set_transition(s, e, t);
        }
    }
    if (a.has_marking() || b.has_marking())
        for (State s = 0; s < out.automaton.num_states(); ++s) {
            auto [x, y] = out.components[s];
            out.automaton.set_marked(s, a.is_marked(x) && b.is_marked(y));
        }
    return out;
}

DualMarkedDFA build_gds(const CompleteDFA& gbar, const CompleteDFA& sbar) {
    require_same_alphabet(gbar.dfa, sbar.dfa, "build_gds");
    ProductAutomaton p = sync_product(gbar.dfa, sbar.dfa);
    DualMarkedDFA out;
    out.dfa = std::move(p.automaton);
    out.dfa.clear_marking();
    out.components = std::move(p.components);
    out.mark_a.resize(out.components.size());
    out.mark_b.resize(out.components.size());
    for (std::size_t y = 0; y < out.components.size(); ++y) {
        auto [q, x] = out.components[y];
        out.mark_a[y] = q != gbar.dump && x != sbar.dump;
        out.mark_b[y] = q != gbar.dump && x == sbar.dump;
    }
    return out;
}

LanguageComparison language_equal(const Automaton& a, const Automaton& b) {
    require_same_alphabet(a, b, "language_equal");
    LanguageComparison result;
    if (a.num_states() == 0 || b.num_states() == 0) {
        result.equal = a.num_states() == b.num_states();
        return result;
    }
    struct Node {
        std::size_t parent;
        Event event;
    };
    std::vector<Node> nodes{{0, 0}};
    std::map<std::pair<State, State>, std::size_t> seen{{{a.initial(), b.initial()}, 0}};
    std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
    auto path_to = [&](std::size_t n) {
        Word w;
        while (n != 0) {
            w.push_back(nodes[n].event);
            n = nodes[n].parent;
        }
        return Word(w.rbegin(), w.rend());
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [x, y] = pairs[i];
        for (Event e = 0; e < a.num_events(); ++e) {
            State nx = a.next(x, e), ny = b.next(y, e);
            if (nx == kNoState && ny == kNoState) continue;
            if (nx == kNoState || ny == kNoState) {
                result.equal = false;
                result.witness = path_to(i);
                result.witness.push_back(e);
                return result;
            }
            if (seen.emplace(std::pair{nx, ny}, pairs.size()).second) {
                pairs.emplace_back(nx, ny);
                nodes.push_back({i, e});
            }
        }
    }
    return result;
}

std::optional<Word> shortest_word_to(const Automaton& a, const std::vector<bool>& targets) {
    if (a.num_states() == 0) return std::nullopt;
    std::vector<State> parent(a.num_states(), kNoState);
    std::vector<Event> via(a.num_states(), 0);
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (targets[s]) {
            Word w;
            for (State c = s; c != a.initial(); c = parent[c]) w.push_back(via[c]);
            return Word(w.rbegin(), w.rend());
        }
        for (Event e = 0; e < a.num_events(); ++e) {
            State t = a.next(s, e);
            if (t == kNoState || seen[t]) continue;
            seen[t] = true;
            parent[t] = s;
            via[t] = e;
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

std::vector<std::int32_t> canonical_code(const Automaton& a) {
    std::vector<State> order = a.reachable_states();
    std::vector<std::int32_t> number(a.num_states(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) number[order[i]] = static_cast<std::int32_t>(i);
    std::vector<std::int32_t> code;
    code.reserve(1 + order.size() * a.num_events());
    code.push_back(static_cast<std::int32_t>(order.size()));
    for (State s : order)
        for (Event e = 0; e < a.num_events(); ++e) {
            State t = a.next(s, e);
            code.push_back(t == kNoState ? -1 : number[t]);
        }
    return code;
}

Automaton canonicalize(const Automaton& a) {
    std::vector<State> order = a.reachable_states();
    std::vector<State> number(a.num_states(), kNoState);
    Automaton out(a.alphabet_ptr());
    for (std::size_t i = 0; i < order.size(); ++i)
        number[order[i]] = out.add_state("x" + std::to_string(i));
    for (State s : order)
        for (Event e = 0; e < a.num_events(); ++e)
            if (State t = a.next(s, e); t != kNoState) out.set_transition(number[s], e, number[t]);
    if (!order.empty()) out.set_initial(0);
    if (a.has_marking())
        for (State s : order) out.set_marked(number[s], a.is_marked(s));
    return out;
}

void write_dot(std::ostream& out, const Automaton& a, const DotOptions& options) {
    out << "digraph \"" << dot_escape(options.graph_name) << "\" {\n";
    out << "  rankdir=LR;\n  __init [shape=point];\n";
    for (State s = 0; s < a.num_states(); ++s) {
        out << "  s" << s << " [label=\"" << dot_escape(a.state_name(s)) << "\"";
        bool marked = a.has_marking() && a.is_marked(s) && s != options.dump;
        out << ", shape=" << (marked ? "doublecircle" : "circle");
        if (s == options.dump) out << ", style=dashed";
        if (options.mark_a && (*options.mark_a)[s])
            out << ", style=filled, fillcolor=palegreen";
        else if (options.mark_b && (*options.mark_b)[s])
            out << ", style=filled, fillcolor=lightcoral";
        out << "];\n";
    }
    if (a.num_states() > 0) out << "  __init -> s" << a.initial() << ";\n";
    for (State s = 0; s < a.num_states(); ++s) {
        // One edge per target, labels joined.
        std::map<State, std::string> edges;
        for (Event e = 0; e < a.num_events(); ++e) {
            State t = a.next(s, e);
            if (t == kNoState) continue;
            auto& label = edges[t];
            if (!label.empty()) label += ", ";
            label += a.alphabet().name(e);
        }
        for (const auto& [t, label] : edges) {
            out << "  s" << s << " -> s" << t << " [label=\"" << dot_escape(label) << "\"";
            if (s == options.dump || t == options.dump) out << ", style=dashed";
            out << "];\n";
        }
    }
    out << "}\n";
}

}  // namespace supobf
