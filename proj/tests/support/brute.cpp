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

#include "brute.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace supobf::testing {

Automaton make_automaton(const AlphabetPtr& alphabet, std::size_t n,
                         const std::vector<std::tuple<State, std::string, State>>& trans) {
    Automaton a(alphabet);
    for (std::size_t i = 0; i < n; ++i) a.add_state(std::to_string(i));
    a.set_initial(0);
    for (const auto& [src, event, dst] : trans) a.set_transition(src, alphabet->at(event), dst);
    return a;
}

std::vector<Word> all_words(std::size_t num_events, std::size_t max_len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        for (Event e = 0; e < num_events; ++e) {
            Word w = out[i];
            w.push_back(e);
            out.push_back(std::move(w));
        }
    }
    return out;
}

bool member(const Automaton& a, const Word& w) {
    State s = a.initial();
    for (Event e : w) {
        s = a.next(s, e);
        if (s == kNoState) return false;
    }
    return true;
}

bool valid_supervisor(const Automaton& s, const ControlConstraint& c) {
    for (State x = 0; x < s.num_states(); ++x)
        for (Event e = 0; e < s.num_events(); ++e) {
            State t = s.next(x, e);
            if (!c.controllable.contains(e) && t == kNoState) return false;
            if (!c.observable.contains(e) && t != kNoState && t != x) return false;
        }
    return true;
}

bool same_closed_loop(const Automaton& g, const Automaton& s1, const Automaton& s2) {
    using Triple = std::tuple<State, State, State>;
    std::set<Triple> seen{{g.initial(), s1.initial(), s2.initial()}};
    std::deque<Triple> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        auto [q, x1, x2] = queue.front();
        queue.pop_front();
        for (Event e = 0; e < g.num_events(); ++e) {
            State q2 = g.next(q, e);
            if (q2 == kNoState) continue;
            State y1 = s1.next(x1, e), y2 = s2.next(x2, e);
            if ((y1 == kNoState) != (y2 == kNoState)) return false;
            if (y1 == kNoState) continue;
            if (seen.insert({q2, y1, y2}).second) queue.push_back({q2, y1, y2});
        }
    }
    return true;
}

std::vector<Automaton> all_supervisors(const AlphabetPtr& alphabet, const ControlConstraint& c, std::size_t n) {
    // One slot per (state, observable event); value n means undefined.
    std::vector<std::pair<State, Event>> slots;
    for (State x = 0; x < n; ++x)
        for (Event e = 0; e < alphabet->size(); ++e)
            if (c.observable.contains(e)) slots.emplace_back(x, e);
    std::vector<std::size_t> choice(slots.size(), 0);
    std::vector<Automaton> out;
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < slots.size() && ok; ++i)
            if (choice[i] == n && !c.controllable.contains(slots[i].second)) ok = false;
        if (ok) {
            Automaton s(alphabet);
            for (std::size_t i = 0; i < n; ++i) s.add_state(std::to_string(i));
            s.set_initial(0);
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (choice[i] < n) s.set_transition(slots[i].first, slots[i].second, static_cast<State>(choice[i]));
            for (State x = 0; x < n; ++x)
                for (Event e = 0; e < alphabet->size(); ++e)
                    if (!c.observable.contains(e)) s.set_transition(x, e, x);
            out.push_back(std::move(s));
        }
        std::size_t i = 0;
        while (i < slots.size() && choice[i] == n) choice[i++] = 0;
        if (i == slots.size()) break;
        ++choice[i];
    }
    return out;
}

std::size_t reachable_count(const Automaton& a) {
    std::set<State> seen{a.initial()};
    std::deque<State> queue{a.initial()};
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (Event e = 0; e < a.num_events(); ++e)
            if (State t = a.next(s, e); t != kNoState && seen.insert(t).second) queue.push_back(t);
    }
    return seen.size();
}

std::vector<int> canonical_form(const Automaton& a) {
    std::map<State, int> number{{a.initial(), 0}};
    std::vector<State> order{a.initial()};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Event e = 0; e < a.num_events(); ++e)
            if (State t = a.next(order[i], e); t != kNoState && number.emplace(t, static_cast<int>(order.size())).second)
                order.push_back(t);
    std::vector<int> out{static_cast<int>(order.size())};
    for (State s : order)
        for (Event e = 0; e < a.num_events(); ++e) {
            State t = a.next(s, e);
            out.push_back(t == kNoState ? -1 : number.at(t));
        }
    return out;
}

std::vector<std::tuple<int, Event, int>> labeled_table(const Automaton& a) {
    auto index = [&](State s) { return std::stoi(a.state_name(s).substr(a.state_name(s).find_first_of("0123456789"))); };
    std::vector<std::tuple<int, Event, int>> out;
    for (State s = 0; s < a.num_states(); ++s)
        for (Event e = 0; e < a.num_events(); ++e)
            if (State t = a.next(s, e); t != kNoState) out.emplace_back(index(s), e, index(t));
    std::sort(out.begin(), out.end());
    return out;
}

Automaton permute_states(const Automaton& a, const std::vector<State>& perm) {
    std::vector<State> inverse(perm.size());
    for (State i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
    Automaton out(a.alphabet_ptr());
    for (State i = 0; i < perm.size(); ++i) out.add_state(a.state_name(inverse[i]));
    for (State s = 0; s < a.num_states(); ++s)
        for (Event e = 0; e < a.num_events(); ++e)
            if (State t = a.next(s, e); t != kNoState) out.set_transition(perm[s], e, perm[t]);
    out.set_initial(perm[a.initial()]);
    if (a.has_marking())
        for (State s = 0; s < a.num_states(); ++s) out.set_marked(perm[s], a.is_marked(s));
    return out;
}

AlphabetPtr random_alphabet(std::mt19937& rng, std::size_t num_events) {
    std::bernoulli_distribution coin(0.6);
    std::vector<EventDecl> decls;
    for (std::size_t i = 0; i < num_events; ++i) {
        EventFlags f;
        f.observable = coin(rng);
        f.controllable = f.observable && coin(rng);
        f.attacker_observable = f.observable && coin(rng);
        f.attackable = f.controllable && f.attacker_observable && coin(rng);
        decls.push_back({std::string(1, static_cast<char>('a' + i)), f});
    }
    return std::make_shared<const Alphabet>(decls);
}

Automaton random_plant(std::mt19937& rng, const AlphabetPtr& alphabet, std::size_t states) {
    std::bernoulli_distribution defined(0.55);
    std::uniform_int_distribution<State> target(0, static_cast<State>(states - 1));
    Automaton g(alphabet);
    for (std::size_t i = 0; i < states; ++i) g.add_state("q" + std::to_string(i));
    for (State s = 0; s < states; ++s)
        for (Event e = 0; e < alphabet->size(); ++e)
            if (defined(rng)) g.set_transition(s, e, target(rng));
    return g;
}

Automaton random_supervisor(std::mt19937& rng, const AlphabetPtr& alphabet, const ControlConstraint& c,
                            std::size_t states) {
    std::bernoulli_distribution defined(0.6);
    std::uniform_int_distribution<State> target(0, static_cast<State>(states - 1));
    Automaton s(alphabet);
    for (std::size_t i = 0; i < states; ++i) s.add_state("x" + std::to_string(i));
    for (State x = 0; x < states; ++x)
        for (Event e = 0; e < alphabet->size(); ++e) {
            if (!c.observable.contains(e))
                s.set_transition(x, e, x);
            else if (!c.controllable.contains(e) || defined(rng))
                s.set_transition(x, e, target(rng));
        }
    return s;
}

Automaton random_damage(std::mt19937& rng, const AlphabetPtr& alphabet, const Automaton& plant,
                        const Automaton& supervisor, std::size_t states) {
    std::uniform_int_distribution<State> target(0, static_cast<State>(states - 1));
    Automaton h(alphabet);
    for (std::size_t i = 0; i < states; ++i) h.add_state("z" + std::to_string(i));
    for (State z = 0; z < states; ++z)
        for (Event e = 0; e < alphabet->size(); ++e) h.set_transition(z, e, target(rng));

    using Triple = std::tuple<State, State, State>;
    std::set<Triple> seen{{plant.initial(), supervisor.initial(), 0}};
    std::deque<Triple> queue(seen.begin(), seen.end());
    std::set<State> reached{0};
    while (!queue.empty()) {
        auto [q, x, z] = queue.front();
        queue.pop_front();
        for (Event e = 0; e < alphabet->size(); ++e) {
            State q2 = plant.next(q, e), x2 = supervisor.next(x, e);
            if (q2 == kNoState || x2 == kNoState) continue;
            State z2 = h.next(z, e);
            reached.insert(z2);
            if (seen.insert({q2, x2, z2}).second) queue.push_back({q2, x2, z2});
        }
    }
    std::bernoulli_distribution mark(0.7);
    for (State z = 0; z < states; ++z) h.set_marked(z, !reached.count(z) && mark(rng));
    return h;
}

Instance random_instance(std::mt19937& rng, const InstanceLimits& limits) {
    auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(1, hi)(rng); };
    Instance in;
    in.alphabet = random_alphabet(rng, pick(limits.max_events));
    in.control = ControlConstraint::from(*in.alphabet);
    in.attack = AttackConstraint::from(*in.alphabet);
    in.plant = random_plant(rng, in.alphabet, pick(limits.max_plant));
    in.supervisor = random_supervisor(rng, in.alphabet, in.control, pick(limits.max_supervisor));
    in.damage = random_damage(rng, in.alphabet, in.plant, in.supervisor, pick(limits.max_damage));
    return in;
}

std::string fixture(const std::string& name) { return std::string(SUPOBF_FIXTURE_DIR) + "/" + name; }

}  // namespace supobf::testing
