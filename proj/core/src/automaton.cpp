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

#include "supobf/automaton.hpp"

#include <deque>

namespace supobf {

Automaton::Automaton(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
    if (!alphabet_) throw Error("automaton requires an alphabet");
}

State Automaton::add_state(std::string name) {
    names_.push_back(std::move(name));
    trans_.resize(trans_.size() + num_events(), kNoState);
    if (!marked_.empty() || marking_set_) marked_.push_back(false);
    return static_cast<State>(names_.size() - 1);
}

std::optional<State> Automaton::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<State>(i);
    return std::nullopt;
}

void Automaton::set_initial(State s) {
    if (s >= num_states()) throw Error("initial state out of range");
    initial_ = s;
}

void Automaton::set_transition(State src, Event e, State dst) {
    if (src >= num_states() || dst >= num_states()) throw Error("transition endpoint out of range");
    if (e >= num_events()) throw Error("transition event out of range");
    trans_[index(src, e)] = dst;
}

EventSet Automaton::enabled(State s) const {
    EventSet out;
    for (Event e = 0; e < num_events(); ++e)
        if (defined(s, e)) out.insert(e);
    return out;
}

std::size_t Automaton::num_transitions() const {
    std::size_t n = 0;
    for (State t : trans_)
        if (t != kNoState) ++n;
    return n;
}

bool Automaton::is_total() const {
    for (State t : trans_)
        if (t == kNoState) return false;
    return true;
}

void Automaton::set_marked(State s, bool marked) {
    if (s >= num_states()) throw Error("marked state out of range");
    if (!marking_set_) {
        marked_.assign(num_states(), false);
        marking_set_ = true;
    }
    marked_[s] = marked;
}

std::vector<State> Automaton::marked_states() const {
    std::vector<State> out;
    for (State s = 0; s < num_states(); ++s)
        if (is_marked(s)) out.push_back(s);
    return out;
}

std::vector<State> Automaton::reachable_states() const {
    std::vector<State> order;
    if (num_states() == 0) return order;
    std::vector<bool> seen(num_states(), false);
    std::deque<State> queue{initial_};
    seen[initial_] = true;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        order.push_back(s);
        for (Event e = 0; e < num_events(); ++e) {
            State t = next(s, e);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    return order;
}

Automaton Automaton::reachable_part() const {
    std::vector<bool> keep(num_states(), false);
    for (State s : reachable_states()) keep[s] = true;
    std::vector<State> remap(num_states(), kNoState);
    Automaton out(alphabet_);
    for (State s = 0; s < num_states(); ++s)
        if (keep[s]) remap[s] = out.add_state(names_[s]);
    for (State s = 0; s < num_states(); ++s) {
        if (!keep[s]) continue;
        for (Event e = 0; e < num_events(); ++e)
            if (State t = next(s, e); t != kNoState) out.set_transition(remap[s], e, remap[t]);
    }
    if (num_states() > 0) out.set_initial(remap[initial_]);
    if (has_marking())
        for (State s = 0; s < num_states(); ++s)
            if (keep[s]) out.set_marked(remap[s], is_marked(s));
    return out;
}

State Automaton::run(std::span<const Event> w) const {
    if (num_states() == 0) return kNoState;
    State s = initial_;
    for (Event e : w) {
        if (e >= num_events()) throw Error("event out of range");
        s = next(s, e);
        if (s == kNoState) return kNoState;
    }
    return s;
}

bool operator==(const Automaton& a, const Automaton& b) {
    if (a.num_states() != b.num_states()) return false;
    if ((a.alphabet_ == nullptr) != (b.alphabet_ == nullptr)) return false;
    if (a.alphabet_ && !(*a.alphabet_ == *b.alphabet_)) return false;
    if (a.names_ != b.names_ || a.trans_ != b.trans_) return false;
    if (a.num_states() > 0 && a.initial_ != b.initial_) return false;
    if (a.has_marking() != b.has_marking()) return false;
    for (State s = 0; s < a.num_states(); ++s)
        if (a.is_marked(s) != b.is_marked(s)) return false;
    return true;
}

bool accepts(const Automaton& a, std::span<const Event> s, bool marked) {
    State end = a.run(s);
    if (end == kNoState) return false;
    return !marked || a.is_marked(end);
}

bool accepts(const Automaton& a, const std::vector<std::string>& s, bool marked) {
    Word w = parse_word(a.alphabet(), s);
    return accepts(a, w, marked);
}

Word parse_word(const Alphabet& alphabet, const std::vector<std::string>& names) {
    Word w;
    w.reserve(names.size());
    for (const auto& n : names) w.push_back(alphabet.at(n));
    return w;
}

std::string format_word(const Alphabet& alphabet, std::span<const Event> w) {
    if (w.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += alphabet.name(w[i]);
    }
    return out;
}

}  // namespace supobf
