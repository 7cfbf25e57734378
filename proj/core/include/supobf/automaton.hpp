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

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "supobf/alphabet.hpp"

namespace supobf {

using AlphabetPtr = std::shared_ptr<const Alphabet>;
using Word = std::vector<Event>;

/// Deterministic partial finite automaton over a shared alphabet.
///
/// States are dense indices 0..num_states()-1 with display names. The
/// transition table is stored row-major (state, event); an undefined entry
/// holds kNoState. When no marking is attached every state counts as marked.
class Automaton {
public:
    Automaton() = default;
    explicit Automaton(AlphabetPtr alphabet);

    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
    std::size_t num_events() const { return alphabet_ ? alphabet_->size() : 0; }
    std::size_t num_states() const { return names_.size(); }

    State add_state(std::string name);
    const std::string& state_name(State s) const { return names_.at(s); }
    std::optional<State> find_state(std::string_view name) const;

    State initial() const { return initial_; }
    void set_initial(State s);

    State next(State s, Event e) const { return trans_[index(s, e)]; }
    bool defined(State s, Event e) const { return next(s, e) != kNoState; }
    void set_transition(State src, Event e, State dst);
    void clear_transition(State src, Event e) { trans_[index(src, e)] = kNoState; }

    /// Events with a defined successor at s.
    EventSet enabled(State s) const;
    std::size_t num_transitions() const;
    bool is_total() const;

    bool has_marking() const { return !marked_.empty() || marking_set_; }
    bool is_marked(State s) const { return !has_marking() || marked_.at(s); }
    void set_marked(State s, bool marked);
    void clear_marking() {
        marked_.clear();
        marking_set_ = false;
    }
    std::vector<State> marked_states() const;

    /// States reachable from the initial state, in breadth-first order
    /// (successors explored in event order).
    std::vector<State> reachable_states() const;
    /// Copy keeping only reachable states, preserving their relative order.
    Automaton reachable_part() const;

    /// Runs w from the initial state; kNoState when it leaves the automaton.
    State run(std::span<const Event> w) const;

    friend bool operator==(const Automaton& a, const Automaton& b);

private:
    std::size_t index(State s, Event e) const { return static_cast<std::size_t>(s) * num_events() + e; }

    AlphabetPtr alphabet_;
    std::vector<std::string> names_;
    std::vector<State> trans_;
    State initial_ = 0;
    std::vector<bool> marked_;
    bool marking_set_ = false;
};

/// s in L(a), or in L_m(a) when `marked` is set.
bool accepts(const Automaton& a, std::span<const Event> s, bool marked = false);
/// Same, over event names; throws Error on an unknown name.
bool accepts(const Automaton& a, const std::vector<std::string>& s, bool marked = false);

Word parse_word(const Alphabet& alphabet, const std::vector<std::string>& names);
std::string format_word(const Alphabet& alphabet, std::span<const Event> w);

}  // namespace supobf
