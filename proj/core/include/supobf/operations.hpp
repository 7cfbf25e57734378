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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "supobf/automaton.hpp"

namespace supobf {

/// Completion of a partial automaton: an absorbing, unmarked dump state
/// receives every undefined transition, all original states are marked.
struct CompleteDFA {
    Automaton dfa;
    State dump = kNoState;
};

/// Complete product of a completed plant and a completed supervisor with two
/// markings: mark_a holds pairs where both sides are alive, mark_b pairs
/// where the plant is alive and the supervisor is in its dump state.
struct DualMarkedDFA {
    Automaton dfa;  // total, states in breadth-first order, initial = 0
    std::vector<std::pair<State, State>> components;
    std::vector<bool> mark_a;
    std::vector<bool> mark_b;

    std::size_t size() const { return dfa.num_states(); }
};

struct ProductAutomaton {
    Automaton automaton;
    std::vector<std::pair<State, State>> components;
};

struct LanguageComparison {
    bool equal = true;
    /// Shortest string in the symmetric difference when !equal.
    Word witness;
};

CompleteDFA complete(const Automaton& p);
Automaton strip_dump(const CompleteDFA& c);

/// Synchronous product, reachable part only. Events private to one side move
/// that side alone; shared events move both.
ProductAutomaton sync_product(const Automaton& a, const Automaton& b);

DualMarkedDFA build_gds(const CompleteDFA& gbar, const CompleteDFA& sbar);

/// Compares the closed (prefix-closed) languages of two automata over the
/// same alphabet.
LanguageComparison language_equal(const Automaton& a, const Automaton& b);

/// Shortest word leading from the initial state to a state in `targets`.
std::optional<Word> shortest_word_to(const Automaton& a, const std::vector<bool>& targets);

/// Isomorphism invariant of the reachable part: states numbered in
/// breadth-first order, then for each state and each event the successor's
/// number or -1. Two automata have equal codes iff their reachable parts are
/// isomorphic.
std::vector<std::int32_t> canonical_code(const Automaton& a);

/// Reachable part renumbered in breadth-first order, states named x0, x1, ...
Automaton canonicalize(const Automaton& a);

struct DotOptions {
    std::string graph_name = "automaton";
    State dump = kNoState;
    const std::vector<bool>* mark_a = nullptr;
    const std::vector<bool>* mark_b = nullptr;
};

void write_dot(std::ostream& out, const Automaton& a, const DotOptions& options = {});

}  // namespace supobf
