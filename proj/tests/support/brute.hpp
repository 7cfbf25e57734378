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

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "supobf/attack.hpp"
#include "supobf/automaton.hpp"
#include "supobf/control.hpp"

namespace supobf::testing {

/// Automaton over `alphabet` with states "0".."n-1", initial 0.
Automaton make_automaton(const AlphabetPtr& alphabet, std::size_t n,
                         const std::vector<std::tuple<State, std::string, State>>& trans);

/// All words over num_events events with length at most max_len.
std::vector<Word> all_words(std::size_t num_events, std::size_t max_len);

/// Membership in the prefix-closed language, by direct replay.
bool member(const Automaton& a, const Word& w);

/// Whether (C) and normal-form (O) hold, checked state by state.
bool valid_supervisor(const Automaton& s, const ControlConstraint& c);

/// L(G || s1) == L(G || s2), by a breadth-first walk over (q, x1, x2).
bool same_closed_loop(const Automaton& g, const Automaton& s1, const Automaton& s2);

/// Every valid supervisor on exactly n states (0..n-1, initial 0), reachable
/// or not.
std::vector<Automaton> all_supervisors(const AlphabetPtr& alphabet, const ControlConstraint& c, std::size_t n);

std::size_t reachable_count(const Automaton& a);

/// Breadth-first relabeling of the reachable part: transition rows in new
/// numbering, -1 for undefined.
std::vector<int> canonical_form(const Automaton& a);

/// Reachable transition table indexed by the state names' numeric suffix.
std::vector<std::tuple<int, Event, int>> labeled_table(const Automaton& a);

/// Copy of `a` with state i moved to perm[i]; initial follows.
Automaton permute_states(const Automaton& a, const std::vector<State>& perm);

struct Instance {
    AlphabetPtr alphabet;
    Automaton plant;
    Automaton supervisor;
    Automaton damage;
    ControlConstraint control;
    AttackConstraint attack;
};

struct InstanceLimits {
    std::size_t max_events = 4;
    std::size_t max_plant = 4;
    std::size_t max_supervisor = 4;
    std::size_t max_damage = 4;
};

AlphabetPtr random_alphabet(std::mt19937& rng, std::size_t num_events);
Automaton random_plant(std::mt19937& rng, const AlphabetPtr& alphabet, std::size_t states);
Automaton random_supervisor(std::mt19937& rng, const AlphabetPtr& alphabet, const ControlConstraint& c,
                            std::size_t states);
/// Complete damage automaton; marks a random subset of the states the closed
/// loop cannot reach.
Automaton random_damage(std::mt19937& rng, const AlphabetPtr& alphabet, const Automaton& plant,
                        const Automaton& supervisor, std::size_t states);
Instance random_instance(std::mt19937& rng, const InstanceLimits& limits);

/// Fixture directory configured by the build.
std::string fixture(const std::string& name);

}  // namespace supobf::testing
