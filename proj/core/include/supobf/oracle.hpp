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

#include <array>
#include <cstddef>
#include <vector>

#include "supobf/attack.hpp"
#include "supobf/automaton.hpp"
#include "supobf/control.hpp"

namespace supobf {

enum class OracleVerdict { Attackable, NotAttackable, Inconclusive };

const char* to_string(OracleVerdict v);

using Configuration = std::array<State, 3>;  // (plant, supervisor, damage)

struct OracleStats {
    std::size_t pairs = 0;         // (observation, configuration) pairs visited
    std::size_t classes = 0;       // distinct observations visited
    std::size_t uo_diameter = 0;   // D: longest shortest unobservable detour
    std::size_t complete_depth = 0;  // K: deepest observation length within the bound
    std::size_t explored_depth = 0;  // deepest observation length examined
    bool budget_exhausted = false;
};

/// Bounded check of attackability straight from the definition: closed-loop
/// strings are enumerated up to `len_bound` and grouped by the attacker's
/// observation (observed event, eavesdropped command) per observable step.
///
/// Observations of length at most K, where K + (K + 1) * D <= len_bound, are
/// explored completely, one length at a time. The verdict is Attackable when
/// one of them has a witness, NotAttackable once every configuration set of
/// some length already occurred at a shorter length, and Inconclusive
/// otherwise.
struct OracleResult {
    OracleVerdict verdict = OracleVerdict::Inconclusive;
    Word string;                             // witness s when attackable
    Event event = 0;                         // witness σ when attackable
    std::vector<AttackerEvent> observation;  // attacker view of s
    OracleStats stats;
    /// Distinct configuration sets of the examined observations, each sorted,
    /// ascending.
    std::vector<std::vector<Configuration>> class_sets;
};

OracleResult brute_force_attackable(const Automaton& g, const Supervisor& s, const Automaton& h,
                                    const AttackConstraint& ac, std::size_t len_bound,
                                    std::size_t budget = 4'000'000);

/// |Q| * |X| * |Z| + 2.
std::size_t default_oracle_bound(const Automaton& g, const Automaton& s, const Automaton& h);

}  // namespace supobf
