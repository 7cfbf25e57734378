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

#include <optional>
#include <string>
#include <vector>

#include "supobf/automaton.hpp"

namespace supobf {

/// A finite-state realization of a supervisor together with the control
/// constraint it is meant to satisfy.
struct Supervisor {
    Automaton automaton;
    ControlConstraint constraint;
};

enum class ViolationKind {
    Controllability,  // uncontrollable event undefined
    Observability,    // unobservable event defined but not a self-loop
};

struct SupervisorViolation {
    State state;
    Event event;
    ViolationKind kind;

    friend bool operator==(const SupervisorViolation&, const SupervisorViolation&) = default;
};

/// Every (state, event) pair breaking controllability or the normal form of
/// observability (unobservable events self-loop at every state).
std::vector<SupervisorViolation> check_supervisor(const Automaton& s, const ControlConstraint& c);

std::string describe(const SupervisorViolation& v, const Automaton& s);

/// Adds the unobservable self-loops the normal form requires where missing.
/// Transitions on unobservable events that leave the state are left alone.
Automaton repair_selfloops(const Automaton& s, const ControlConstraint& c);

/// Control command issued at supervisor state x: the events defined there.
EventSet control_command(const Automaton& s, State x);

/// S || G, reachable part.
Automaton closed_loop(const Automaton& g, const Automaton& s);

struct DamageCheck {
    bool total = false;
    /// A string of the closed loop that is already damaging, if any.
    std::optional<Word> damaging_closed_loop_string;
    /// A damaging string the plant cannot generate (warning only).
    std::optional<Word> non_plant_string;

    bool ok() const { return total && !damaging_closed_loop_string; }
};

/// Checks that h is complete and that no string of the closed loop k reaches
/// a marked state of h. When `plant` is given, also looks for damaging
/// strings outside L(plant).
DamageCheck validate_damage(const Automaton& h, const Automaton& k, const Automaton* plant = nullptr);

/// Redirects undefined transitions of h into a fresh unmarked absorbing sink.
/// Returns h unchanged when it is already complete.
Automaton auto_complete_damage(const Automaton& h);

}  // namespace supobf
