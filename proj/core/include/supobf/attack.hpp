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
#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "supobf/automaton.hpp"
#include "supobf/control.hpp"

namespace supobf {

/// Marks an attacker observation with no plant event (the supervisor moved on
/// an event the attacker cannot see).
inline constexpr Event kEpsilon = static_cast<Event>(-1);

/// One element of the attacker's observation: the observed event (or
/// kEpsilon) and the eavesdropped control command.
struct AttackerEvent {
    Event observed = kEpsilon;
    EventSet command;

    friend bool operator==(const AttackerEvent&, const AttackerEvent&) = default;
    friend auto operator<=>(const AttackerEvent&, const AttackerEvent&) = default;
};

/// "(o, {γ...})" with ε for kEpsilon.
std::string format_attacker_event(const AttackerEvent& a, const Alphabet& alphabet);

/// Supervisor whose observable transitions carry the command of their
/// destination state. Unobservable transitions stay bare.
class AnnotatedSupervisor {
public:
    AnnotatedSupervisor(Automaton supervisor, ControlConstraint constraint);

    const Automaton& supervisor() const { return supervisor_; }
    const ControlConstraint& constraint() const { return constraint_; }
    std::size_t num_states() const { return supervisor_.num_states(); }

    /// Destination of (x, e), kNoState if undefined.
    State next(State x, Event e) const { return supervisor_.next(x, e); }
    /// Command label on an observable transition (x, e); nullopt when the
    /// transition is undefined or e is unobservable.
    std::optional<EventSet> label(State x, Event e) const;
    EventSet command(State x) const { return commands_[x]; }
    /// Distinct commands carried by observable transitions, ascending.
    std::vector<EventSet> command_alphabet() const;

private:
    Automaton supervisor_;
    ControlConstraint constraint_;
    std::vector<EventSet> commands_;
};

AnnotatedSupervisor annotate(const Supervisor& s);

enum class AttackOutcome : std::uint8_t { None, Top, Bottom };

struct GpEdge {
    Event event;
    bool silent;          // unobservable to the supervisor: (σ, ε)
    AttackerEvent label;  // (o, γ) for observable events
    State target;
};

/// Generalized product of plant, annotated supervisor and damage automaton.
/// Core states are (q, x, z) triples; the two sinks TOP (successful attack)
/// and BOTTOM (failed attack) are kept implicit in `attacks`.
struct GPAutomaton {
    std::vector<std::array<State, 3>> states;  // index 0 is the initial state
    std::vector<std::vector<GpEdge>> edges;
    /// Per core state: outcome of each attackable event (rules 4 and 5).
    std::vector<std::vector<std::pair<Event, AttackOutcome>>> attacks;

    std::size_t size() const { return states.size(); }
    State top() const { return static_cast<State>(states.size()); }
    State bottom() const { return static_cast<State>(states.size() + 1); }
    AttackOutcome attack(State v, Event e) const;
};

GPAutomaton general_product(const Automaton& g, const AnnotatedSupervisor& sa, const Automaton& h,
                            const AttackConstraint& ac);

/// Attacker view of the GP core: first components projected out, (σ, ε)
/// moves become ε-moves.
struct EpsilonAutomaton {
    struct Edge {
        std::optional<AttackerEvent> label;  // nullopt = ε
        State target;
    };
    std::vector<std::vector<Edge>> edges;
    State initial = 0;

    std::size_t size() const { return edges.size(); }
};

EpsilonAutomaton attacker_projection(const GPAutomaton& gp);

/// Determinization of the attacker view with the attack label Lf.
struct SubsetAutomaton {
    std::vector<std::vector<State>> subsets;  // sorted core-state sets; 0 is initial
    std::vector<std::vector<std::pair<AttackerEvent, std::size_t>>> transitions;
    std::vector<EventSet> label;
    /// Breadth-first tree: (parent subset, event) of each non-initial subset.
    std::vector<std::pair<std::size_t, AttackerEvent>> parent;

    std::size_t size() const { return subsets.size(); }
    std::vector<AttackerEvent> path_to(std::size_t y) const;
};

SubsetAutomaton determinize_and_label(const EpsilonAutomaton& eps, const GPAutomaton& gp,
                                      const AttackConstraint& ac);

struct AttackWitness {
    std::vector<AttackerEvent> observations;
    std::size_t subset = 0;
    Event event = 0;
};

struct AttackVerdict {
    bool non_attackable = true;
    std::optional<AttackWitness> witness;  // shortest, set when attackable
    std::size_t gp_states = 0;
    std::size_t subset_states = 0;
};

/// Non-attackability of (G, S) against the attack constraint and the damage
/// automaton h (complete, marked).
AttackVerdict non_attackable(const Automaton& g, const Supervisor& s, const Automaton& h,
                             const AttackConstraint& ac);

/// One line per observation "(o|ε, {γ...})", then "ATTACK <event>".
std::string format_witness(const AttackWitness& w, const Alphabet& alphabet);

void write_subset_dot(std::ostream& out, const SubsetAutomaton& sub, const GPAutomaton& gp, const Automaton& g,
                      const Automaton& s, const Automaton& h);

}  // namespace supobf
