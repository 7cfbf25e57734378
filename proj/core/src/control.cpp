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

#include "supobf/control.hpp"

#include "supobf/operations.hpp"

namespace supobf {

std::vector<SupervisorViolation> check_supervisor(const Automaton& s, const ControlConstraint& c) {
    std::vector<SupervisorViolation> out;
    const EventSet uc = c.uncontrollable();
    const EventSet uo = c.unobservable();
    for (State x = 0; x < s.num_states(); ++x)
        for (Event e = 0; e < s.num_events(); ++e) {
            State t = s.next(x, e);
            if (uc.contains(e) && t == kNoState)
                out.push_back({x, e, ViolationKind::Controllability});
            if (uo.contains(e) && t != x)
                out.push_back({x, e, ViolationKind::Observability});
        }
    return out;
}

std::string describe(const SupervisorViolation& v, const Automaton& s) {
    const std::string where = "state '" + s.state_name(v.state) + "', event '" + s.alphabet().name(v.event) + "'";
    if (v.kind == ViolationKind::Controllability) return "(C) uncontrollable event undefined at " + where;
    return "(O) unobservable event is not a self-loop at " + where;
}

Automaton repair_selfloops(const Automaton& s, const ControlConstraint& c) {
    Automaton out = s;
    for (Event e : c.unobservable().to_vector())
        for (State x = 0; x < out.num_states(); ++x)
            if (!out.defined(x, e)) out.set_transition(x, e, x);
    return out;
}

EventSet control_command(const Automaton& s, State x) { return s.enabled(x); }

Automaton closed_loop(const Automaton& g, const Automaton& s) { return sync_product(g, s).automaton; }

DamageCheck validate_damage(const Automaton& h, const Automaton& k, const Automaton* plant) {
    DamageCheck out;
    out.total = h.is_total();
    if (h.num_states() == 0) return out;

    ProductAutomaton kh = sync_product(k, h);
    std::vector<bool> bad(kh.automaton.num_states());
    for (State s = 0; s < bad.size(); ++s) bad[s] = h.has_marking() && h.is_marked(kh.components[s].second);
    out.damaging_closed_loop_string = shortest_word_to(kh.automaton, bad);

    if (plant != nullptr && h.has_marking()) {
        CompleteDFA gbar = complete(*plant);
        ProductAutomaton gh = sync_product(gbar.dfa, h);
        std::vector<bool> outside(gh.automaton.num_states());
        for (State s = 0; s < outside.size(); ++s)
            outside[s] = gh.components[s].first == gbar.dump && h.is_marked(gh.components[s].second);
        out.non_plant_string = shortest_word_to(gh.automaton, outside);
    }
    return out;
}

Automaton auto_complete_damage(const Automaton& h) {
    if (h.is_total()) return h;
    Automaton out = h;
    if (!out.has_marking())
        for (State s = 0; s < out.num_states(); ++s) out.set_marked(s, true);
    std::string name = "sink";
    while (out.find_state(name)) name += '\'';
    State sink = out.add_state(name);
    out.set_marked(sink, false);
    for (State s = 0; s < out.num_states(); ++s)
        for (Event e = 0; e < out.num_events(); ++e)
            if (!out.defined(s, e)) out.set_transition(s, e, sink);
    return out;
}

}  // namespace supobf
