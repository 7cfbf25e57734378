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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "supobf/automaton.hpp"
#include "supobf/control.hpp"

namespace supobf {

/// A parsed problem file.
///
///     [alphabet]            event names
///     [controllable]        flag sections list event names; absent = empty
///     [observable]
///     [attackable]
///     [attacker-observable]
///     [target-controllable] optional constraint for the synthesized supervisor
///     [target-observable]
///     [plant] / [supervisor] / [damage]
///       states: <names>
///       initial: <name>
///       marked: <names>     optional; required for [damage]
///       auto-complete: true optional, [damage] only
///       trans:
///       <src> <event> <dst>
///
/// '#' starts a comment.
struct Problem {
    AlphabetPtr alphabet;
    Automaton plant;
    Automaton supervisor;
    Automaton damage;  // complete after parsing
    ControlConstraint control;
    ControlConstraint target;
    AttackConstraint attack;
    bool has_target = false;

    Supervisor original() const { return {supervisor, control}; }
};

struct ParseOptions {
    /// Add missing unobservable self-loops to the supervisor.
    bool repair_selfloops = false;
    /// Prefix for diagnostics.
    std::string source = "<input>";
};

/// Throws Error with "<source>:<line>: <message>" diagnostics.
Problem parse_problem(std::istream& in, const ParseOptions& options = {});
Problem parse_problem_file(const std::string& path, const ParseOptions& options = {});

/// Automaton sections of a file over an existing alphabet (no [alphabet] or
/// flag sections allowed), keyed by section name.
std::map<std::string, Automaton> parse_automata(std::istream& in, const AlphabetPtr& alphabet,
                                                const std::string& source = "<input>");

/// Structural problems that do not prevent parsing: supervisor validity,
/// damage requirements, constraint compatibility. Empty when valid.
/// Warnings are returned separately.
struct ProblemDiagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};
ProblemDiagnostics check_problem(const Problem& p);

void write_automaton_section(std::ostream& out, const std::string& section, const Automaton& a);
void write_problem(std::ostream& out, const Problem& p);

}  // namespace supobf
