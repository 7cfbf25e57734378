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
#include "supobf/operations.hpp"
#include "supobf/sat.hpp"

namespace supobf {

/// Transition variable t(i, e, j): either a solver variable or a constant.
struct TransitionLiteral {
    int var = 0;  // 0 when constant
    bool constant = false;

    bool is_constant() const { return var == 0; }
};

/// Variable map for the n-bounded candidate supervisor.
///
/// Candidate states are 0..n-1, index n is the dump state. Transition
/// variables exist for states below n and observable events; unobservable
/// events (forced self-loops) and the dump row (absorbing) are constants.
/// Allocation order: t(i, e, j) lexicographic in (i, event, j), then
/// r(i, y) lexicographic in (i, y).
class VarTable {
public:
    VarTable(int n, const ControlConstraint& constraint, std::size_t num_product_states);

    int n() const { return n_; }
    int dump() const { return n_; }
    std::size_t num_events() const { return constraint_.num_events; }
    std::size_t num_product_states() const { return num_y_; }
    const ControlConstraint& constraint() const { return constraint_; }
    int num_vars() const { return next_free_ - 1; }

    TransitionLiteral t(int i, Event e, int j) const;
    int r(int i, std::size_t y) const;

private:
    int n_;
    ControlConstraint constraint_;
    std::size_t num_y_;
    std::vector<int> t_base_;  // per event: offset within a state block, or -1
    int t_block_ = 0;          // variables per candidate state
    int r_base_ = 0;
    int next_free_ = 1;
};

/// Constraints (1) and (2): the observable rows of every non-dump state pick
/// exactly one successor in 0..n.
std::vector<Clause> encode_fsa(const VarTable& vt);

/// Constraint (3): uncontrollable observable events never lead to the dump.
std::vector<Clause> encode_con(const VarTable& vt);

/// Constraints (5)-(8): reachability in the product of the candidate and
/// G↓S, with Y_A never paired with the dump and Y_B only with the dump.
std::vector<Clause> encode_sep(const VarTable& vt, const DualMarkedDFA& gds);

struct Encoding {
    CnfInstance cnf;
    VarTable vars;
    /// Clause counts per constraint label: "1", "2", "3", "5", "6", "7", "8".
    std::map<std::string, std::size_t> clause_counts;
};

Encoding encode(int n, const DualMarkedDFA& gds, const ControlConstraint& constraint);

/// Successor index in 0..n of every (i, e) for i < n, read off a model.
/// Throws Error when a row has zero or several true variables.
std::vector<int> decode_rows(const std::vector<bool>& model, const VarTable& vt);

/// Candidate states reachable from state 0 (excluding the dump), ascending.
std::vector<int> reachable_candidate_states(const std::vector<bool>& model, const VarTable& vt);

/// The supervisor described by a model: observable transitions into the dump
/// are dropped, unobservable events self-loop, restricted to the part
/// reachable from state 0. State names are "x<i>" with i the candidate index.
Automaton decode(const std::vector<bool>& model, const VarTable& vt, AlphabetPtr alphabet);

/// Negation of the model's observable transition choices on `reachable`.
Clause blocking_clause(const std::vector<bool>& model, const VarTable& vt, const std::vector<int>& reachable);

/// DIMACS text with "c t <i> <event> <j> = <var>" and "c r <i> <y> = <var>"
/// comment lines for every allocated variable.
void export_dimacs(std::ostream& out, const CnfInstance& cnf, const VarTable* vt = nullptr,
                   const Alphabet* alphabet = nullptr);

}  // namespace supobf
