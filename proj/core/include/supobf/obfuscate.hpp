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

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "supobf/attack.hpp"
#include "supobf/automaton.hpp"
#include "supobf/control.hpp"
#include "supobf/encoding.hpp"
#include "supobf/operations.hpp"
#include "supobf/sat.hpp"

namespace supobf {

struct SupbpOptions {
    /// Report one supervisor per isomorphism class.
    bool dedupe_isomorphic = true;
    /// Stop after this many exact-size supervisors.
    std::optional<std::size_t> enumeration_limit;
};

struct SupbpStats {
    std::size_t models = 0;      // satisfying assignments returned by the solver
    std::size_t undersized = 0;  // models whose reachable part has fewer than n states
    std::size_t duplicates = 0;  // exact-size models dropped as isomorphic copies
    std::size_t blocking_clauses = 0;
    SolverStats solver;
};

/// Streams behavior-preserving supervisors of exactly n reachable states over
/// `target`, one per distinct reachable transition function (or per
/// isomorphism class with dedupe). Order depends on the solver.
class BpEnumerator {
public:
    BpEnumerator(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target, int n,
                 SupbpOptions options = {});
    ~BpEnumerator();
    BpEnumerator(const BpEnumerator&) = delete;
    BpEnumerator& operator=(const BpEnumerator&) = delete;

    /// Next candidate (states named x<i> after their candidate index), or
    /// nullopt when exhausted or when the limit is reached.
    std::optional<Automaton> next();
    /// True once the limit stopped enumeration with candidates left.
    bool truncated() const { return truncated_; }
    const SupbpStats& stats() const { return stats_; }
    const Encoding& encoding() const { return encoding_; }

private:
    std::optional<Automaton> search();

    AlphabetPtr alphabet_;
    int n_;
    SupbpOptions options_;
    Encoding encoding_;
    std::unique_ptr<SatBackend> solver_;
    std::set<std::vector<std::int32_t>> seen_;
    std::size_t produced_ = 0;
    bool exhausted_ = false;
    bool truncated_ = false;
    SupbpStats stats_;
};

struct SupbpResult {
    std::vector<Automaton> supervisors;  // ascending canonical code
    bool truncated = false;
    SupbpStats stats;
};

/// All behavior-preserving supervisors of exact reachable size n, sorted.
SupbpResult supbp(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target, int n,
                  SupbpOptions options = {});

/// Whether some behavior-preserving supervisor with at most n states exists.
bool bp_exists(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target, int n);

/// Smallest n in [1, n_max] with a behavior-preserving supervisor of at most
/// n states, by bisection.
std::optional<int> min_bp_size(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target,
                               int n_max);

/// Total order used to pick among equally sized candidates: canonical code,
/// then candidate state names.
bool canonical_less(const Automaton& a, const Automaton& b);

struct ObfuscationOptions {
    bool bisect = false;
    bool dedupe_isomorphic = true;
    std::optional<std::size_t> enumeration_limit;
};

struct ObfuscationRequest {
    Automaton plant;
    Supervisor supervisor;
    ControlConstraint target;  // constraint of the synthesized supervisor
    AttackConstraint attack;
    Automaton damage;          // complete, marked
    int n_max = 1;
    ObfuscationOptions options;
};

struct TraceRow {
    int n = 0;
    std::size_t candidates = 0;  // exact-size behavior-preserving supervisors
    std::size_t tested = 0;      // non-attackability checks run
    std::size_t resilient = 0;   // candidates found non-attackable
    bool truncated = false;
};

struct ObfuscationResult {
    bool found = false;
    std::optional<Automaton> supervisor;  // canonicalized
    int size = 0;
    int n_start = 1;
    int n_max = 1;
    std::size_t candidates_tested = 0;
    std::vector<TraceRow> trace;
    SupbpStats enumeration;  // summed over all n
};

/// Minimum-state behavior-preserving supervisor that is not attackable,
/// searching sizes n_start..n_max. Among resilient candidates of the minimal
/// size the canonically least is returned.
ObfuscationResult obfuscate(const ObfuscationRequest& request);

}  // namespace supobf
