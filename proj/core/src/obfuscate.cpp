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

#include "supobf/obfuscate.hpp"

#include <algorithm>
#include <numeric>

namespace supobf {

namespace {

constexpr std::size_t kMaxRelabelings = 5040;

DualMarkedDFA gds_for(const Automaton& plant, const Automaton& supervisor) {
    return build_gds(complete(plant), complete(supervisor));
}

std::size_t relabeling_count(int n, std::size_t k) {
    std::size_t count = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        count *= static_cast<std::size_t>(n - 1) - i;
        if (count > kMaxRelabelings) return count;
    }
    return count;
}

/// Blocks every model whose reachable part is the decoded one under some
/// relabeling that keeps state 0 initial.
void block_relabelings(SatBackend& solver, const VarTable& vt, const std::vector<int>& rows,
                       const std::vector<int>& reachable, SupbpStats& stats) {
    const int n = vt.n();
    const std::vector<Event> events = vt.constraint().observable.to_vector();
    std::vector<int> pi(static_cast<std::size_t>(n) + 1, -1);
    pi[n] = n;
    std::vector<bool> used(n, false);
    used[0] = true;
    pi[reachable[0]] = 0;

    auto emit = [&] {
        Clause c;
        for (int i : reachable)
            for (Event e : events) {
                int j = rows[static_cast<std::size_t>(i) * vt.num_events() + e];
                c.push_back(-vt.t(pi[i], e, pi[j]).var);
            }
        solver.add_clause(c);
        ++stats.blocking_clauses;
    };
    auto assign = [&](auto&& self, std::size_t pos) -> void {
        if (pos == reachable.size()) return emit();
        for (int target = 1; target < n; ++target) {
            if (used[target]) continue;
            used[target] = true;
            pi[reachable[pos]] = target;
            self(self, pos + 1);
            used[target] = false;
        }
    };
    assign(assign, 1);
}

}  // namespace

BpEnumerator::BpEnumerator(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target,
                           int n, SupbpOptions options)
    : alphabet_(plant.alphabet_ptr()),
      n_(n),
      options_(options),
      encoding_(encode(n, gds_for(plant, supervisor), target)),
      solver_(make_default_backend()) {
    solver_->add_cnf(encoding_.cnf);
}

BpEnumerator::~BpEnumerator() = default;

std::optional<Automaton> BpEnumerator::search() {
    const VarTable& vt = encoding_.vars;
    while (!exhausted_) {
        if (solver_->solve() == SolveResult::Unsat) {
            exhausted_ = true;
            break;
        }
        ++stats_.models;
        const std::vector<bool> model = solver_->model();
        const std::vector<int> rows = decode_rows(model, vt);
        const std::vector<int> reachable = reachable_candidate_states(model, vt);
        if (options_.dedupe_isomorphic && relabeling_count(n_, reachable.size()) <= kMaxRelabelings) {
            block_relabelings(*solver_, vt, rows, reachable, stats_);
        } else {
            solver_->add_clause(blocking_clause(model, vt, reachable));
            ++stats_.blocking_clauses;
        }
        if (static_cast<int>(reachable.size()) < n_) {
            ++stats_.undersized;
            continue;
        }
        Automaton candidate = decode(model, vt, alphabet_);
        if (options_.dedupe_isomorphic && !seen_.insert(canonical_code(candidate)).second) {
            ++stats_.duplicates;
            continue;
        }
        return candidate;
    }
    return std::nullopt;
}

std::optional<Automaton> BpEnumerator::next() {
    std::optional<Automaton> out;
    if (options_.enumeration_limit && produced_ >= *options_.enumeration_limit) {
        if (!truncated_ && search()) truncated_ = true;
        exhausted_ = true;
    } else {
        out = search();
        if (out) ++produced_;
    }
    stats_.solver = solver_->stats();
    return out;
}

bool canonical_less(const Automaton& a, const Automaton& b) {
    auto ca = canonical_code(a), cb = canonical_code(b);
    if (ca != cb) return ca < cb;
    std::vector<std::string> na, nb;
    for (State x = 0; x < a.num_states(); ++x) na.push_back(a.state_name(x));
    for (State x = 0; x < b.num_states(); ++x) nb.push_back(b.state_name(x));
    return na < nb;
}

SupbpResult supbp(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target, int n,
                  SupbpOptions options) {
    BpEnumerator en(plant, supervisor, target, n, options);
    SupbpResult result;
    while (auto s = en.next()) result.supervisors.push_back(std::move(*s));
    std::sort(result.supervisors.begin(), result.supervisors.end(), canonical_less);
    result.truncated = en.truncated();
    result.stats = en.stats();
    return result;
}

bool bp_exists(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target, int n) {
    Encoding enc = encode(n, gds_for(plant, supervisor), target);
    auto solver = make_default_backend();
    solver->add_cnf(enc.cnf);
    return solver->solve() == SolveResult::Sat;
}

std::optional<int> min_bp_size(const Automaton& plant, const Automaton& supervisor, const ControlConstraint& target,
                               int n_max) {
    if (n_max < 1) throw Error("min_bp_size: bound must be at least 1");
    if (!bp_exists(plant, supervisor, target, n_max)) return std::nullopt;
    int lo = 1, hi = n_max;  // answer in [lo, hi]
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (bp_exists(plant, supervisor, target, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

namespace {

void accumulate(SupbpStats& total, const SupbpStats& part) {
    total.models += part.models;
    total.undersized += part.undersized;
    total.duplicates += part.duplicates;
    total.blocking_clauses += part.blocking_clauses;
    total.solver.solves += part.solver.solves;
    total.solver.decisions += part.solver.decisions;
    total.solver.conflicts += part.solver.conflicts;
    total.solver.propagations += part.solver.propagations;
    total.solver.restarts += part.solver.restarts;
}

void validate(const ObfuscationRequest& req) {
    if (req.n_max < 1) throw Error("n_max must be at least 1");
    if (!req.target.normal()) throw Error("target control constraint is not normal");
    for (const auto& v : check_supervisor(req.supervisor.automaton, req.supervisor.constraint))
        throw Error("invalid supervisor: " + describe(v, req.supervisor.automaton));
    if (!req.attack.compatible_with(req.target))
        throw Error("attack constraint is not compatible with the target control constraint");
    DamageCheck dc = validate_damage(req.damage, closed_loop(req.plant, req.supervisor.automaton));
    if (!dc.total) throw Error("damage automaton is not complete");
    if (dc.damaging_closed_loop_string)
        throw Error("closed loop generates damaging string " +
                    format_word(req.plant.alphabet(), *dc.damaging_closed_loop_string));
}

}  // namespace

ObfuscationResult obfuscate(const ObfuscationRequest& req) {
    validate(req);
    ObfuscationResult result;
    result.n_max = req.n_max;
    if (req.options.bisect) {
        auto start = min_bp_size(req.plant, req.supervisor.automaton, req.target, req.n_max);
        if (!start) {
            result.n_start = req.n_max + 1;
            return result;
        }
        result.n_start = *start;
    }

    const Automaton reference = closed_loop(req.plant, req.supervisor.automaton);
    SupbpOptions options{req.options.dedupe_isomorphic, req.options.enumeration_limit};
    for (int n = result.n_start; n <= req.n_max; ++n) {
        BpEnumerator en(req.plant, req.supervisor.automaton, req.target, n, options);
        TraceRow row{n, 0, 0, 0, false};
        std::optional<Automaton> best;
        while (auto candidate = en.next()) {
            ++row.candidates;
            ++row.tested;
            Supervisor s{std::move(*candidate), req.target};
            if (!non_attackable(req.plant, s, req.damage, req.attack).non_attackable) continue;
            ++row.resilient;
            if (!best || canonical_less(s.automaton, *best)) best = std::move(s.automaton);
        }
        row.truncated = en.truncated();
        accumulate(result.enumeration, en.stats());
        result.candidates_tested += row.tested;
        result.trace.push_back(row);
        if (best) {
            if (!check_supervisor(*best, req.target).empty() ||
                !language_equal(closed_loop(req.plant, *best), reference).equal)
                throw Error("internal: synthesized supervisor failed verification");
            result.found = true;
            result.size = n;
            result.supervisor = canonicalize(*best);
            break;
        }
    }
    return result;
}

}  // namespace supobf
