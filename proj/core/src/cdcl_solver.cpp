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

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "supobf/alphabet.hpp"
#include "supobf/sat.hpp"

namespace supobf {

namespace {

// Internal literal: 2 * var + (negative ? 1 : 0), var is 0-based.
using Lit = std::uint32_t;
using CRef = std::uint32_t;
constexpr CRef kNoReason = std::numeric_limits<CRef>::max();

constexpr Lit make_lit(int var, bool negative) { return static_cast<Lit>(2 * var + (negative ? 1 : 0)); }
constexpr Lit neg(Lit l) { return l ^ 1U; }
constexpr int var_of(Lit l) { return static_cast<int>(l >> 1); }
constexpr bool is_negative(Lit l) { return (l & 1U) != 0; }

// Assignment values.
constexpr std::int8_t kTrue = 1;
constexpr std::int8_t kFalse = -1;
constexpr std::int8_t kUndef = 0;

double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}  // namespace

struct CdclSolver::Impl {
    struct ClauseRec {
        std::vector<Lit> lits;
        double activity = 0;
        bool learnt = false;
        bool deleted = false;
    };
    struct Watcher {
        CRef cref;
        Lit blocker;
    };

    std::vector<ClauseRec> clauses;
    std::vector<CRef> free_slots;
    std::vector<CRef> learnts;
    std::vector<std::vector<Watcher>> watches;  // indexed by the watched literal

    std::vector<std::int8_t> assigns;
    std::vector<int> level;
    std::vector<CRef> reason;
    std::vector<bool> polarity;  // saved phase: true = negative
    std::vector<double> activity;
    std::vector<Lit> trail;
    std::vector<std::size_t> trail_lim;
    std::size_t qhead = 0;
    bool ok = true;

    // Binary max-heap over variable activity.
    std::vector<int> heap;
    std::vector<int> heap_pos;

    double var_inc = 1.0;
    double cla_inc = 1.0;
    double max_learnts = 0;
    std::vector<std::int8_t> model;
    std::vector<bool> seen;
    SolverStats st;

    int nvars() const { return static_cast<int>(assigns.size()); }
    int decision_level() const { return static_cast<int>(trail_lim.size()); }
    std::int8_t value(Lit l) const {
        std::int8_t v = assigns[var_of(l)];
        return is_negative(l) ? static_cast<std::int8_t>(-v) : v;
    }

    // ---- heap ---------------------------------------------------------
    bool heap_less(int a, int b) const { return activity[a] > activity[b] || (activity[a] == activity[b] && a < b); }
    void heap_up(std::size_t i) {
        int v = heap[i];
        while (i > 0) {
            std::size_t p = (i - 1) / 2;
            if (!heap_less(v, heap[p])) break;
            heap[i] = heap[p];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = p;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_down(std::size_t i) {
        int v = heap[i];
        for (;;) {
            std::size_t c = 2 * i + 1;
            if (c >= heap.size()) break;
            if (c + 1 < heap.size() && heap_less(heap[c + 1], heap[c])) ++c;
            if (!heap_less(heap[c], v)) break;
            heap[i] = heap[c];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = c;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_insert(int v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_up(heap.size() - 1);
    }
    int heap_pop() {
        int top = heap[0];
        heap_pos[top] = -1;
        int last = heap.back();
        heap.pop_back();
        if (!heap.empty()) {
            heap[0] = last;
            heap_pos[last] = 0;
            heap_down(0);
        }
        return top;
    }

    // ---- variables ------------------------------------------------------
    void grow(int n) {
        while (nvars() < n) {
            int v = nvars();
            assigns.push_back(kUndef);
            level.push_back(0);
            reason.push_back(kNoReason);
            polarity.push_back(true);
            activity.push_back(0.0);
            seen.push_back(false);
            heap_pos.push_back(-1);
            watches.emplace_back();
            watches.emplace_back();
            heap_insert(v);
        }
    }

    void bump_var(int v) {
        if ((activity[v] += var_inc) > 1e100) {
            for (double& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos[v]));
    }
    void bump_clause(ClauseRec& c) {
        if ((c.activity += cla_inc) > 1e20) {
            for (CRef r : learnts) clauses[r].activity *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    // ---- clauses --------------------------------------------------------
    CRef alloc(std::vector<Lit> lits, bool learnt) {
        CRef r;
        if (!free_slots.empty()) {
            r = free_slots.back();
            free_slots.pop_back();
            clauses[r] = ClauseRec{std::move(lits), 0, learnt, false};
        } else {
            r = static_cast<CRef>(clauses.size());
            clauses.push_back(ClauseRec{std::move(lits), 0, learnt, false});
        }
        const auto& c = clauses[r].lits;
        watches[c[0]].push_back({r, c[1]});
        watches[c[1]].push_back({r, c[0]});
        return r;
    }

    void remove_clause(CRef r) {
        auto& c = clauses[r];
        for (int k = 0; k < 2; ++k) {
            auto& ws = watches[c.lits[k]];
            ws.erase(std::find_if(ws.begin(), ws.end(), [r](const Watcher& w) { return w.cref == r; }));
        }
        if (reason[var_of(c.lits[0])] == r && value(c.lits[0]) == kTrue) reason[var_of(c.lits[0])] = kNoReason;
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
        free_slots.push_back(r);
    }

    bool locked(CRef r) const {
        const auto& c = clauses[r];
        return reason[var_of(c.lits[0])] == r && value(c.lits[0]) == kTrue;
    }

    // ---- trail ----------------------------------------------------------
    void enqueue(Lit l, CRef from) {
        int v = var_of(l);
        assigns[v] = is_negative(l) ? kFalse : kTrue;
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (std::size_t i = trail.size(); i-- > trail_lim[lvl];) {
            int v = var_of(trail[i]);
            assigns[v] = kUndef;
            reason[v] = kNoReason;
            polarity[v] = is_negative(trail[i]);
            heap_insert(v);
        }
        trail.resize(trail_lim[lvl]);
        trail_lim.resize(lvl);
        qhead = trail.size();
    }

    CRef propagate() {
        CRef confl = kNoReason;
        while (qhead < trail.size()) {
            Lit p = trail[qhead++];
            Lit false_lit = neg(p);
            auto& ws = watches[false_lit];
            ++st.propagations;
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                Watcher w = ws[i];
                if (value(w.blocker) == kTrue) {
                    ws[j++] = ws[i++];
                    continue;
                }
                auto& c = clauses[w.cref].lits;
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                ++i;
                Lit first = c[0];
                if (first != w.blocker && value(first) == kTrue) {
                    ws[j++] = {w.cref, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k)
                    if (value(c[k]) != kFalse) {
                        std::swap(c[1], c[k]);
                        watches[c[1]].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                if (moved) continue;
                ws[j++] = {w.cref, first};
                if (value(first) == kFalse) {
                    confl = w.cref;
                    qhead = trail.size();
                    while (i < ws.size()) ws[j++] = ws[i++];
                } else {
                    enqueue(first, w.cref);
                }
            }
            ws.resize(j);
            if (confl != kNoReason) break;
        }
        return confl;
    }

    // First-UIP conflict analysis with basic self-subsumption minimization.
    void analyze(CRef confl, std::vector<Lit>& out, int& bt_level) {
        out.clear();
        out.push_back(0);  // placeholder for the asserting literal
        int path = 0;
        Lit p = 0;
        bool have_p = false;
        std::size_t index = trail.size();
        do {
            auto& c = clauses[confl];
            if (c.learnt) bump_clause(c);
            for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
                Lit q = c.lits[k];
                int v = var_of(q);
                if (!seen[v] && level[v] > 0) {
                    seen[v] = true;
                    bump_var(v);
                    if (level[v] >= decision_level())
                        ++path;
                    else
                        out.push_back(q);
                }
            }
            while (!seen[var_of(trail[--index])]) {
            }
            p = trail[index];
            confl = reason[var_of(p)];
            seen[var_of(p)] = false;
            have_p = true;
            --path;
        } while (path > 0);
        out[0] = neg(p);

        // Drop literals whose reason clause is covered by the learnt clause.
        std::vector<Lit> kept{out[0]};
        for (std::size_t k = 1; k < out.size(); ++k) {
            CRef r = reason[var_of(out[k])];
            bool redundant = r != kNoReason;
            if (redundant)
                for (std::size_t m = 1; m < clauses[r].lits.size(); ++m) {
                    int v = var_of(clauses[r].lits[m]);
                    if (!seen[v] && level[v] > 0) {
                        redundant = false;
                        break;
                    }
                }
            if (!redundant) kept.push_back(out[k]);
        }
        for (std::size_t k = 1; k < out.size(); ++k) seen[var_of(out[k])] = false;
        out.swap(kept);

        bt_level = 0;
        if (out.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t k = 2; k < out.size(); ++k)
                if (level[var_of(out[k])] > level[var_of(out[max_i])]) max_i = k;
            std::swap(out[1], out[max_i]);
            bt_level = level[var_of(out[1])];
        }
    }

    void reduce_db() {
        std::vector<CRef> candidates;
        for (CRef r : learnts)
            if (!clauses[r].deleted) candidates.push_back(r);
        std::sort(candidates.begin(), candidates.end(), [&](CRef a, CRef b) {
            const auto& ca = clauses[a];
            const auto& cb = clauses[b];
            if (ca.activity != cb.activity) return ca.activity < cb.activity;
            return a < b;
        });
        std::vector<CRef> keep;
        std::size_t half = candidates.size() / 2;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            CRef r = candidates[i];
            if (i < half && clauses[r].lits.size() > 2 && !locked(r))
                remove_clause(r);
            else
                keep.push_back(r);
        }
        std::sort(keep.begin(), keep.end());
        learnts.swap(keep);
    }

    int pick_branch() {
        while (!heap.empty()) {
            int v = heap_pop();
            if (assigns[v] == kUndef) return v;
        }
        return -1;
    }

    // Returns kTrue (sat), kFalse (unsat) or kUndef (restart).
    std::int8_t search(double conflict_budget) {
        double conflicts_here = 0;
        std::vector<Lit> learnt;
        for (;;) {
            CRef confl = propagate();
            if (confl != kNoReason) {
                ++st.conflicts;
                ++conflicts_here;
                if (decision_level() == 0) return kFalse;
                int bt = 0;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    CRef r = alloc(learnt, true);
                    learnts.push_back(r);
                    bump_clause(clauses[r]);
                    enqueue(learnt[0], r);
                }
                var_inc /= 0.95;
                cla_inc /= 0.999;
                continue;
            }
            if (conflicts_here >= conflict_budget) {
                cancel_until(0);
                return kUndef;
            }
            if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >= max_learnts) reduce_db();
            int v = pick_branch();
            if (v < 0) return kTrue;
            ++st.decisions;
            trail_lim.push_back(trail.size());
            enqueue(make_lit(v, polarity[v]), kNoReason);
        }
    }

    void add(std::span<const Literal> clause) {
        cancel_until(0);
        if (!ok) return;
        std::vector<Lit> lits;
        for (Literal x : clause) {
            if (x == 0) throw Error("clause contains literal 0");
            int v = std::abs(x) - 1;
            grow(v + 1);
            lits.push_back(make_lit(v, x < 0));
        }
        std::sort(lits.begin(), lits.end());
        std::vector<Lit> simplified;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            Lit l = lits[i];
            if (!simplified.empty() && simplified.back() == l) continue;
            if (!simplified.empty() && simplified.back() == neg(l)) return;  // tautology
            if (value(l) == kTrue) return;
            if (value(l) == kFalse) continue;
            simplified.push_back(l);
        }
        if (simplified.empty()) {
            ok = false;
            return;
        }
        if (simplified.size() == 1) {
            enqueue(simplified[0], kNoReason);
            if (propagate() != kNoReason) ok = false;
            return;
        }
        alloc(std::move(simplified), false);
    }

    SolveResult solve() {
        ++st.solves;
        model.clear();
        if (!ok) return SolveResult::Unsat;
        cancel_until(0);
        if (propagate() != kNoReason) {
            ok = false;
            return SolveResult::Unsat;
        }
        std::size_t originals = 0;
        for (const auto& c : clauses)
            if (!c.deleted && !c.learnt) ++originals;
        max_learnts = std::max(max_learnts, static_cast<double>(originals) / 3.0 + 1000.0);
        for (int restart = 0;; ++restart) {
            std::int8_t status = search(luby(2.0, restart) * 100.0);
            if (status == kTrue) {
                model = assigns;
                cancel_until(0);
                return SolveResult::Sat;
            }
            if (status == kFalse) {
                ok = false;
                return SolveResult::Unsat;
            }
            ++st.restarts;
            max_learnts *= 1.05;
        }
    }
};

CdclSolver::CdclSolver() : impl_(std::make_unique<Impl>()) {}
CdclSolver::~CdclSolver() = default;

void CdclSolver::reserve_vars(int num_vars) { impl_->grow(num_vars); }
void CdclSolver::add_clause(std::span<const Literal> clause) { impl_->add(clause); }
SolveResult CdclSolver::solve() { return impl_->solve(); }

bool CdclSolver::value(int var) const {
    if (var < 1 || var > static_cast<int>(impl_->model.size())) return false;
    return impl_->model[var - 1] == kTrue;
}

int CdclSolver::num_vars() const { return impl_->nvars(); }
SolverStats CdclSolver::stats() const { return impl_->st; }

std::unique_ptr<SatBackend> make_default_backend() { return std::make_unique<CdclSolver>(); }

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model) {
    for (const auto& c : cnf.clauses) {
        bool sat = false;
        for (Literal l : c) {
            int v = std::abs(l);
            bool val = v < static_cast<int>(model.size()) && model[v];
            if ((l > 0) == val) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace supobf
