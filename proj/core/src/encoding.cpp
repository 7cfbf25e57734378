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

#include "supobf/encoding.hpp"

#include <ostream>

namespace supobf {

VarTable::VarTable(int n, const ControlConstraint& constraint, std::size_t num_product_states)
    : n_(n), constraint_(constraint), num_y_(num_product_states) {
    if (n < 1) throw Error("candidate bound must be at least 1");
    t_base_.assign(constraint_.num_events, -1);
    for (Event e = 0; e < constraint_.num_events; ++e)
        if (constraint_.observable.contains(e)) {
            t_base_[e] = t_block_;
            t_block_ += n_ + 1;
        }
    next_free_ = 1 + n_ * t_block_;
    r_base_ = next_free_;
    next_free_ += (n_ + 1) * static_cast<int>(num_y_);
}

TransitionLiteral VarTable::t(int i, Event e, int j) const {
    if (i == n_) return {0, j == n_};
    if (t_base_[e] < 0) return {0, i == j};
    return {1 + i * t_block_ + t_base_[e] + j, false};
}

int VarTable::r(int i, std::size_t y) const { return r_base_ + i * static_cast<int>(num_y_) + static_cast<int>(y); }

std::vector<Clause> encode_fsa(const VarTable& vt) {
    std::vector<Clause> out;
    const int n = vt.n();
    for (int i = 0; i < n; ++i)
        for (Event e : vt.constraint().observable.to_vector()) {
            for (int j = 0; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) out.push_back({-vt.t(i, e, j).var, -vt.t(i, e, k).var});
            Clause some;
            for (int j = 0; j <= n; ++j) some.push_back(vt.t(i, e, j).var);
            out.push_back(std::move(some));
        }
    return out;
}

std::vector<Clause> encode_con(const VarTable& vt) {
    std::vector<Clause> out;
    const EventSet events = vt.constraint().uncontrollable() - vt.constraint().unobservable();
    for (int i = 0; i < vt.n(); ++i)
        for (Event e : events.to_vector()) {
            Clause c;
            for (int j = 0; j < vt.n(); ++j) c.push_back(vt.t(i, e, j).var);
            out.push_back(std::move(c));
        }
    return out;
}

namespace {

void sep_clauses(const VarTable& vt, const DualMarkedDFA& gds, std::map<std::string, std::size_t>* counts,
                 std::vector<Clause>& out) {
    const int n = vt.n();
    const std::size_t ny = gds.size();
    auto count = [&](const char* label) {
        if (counts) ++(*counts)[label];
    };

    out.push_back({vt.r(0, 0)});
    count("5");

    for (int i = 0; i <= n; ++i)
        for (std::size_t y1 = 0; y1 < ny; ++y1)
            for (Event e = 0; e < gds.dfa.num_events(); ++e) {
                const std::size_t y2 = gds.dfa.next(static_cast<State>(y1), e);
                for (int j = 0; j <= n; ++j) {
                    TransitionLiteral t = vt.t(i, e, j);
                    if (t.is_constant() && !t.constant) continue;
                    const int from = vt.r(i, y1);
                    const int to = vt.r(j, y2);
                    if (from == to) continue;  // tautology
                    Clause c{-from};
                    if (!t.is_constant()) c.push_back(-t.var);
                    c.push_back(to);
                    out.push_back(std::move(c));
                    count("6");
                }
            }

    for (std::size_t y = 0; y < ny; ++y)
        if (gds.mark_a[y]) {
            out.push_back({-vt.r(n, y)});
            count("7");
        }
    for (std::size_t y = 0; y < ny; ++y)
        if (gds.mark_b[y])
            for (int i = 0; i < n; ++i) {
                out.push_back({-vt.r(i, y)});
                count("8");
            }
}

}  // namespace

std::vector<Clause> encode_sep(const VarTable& vt, const DualMarkedDFA& gds) {
    if (gds.size() != vt.num_product_states()) throw Error("encode_sep: variable table does not match G↓S");
    std::vector<Clause> out;
    sep_clauses(vt, gds, nullptr, out);
    return out;
}

Encoding encode(int n, const DualMarkedDFA& gds, const ControlConstraint& constraint) {
    if (gds.dfa.num_events() != constraint.num_events) throw Error("encode: constraint does not match alphabet");
    if (!constraint.normal()) throw Error("encode: control constraint is not normal");
    Encoding enc{{}, VarTable(n, constraint, gds.size()), {}};
    auto& clauses = enc.cnf.clauses;

    std::vector<Clause> fsa = encode_fsa(enc.vars);
    for (auto& c : fsa) {
        ++enc.clause_counts[c.size() == 2 && c[0] < 0 ? "1" : "2"];
        clauses.push_back(std::move(c));
    }
    std::vector<Clause> con = encode_con(enc.vars);
    enc.clause_counts["3"] = con.size();
    for (auto& c : con) clauses.push_back(std::move(c));
    sep_clauses(enc.vars, gds, &enc.clause_counts, clauses);
    enc.cnf.num_vars = enc.vars.num_vars();
    return enc;
}

std::vector<int> decode_rows(const std::vector<bool>& model, const VarTable& vt) {
    const int n = vt.n();
    std::vector<int> rows(static_cast<std::size_t>(n) * vt.num_events(), -1);
    for (int i = 0; i < n; ++i)
        for (Event e = 0; e < vt.num_events(); ++e) {
            int chosen = -1;
            for (int j = 0; j <= n; ++j) {
                TransitionLiteral t = vt.t(i, e, j);
                bool value = t.is_constant() ? t.constant : model.at(t.var);
                if (!value) continue;
                if (chosen >= 0) throw Error("model assigns two successors; SAT backend fault");
                chosen = j;
            }
            if (chosen < 0) throw Error("model assigns no successor; SAT backend fault");
            rows[static_cast<std::size_t>(i) * vt.num_events() + e] = chosen;
        }
    return rows;
}

std::vector<int> reachable_candidate_states(const std::vector<bool>& model, const VarTable& vt) {
    const int n = vt.n();
    std::vector<int> rows = decode_rows(model, vt);
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (Event e = 0; e < vt.num_events(); ++e) {
            int j = rows[static_cast<std::size_t>(i) * vt.num_events() + e];
            if (j < n && !seen[j]) {
                seen[j] = true;
                stack.push_back(j);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

Automaton decode(const std::vector<bool>& model, const VarTable& vt, AlphabetPtr alphabet) {
    if (alphabet->size() != vt.num_events()) throw Error("decode: alphabet does not match variable table");
    const int n = vt.n();
    std::vector<int> rows = decode_rows(model, vt);
    Automaton full(std::move(alphabet));
    for (int i = 0; i < n; ++i) full.add_state("x" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (Event e = 0; e < vt.num_events(); ++e) {
            int j = rows[static_cast<std::size_t>(i) * vt.num_events() + e];
            if (j < n) full.set_transition(static_cast<State>(i), e, static_cast<State>(j));
        }
    full.set_initial(0);
    return full.reachable_part();
}

Clause blocking_clause(const std::vector<bool>& model, const VarTable& vt, const std::vector<int>& reachable) {
    std::vector<int> rows = decode_rows(model, vt);
    Clause c;
    for (int i : reachable)
        for (Event e : vt.constraint().observable.to_vector()) {
            int j = rows[static_cast<std::size_t>(i) * vt.num_events() + e];
            c.push_back(-vt.t(i, e, j).var);
        }
    return c;
}

void export_dimacs(std::ostream& out, const CnfInstance& cnf, const VarTable* vt, const Alphabet* alphabet) {
    if (vt != nullptr) {
        const int n = vt->n();
        for (int i = 0; i < n; ++i)
            for (Event e = 0; e < vt->num_events(); ++e)
                for (int j = 0; j <= n; ++j) {
                    TransitionLiteral t = vt->t(i, e, j);
                    if (t.is_constant()) continue;
                    out << "c t " << i << ' ' << (alphabet ? alphabet->name(e) : std::to_string(e)) << ' ' << j
                        << " = " << t.var << '\n';
                }
        for (int i = 0; i <= n; ++i)
            for (std::size_t y = 0; y < vt->num_product_states(); ++y)
                out << "c r " << i << ' ' << y << " = " << vt->r(i, y) << '\n';
    }
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& c : cnf.clauses) {
        for (Literal l : c) out << l << ' ';
        out << "0\n";
    }
    if (!out) throw Error("export_dimacs: write failure");
}

}  // namespace supobf
