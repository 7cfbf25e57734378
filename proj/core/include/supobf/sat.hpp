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

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace supobf {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfInstance {
    int num_vars = 0;
    std::vector<Clause> clauses;

    void add(Clause c) { clauses.push_back(std::move(c)); }
    friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

/// Plain DIMACS reader; comment lines are skipped. Throws Error on malformed
/// input.
CnfInstance parse_dimacs(std::istream& in);

enum class SolveResult { Sat, Unsat };

struct SolverStats {
    std::uint64_t solves = 0;
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
};

/// Incremental SAT session: clauses may be added between solve() calls.
class SatBackend {
public:
    virtual ~SatBackend() = default;

    virtual void reserve_vars(int num_vars) = 0;
    virtual void add_clause(std::span<const Literal> clause) = 0;
    virtual SolveResult solve() = 0;
    /// Total assignment over variables 1..num_vars() after a Sat result.
    virtual bool value(int var) const = 0;
    virtual int num_vars() const = 0;
    virtual SolverStats stats() const = 0;

    void add_cnf(const CnfInstance& cnf) {
        reserve_vars(cnf.num_vars);
        for (const auto& c : cnf.clauses) add_clause(c);
    }
    /// model[v] for v in 1..num_vars(); model[0] unused.
    std::vector<bool> model() const {
        std::vector<bool> m(static_cast<std::size_t>(num_vars()) + 1, false);
        for (int v = 1; v <= num_vars(); ++v) m[v] = value(v);
        return m;
    }
};

/// Conflict-driven clause learning solver with two-watched-literal
/// propagation, first-UIP learning, VSIDS branching, phase saving and Luby
/// restarts. Fully deterministic.
class CdclSolver final : public SatBackend {
public:
    CdclSolver();
    ~CdclSolver() override;
    CdclSolver(const CdclSolver&) = delete;
    CdclSolver& operator=(const CdclSolver&) = delete;

    void reserve_vars(int num_vars) override;
    void add_clause(std::span<const Literal> clause) override;
    SolveResult solve() override;
    bool value(int var) const override;
    int num_vars() const override;
    SolverStats stats() const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::unique_ptr<SatBackend> make_default_backend();

/// Evaluates a clause set under a model indexed like SatBackend::model().
bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model);

}  // namespace supobf
