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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "supobf/encoding.hpp"
#include "supobf/sat.hpp"

namespace supobf {
namespace {

CnfInstance random_cnf(std::mt19937& rng, int vars, int clauses, int width) {
    CnfInstance cnf;
    cnf.num_vars = vars;
    std::uniform_int_distribution<int> var(1, vars);
    std::bernoulli_distribution neg(0.5);
    for (int i = 0; i < clauses; ++i) {
        Clause c;
        for (int j = 0; j < width; ++j) c.push_back(neg(rng) ? -var(rng) : var(rng));
        cnf.add(c);
    }
    return cnf;
}

std::size_t count_models(const CnfInstance& cnf) {
    std::size_t count = 0;
    for (std::uint32_t bits = 0; bits < (1u << cnf.num_vars); ++bits) {
        std::vector<bool> m(cnf.num_vars + 1);
        for (int v = 1; v <= cnf.num_vars; ++v) m[v] = (bits >> (v - 1)) & 1u;
        count += satisfies(cnf, m);
    }
    return count;
}

TEST(Cdcl, AgreesWithTruthTables) {
    std::mt19937 rng(1);
    for (int i = 0; i < 400; ++i) {
        int vars = 3 + i % 10;
        CnfInstance cnf = random_cnf(rng, vars, static_cast<int>(vars * 4.3), 3);
        CdclSolver solver;
        solver.add_cnf(cnf);
        bool sat = solver.solve() == SolveResult::Sat;
        EXPECT_EQ(sat, count_models(cnf) > 0);
        if (sat) EXPECT_TRUE(satisfies(cnf, solver.model()));
    }
}

TEST(Cdcl, BlockingEnumeratesEveryModelOnce) {
    std::mt19937 rng(2);
    for (int i = 0; i < 60; ++i) {
        int vars = 4 + i % 6;
        CnfInstance cnf = random_cnf(rng, vars, vars * 2, 3);
        CdclSolver solver;
        solver.add_cnf(cnf);
        std::set<std::vector<bool>> seen;
        while (solver.solve() == SolveResult::Sat) {
            auto m = solver.model();
            EXPECT_TRUE(satisfies(cnf, m));
            EXPECT_TRUE(seen.insert(m).second);
            Clause block;
            for (int v = 1; v <= vars; ++v) block.push_back(m[v] ? -v : v);
            solver.add_clause(block);
        }
        EXPECT_EQ(seen.size(), count_models(cnf));
    }
}

TEST(Cdcl, EmptyClauseAndUnits) {
    CdclSolver a;
    a.reserve_vars(1);
    a.add_clause(std::vector<Literal>{});
    EXPECT_EQ(a.solve(), SolveResult::Unsat);

    CdclSolver b;
    b.reserve_vars(2);
    b.add_clause(std::vector<Literal>{1});
    b.add_clause(std::vector<Literal>{-1, -2});
    ASSERT_EQ(b.solve(), SolveResult::Sat);
    EXPECT_TRUE(b.value(1));
    EXPECT_FALSE(b.value(2));
    b.add_clause(std::vector<Literal>{2});
    EXPECT_EQ(b.solve(), SolveResult::Unsat);
}

TEST(Cdcl, Pigeonhole) {
    // 6 pigeons, 5 holes.
    const int p = 6, h = 5;
    auto var = [&](int i, int j) { return i * h + j + 1; };
    CdclSolver s;
    s.reserve_vars(p * h);
    for (int i = 0; i < p; ++i) {
        Clause c;
        for (int j = 0; j < h; ++j) c.push_back(var(i, j));
        s.add_clause(c);
    }
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < p; ++i)
            for (int k = i + 1; k < p; ++k) s.add_clause(std::vector<Literal>{-var(i, j), -var(k, j)});
    EXPECT_EQ(s.solve(), SolveResult::Unsat);
    EXPECT_GT(s.stats().conflicts, 0u);
}

TEST(Cdcl, Deterministic) {
    std::mt19937 rng(4);
    CnfInstance cnf = random_cnf(rng, 40, 160, 3);
    CdclSolver a, b;
    a.add_cnf(cnf);
    b.add_cnf(cnf);
    ASSERT_EQ(a.solve(), b.solve());
    EXPECT_EQ(a.model(), b.model());
    EXPECT_EQ(a.stats().decisions, b.stats().decisions);
}

TEST(Dimacs, ExportFormat) {
    std::ostringstream empty;
    export_dimacs(empty, CnfInstance{});
    EXPECT_EQ(empty.str(), "p cnf 0 0\n");
    CnfInstance one;
    one.num_vars = 1;
    one.add({1});
    std::ostringstream unit;
    export_dimacs(unit, one);
    EXPECT_EQ(unit.str(), "p cnf 1 1\n1 0\n");
}

TEST(Dimacs, RoundTrip) {
    std::mt19937 rng(5);
    CnfInstance cnf = random_cnf(rng, 12, 30, 3);
    cnf.add({});
    std::stringstream s;
    export_dimacs(s, cnf);
    EXPECT_EQ(parse_dimacs(s), cnf);
}

TEST(Dimacs, ParseErrors) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_dimacs(in);
    };
    EXPECT_THROW(parse("1 0\n"), Error);
    EXPECT_THROW(parse("p cnf 1 1\n2 0\n"), Error);
    EXPECT_THROW(parse("p cnf 1 2\n1 0\n"), Error);
    EXPECT_THROW(parse("p cnf 1 1\n1\n"), Error);
    EXPECT_THROW(parse("p cnf 1 1\nx 0\n"), Error);
    EXPECT_THROW(parse(""), Error);
    CnfInstance ok = parse("c comment\np cnf 3 2\n1 -2\n 0 3 0\n");
    EXPECT_EQ(ok.clauses, (std::vector<Clause>{{1, -2}, {3}}));
}

}  // namespace
}  // namespace supobf
