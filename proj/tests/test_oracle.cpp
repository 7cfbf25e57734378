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
#include <set>

#include "brute.hpp"
#include "supobf/attack.hpp"
#include "supobf/oracle.hpp"
#include "supobf/problem.hpp"

namespace supobf {
namespace {

using testing::fixture;

OracleResult run(const Problem& p, std::size_t bound) {
    return brute_force_attackable(p.plant, p.original(), p.damage, p.attack, bound);
}

TEST(Oracle, AtkWithinThree) {
    Problem p = parse_problem_file(fixture("atk.prob"));
    OracleResult r = run(p, 3);
    EXPECT_EQ(r.verdict, OracleVerdict::Attackable);
    EXPECT_TRUE(r.string.empty());
    EXPECT_EQ(r.event, p.alphabet->at("k"));
    EXPECT_STREQ(to_string(r.verdict), "attackable");
}

TEST(Oracle, ExampleOneWitness) {
    Problem p = parse_problem_file(fixture("example1.prob"));
    OracleResult r = run(p, default_oracle_bound(p.plant, p.supervisor, p.damage));
    ASSERT_EQ(r.verdict, OracleVerdict::Attackable);
    EXPECT_EQ(r.string, parse_word(*p.alphabet, {"a", "c", "d"}));
    EXPECT_EQ(r.event, p.alphabet->at("a'"));
    EXPECT_EQ(r.observation.size(), 3u);
}

TEST(Oracle, NotAttackableFixtures) {
    for (const char* name : {"tri.prob", "single.prob", "noattack.prob"}) {
        Problem p = parse_problem_file(fixture(name));
        OracleResult r = run(p, default_oracle_bound(p.plant, p.supervisor, p.damage));
        EXPECT_EQ(r.verdict, OracleVerdict::NotAttackable) << name;
        EXPECT_FALSE(r.stats.budget_exhausted);
    }
}

TEST(Oracle, ShortBoundIsInconclusive) {
    Problem p = parse_problem_file(fixture("example1.prob"));
    EXPECT_EQ(run(p, 1).verdict, OracleVerdict::Inconclusive);
    EXPECT_EQ(brute_force_attackable(p.plant, p.original(), p.damage, p.attack, 50, 3).verdict,
              OracleVerdict::Inconclusive);
}

TEST(Oracle, RejectsBadArguments) {
    Problem p = parse_problem_file(fixture("atk.prob"));
    EXPECT_THROW(run(p, 0), Error);
    Automaton partial = p.damage;
    partial.clear_transition(0, 0);
    EXPECT_THROW(brute_force_attackable(p.plant, p.original(), partial, p.attack, 4), Error);
}

TEST(Oracle, DefaultBound) {
    Problem p = parse_problem_file(fixture("example1.prob"));
    EXPECT_EQ(default_oracle_bound(p.plant, p.supervisor, p.damage),
              p.plant.num_states() * p.supervisor.num_states() * p.damage.num_states() + 2);
}

TEST(Oracle, AgreesWithSubsetConstruction) {
    std::mt19937 rng(31);
    int conclusive = 0, attackable = 0;
    for (int i = 0; i < 200; ++i) {
        testing::Instance inst = testing::random_instance(rng, {});
        Supervisor s{inst.supervisor, inst.control};
        OracleResult r = brute_force_attackable(inst.plant, s, inst.damage, inst.attack,
                                                default_oracle_bound(inst.plant, inst.supervisor, inst.damage));
        AttackVerdict v = non_attackable(inst.plant, s, inst.damage, inst.attack);
        if (r.verdict == OracleVerdict::Inconclusive) continue;
        ++conclusive;
        attackable += !v.non_attackable;
        EXPECT_EQ(r.verdict == OracleVerdict::NotAttackable, v.non_attackable) << "instance " << i;

        GPAutomaton gp = general_product(inst.plant, annotate(s), inst.damage, inst.attack);
        SubsetAutomaton sub = determinize_and_label(attacker_projection(gp), gp, inst.attack);
        std::set<std::vector<Configuration>> subsets;
        for (const auto& y : sub.subsets) {
            std::vector<Configuration> configs;
            for (State v2 : y) configs.push_back(gp.states[v2]);
            std::sort(configs.begin(), configs.end());
            subsets.insert(configs);
        }
        for (const auto& cls : r.class_sets) EXPECT_TRUE(subsets.count(cls)) << "instance " << i;
    }
    EXPECT_GE(conclusive, 150);
    EXPECT_GT(attackable, 0);
    EXPECT_LT(attackable, conclusive);
}

}  // namespace
}  // namespace supobf
