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

#include <fstream>
#include <sstream>

#include "brute.hpp"
#include "supobf/problem.hpp"

namespace supobf {
namespace {

using testing::fixture;

const char* kBase = R"([alphabet]
a b
[controllable]
b
[observable]
a b

[plant]
states: q0 q1
initial: q0
trans:
q0 a q1
q1 b q0

[supervisor]
states: x0
initial: x0
trans:
x0 a x0
x0 b x0

[damage]
states: z0
initial: z0
marked:
auto-complete: true
)";

Problem parse_text(const std::string& text, ParseOptions options = {}) {
    std::istringstream in(text);
    options.source = "t.prob";
    return parse_problem(in, options);
}

std::string error_of(const std::string& text) {
    try {
        parse_text(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

TEST(Parse, ExampleOne) {
    Problem p = parse_problem_file(fixture("example1.prob"));
    EXPECT_EQ(p.alphabet->size(), 5u);
    EXPECT_EQ(p.alphabet->format(p.control.controllable), "{a, c, d, a'}");
    EXPECT_EQ(p.alphabet->format(p.control.observable), "{a, c, d, a'}");
    EXPECT_EQ(p.alphabet->format(p.attack.attackable), "{a'}");
    EXPECT_EQ(p.alphabet->format(p.attack.attacker_observable), "{c, a'}");
    EXPECT_EQ(p.plant.num_states(), 9u);
    EXPECT_EQ(p.supervisor.num_states(), 5u);
    EXPECT_TRUE(p.damage.is_total());
    EXPECT_FALSE(p.has_target);
    EXPECT_EQ(p.target, p.control);
    ProblemDiagnostics d = check_problem(p);
    EXPECT_TRUE(d.errors.empty());
    EXPECT_TRUE(d.warnings.empty());
}

TEST(Parse, Minimal) {
    Problem p = parse_text(kBase);
    EXPECT_EQ(p.plant.num_states(), 2u);
    ASSERT_EQ(p.damage.num_states(), 2u);
    EXPECT_FALSE(p.damage.is_marked(0));
    EXPECT_FALSE(p.damage.is_marked(1));
    EXPECT_TRUE(check_problem(p).errors.empty());
}

TEST(Parse, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_of(replace(kBase, "q1 b q0", "q1 c q0")), "t.prob:13: unknown event 'c'");
    EXPECT_EQ(error_of(replace(kBase, "q1 b q0", "q0 a q0")), "t.prob:13: nondeterministic transition: q0 already has a 'a' successor");
    EXPECT_EQ(error_of(replace(kBase, "q1 b q0", "q0 a q1")), "t.prob:13: duplicate transition");
    EXPECT_EQ(error_of(replace(kBase, "q1 b q0", "q1 b q9")), "t.prob:13: unknown state 'q9' in [plant]");
    EXPECT_EQ(error_of(replace(kBase, "marked:\n", "")), "t.prob:22: [damage] requires marked:");
    EXPECT_EQ(error_of(replace(kBase, "initial: x0\n", "initial: x0\nauto-complete: true\n")),
              "t.prob:18: auto-complete: is only allowed in [damage]");
    EXPECT_EQ(error_of(replace(kBase, "[plant]", "[plnat]")), "t.prob:8: unknown section [plnat]");
    EXPECT_EQ(error_of(replace(kBase, "a b\n[controllable]", "a a\n[controllable]")), "t.prob:2: duplicate event 'a'");
    EXPECT_EQ(error_of(std::string("a b\n") + kBase), "t.prob:1: content before the first section");
    EXPECT_NE(error_of(replace(kBase, "[supervisor]", "[other]")).find("unknown section"), std::string::npos);
}

TEST(Parse, MissingSection) {
    std::string text = kBase;
    text = text.substr(0, text.find("[damage]"));
    EXPECT_EQ(error_of(text), "t.prob: missing section [damage]");
}

TEST(Parse, RepairSelfLoops) {
    std::string text = replace(replace(kBase, "[observable]\na b", "[observable]\nb"), "[controllable]\nb",
                               "[controllable]\nb");
    text = replace(text, "x0 a x0\n", "");
    EXPECT_FALSE(check_problem(parse_text(text)).errors.empty());
    ParseOptions repair;
    repair.repair_selfloops = true;
    Problem p = parse_text(text, repair);
    EXPECT_TRUE(check_problem(p).errors.empty());
    EXPECT_EQ(p.supervisor.next(0, p.alphabet->at("a")), 0u);
}

TEST(Parse, TargetSections) {
    std::string text = replace(kBase, "[plant]", "[target-observable]\nb\n[target-controllable]\nb\n\n[plant]");
    Problem p = parse_text(text);
    EXPECT_TRUE(p.has_target);
    EXPECT_EQ(p.alphabet->format(p.target.observable), "{b}");
    EXPECT_EQ(p.alphabet->format(p.target.controllable), "{b}");
    EXPECT_EQ(p.control.observable.size(), 2);
}

TEST(CheckProblem, ReportsDamageAndConstraintErrors) {
    Problem p = parse_text(replace(kBase, "marked:\nauto-complete: true\n", "marked: z0\nauto-complete: true\n"));
    ProblemDiagnostics d = check_problem(p);
    ASSERT_FALSE(d.errors.empty());
    EXPECT_EQ(d.errors.front(), "closed loop generates damaging string ε");

    Problem partial = parse_text(replace(kBase, "auto-complete: true\n", ""));
    EXPECT_EQ(check_problem(partial).errors.front(),
              "damage automaton is not complete (add 'auto-complete: true')");

    Problem abnormal = parse_text(replace(kBase, "[plant]", "[target-observable]\na\n\n[plant]"));
    EXPECT_EQ(check_problem(abnormal).errors.front(), "target control constraint is not normal");
}

TEST(CheckProblem, WarnsAboutNonPlantDamage) {
    std::string text = replace(kBase, "states: z0\ninitial: z0\nmarked:\nauto-complete: true\n",
                               "states: z0 z1\ninitial: z0\nmarked: z1\nauto-complete: true\ntrans:\nz0 b z1\n");
    ProblemDiagnostics d = check_problem(parse_text(text));
    EXPECT_TRUE(d.errors.empty());
    ASSERT_EQ(d.warnings.size(), 1u);
    EXPECT_EQ(d.warnings[0], "damage automaton marks string b outside the plant language");
}

TEST(Write, RoundTrip) {
    for (const char* name : {"tri.prob", "single.prob", "atk.prob", "example1.prob", "noattack.prob", "perf.prob"}) {
        Problem p = parse_problem_file(fixture(name));
        std::stringstream out;
        write_problem(out, p);
        Problem q = parse_problem(out);
        EXPECT_EQ(*p.alphabet, *q.alphabet) << name;
        EXPECT_EQ(p.plant, q.plant) << name;
        EXPECT_EQ(p.supervisor, q.supervisor) << name;
        EXPECT_EQ(p.damage, q.damage) << name;
        EXPECT_EQ(p.target, q.target) << name;
        std::stringstream again;
        write_problem(again, q);
        EXPECT_EQ(out.str(), again.str()) << name;
    }
}

TEST(ParseAutomata, SupervisorOverride) {
    Problem p = parse_problem_file(fixture("example1.prob"));
    std::ifstream in(fixture("example1_obfuscated.prob"));
    auto sections = parse_automata(in, p.alphabet, "o.prob");
    ASSERT_EQ(sections.count("supervisor"), 1u);
    EXPECT_EQ(sections.at("supervisor").num_states(), 3u);
    std::istringstream flags("[alphabet]\na\n");
    EXPECT_THROW(parse_automata(flags, p.alphabet), Error);
}

}  // namespace
}  // namespace supobf
