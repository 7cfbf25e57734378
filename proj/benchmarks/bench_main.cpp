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

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "supobf/attack.hpp"
#include "supobf/encoding.hpp"
#include "supobf/obfuscate.hpp"
#include "supobf/oracle.hpp"
#include "supobf/problem.hpp"

namespace {

using namespace supobf;

const Problem& load(const std::string& name) {
    static std::map<std::string, Problem> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, parse_problem_file(std::string(SUPOBF_FIXTURE_DIR) + "/" + name)).first;
    return it->second;
}

void BM_EncodeSolve(benchmark::State& state) {
    const Problem& p = load("perf.prob");
    const int n = static_cast<int>(state.range(0));
    DualMarkedDFA gds = build_gds(complete(p.plant), complete(p.supervisor));
    for (auto _ : state) {
        Encoding enc = encode(n, gds, p.target);
        CdclSolver solver;
        solver.add_cnf(enc.cnf);
        benchmark::DoNotOptimize(solver.solve());
        state.counters["clauses"] = static_cast<double>(enc.cnf.clauses.size());
    }
}
BENCHMARK(BM_EncodeSolve)->DenseRange(1, 6);

void BM_NonAttackable(benchmark::State& state, const char* name) {
    const Problem& p = load(name);
    for (auto _ : state) benchmark::DoNotOptimize(non_attackable(p.plant, p.original(), p.damage, p.attack));
}
BENCHMARK_CAPTURE(BM_NonAttackable, example1, "example1.prob");
BENCHMARK_CAPTURE(BM_NonAttackable, perf, "perf.prob");

void BM_Oracle(benchmark::State& state, const char* name) {
    const Problem& p = load(name);
    std::size_t bound = default_oracle_bound(p.plant, p.supervisor, p.damage);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_attackable(p.plant, p.original(), p.damage, p.attack, bound));
}
BENCHMARK_CAPTURE(BM_Oracle, example1, "example1.prob");
BENCHMARK_CAPTURE(BM_Oracle, perf, "perf.prob");

void BM_Supbp(benchmark::State& state) {
    const Problem& p = load("perf.prob");
    for (auto _ : state) {
        SupbpResult r = supbp(p.plant, p.supervisor, p.target, static_cast<int>(state.range(0)));
        state.counters["supervisors"] = static_cast<double>(r.supervisors.size());
    }
}
BENCHMARK(BM_Supbp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Obfuscate(benchmark::State& state, const char* name) {
    const Problem& p = load(name);
    ObfuscationRequest req{p.plant, p.original(), p.target, p.attack, p.damage, 6, {}};
    for (auto _ : state) benchmark::DoNotOptimize(obfuscate(req));
}
BENCHMARK_CAPTURE(BM_Obfuscate, example1, "example1.prob");
BENCHMARK_CAPTURE(BM_Obfuscate, perf, "perf.prob");

}  // namespace

BENCHMARK_MAIN();
