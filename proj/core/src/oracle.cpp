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

#include "supobf/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace supobf {

const char* to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::Attackable: return "attackable";
        case OracleVerdict::NotAttackable: return "not-attackable";
        case OracleVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::size_t default_oracle_bound(const Automaton& g, const Automaton& s, const Automaton& h) {
    return g.num_states() * s.num_states() * h.num_states() + 2;
}

namespace {

struct Node {
    std::uint32_t parent;
    AttackerEvent via;
    std::size_t depth;
    std::map<AttackerEvent, std::uint32_t> children;
};

struct Entry {
    std::uint32_t node;
    std::uint32_t config;
    std::size_t length;
    std::uint32_t parent;  // entry index, self for the root
    Event event;
};

class Explorer {
public:
    Explorer(const Automaton& g, const Supervisor& s, const Automaton& h, const AttackConstraint& ac)
        : g_(g), s_(s.automaton), h_(h), ac_(ac), observable_(s.constraint.observable) {
        for (State x = 0; x < s_.num_states(); ++x) enabled_.push_back(s_.enabled(x));
    }

    std::uint32_t config_id(const Configuration& c) {
        auto [it, fresh] = config_index_.emplace(c, static_cast<std::uint32_t>(configs_.size()));
        if (fresh) configs_.push_back(c);
        return it->second;
    }
    const Configuration& config(std::uint32_t id) const { return configs_[id]; }
    EventSet enabled(State x) const { return enabled_[x]; }
    bool observable(Event e) const { return observable_.contains(e); }

    /// Closed-loop successor, or nullopt when the plant or supervisor blocks e.
    std::optional<Configuration> step(const Configuration& c, Event e) const {
        State q = g_.next(c[0], e);
        if (q == kNoState) return std::nullopt;
        State x = s_.next(c[1], e);
        if (x == kNoState) return std::nullopt;
        return Configuration{q, x, h_.next(c[2], e)};
    }

    Configuration initial() const { return {g_.initial(), s_.initial(), h_.initial()}; }

    std::size_t uo_diameter() {
        std::vector<Configuration> reach{initial()};
        std::set<Configuration> seen{initial()};
        for (std::size_t i = 0; i < reach.size(); ++i)
            for (Event e = 0; e < g_.num_events(); ++e)
                if (auto n = step(reach[i], e); n && seen.insert(*n).second) reach.push_back(*n);
        std::size_t diameter = 0;
        for (const Configuration& c : reach) {
            std::map<Configuration, std::size_t> dist{{c, 0}};
            std::deque<Configuration> queue{c};
            while (!queue.empty()) {
                Configuration u = queue.front();
                queue.pop_front();
                for (Event e = 0; e < g_.num_events(); ++e) {
                    if (observable(e)) continue;
                    auto n = step(u, e);
                    if (n && dist.emplace(*n, dist[u] + 1).second) {
                        diameter = std::max(diameter, dist[*n]);
                        queue.push_back(*n);
                    }
                }
            }
        }
        return diameter;
    }

    const Automaton& g_;
    const Automaton& s_;
    const Automaton& h_;
    const AttackConstraint& ac_;

private:
    EventSet observable_;
    std::vector<EventSet> enabled_;
    std::map<Configuration, std::uint32_t> config_index_;
    std::vector<Configuration> configs_;
};

}  // namespace

OracleResult brute_force_attackable(const Automaton& g, const Supervisor& s, const Automaton& h,
                                    const AttackConstraint& ac, std::size_t len_bound, std::size_t budget) {
    if (len_bound < 1) throw Error("oracle: length bound must be at least 1");
    if (!h.is_total()) throw Error("oracle: damage automaton must be complete");
    OracleResult result;
    if (g.num_states() == 0 || s.automaton.num_states() == 0) {
        result.verdict = OracleVerdict::NotAttackable;
        return result;
    }
    Explorer ex(g, s, h, ac);

    const std::size_t d = ex.uo_diameter();
    result.stats.uo_diameter = d;
    // Largest K with K + (K + 1) * D <= len_bound.
    if (d > len_bound) return result;
    const std::size_t k_max = d == 0 ? len_bound : (len_bound - d) / (d + 1);
    result.stats.complete_depth = k_max;

    std::vector<Node> nodes{{0, {}, 0, {}}};
    std::vector<Entry> entries;
    std::unordered_map<std::uint64_t, std::uint32_t> visited;
    // Entries of one observation depth, explored shortest string first.
    using Item = std::pair<std::size_t, std::uint32_t>;  // (length, entry)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> level;
    std::vector<std::uint32_t> next_level_seeds;
    std::vector<std::vector<std::uint32_t>> by_depth;  // entries per observation depth
    auto visit = [&](std::uint32_t node, std::uint32_t config, std::size_t length, std::uint32_t parent, Event e) {
        std::uint64_t key = (std::uint64_t{node} << 32) | config;
        auto [it, fresh] = visited.emplace(key, static_cast<std::uint32_t>(entries.size()));
        if (fresh) {
            entries.push_back({node, config, length, parent, e});
            std::size_t d = nodes[node].depth;
            if (by_depth.size() <= d) by_depth.resize(d + 1);
            by_depth[d].push_back(it->second);
        } else if (entries[it->second].length > length) {
            entries[it->second] = {node, config, length, parent, e};
        } else {
            return std::optional<std::uint32_t>{};
        }
        return std::optional<std::uint32_t>{it->second};
    };

    std::vector<std::map<std::uint32_t, std::uint32_t>> members;  // per node: config -> entry
    std::set<std::vector<std::uint32_t>> seen;

    auto witness_entry = [&](std::uint32_t node, Event sigma) -> std::optional<std::uint32_t> {
        std::optional<std::uint32_t> best;
        for (const auto& [cid, entry] : members[node]) {
            const Configuration& c = ex.config(cid);
            if (g.next(c[0], sigma) == kNoState) continue;
            if (!h.is_marked(h.next(c[2], sigma))) return std::nullopt;
            if (ex.enabled(c[1]).contains(sigma)) continue;
            if (!best || entries[entry].length < entries[*best].length) best = entry;
        }
        return best;
    };

    std::vector<std::uint32_t> level_nodes{0};
    level.push({0, *visit(0, ex.config_id(ex.initial()), 0, 0, 0)});
    for (std::size_t depth = 0; depth <= k_max; ++depth) {
        // Closure under unobservable events; observable steps seed the next depth.
        next_level_seeds.clear();
        while (!level.empty()) {
            auto [length, id] = level.top();
            level.pop();
            if (entries[id].length != length) continue;  // superseded by a shorter string
            if (entries.size() > budget) {
                result.stats.budget_exhausted = true;
                break;
            }
            const Entry cur = entries[id];
            if (cur.length >= len_bound) continue;
            const Configuration c = ex.config(cur.config);
            for (Event e = 0; e < g.num_events(); ++e) {
                auto next = ex.step(c, e);
                if (!next) continue;
                if (!ex.observable(e)) {
                    if (auto n = visit(cur.node, ex.config_id(*next), cur.length + 1, id, e))
                        level.push({cur.length + 1, *n});
                    continue;
                }
                if (depth == k_max) continue;
                AttackerEvent obs{ac.attacker_observable.contains(e) ? e : kEpsilon, ex.enabled((*next)[1])};
                auto it = nodes[cur.node].children.find(obs);
                std::uint32_t child;
                if (it == nodes[cur.node].children.end()) {
                    child = static_cast<std::uint32_t>(nodes.size());
                    nodes[cur.node].children.emplace(obs, child);
                    nodes.push_back({cur.node, obs, depth + 1, {}});
                } else {
                    child = it->second;
                }
                if (auto n = visit(child, ex.config_id(*next), cur.length + 1, id, e)) next_level_seeds.push_back(*n);
            }
        }
        if (result.stats.budget_exhausted) break;

        members.resize(nodes.size());
        if (depth < by_depth.size())
            for (std::uint32_t i : by_depth[depth]) members[entries[i].node].emplace(entries[i].config, i);

        for (std::uint32_t node : level_nodes) {
            for (Event sigma : ac.attackable.to_vector()) {
                auto entry = witness_entry(node, sigma);
                if (!entry) continue;
                result.verdict = OracleVerdict::Attackable;
                result.event = sigma;
                for (std::uint32_t e = *entry; e != 0; e = entries[e].parent) result.string.push_back(entries[e].event);
                std::reverse(result.string.begin(), result.string.end());
                for (std::uint32_t n = node; n != 0; n = nodes[n].parent) result.observation.push_back(nodes[n].via);
                std::reverse(result.observation.begin(), result.observation.end());
                break;
            }
            if (result.verdict == OracleVerdict::Attackable) break;
        }

        bool saturated = depth > 0;
        for (std::uint32_t node : level_nodes) {
            std::vector<std::uint32_t> set;
            for (const auto& [cid, entry] : members[node]) set.push_back(cid);
            if (seen.insert(std::move(set)).second) saturated = false;
        }
        result.stats.explored_depth = depth;
        if (result.verdict == OracleVerdict::Attackable) break;
        if (saturated) {
            result.verdict = OracleVerdict::NotAttackable;
            break;
        }

        level_nodes.clear();
        for (std::uint32_t id : next_level_seeds) {
            level_nodes.push_back(entries[id].node);
            level.push({entries[id].length, id});
        }
        std::sort(level_nodes.begin(), level_nodes.end());
        level_nodes.erase(std::unique(level_nodes.begin(), level_nodes.end()), level_nodes.end());
    }
    result.stats.pairs = entries.size();
    result.stats.classes = nodes.size();

    std::set<std::vector<Configuration>> sets;
    for (const auto& ids : seen) {
        std::vector<Configuration> set;
        for (auto id : ids) set.push_back(ex.config(id));
        std::sort(set.begin(), set.end());
        sets.insert(std::move(set));
    }
    result.class_sets.assign(sets.begin(), sets.end());
    if (result.stats.budget_exhausted) result.verdict = OracleVerdict::Inconclusive;
    return result;
}

}  // namespace supobf
