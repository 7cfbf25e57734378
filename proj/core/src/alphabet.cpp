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

#include "supobf/alphabet.hpp"

#include <unordered_set>

namespace supobf {

Alphabet::Alphabet(std::vector<EventDecl> events) : events_(std::move(events)) {
    auto problems = check(events_);
    if (!problems.empty()) throw Error("invalid alphabet: " + problems.front());
    for (std::size_t i = 0; i < events_.size(); ++i)
        index_.emplace(events_[i].name, static_cast<Event>(i));
}

bool Alphabet::valid_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name)
        if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
            return false;
    return true;
}

std::vector<std::string> Alphabet::check(const std::vector<EventDecl>& events) {
    std::vector<std::string> problems;
    if (events.size() > kMaxEvents)
        problems.push_back("at most " + std::to_string(kMaxEvents) + " events are supported");
    std::unordered_set<std::string> seen;
    for (const auto& e : events) {
        if (!valid_name(e.name)) problems.push_back("invalid event name '" + e.name + "'");
        if (!seen.insert(e.name).second) problems.push_back("duplicate event '" + e.name + "'");
        const auto& f = e.flags;
        if (f.controllable && !f.observable)
            problems.push_back("event '" + e.name + "' is controllable but not observable");
        if (f.attackable && !f.attacker_observable)
            problems.push_back("event '" + e.name + "' is attackable but not attacker-observable");
        if (f.attackable && !f.controllable)
            problems.push_back("event '" + e.name + "' is attackable but not controllable");
        if (f.attacker_observable && !f.observable)
            problems.push_back("event '" + e.name + "' is attacker-observable but not observable");
    }
    return problems;
}

std::optional<Event> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Event Alphabet::at(std::string_view name) const {
    if (auto e = find(name)) return *e;
    throw Error("unknown event '" + std::string(name) + "'");
}

namespace {
template <typename Pred>
EventSet collect(const std::vector<EventDecl>& events, Pred pred) {
    EventSet s;
    for (std::size_t i = 0; i < events.size(); ++i)
        if (pred(events[i].flags)) s.insert(static_cast<Event>(i));
    return s;
}
}  // namespace

EventSet Alphabet::controllable() const {
    return collect(events_, [](const EventFlags& f) { return f.controllable; });
}
EventSet Alphabet::observable() const {
    return collect(events_, [](const EventFlags& f) { return f.observable; });
}
EventSet Alphabet::attackable() const {
    return collect(events_, [](const EventFlags& f) { return f.attackable; });
}
EventSet Alphabet::attacker_observable() const {
    return collect(events_, [](const EventFlags& f) { return f.attacker_observable; });
}

std::string Alphabet::format(EventSet set) const {
    std::string out = "{";
    bool first = true;
    for (Event e : set.to_vector()) {
        if (!first) out += ", ";
        out += name(e);
        first = false;
    }
    return out + "}";
}

}  // namespace supobf
