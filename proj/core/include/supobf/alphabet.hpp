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

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace supobf {

using Event = std::uint32_t;
using State = std::uint32_t;

inline constexpr State kNoState = static_cast<State>(-1);

/// Maximum number of events an alphabet may hold (EventSet is a 64-bit mask).
inline constexpr std::size_t kMaxEvents = 64;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A set of events of one alphabet, stored as a bit mask.
class EventSet {
public:
    constexpr EventSet() = default;
    constexpr explicit EventSet(std::uint64_t bits) : bits_(bits) {}

    static EventSet all(std::size_t num_events) {
        return EventSet(num_events >= 64 ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << num_events) - 1);
    }

    constexpr bool contains(Event e) const { return (bits_ >> e) & 1U; }
    constexpr void insert(Event e) { bits_ |= std::uint64_t{1} << e; }
    constexpr void erase(Event e) { bits_ &= ~(std::uint64_t{1} << e); }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool is_subset_of(EventSet other) const { return (bits_ & ~other.bits_) == 0; }

    friend constexpr EventSet operator|(EventSet a, EventSet b) { return EventSet(a.bits_ | b.bits_); }
    friend constexpr EventSet operator&(EventSet a, EventSet b) { return EventSet(a.bits_ & b.bits_); }
    friend constexpr EventSet operator-(EventSet a, EventSet b) { return EventSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(EventSet, EventSet) = default;
    friend constexpr auto operator<=>(EventSet, EventSet) = default;

    /// Members in increasing event order.
    std::vector<Event> to_vector() const {
        std::vector<Event> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(static_cast<Event>(std::countr_zero(b)));
        return out;
    }

private:
    std::uint64_t bits_ = 0;
};

struct EventFlags {
    bool controllable = false;
    bool observable = false;
    bool attackable = false;
    bool attacker_observable = false;

    friend bool operator==(const EventFlags&, const EventFlags&) = default;
};

struct EventDecl {
    std::string name;
    EventFlags flags;
};

/// Ordered event alphabet with per-event control and attack attributes.
///
/// The constructor enforces the normality assumptions on supervisors and
/// attackers: controllable events are observable, attackable events are
/// attacker-observable and controllable, and attacker-observable events are
/// observable.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<EventDecl> events);

    std::size_t size() const { return events_.size(); }
    const std::string& name(Event e) const { return events_.at(e).name; }
    const EventFlags& flags(Event e) const { return events_.at(e).flags; }
    const std::vector<EventDecl>& events() const { return events_; }

    std::optional<Event> find(std::string_view name) const;
    /// Throws Error when the name is not declared.
    Event at(std::string_view name) const;

    EventSet all() const { return EventSet::all(size()); }
    EventSet controllable() const;
    EventSet observable() const;
    EventSet attackable() const;
    EventSet attacker_observable() const;

    /// Names joined with ", " in event order, e.g. "{a, b}".
    std::string format(EventSet set) const;

    /// Problems with the declaration list; empty when it is well formed.
    static std::vector<std::string> check(const std::vector<EventDecl>& events);

    static bool valid_name(std::string_view name);

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.events_[i].name != b.events_[i].name || a.events_[i].flags != b.events_[i].flags)
                return false;
        return true;
    }

private:
    std::vector<EventDecl> events_;
    std::unordered_map<std::string, Event> index_;
};

/// Control constraint (controllable, observable) of a supervisor.
struct ControlConstraint {
    EventSet controllable;
    EventSet observable;
    std::size_t num_events = 0;

    static ControlConstraint from(const Alphabet& alphabet) {
        return {alphabet.controllable(), alphabet.observable(), alphabet.size()};
    }

    EventSet all() const { return EventSet::all(num_events); }
    EventSet uncontrollable() const { return all() - controllable; }
    EventSet unobservable() const { return all() - observable; }
    bool normal() const { return controllable.is_subset_of(observable); }

    friend bool operator==(const ControlConstraint&, const ControlConstraint&) = default;
};

/// Attack constraint (attackable, attacker-observable).
struct AttackConstraint {
    EventSet attackable;
    EventSet attacker_observable;

    static AttackConstraint from(const Alphabet& alphabet) {
        return {alphabet.attackable(), alphabet.attacker_observable()};
    }

    /// Normality of the attacker and containment in the supervisor's constraint.
    bool compatible_with(const ControlConstraint& c) const {
        return attackable.is_subset_of(attacker_observable) &&
               attackable.is_subset_of(c.controllable) &&
               attacker_observable.is_subset_of(c.observable);
    }

    friend bool operator==(const AttackConstraint&, const AttackConstraint&) = default;
};

}  // namespace supobf
