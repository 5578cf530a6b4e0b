#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ccsv/errors.hpp"

namespace ccsv {

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class ActKind { Tau, Input, Output, InputV, OutputV };

// A transition label: the silent action tau, a named input a? / output a!,
// or (in concretized value-passing systems only) an input/output carrying a
// rendered value.
struct Action {
    ActKind kind = ActKind::Tau;
    std::string name;   // empty iff kind == Tau
    std::string value;  // used by InputV / OutputV only

    static Action tau() { return {ActKind::Tau, "", ""}; }
    static Action in(std::string n) { return {ActKind::Input, std::move(n), ""}; }
    static Action out(std::string n) { return {ActKind::Output, std::move(n), ""}; }
    static Action inv(std::string n, std::string v) {
        return {ActKind::InputV, std::move(n), std::move(v)};
    }
    static Action outv(std::string n, std::string v) {
        return {ActKind::OutputV, std::move(n), std::move(v)};
    }

    bool is_tau() const { return kind == ActKind::Tau; }
    bool valued() const { return kind == ActKind::InputV || kind == ActKind::OutputV; }

    friend auto operator<=>(const Action&, const Action&) = default;
};

// a? <-> a!; undefined (throws) for tau.
Action complement(const Action& a);
// Printable form: "tau", "a?", "a!", "a?v", "a!v".
std::string render(const Action& a);

// ---------------------------------------------------------------------------
// Labelled transition systems
// ---------------------------------------------------------------------------

struct Transition {
    std::string src;
    Action act;
    std::string dst;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Finite LTS: a state set, an initial state and a transition set. Immutable
// by convention once built; all operations below are pure functions.
struct Lts {
    std::set<std::string> states;
    std::string initial;
    std::set<Transition> transitions;

    void add_state(const std::string& s) { states.insert(s); }
    void add_transition(const std::string& s, const Action& a, const std::string& t) {
        states.insert(s);
        states.insert(t);
        transitions.insert({s, a, t});
    }
    // Outgoing transitions of one state, in deterministic order.
    std::vector<Transition> out(const std::string& s) const;
    void validate() const;  // throws Error on malformed content
};

// Binary relation between the state sets of two (possibly equal) processes.
struct Relation {
    std::set<std::pair<std::string, std::string>> pairs;

    bool contains(const std::string& a, const std::string& b) const {
        return pairs.count({a, b}) != 0;
    }
    friend auto operator<=>(const Relation&, const Relation&) = default;
};

// ---------------------------------------------------------------------------
// Structural utilities
// ---------------------------------------------------------------------------

// Sub-LTS of the states reachable from the initial state.
Lts reachable_part(const Lts& p);

// Reachable states with no outgoing transitions.
std::set<std::string> deadlocks(const Lts& p);

// Bijection between the two state sets mapping initial to initial and
// preserving transitions, if one exists. Backtracking search; refuses inputs
// larger than max_states (default 12) unless told otherwise.
std::optional<std::map<std::string, std::string>> isomorphic(const Lts& p1, const Lts& p2,
                                                             std::size_t max_states = 12);

// With s absent: Act(P), the non-tau labels occurring anywhere in p.
// With s present: labels of transitions leaving s (tau included).
std::set<Action> act_of(const Lts& p, const std::optional<std::string>& s = std::nullopt);

// Names (channel identifiers) of a set of actions; tau contributes nothing.
std::set<std::string> names_of(const std::set<Action>& acts);

}  // namespace ccsv
