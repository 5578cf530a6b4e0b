#include "ccsv/lts.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ccsv {

Action complement(const Action& a) {
    switch (a.kind) {
        case ActKind::Input: return Action::out(a.name);
        case ActKind::Output: return Action::in(a.name);
        case ActKind::InputV: return Action::outv(a.name, a.value);
        case ActKind::OutputV: return Action::inv(a.name, a.value);
        case ActKind::Tau: break;
    }
    throw Error("complement is undefined for tau");
}

std::string render(const Action& a) {
    switch (a.kind) {
        case ActKind::Tau: return "tau";
        case ActKind::Input: return a.name + "?";
        case ActKind::Output: return a.name + "!";
        case ActKind::InputV: return a.name + "?" + a.value;
        case ActKind::OutputV: return a.name + "!" + a.value;
    }
    return "?";
}

std::vector<Transition> Lts::out(const std::string& s) const {
    std::vector<Transition> result;
    for (const auto& t : transitions)
        if (t.src == s) result.push_back(t);
    return result;
}

void Lts::validate() const {
    if (!states.count(initial)) throw Error("initial state '" + initial + "' not in state set");
    for (const auto& t : transitions) {
        if (!states.count(t.src)) throw Error("transition source '" + t.src + "' not in state set");
        if (!states.count(t.dst)) throw Error("transition target '" + t.dst + "' not in state set");
    }
}

Lts reachable_part(const Lts& p) {
    std::set<std::string> seen{p.initial};
    std::deque<std::string> queue{p.initial};
    // Index outgoing transitions once.
    std::multimap<std::string, const Transition*> out;
    for (const auto& t : p.transitions) out.emplace(t.src, &t);
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        auto [lo, hi] = out.equal_range(s);
        for (auto it = lo; it != hi; ++it)
            if (seen.insert(it->second->dst).second) queue.push_back(it->second->dst);
    }
    Lts result;
    result.states = seen;
    result.initial = p.initial;
    for (const auto& t : p.transitions)
        if (seen.count(t.src)) result.transitions.insert(t);
    return result;
}

std::set<std::string> deadlocks(const Lts& p) {
    Lts r = reachable_part(p);
    std::set<std::string> with_out;
    for (const auto& t : r.transitions) with_out.insert(t.src);
    std::set<std::string> result;
    for (const auto& s : r.states)
        if (!with_out.count(s)) result.insert(s);
    return result;
}

namespace {

// Stable colouring of states by iterated in/out label-multiset signatures;
// used to prune the isomorphism backtracking.
std::map<std::string, std::string> colour_refine(const Lts& p) {
    std::map<std::string, std::string> colour;
    for (const auto& s : p.states) colour[s] = (s == p.initial) ? "I" : "S";
    for (std::size_t round = 0; round < p.states.size(); ++round) {
        std::map<std::string, std::string> next;
        for (const auto& s : p.states) {
            std::multiset<std::string> outs, ins;
            for (const auto& t : p.transitions) {
                if (t.src == s) outs.insert(render(t.act) + ">" + colour.at(t.dst));
                if (t.dst == s) ins.insert(render(t.act) + "<" + colour.at(t.src));
            }
            std::string sig = colour.at(s) + "|";
            for (const auto& x : outs) sig += x + ";";
            sig += "|";
            for (const auto& x : ins) sig += x + ";";
            next[s] = sig;
        }
        // Canonicalize signatures to short colour names to bound growth.
        // Number them by sorted signature so the names are independent of
        // state names and comparable across different processes.
        std::map<std::string, std::string> rename;
        for (const auto& [s, sig] : next) rename[sig];
        std::size_t idx = 0;
        for (auto& [sig, name] : rename) name = "c" + std::to_string(idx++);
        bool changed = false;
        for (auto& [s, sig] : next) {
            sig = rename.at(sig);
            if (sig != colour.at(s)) changed = true;
        }
        std::map<std::string, std::set<std::string>> before, after;
        for (const auto& [s, c] : colour) before[c].insert(s);
        for (const auto& [s, c] : next) after[c].insert(s);
        colour = next;
        if (!changed && after.size() == before.size()) break;
    }
    return colour;
}

}  // namespace

std::optional<std::map<std::string, std::string>> isomorphic(const Lts& p1, const Lts& p2,
                                                             std::size_t max_states) {
    if (p1.states.size() > max_states || p2.states.size() > max_states)
        throw SizeLimitError("isomorphic: state count exceeds bound " + std::to_string(max_states));
    if (p1.states.size() != p2.states.size() || p1.transitions.size() != p2.transitions.size())
        return std::nullopt;

    auto c1 = colour_refine(p1);
    auto c2 = colour_refine(p2);
    // Colour class sizes must agree.
    std::map<std::string, int> h1, h2;
    for (auto& [s, c] : c1) h1[c]++;
    for (auto& [s, c] : c2) h2[c]++;
    if (h1 != h2) return std::nullopt;

    std::vector<std::string> order(p1.states.begin(), p1.states.end());
    // Try rarer colour classes first to fail fast.
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        return std::tuple(h1[c1[a]], c1[a], a) < std::tuple(h1[c1[b]], c1[b], b);
    });

    std::map<std::string, std::string> fwd;
    std::map<std::string, std::string> bwd;

    // Check all transitions incident to s1 whose both endpoints are mapped.
    auto consistent = [&](const std::string& s1) {
        for (const auto& t : p1.transitions) {
            if (t.src != s1 && t.dst != s1) continue;
            auto i = fwd.find(t.src);
            auto j = fwd.find(t.dst);
            if (i == fwd.end() || j == fwd.end()) continue;
            if (!p2.transitions.count({i->second, t.act, j->second})) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
        if (k == order.size()) {
            // Forward direction checked incrementally; the backward direction
            // follows since transition counts are equal and fwd is injective.
            for (const auto& t : p2.transitions)
                if (!p1.transitions.count({bwd.at(t.src), t.act, bwd.at(t.dst)})) return false;
            return true;
        }
        const std::string& s1 = order[k];
        for (const auto& s2 : p2.states) {
            if (bwd.count(s2)) continue;
            if (c2.at(s2) != c1.at(s1)) continue;
            if ((s1 == p1.initial) != (s2 == p2.initial)) continue;
            fwd[s1] = s2;
            bwd[s2] = s1;
            if (consistent(s1) && assign(k + 1)) return true;
            fwd.erase(s1);
            bwd.erase(s2);
        }
        return false;
    };

    if (assign(0)) return fwd;
    return std::nullopt;
}

std::set<Action> act_of(const Lts& p, const std::optional<std::string>& s) {
    std::set<Action> result;
    if (s) {
        if (!p.states.count(*s)) throw UnknownStateError("act_of: unknown state '" + *s + "'");
        for (const auto& t : p.transitions)
            if (t.src == *s) result.insert(t.act);
    } else {
        for (const auto& t : p.transitions)
            if (!t.act.is_tau()) result.insert(t.act);
    }
    return result;
}

std::set<std::string> names_of(const std::set<Action>& acts) {
    std::set<std::string> result;
    for (const auto& a : acts)
        if (!a.is_tau()) result.insert(a.name);
    return result;
}

}  // namespace ccsv
