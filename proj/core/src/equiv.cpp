#include "ccsv/equiv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace ccsv {

namespace {

// Precomputed transition index and tau*-closure for one LTS.
struct Closure {
    std::multimap<std::string, Transition> out;
    std::map<std::string, std::set<std::string>> taustar;

    explicit Closure(const Lts& p) {
        for (const auto& t : p.transitions) out.emplace(t.src, t);
        for (const auto& s : p.states) {
            std::set<std::string> seen{s};
            std::deque<std::string> queue{s};
            while (!queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                auto [lo, hi] = out.equal_range(u);
                for (auto it = lo; it != hi; ++it)
                    if (it->second.act.is_tau() && seen.insert(it->second.dst).second)
                        queue.push_back(it->second.dst);
            }
            taustar[s] = std::move(seen);
        }
    }

    // States reachable by tau* a tau* (a non-tau), or tau* for a = tau.
    std::set<std::string> weak_succ(const std::string& s, const Action& a) const {
        if (a.is_tau()) return taustar.at(s);
        std::set<std::string> result;
        for (const auto& u : taustar.at(s)) {
            auto [lo, hi] = out.equal_range(u);
            for (auto it = lo; it != hi; ++it)
                if (it->second.act == a)
                    for (const auto& v : taustar.at(it->second.dst)) result.insert(v);
        }
        return result;
    }

    // States reachable by at least one tau step followed by tau*.
    std::set<std::string> tau_plus(const std::string& s) const {
        std::set<std::string> result;
        auto [lo, hi] = out.equal_range(s);
        for (auto it = lo; it != hi; ++it)
            if (it->second.act.is_tau())
                for (const auto& v : taustar.at(it->second.dst)) result.insert(v);
        return result;
    }
};

bool matches_strong(const Closure& ca, const Closure& cb, const std::string& sa,
                    const std::string& sb, const Relation& mu, bool left) {
    auto [lo, hi] = ca.out.equal_range(sa);
    for (auto it = lo; it != hi; ++it) {
        const Transition& t = it->second;
        bool found = false;
        auto [lo2, hi2] = cb.out.equal_range(sb);
        for (auto jt = lo2; jt != hi2 && !found; ++jt)
            if (jt->second.act == t.act)
                found = left ? mu.contains(t.dst, jt->second.dst)
                             : mu.contains(jt->second.dst, t.dst);
        if (!found) return false;
    }
    return true;
}

bool matches_weak(const Closure& ca, const Closure& cb, const std::string& sa,
                  const std::string& sb, const Relation& mu, bool left) {
    auto [lo, hi] = ca.out.equal_range(sa);
    for (auto it = lo; it != hi; ++it) {
        const Transition& t = it->second;
        bool found = false;
        for (const auto& u : cb.weak_succ(sb, t.act)) {
            if (left ? mu.contains(t.dst, u) : mu.contains(u, t.dst)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool pair_ok(const Closure& c1, const Closure& c2, const std::string& s1, const std::string& s2,
             const Relation& mu, bool weak) {
    if (weak)
        return matches_weak(c1, c2, s1, s2, mu, true) && matches_weak(c2, c1, s2, s1, mu, false);
    return matches_strong(c1, c2, s1, s2, mu, true) &&
           matches_strong(c2, c1, s2, s1, mu, false);
}

}  // namespace

Relation full_relation(const Lts& p1, const Lts& p2) {
    Relation r;
    for (const auto& a : p1.states)
        for (const auto& b : p2.states) r.pairs.insert({a, b});
    return r;
}

Relation refine_step(const Lts& p1, const Lts& p2, const Relation& mu, bool weak) {
    Closure c1(p1), c2(p2);
    Relation result;
    for (const auto& a : p1.states)
        for (const auto& b : p2.states)
            if (pair_ok(c1, c2, a, b, mu, weak)) result.pairs.insert({a, b});
    return result;
}

Relation greatest_bisim(const Lts& p1, const Lts& p2, bool weak) {
    Closure c1(p1), c2(p2);
    Relation mu = full_relation(p1, p2);
    for (;;) {
        Relation next;
        for (const auto& [a, b] : mu.pairs)
            if (pair_ok(c1, c2, a, b, mu, weak)) next.pairs.insert({a, b});
        if (next == mu) return mu;
        mu = std::move(next);
    }
}

namespace {

// Root condition of observational congruence: every initial tau move is
// answered by a nonempty tau sequence into a mu_tau-related state.
bool root_tau_plus(const Closure& ca, const Closure& cb, const std::string& ia,
                   const std::string& ib, const Relation& mu_tau, bool left) {
    auto [lo, hi] = ca.out.equal_range(ia);
    for (auto it = lo; it != hi; ++it) {
        if (!it->second.act.is_tau()) continue;
        bool found = false;
        for (const auto& u : cb.tau_plus(ib)) {
            if (left ? mu_tau.contains(it->second.dst, u) : mu_tau.contains(u, it->second.dst)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// Synchronized subset exploration comparing prefix-closed trace languages of
// the NFAs rooted at the given state sets.
bool subset_trace_equal(const Lts& p1, const std::set<std::string>& a0, const Lts& p2,
                        const std::set<std::string>& b0,
                        const std::function<bool(const std::set<std::string>&,
                                                 const std::set<std::string>&)>& extra) {
    std::multimap<std::string, Transition> out1, out2;
    for (const auto& t : p1.transitions) out1.emplace(t.src, t);
    for (const auto& t : p2.transitions) out2.emplace(t.src, t);

    auto enabled = [](const std::multimap<std::string, Transition>& out,
                      const std::set<std::string>& A) {
        std::set<Action> acts;
        for (const auto& s : A) {
            auto [lo, hi] = out.equal_range(s);
            for (auto it = lo; it != hi; ++it) acts.insert(it->second.act);
        }
        return acts;
    };
    auto step = [](const std::multimap<std::string, Transition>& out,
                   const std::set<std::string>& A, const Action& a) {
        std::set<std::string> next;
        for (const auto& s : A) {
            auto [lo, hi] = out.equal_range(s);
            for (auto it = lo; it != hi; ++it)
                if (it->second.act == a) next.insert(it->second.dst);
        }
        return next;
    };

    std::set<std::pair<std::set<std::string>, std::set<std::string>>> seen;
    std::deque<std::pair<std::set<std::string>, std::set<std::string>>> queue;
    queue.push_back({a0, b0});
    seen.insert({a0, b0});
    while (!queue.empty()) {
        auto [A, B] = queue.front();
        queue.pop_front();
        auto ea = enabled(out1, A);
        auto eb = enabled(out2, B);
        if (ea != eb) return false;
        if (extra && !extra(A, B)) return false;
        for (const auto& a : ea) {
            auto pr = std::pair(step(out1, A, a), step(out2, B, a));
            if (seen.insert(pr).second) queue.push_back(pr);
        }
    }
    return true;
}

void check_trace_bound(const Lts& p1, const Lts& p2, std::size_t bound) {
    if (p1.states.size() > bound || p2.states.size() > bound)
        throw SizeLimitError("trace equivalence: state count exceeds bound " +
                             std::to_string(bound));
}

}  // namespace

bool trace_equal_states(const Lts& p1, const std::string& s1, const Lts& p2,
                        const std::string& s2, std::size_t trace_bound) {
    check_trace_bound(p1, p2, trace_bound);
    return subset_trace_equal(p1, {s1}, p2, {s2}, nullptr);
}

bool equivalent(const Lts& p1, const Lts& p2, EquivKind kind, std::size_t trace_bound) {
    Lts r1 = reachable_part(p1);
    Lts r2 = reachable_part(p2);
    switch (kind) {
        case EquivKind::Strong:
        case EquivKind::Weak: {
            Relation mu = greatest_bisim(r1, r2, kind == EquivKind::Weak);
            return mu.contains(r1.initial, r2.initial);
        }
        case EquivKind::Congruence: {
            Relation mu = greatest_bisim(r1, r2, true);
            if (!mu.contains(r1.initial, r2.initial)) return false;
            Closure c1(r1), c2(r2);
            return root_tau_plus(c1, c2, r1.initial, r2.initial, mu, true) &&
                   root_tau_plus(c2, c1, r2.initial, r1.initial, mu, false);
        }
        case EquivKind::TraceLanguage:
            check_trace_bound(r1, r2, trace_bound);
            return subset_trace_equal(r1, {r1.initial}, r2, {r2.initial}, nullptr);
        case EquivKind::ChoiceTrace: {
            check_trace_bound(r1, r2, trace_bound);
            // Memoized per-state trace-language equality.
            std::map<std::pair<std::string, std::string>, bool> memo;
            auto states_match = [&](const std::string& a, const std::string& b) {
                auto key = std::pair(a, b);
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                bool eq = subset_trace_equal(r1, {a}, r2, {b}, nullptr);
                memo[key] = eq;
                return eq;
            };
            auto extra = [&](const std::set<std::string>& A, const std::set<std::string>& B) {
                for (const auto& a : A) {
                    bool found = false;
                    for (const auto& b : B)
                        if (states_match(a, b)) {
                            found = true;
                            break;
                        }
                    if (!found) return false;
                }
                for (const auto& b : B) {
                    bool found = false;
                    for (const auto& a : A)
                        if (states_match(a, b)) {
                            found = true;
                            break;
                        }
                    if (!found) return false;
                }
                return true;
            };
            return subset_trace_equal(r1, {r1.initial}, r2, {r2.initial}, extra);
        }
    }
    return false;
}

VerifyResult verify_relation(const Lts& p1, const Lts& p2, const Relation& r, RelationKind kind) {
    Closure c1(p1), c2(p2);
    bool weak = kind != RelationKind::BS && kind != RelationKind::BSmodStrong;

    // Closure of r for the "mod" variants: compose with the stated
    // equivalence on each side.
    Relation closed = r;
    if (kind == RelationKind::BSmodStrong || kind == RelationKind::OBSmodStrong ||
        kind == RelationKind::OBSmodWeak) {
        bool side_weak = kind == RelationKind::OBSmodWeak;
        Relation e1 = greatest_bisim(p1, p1, side_weak);
        Relation e2 = greatest_bisim(p2, p2, side_weak);
        Relation out;
        for (const auto& [x, y] : r.pairs)
            for (const auto& a : p1.states)
                if (e1.contains(a, x))
                    for (const auto& b : p2.states)
                        if (e2.contains(y, b)) out.pairs.insert({a, b});
        closed = std::move(out);
    }

    if (!closed.contains(p1.initial, p2.initial))
        return {false, std::pair(p1.initial, p2.initial), "initial pair not related"};

    for (const auto& [a, b] : r.pairs) {
        if (!pair_ok(c1, c2, a, b, closed, weak))
            return {false, std::pair(a, b), "transfer condition fails"};
    }

    if (kind == RelationKind::OBSplus) {
        if (!root_tau_plus(c1, c2, p1.initial, p2.initial, closed, true) ||
            !root_tau_plus(c2, c1, p2.initial, p1.initial, closed, false))
            return {false, std::pair(p1.initial, p2.initial),
                    "initial tau move not matched by a nonempty tau sequence"};
    }
    return {true, std::nullopt, ""};
}

}  // namespace ccsv
