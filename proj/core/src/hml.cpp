#include "ccsv/hml.hpp"

#include <deque>
#include <map>
#include <vector>

#include "ccsv/equiv.hpp"

namespace ccsv {

FormulaPtr Formula::top() { return std::make_shared<Formula>(Formula{FmKind::Top, {}, {}, {}}); }
FormulaPtr Formula::bottom() {
    return std::make_shared<Formula>(Formula{FmKind::Bottom, {}, {}, {}});
}
FormulaPtr Formula::negate(FormulaPtr f) {
    return std::make_shared<Formula>(Formula{FmKind::Not, {}, std::move(f), {}});
}
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<Formula>(Formula{FmKind::And, {}, std::move(l), std::move(r)});
}
FormulaPtr Formula::diamond(const Action& act, FormulaPtr f) {
    if (act.valued()) throw Error("diamond actions must be unvalued");
    return std::make_shared<Formula>(Formula{FmKind::Diamond, act, std::move(f), {}});
}
FormulaPtr Formula::diamond_tau_plus(FormulaPtr f) {
    if (contains_tau_plus(f)) throw Error("<tau+> may not be nested");
    return std::make_shared<Formula>(Formula{FmKind::DiamondTauPlus, {}, std::move(f), {}});
}

bool contains_tau_plus(const FormulaPtr& f) {
    if (!f) return false;
    if (f->kind == FmKind::DiamondTauPlus) return true;
    return contains_tau_plus(f->a) || contains_tau_plus(f->b);
}

std::string render(const FormulaPtr& f) {
    switch (f->kind) {
        case FmKind::Top: return "T";
        case FmKind::Bottom: return "F";
        case FmKind::Not: return "~" + render(f->a);
        case FmKind::And: return "(" + render(f->a) + " & " + render(f->b) + ")";
        case FmKind::Diamond: return "<" + ccsv::render(f->act) + ">" + render(f->a);
        case FmKind::DiamondTauPlus: return "<tau+>" + render(f->a);
    }
    return "?";
}

namespace {

// Successor computations shared by eval and distinguish.
struct Moves {
    std::multimap<std::string, Transition> out;
    std::map<std::string, std::set<std::string>> taustar;

    explicit Moves(const Lts& p) {
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

    std::vector<Transition> all_out(const std::string& s) const {
        std::vector<Transition> r;
        auto [lo, hi] = out.equal_range(s);
        for (auto it = lo; it != hi; ++it) r.push_back(it->second);
        return r;
    }
    std::set<std::string> strong_succ(const std::string& s, const Action& a) const {
        std::set<std::string> result;
        auto [lo, hi] = out.equal_range(s);
        for (auto it = lo; it != hi; ++it)
            if (it->second.act == a) result.insert(it->second.dst);
        return result;
    }
    std::set<std::string> weak_succ(const std::string& s, const Action& a) const {
        if (a.is_tau()) return taustar.at(s);
        std::set<std::string> result;
        for (const auto& u : taustar.at(s))
            for (const auto& v : strong_succ(u, a))
                for (const auto& w : taustar.at(v)) result.insert(w);
        return result;
    }
    std::set<std::string> tau_plus(const std::string& s) const {
        std::set<std::string> result;
        for (const auto& t : strong_succ(s, Action::tau()))
            for (const auto& v : taustar.at(t)) result.insert(v);
        return result;
    }
};

bool eval_rec(const Moves& m, const std::string& s, const FormulaPtr& phi, Semantics sem) {
    switch (phi->kind) {
        case FmKind::Top: return true;
        case FmKind::Bottom: return false;
        case FmKind::Not: return !eval_rec(m, s, phi->a, sem);
        case FmKind::And: return eval_rec(m, s, phi->a, sem) && eval_rec(m, s, phi->b, sem);
        case FmKind::Diamond: {
            auto succ = (sem == Semantics::Strong) ? m.strong_succ(s, phi->act)
                                                   : m.weak_succ(s, phi->act);
            for (const auto& t : succ)
                if (eval_rec(m, t, phi->a, sem)) return true;
            return false;
        }
        case FmKind::DiamondTauPlus: {
            if (sem != Semantics::Plus)
                throw SemanticsMismatchError("<tau+> requires the plus semantics");
            for (const auto& t : m.tau_plus(s))
                if (eval_rec(m, t, phi->a, sem)) return true;
            return false;
        }
    }
    return false;
}

// Distinguishing-formula construction driven by the refinement sequence
// mu_0 = full, mu_{i+1} = restriction of mu_i to pairs passing the transfer
// conditions. A pair dropped at step k fails some transfer whose responses
// were all dropped strictly earlier, so the recursion below terminates.
struct Distinguisher {
    const Moves& m1;
    const Moves& m2;
    bool weak;
    std::vector<Relation> mus;
    std::map<std::pair<std::string, std::string>, int> drop;  // -1: never dropped
    std::map<std::pair<std::string, std::string>, FormulaPtr> memo;

    Distinguisher(const Lts& a, const Lts& b, const Moves& ma, const Moves& mb, bool w)
        : m1(ma), m2(mb), weak(w) {
        mus.push_back(full_relation(a, b));
        for (;;) {
            Relation next;
            for (const auto& [x, y] : mus.back().pairs)
                if (transfer_ok(x, y, mus.back())) next.pairs.insert({x, y});
            if (next == mus.back()) break;
            mus.push_back(std::move(next));
        }
        for (const auto& s1 : a.states)
            for (const auto& s2 : b.states) {
                int d = -1;
                for (std::size_t i = 0; i < mus.size(); ++i)
                    if (!mus[i].contains(s1, s2)) {
                        d = static_cast<int>(i);
                        break;
                    }
                drop[{s1, s2}] = d;
            }
    }

    std::set<std::string> responses(const Moves& m, const std::string& s, const Action& a) const {
        return weak ? m.weak_succ(s, a) : m.strong_succ(s, a);
    }

    bool transfer_ok(const std::string& x, const std::string& y, const Relation& mu) const {
        for (const auto& t : m1.all_out(x)) {
            bool found = false;
            for (const auto& u : responses(m2, y, t.act))
                if (mu.contains(t.dst, u)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        for (const auto& t : m2.all_out(y)) {
            bool found = false;
            for (const auto& u : responses(m1, x, t.act))
                if (mu.contains(u, t.dst)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    // Formula true on s1 and false on s2; defined whenever (s1,s2) was
    // dropped from the refinement sequence.
    FormulaPtr build(const std::string& s1, const std::string& s2) {
        auto key = std::pair(s1, s2);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int k = drop.at(key);
        const Relation& prev = mus[static_cast<std::size_t>(k) - 1];

        FormulaPtr result;
        // A move of s1 whose every response from s2 was dropped earlier.
        for (const auto& t : m1.all_out(s1)) {
            auto resp = responses(m2, s2, t.act);
            bool unmatched = true;
            for (const auto& u : resp)
                if (prev.contains(t.dst, u)) {
                    unmatched = false;
                    break;
                }
            if (!unmatched) continue;
            FormulaPtr body = Formula::top();
            bool first = true;
            for (const auto& u : resp) {
                FormulaPtr d = build(t.dst, u);
                body = first ? d : Formula::conj(body, d);
                first = false;
            }
            result = Formula::diamond(t.act, body);
            break;
        }
        if (!result) {
            // Otherwise a move of s2 is unmatched; negate the swapped-role
            // construction (true on s2, false on s1).
            for (const auto& t : m2.all_out(s2)) {
                auto resp = responses(m1, s1, t.act);
                bool unmatched = true;
                for (const auto& u : resp)
                    if (prev.contains(u, t.dst)) {
                        unmatched = false;
                        break;
                    }
                if (!unmatched) continue;
                FormulaPtr body = Formula::top();
                bool first = true;
                for (const auto& u : resp) {
                    FormulaPtr d = Formula::negate(build(u, t.dst));
                    body = first ? d : Formula::conj(body, d);
                    first = false;
                }
                result = Formula::negate(Formula::diamond(t.act, body));
                break;
            }
        }
        if (!result) throw Error("internal: no unmatched move for a dropped pair");
        memo[key] = result;
        return result;
    }
};

}  // namespace

bool eval_at(const Lts& p, const std::string& s, const FormulaPtr& phi, Semantics sem) {
    if (!p.states.count(s)) throw UnknownStateError("eval: unknown state '" + s + "'");
    if (contains_tau_plus(phi) && sem != Semantics::Plus)
        throw SemanticsMismatchError("<tau+> requires the plus semantics");
    Moves m(p);
    return eval_rec(m, s, phi, sem);
}

bool eval(const Lts& p, const FormulaPtr& phi, Semantics sem) {
    return eval_at(p, p.initial, phi, sem);
}

std::optional<FormulaPtr> distinguish(const Lts& p1, const Lts& p2, Semantics sem) {
    Lts r1 = reachable_part(p1);
    Lts r2 = reachable_part(p2);
    Moves m1(r1), m2(r2);
    FormulaPtr phi;

    if (sem == Semantics::Strong || sem == Semantics::Weak) {
        bool weak = sem == Semantics::Weak;
        Relation mu = greatest_bisim(r1, r2, weak);
        if (mu.contains(r1.initial, r2.initial)) return std::nullopt;
        Distinguisher d(r1, r2, m1, m2, weak);
        phi = d.build(r1.initial, r2.initial);
    } else {
        Relation mu = greatest_bisim(r1, r2, true);
        if (!mu.contains(r1.initial, r2.initial)) {
            Distinguisher d(r1, r2, m1, m2, true);
            phi = d.build(r1.initial, r2.initial);
        } else {
            // Weakly equivalent: congruence can only fail on an initial tau
            // move not matched by a nonempty tau sequence.
            Distinguisher d(r1, r2, m1, m2, true);
            for (const auto& t : m1.all_out(r1.initial)) {
                if (!t.act.is_tau() || phi) continue;
                auto resp = m2.tau_plus(r2.initial);
                bool unmatched = true;
                for (const auto& u : resp)
                    if (mu.contains(t.dst, u)) {
                        unmatched = false;
                        break;
                    }
                if (!unmatched) continue;
                FormulaPtr body = Formula::top();
                bool first = true;
                for (const auto& u : resp) {
                    FormulaPtr sub = d.build(t.dst, u);
                    body = first ? sub : Formula::conj(body, sub);
                    first = false;
                }
                phi = Formula::diamond_tau_plus(body);
            }
            if (!phi) {
                for (const auto& t : m2.all_out(r2.initial)) {
                    if (!t.act.is_tau() || phi) continue;
                    auto resp = m1.tau_plus(r1.initial);
                    bool unmatched = true;
                    for (const auto& u : resp)
                        if (mu.contains(u, t.dst)) {
                            unmatched = false;
                            break;
                        }
                    if (!unmatched) continue;
                    FormulaPtr body = Formula::top();
                    bool first = true;
                    for (const auto& u : resp) {
                        FormulaPtr sub = Formula::negate(d.build(u, t.dst));
                        body = first ? sub : Formula::conj(body, sub);
                        first = false;
                    }
                    phi = Formula::negate(Formula::diamond_tau_plus(body));
                }
            }
            if (!phi) return std::nullopt;  // observationally congruent
        }
    }

    if (eval(r1, phi, sem) == eval(r2, phi, sem))
        throw Error("internal: distinguishing formula fails to distinguish");
    return phi;
}

}  // namespace ccsv
