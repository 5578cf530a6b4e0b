#include "ccsv/minimize.hpp"

#include <map>

#include "ccsv/equiv.hpp"

namespace ccsv {

Lts quotient(const Lts& p, const Relation& eq) {
    for (const auto& s : p.states)
        if (!eq.contains(s, s)) throw NotAnEquivalenceError("relation is not reflexive at " + s);
    for (const auto& [a, b] : eq.pairs) {
        if (!p.states.count(a) || !p.states.count(b))
            throw NotAnEquivalenceError("relation mentions a state outside the process");
        if (!eq.contains(b, a)) throw NotAnEquivalenceError("relation is not symmetric");
        for (const auto& [c, d] : eq.pairs)
            if (c == b && !eq.contains(a, d))
                throw NotAnEquivalenceError("relation is not transitive");
    }

    // Representative: lexicographically least related state.
    std::map<std::string, std::string> rep;
    for (const auto& s : p.states) {
        std::string least = s;
        for (const auto& [a, b] : eq.pairs)
            if (a == s && b < least) least = b;
        rep[s] = "[" + least + "]";
    }

    Lts q;
    for (const auto& s : p.states) q.states.insert(rep[s]);
    q.initial = rep[p.initial];
    for (const auto& t : p.transitions) q.transitions.insert({rep[t.src], t.act, rep[t.dst]});
    return q;
}

Lts minimize(const Lts& p, MinimizeKind kind) {
    Lts r = reachable_part(p);
    bool weak = kind != MinimizeKind::Strong;
    Relation eq = greatest_bisim(r, r, weak);
    Lts q = quotient(r, eq);
    if (weak) {
        // A tau self-loop is invisible up to observational equivalence;
        // erasing it keeps the quotient equivalent and makes the result
        // canonical.  Under observational congruence an initial tau still
        // counts, so the self-loop at the initial state is kept there.
        std::set<Transition> kept;
        for (const auto& t : q.transitions) {
            bool redundant = t.act.is_tau() && t.src == t.dst &&
                             (kind == MinimizeKind::Weak || t.src != q.initial);
            if (!redundant) kept.insert(t);
        }
        q.transitions = std::move(kept);
    }
    return q;
}

}  // namespace ccsv
