#include "ccsv/algebra.hpp"

#include <algorithm>

namespace ccsv {

namespace {

std::string fresh_id(const std::set<std::string>& taken, const std::string& base) {
    for (std::size_t i = 0;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

std::string pair_id(const std::string& a, const std::string& b) {
    return "⟨" + a + "," + b + "⟩";
}

}  // namespace

Lts nil() {
    Lts p;
    p.initial = "0";
    p.states.insert("0");
    return p;
}

Lts prefix(const Action& a, const Lts& p) {
    Lts result = p;
    std::string s0 = fresh_id(p.states, "s");
    result.states.insert(s0);
    result.transitions.insert({s0, a, p.initial});
    result.initial = s0;
    return result;
}

Lts choice(const Lts& p1, const Lts& p2) {
    Lts result;
    result.states = p1.states;
    result.transitions = p1.transitions;

    // Rename p2 states that clash with p1's.
    std::map<std::string, std::string> rn;
    std::set<std::string> taken = p1.states;
    for (const auto& s : p2.states) {
        std::string id = s;
        while (taken.count(id)) id += "'";
        taken.insert(id);
        rn[s] = id;
    }
    for (const auto& s : p2.states) result.states.insert(rn[s]);
    for (const auto& t : p2.transitions)
        result.transitions.insert({rn[t.src], t.act, rn[t.dst]});

    std::string s0 = fresh_id(result.states, "s");
    result.states.insert(s0);
    result.initial = s0;
    for (const auto& t : p1.transitions)
        if (t.src == p1.initial) result.transitions.insert({s0, t.act, t.dst});
    for (const auto& t : p2.transitions)
        if (t.src == p2.initial) result.transitions.insert({s0, t.act, rn[t.dst]});
    return result;
}

Lts parallel(const Lts& p1, const Lts& p2) {
    Lts result;
    for (const auto& s : p1.states)
        for (const auto& t : p2.states) result.states.insert(pair_id(s, t));
    result.initial = pair_id(p1.initial, p2.initial);
    for (const auto& t : p1.transitions)
        for (const auto& s : p2.states)
            result.transitions.insert({pair_id(t.src, s), t.act, pair_id(t.dst, s)});
    for (const auto& t : p2.transitions)
        for (const auto& s : p1.states)
            result.transitions.insert({pair_id(s, t.src), t.act, pair_id(s, t.dst)});
    for (const auto& t1 : p1.transitions) {
        if (t1.act.is_tau()) continue;
        Action c = complement(t1.act);
        for (const auto& t2 : p2.transitions)
            if (t2.act == c)
                result.transitions.insert(
                    {pair_id(t1.src, t2.src), Action::tau(), pair_id(t1.dst, t2.dst)});
    }
    return result;
}

Lts restrict(const Lts& p, const std::set<std::string>& L) {
    Lts result;
    result.states = p.states;
    result.initial = p.initial;
    for (const auto& t : p.transitions)
        if (t.act.is_tau() || !L.count(t.act.name)) result.transitions.insert(t);
    return result;
}

Lts rename(const Lts& p, const Renaming& f) {
    Lts result;
    result.states = p.states;
    result.initial = p.initial;
    for (const auto& t : p.transitions) {
        Action a = t.act;
        if (!a.is_tau()) {
            auto it = f.find(a.name);
            if (it != f.end()) a.name = it->second;
        }
        result.transitions.insert({t.src, a, t.dst});
    }
    return result;
}

namespace {

Action apply_renaming(const Action& a, const Renaming& f) {
    if (a.is_tau()) return a;
    Action b = a;
    auto it = f.find(b.name);
    if (it != f.end()) b.name = it->second;
    return b;
}

}  // namespace

std::vector<ExpandSummand> expand(const std::vector<std::pair<Lts, Renaming>>& terms,
                                  const std::set<std::string>& L) {
    std::vector<ExpandSummand> result;
    // Initial moves of single components.
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [p, f] = terms[i];
        for (const auto& t : p.transitions) {
            if (t.src != p.initial) continue;
            Action b = apply_renaming(t.act, f);
            if (b.is_tau() || !L.count(b.name)) result.push_back({b, {{i, t.dst}}});
        }
    }
    // Handshakes between distinct components.
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const auto& [pi, fi] = terms[i];
            const auto& [pj, fj] = terms[j];
            for (const auto& ti : pi.transitions) {
                if (ti.src != pi.initial || ti.act.is_tau()) continue;
                Action bi = apply_renaming(ti.act, fi);
                for (const auto& tj : pj.transitions) {
                    if (tj.src != pj.initial || tj.act.is_tau()) continue;
                    Action bj = apply_renaming(tj.act, fj);
                    if (bi == complement(bj))
                        result.push_back({Action::tau(), {{i, ti.dst}, {j, tj.dst}}});
                }
            }
        }
    }
    return result;
}

namespace {

Lts compose_at(const std::vector<std::pair<Lts, Renaming>>& terms,
               const std::set<std::string>& L, const std::vector<std::string>& at) {
    Lts acc;
    bool first = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Lts comp = rename(terms[i].first, terms[i].second);
        comp.initial = at[i];
        if (first) {
            acc = comp;
            first = false;
        } else {
            acc = parallel(acc, comp);
        }
    }
    return restrict(acc, L);
}

}  // namespace

Lts materialize_expansion(const std::vector<std::pair<Lts, Renaming>>& terms,
                          const std::set<std::string>& L,
                          const std::vector<ExpandSummand>& summands) {
    Lts acc = nil();
    bool first = true;
    for (const auto& sm : summands) {
        std::vector<std::string> at;
        for (const auto& [p, f] : terms) at.push_back(p.initial);
        for (const auto& [idx, st] : sm.moves) at[idx] = st;
        Lts term = prefix(sm.act, compose_at(terms, L, at));
        if (first) {
            acc = term;
            first = false;
        } else {
            acc = choice(acc, term);
        }
    }
    return acc;
}

Lts star(const std::vector<Action>& actions) {
    Lts p;
    std::size_t n = actions.size();
    for (std::size_t i = 0; i < n; ++i) p.states.insert("q" + std::to_string(i));
    if (n == 0) {
        p.states.insert("q0");
        p.initial = "q0";
        return p;
    }
    p.initial = "q0";
    for (std::size_t i = 0; i < n; ++i)
        p.transitions.insert(
            {"q" + std::to_string(i), actions[i], "q" + std::to_string((i + 1) % n)});
    return p;
}

Lts hide(const Lts& p, const std::vector<Action>& hidden) {
    Lts acc = p;
    std::set<std::string> names;
    for (const auto& a : hidden) {
        acc = parallel(acc, star({complement(a)}));
        names.insert(a.name);
    }
    return restrict(acc, names);
}

}  // namespace ccsv
