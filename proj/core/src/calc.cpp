#include "ccsv/calc.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ccsv {

namespace {
PePtr mk(ProcExpr e) { return std::make_shared<ProcExpr>(std::move(e)); }
}  // namespace

PePtr ProcExpr::nil() { return mk({}); }
PePtr ProcExpr::constant(std::string label, std::shared_ptr<const Lts> lts) {
    std::string s = lts->initial;
    return constant_at(std::move(label), std::move(lts), s);
}
PePtr ProcExpr::constant_at(std::string label, std::shared_ptr<const Lts> lts, std::string state) {
    ProcExpr e;
    e.kind = PeKind::Const;
    e.label = std::move(label);
    e.lts = std::move(lts);
    e.state = std::move(state);
    return mk(std::move(e));
}
PePtr ProcExpr::ref(std::string name) {
    ProcExpr e;
    e.kind = PeKind::NameRef;
    e.name = std::move(name);
    return mk(std::move(e));
}
PePtr ProcExpr::prefix(const Action& act, PePtr p) {
    ProcExpr e;
    e.kind = PeKind::Prefix;
    e.act = act;
    e.a = std::move(p);
    return mk(std::move(e));
}
PePtr ProcExpr::choice(PePtr l, PePtr r) {
    ProcExpr e;
    e.kind = PeKind::Choice;
    e.a = std::move(l);
    e.b = std::move(r);
    return mk(std::move(e));
}
PePtr ProcExpr::par(PePtr l, PePtr r) {
    ProcExpr e;
    e.kind = PeKind::Par;
    e.a = std::move(l);
    e.b = std::move(r);
    return mk(std::move(e));
}
PePtr ProcExpr::restriction(PePtr p, std::set<std::string> names) {
    ProcExpr e;
    e.kind = PeKind::Restrict;
    e.a = std::move(p);
    e.restricted = std::move(names);
    return mk(std::move(e));
}
PePtr ProcExpr::renaming_of(PePtr p, Renaming f) {
    ProcExpr e;
    e.kind = PeKind::Rename;
    e.a = std::move(p);
    e.renaming = std::move(f);
    return mk(std::move(e));
}

std::string render(const PePtr& e) {
    switch (e->kind) {
        case PeKind::Nil: return "0";
        case PeKind::Const:
            return e->state == e->lts->initial ? e->label : e->label + "@" + e->state;
        case PeKind::NameRef: return e->name;
        case PeKind::Prefix: return ccsv::render(e->act) + "." + render(e->a);
        case PeKind::Choice: return "(" + render(e->a) + " + " + render(e->b) + ")";
        case PeKind::Par: return "(" + render(e->a) + " | " + render(e->b) + ")";
        case PeKind::Restrict: {
            std::string s = render(e->a) + "\\{";
            bool first = true;
            for (const auto& n : e->restricted) {
                if (!first) s += ",";
                s += n;
                first = false;
            }
            return s + "}";
        }
        case PeKind::Rename: {
            std::string s = render(e->a) + "[";
            bool first = true;
            for (const auto& [from, to] : e->renaming) {
                if (!first) s += ",";
                s += to + "/" + from;
                first = false;
            }
            return s + "]";
        }
    }
    return "?";
}

const PePtr* RecDef::lookup(const std::string& name) const {
    for (const auto& [n, e] : equations)
        if (n == name) return &e;
    return nullptr;
}

namespace {

void collect_refs(const PePtr& e, std::set<std::string>& refs) {
    if (!e) return;
    if (e->kind == PeKind::NameRef) refs.insert(e->name);
    collect_refs(e->a, refs);
    collect_refs(e->b, refs);
}

}  // namespace

void RecDef::validate() const {
    std::set<std::string> defined;
    for (const auto& [n, e] : equations)
        if (!defined.insert(n).second) throw Error("duplicate definition of '" + n + "'");
    std::set<std::string> refs;
    for (const auto& [n, e] : equations) collect_refs(e, refs);
    for (const auto& r : refs)
        if (!defined.count(r)) throw UndefinedNameError("undefined process name '" + r + "'");
}

namespace {

using Succ = std::vector<std::pair<Action, PePtr>>;

Succ step(const PePtr& e, const RecDef& env, std::set<std::string>& unfolding) {
    Succ result;
    switch (e->kind) {
        case PeKind::Nil: break;
        case PeKind::Const:
            for (const auto& t : e->lts->transitions)
                if (t.src == e->state)
                    result.push_back({t.act, ProcExpr::constant_at(e->label, e->lts, t.dst)});
            break;
        case PeKind::NameRef: {
            const PePtr* rhs = env.lookup(e->name);
            if (!rhs) throw UndefinedNameError("undefined process name '" + e->name + "'");
            if (!unfolding.insert(e->name).second)
                throw Error("unguarded recursion through '" + e->name + "'");
            result = step(*rhs, env, unfolding);
            unfolding.erase(e->name);
            break;
        }
        case PeKind::Prefix: result.push_back({e->act, e->a}); break;
        case PeKind::Choice: {
            Succ l = step(e->a, env, unfolding);
            Succ r = step(e->b, env, unfolding);
            result = std::move(l);
            result.insert(result.end(), r.begin(), r.end());
            break;
        }
        case PeKind::Par: {
            Succ l = step(e->a, env, unfolding);
            Succ r = step(e->b, env, unfolding);
            for (const auto& [act, p] : l) result.push_back({act, ProcExpr::par(p, e->b)});
            for (const auto& [act, p] : r) result.push_back({act, ProcExpr::par(e->a, p)});
            for (const auto& [al, pl] : l) {
                if (al.is_tau()) continue;
                Action c = complement(al);
                for (const auto& [ar, pr] : r)
                    if (ar == c) result.push_back({Action::tau(), ProcExpr::par(pl, pr)});
            }
            break;
        }
        case PeKind::Restrict:
            for (const auto& [act, p] : step(e->a, env, unfolding))
                if (act.is_tau() || !e->restricted.count(act.name))
                    result.push_back({act, ProcExpr::restriction(p, e->restricted)});
            break;
        case PeKind::Rename:
            for (const auto& [act, p] : step(e->a, env, unfolding)) {
                Action b = act;
                if (!b.is_tau()) {
                    auto it = e->renaming.find(b.name);
                    if (it != e->renaming.end()) b.name = it->second;
                }
                result.push_back({b, ProcExpr::renaming_of(p, e->renaming)});
            }
            break;
    }
    return result;
}

}  // namespace

std::vector<std::pair<Action, PePtr>> sos_step(const PePtr& e, const RecDef& env) {
    std::set<std::string> unfolding;
    Succ result = step(e, env, unfolding);
    std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
        return std::pair(x.first, render(x.second)) < std::pair(y.first, render(y.second));
    });
    result.erase(std::unique(result.begin(), result.end(),
                             [](const auto& x, const auto& y) {
                                 return x.first == y.first &&
                                        render(x.second) == render(y.second);
                             }),
                 result.end());
    return result;
}

Lts materialize(const PePtr& e, const RecDef& env, std::size_t max_states) {
    if (max_states < 1) throw Error("materialize: max_states must be at least 1");
    Lts result;
    std::map<std::string, PePtr> frontier_key;
    std::deque<PePtr> queue;

    std::string root = render(e);
    result.initial = root;
    result.states.insert(root);
    frontier_key[root] = e;
    queue.push_back(e);

    while (!queue.empty()) {
        PePtr cur = queue.front();
        queue.pop_front();
        std::string cur_id = render(cur);
        for (const auto& [act, succ] : sos_step(cur, env)) {
            std::string id = render(succ);
            if (!result.states.count(id)) {
                if (result.states.size() >= max_states)
                    throw StateExplosionError("materialize: more than " +
                                              std::to_string(max_states) + " states");
                result.states.insert(id);
                queue.push_back(succ);
            }
            result.transitions.insert({cur_id, act, id});
        }
    }
    return result;
}

Lts materialize(const std::string& name, const RecDef& env, std::size_t max_states) {
    return materialize(ProcExpr::ref(name), env, max_states);
}

namespace {

struct GuardScan {
    bool all_guarded = true;
    bool all_nontau_guarded = true;
    bool all_prefix_choice = true;

    void visit(const PePtr& e, bool guarded, bool nontau, bool pc_only) {
        if (!e) return;
        switch (e->kind) {
            case PeKind::NameRef:
                all_guarded &= guarded;
                all_nontau_guarded &= nontau;
                all_prefix_choice &= pc_only;
                break;
            case PeKind::Prefix:
                visit(e->a, true, nontau || !e->act.is_tau(), pc_only);
                break;
            case PeKind::Choice:
                visit(e->a, guarded, nontau, pc_only);
                visit(e->b, guarded, nontau, pc_only);
                break;
            case PeKind::Par:
            case PeKind::Restrict:
            case PeKind::Rename:
                visit(e->a, guarded, nontau, false);
                visit(e->b, guarded, nontau, false);
                break;
            case PeKind::Nil:
            case PeKind::Const: break;
        }
    }
};

}  // namespace

Guardedness guardedness(const RecDef& rd) {
    GuardScan scan;
    for (const auto& [n, e] : rd.equations) scan.visit(e, false, false, true);
    if (!scan.all_guarded) return Guardedness::None;
    if (scan.all_nontau_guarded && scan.all_prefix_choice) return Guardedness::CongruenceUnique;
    return Guardedness::StrongUnique;
}

}  // namespace ccsv
