#include "ccsv/models.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "ccsv/algebra.hpp"

namespace ccsv::models {

namespace {

// --- expression shorthands -------------------------------------------------

VE V(const std::string& n) { return ve_var(n); }
VE I(long k) { return ve_int(k); }
VE B(bool b) { return ve_bool(b); }
VE Sy(const std::string& s) { return ve_sym(s); }
VE eq(VE a, VE b) { return ve_bin(VExprKind::Eq, std::move(a), std::move(b)); }
VE ne(VE a, VE b) { return ve_bin(VExprKind::Ne, std::move(a), std::move(b)); }
VE lt(VE a, VE b) { return ve_bin(VExprKind::Lt, std::move(a), std::move(b)); }
VE le(VE a, VE b) { return ve_bin(VExprKind::Le, std::move(a), std::move(b)); }
VE gt(VE a, VE b) { return ve_bin(VExprKind::Gt, std::move(a), std::move(b)); }
VE ge(VE a, VE b) { return ve_bin(VExprKind::Ge, std::move(a), std::move(b)); }
VE land(VE a, VE b) { return ve_bin(VExprKind::And, std::move(a), std::move(b)); }
VE lor(VE a, VE b) { return ve_bin(VExprKind::Or, std::move(a), std::move(b)); }
VE add(VE a, VE b) { return ve_bin(VExprKind::Add, std::move(a), std::move(b)); }
VE sub(VE a, VE b) { return ve_bin(VExprKind::Sub, std::move(a), std::move(b)); }
VE mulx(VE a, VE b) { return ve_bin(VExprKind::Mul, std::move(a), std::move(b)); }
VE addm(VE a, VE b, long n) { return ve_mod(VExprKind::AddMod, std::move(a), std::move(b), n); }
VE subm(VE a, VE b, long n) { return ve_mod(VExprKind::SubMod, std::move(a), std::move(b), n); }
VE len(VE a) { return ve_un(VExprKind::Length, std::move(a)); }
VE head(VE a) { return ve_un(VExprKind::Head, std::move(a)); }
VE tail(VE a) { return ve_un(VExprKind::Tail, std::move(a)); }
VE single(VE a) { return ve_un(VExprKind::Singleton, std::move(a)); }
VE maxl(VE a) { return ve_un(VExprKind::MaxL, std::move(a)); }
VE minl(VE a) { return ve_un(VExprKind::MinL, std::move(a)); }
VE removeone(VE a, VE b) { return ve_bin(VExprKind::RemoveOne, std::move(a), std::move(b)); }
VE concat(VE a, VE b) { return ve_bin(VExprKind::Concat, std::move(a), std::move(b)); }

VE conj(std::vector<VE> parts) {
    if (parts.empty()) return ve_top();
    VE out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = land(out, parts[i]);
    return out;
}

Value int_list(const std::vector<long>& xs) {
    std::vector<Value> items;
    for (long x : xs) items.push_back(Value::of_int(x));
    return Value::of_list(std::move(items));
}

Value const_list(int n, const Value& fill) {
    return Value::of_list(std::vector<Value>(static_cast<std::size_t>(n), fill));
}

VpTransition T(std::string src, std::vector<Operator> ops, std::string dst) {
    return {std::move(src), co_of(std::move(ops)), std::move(dst)};
}

// Tagged-tuple Enum type: every combination of the component domains plus the
// distortion symbol "*".
VTypePtr frame_type(const std::string& tag, const std::vector<std::vector<Value>>& comps) {
    std::vector<std::string> syms;
    std::vector<std::size_t> idx(comps.size(), 0);
    while (true) {
        std::string s = tag + "(";
        for (std::size_t k = 0; k < comps.size(); ++k) {
            if (k) s += ",";
            s += render(comps[k][idx[k]]);
        }
        syms.push_back(s + ")");
        std::size_t k = comps.size();
        while (k > 0) {
            if (++idx[k - 1] < comps[k - 1].size()) break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }
    syms.push_back("*");
    return VType::enumeration(std::move(syms));
}

std::vector<Value> int_domain(long lo, long hi) {
    std::vector<Value> out;
    for (long k = lo; k <= hi; ++k) out.push_back(Value::of_int(k));
    return out;
}

VpProcess rename_states(const VpProcess& p, const std::map<std::string, std::string>& rn) {
    auto map_state = [&](const std::string& s) { return rn.count(s) ? rn.at(s) : s; };
    VpProcess out;
    out.vars = p.vars;
    out.init = p.init;
    out.initial = map_state(p.initial);
    for (const auto& s : p.states) out.states.insert(map_state(s));
    for (const auto& t : p.transitions)
        out.transitions.push_back({map_state(t.src), t.op, map_state(t.dst)});
    return out;
}

VpProcess reduce_pruned(const VpProcess& p) {
    return vp_reachable(reduce(vp_reachable(p), {ReduceRule::R1, ReduceRule::R2}));
}

void check_range(bool ok, const std::string& what) {
    if (!ok) throw BadParamsError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Plain-LTS fixtures
// ---------------------------------------------------------------------------

Lts vending_simple() {
    Lts p;
    p.initial = "s0";
    p.add_transition("s0", Action::in("in_coin"), "s1");
    p.add_transition("s1", Action::out("out_choc"), "s0");
    return p;
}

Lts vending_complex() {
    Lts p;
    p.initial = "s0";
    p.add_transition("s0", Action::in("in_coin_1"), "s1");
    p.add_transition("s1", Action::in("in_coin_1"), "s2");
    p.add_transition("s0", Action::in("in_coin_2"), "s2");
    p.add_transition("s2", Action::in("pr_but_tea"), "s3");
    p.add_transition("s3", Action::out("out_tea"), "s1");
    p.add_transition("s1", Action::in("pr_but_tea"), "s4");
    p.add_transition("s4", Action::out("out_tea"), "s0");
    p.add_transition("s2", Action::in("pr_but_cof"), "s5");
    p.add_transition("s5", Action::out("out_cof"), "s0");
    return p;
}

Lts jobber() {
    return star({Action::in("in"), Action::out("get_and_work"), Action::out("put"),
                 Action::out("out")});
}

Lts mallet() { return star({Action::in("get_and_work"), Action::in("put")}); }

Lts jobshop() {
    return restrict(parallel(parallel(jobber(), jobber()), mallet()),
                    {"get_and_work", "put"});
}

Lts abs_jobber() { return star({Action::in("in"), Action::out("out")}); }

Lts abs_jobshop() { return parallel(abs_jobber(), abs_jobber()); }

Lts dispatcher_system(int n) {
    check_range(n >= 1 && n <= 4, "dispatcher: n must be in 1..4");
    Lts d;
    d.initial = "D";
    d.add_state("D");
    std::set<std::string> hidden;
    for (int i = 1; i <= n; ++i) {
        std::string req = "req" + std::to_string(i);
        std::string acq = "acq" + std::to_string(i);
        std::string rel = "rel" + std::to_string(i);
        d.add_transition("D", Action::in(req), "A" + std::to_string(i));
        d.add_transition("A" + std::to_string(i), Action::out(acq), "B" + std::to_string(i));
        d.add_transition("B" + std::to_string(i), Action::in(rel), "D");
        hidden.insert(req);
        hidden.insert(acq);
        hidden.insert(rel);
    }
    Lts sys = d;
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        sys = parallel(sys, star({Action::out("req" + si), Action::in("acq" + si),
                                  Action::out("start"), Action::out("finish"),
                                  Action::out("rel" + si)}));
    }
    return restrict(sys, hidden);
}

Lts dispatcher_spec() { return star({Action::out("start"), Action::out("finish")}); }

Lts cycler(int i, int n) {
    check_range(n >= 1 && i >= 1 && i <= n, "cycler: need 1 <= i <= n");
    int next = i % n + 1;
    return star({Action::in("g" + std::to_string(i)), Action::out("a" + std::to_string(i)),
                 Action::out("g" + std::to_string(next)),
                 Action::out("b" + std::to_string(i))});
}

Lts scheduler(int n) {
    check_range(n >= 2 && n <= 4, "scheduler: n must be in 2..4");
    Lts start;
    start.initial = "st0";
    start.add_transition("st0", Action::out("g1"), "st1");
    Lts sys = start;
    std::set<std::string> hidden;
    for (int i = 1; i <= n; ++i) {
        sys = parallel(sys, cycler(i, n));
        hidden.insert("g" + std::to_string(i));
    }
    return restrict(sys, hidden);
}

Lts scheduler_reference(int n) {
    check_range(n >= 2 && n <= 4, "scheduler-reference: n must be in 2..4");
    // Explicit-state picture of the cycler ring.  A state records the active
    // set X (as a bitmask) together with where the grant token is:
    //   "i|X"  - client i holds the token and may start (i is not in X);
    //   "i*|X" - client i just started (so i is in X) and the token is in
    //            transit to next(i); the handoff completes silently once
    //            next(i) is idle, and until then i cannot finish.
    auto hold = [](int i, unsigned mask) {
        return std::to_string(i) + "|" + std::to_string(mask);
    };
    auto transit = [](int i, unsigned mask) {
        return std::to_string(i) + "*|" + std::to_string(mask);
    };
    auto bit = [](int j) { return 1u << (j - 1); };
    Lts p;
    p.initial = hold(1, 0);
    for (int i = 1; i <= n; ++i) {
        int next = i % n + 1;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (!(mask & bit(i))) {
                p.add_state(hold(i, mask));
                p.add_transition(hold(i, mask), Action::out("a" + std::to_string(i)),
                                 transit(i, mask | bit(i)));
                for (int j = 1; j <= n; ++j)
                    if (mask & bit(j))
                        p.add_transition(hold(i, mask),
                                         Action::out("b" + std::to_string(j)),
                                         hold(i, mask & ~bit(j)));
            } else {
                p.add_state(transit(i, mask));
                if (!(mask & bit(next)))
                    p.add_transition(transit(i, mask), Action::tau(), hold(next, mask));
                for (int j = 1; j <= n; ++j)
                    if (j != i && (mask & bit(j)))
                        p.add_transition(transit(i, mask),
                                         Action::out("b" + std::to_string(j)),
                                         transit(i, mask & ~bit(j)));
            }
        }
    }
    return p;
}

Lts semaphore_system(const std::vector<std::vector<std::string>>& sessions) {
    check_range(!sessions.empty(), "semaphore: at least one session needed");
    Lts sys = star({Action::out("pi"), Action::out("phi")});  // the semaphore itself
    for (const auto& acts : sessions) {
        check_range(!acts.empty(), "semaphore: sessions must be non-empty");
        std::vector<Action> cyc{Action::in("pi")};
        for (const auto& a : acts) cyc.push_back(Action::out(a));
        cyc.push_back(Action::in("phi"));
        sys = parallel(sys, star(cyc));
    }
    return restrict(sys, {"pi", "phi"});
}

Lts semaphore_spec(const std::vector<std::vector<std::string>>& sessions) {
    check_range(!sessions.empty(), "semaphore: at least one session needed");
    Lts p;
    p.initial = "R";
    p.add_state("R");
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        const auto& acts = sessions[i];
        check_range(!acts.empty(), "semaphore: sessions must be non-empty");
        std::string prev = "R";
        Action entry = Action::tau();
        for (std::size_t j = 0; j + 1 < acts.size(); ++j) {
            std::string cur = "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            p.add_transition(prev, entry, cur);
            entry = Action::out(acts[j]);
            prev = cur;
        }
        std::string last = "c" + std::to_string(i + 1) + "_" + std::to_string(acts.size());
        p.add_transition(prev, entry, last);
        p.add_transition(last, Action::out(acts.back()), "R");
    }
    return p;
}

// ---------------------------------------------------------------------------
// Buffers
// ---------------------------------------------------------------------------

Flowchart buffer_flowchart(int n, int messages) {
    check_range(n >= 1 && n <= 6, "buffer: n must be in 1..6");
    check_range(messages >= 1, "buffer: message domain must be non-empty");
    VTypePtr mes = VType::int_range(0, messages - 1);

    Flowchart fc;
    fc.vars = {{"k", VType::int_range(0, n)}, {"f", mes}, {"q", VType::list(mes, n)}};
    fc.init = land(eq(V("q"), ve_const(Value::of_list({}))), eq(V("k"), I(0)));

    using NK = Flowchart::Node::Kind;
    auto node = [&](NK kind, Operator op = {}, VE cond = {}) {
        Flowchart::Node nd;
        nd.kind = kind;
        nd.op = std::move(op);
        nd.cond = std::move(cond);
        return nd;
    };
    fc.nodes["start"] = node(NK::Start);
    fc.nodes["join"] = node(NK::Join);
    fc.nodes["room"] = node(NK::Cond, {}, lt(V("k"), I(n)));
    fc.nodes["nonempty"] = node(NK::Cond, {}, gt(V("k"), I(0)));
    fc.nodes["either"] = node(NK::Choice);
    fc.nodes["accept"] = node(NK::Receive, Operator::in("In", "f"));
    fc.nodes["emit"] = node(NK::Send, Operator::out("Out", head(V("q"))));
    fc.nodes["push"] = node(NK::Assign, Operator::assign("q", concat(V("q"), single(V("f")))));
    fc.nodes["up"] = node(NK::Assign, Operator::assign("k", add(V("k"), I(1))));
    fc.nodes["pop"] = node(NK::Assign, Operator::assign("q", tail(V("q"))));
    fc.nodes["down"] = node(NK::Assign, Operator::assign("k", sub(V("k"), I(1))));

    fc.edges = {
        {"A", "start", "join", 0},    {"B", "join", "room", 0},
        {"C", "room", "nonempty", 1}, {"E", "room", "emit", -1},
        {"D", "nonempty", "accept", -1}, {"F", "nonempty", "either", 1},
        {"G", "either", "accept", 0}, {"H", "either", "emit", 0},
        {"L", "accept", "push", 0},   {"O", "push", "up", 0},
        {"K", "up", "join", 0},       {"M", "emit", "pop", 0},
        {"P", "pop", "down", 0},      {"N", "down", "join", 0},
    };
    return fc;
}

VpProcess buffer_process(int n, int messages) {
    return flowchart_to_process(buffer_flowchart(n, messages));
}

VpProcess buffer(int n, int messages) {
    return reduce(buffer_process(n, messages), {ReduceRule::R1, ReduceRule::R2});
}

VpProcess buf_cell(int messages, const std::string& var) {
    check_range(messages >= 1, "buf-cell: message domain must be non-empty");
    VpProcess p;
    p.vars = {{var, VType::int_range(0, messages - 1)}};
    p.init = ve_top();
    p.states = {"a", "b"};
    p.initial = "a";
    p.transitions = {T("a", {Operator::in("In", var)}, "b"),
                     T("b", {Operator::out("Out", V(var))}, "a")};
    return p;
}

MuCertificate buffer1_certificate() {
    MuCertificate cert;
    cert.mu[{"B", "a"}] = land(eq(V("k"), I(0)), eq(V("q"), ve_const(Value::of_list({}))));
    cert.mu[{"B", "b"}] = land(eq(V("k"), I(1)), eq(V("q"), single(V("x_b"))));
    return cert;
}

VpProcess buffer_chain(int n1, int n2, int messages) {
    VpProcess left = vp_rename(buffer(n1, messages), {{"Out", "mid"}});
    VpProcess right = vp_rename(buffer(n2, messages), {{"In", "mid"}});
    return vp_reachable(vp_restrict(vp_parallel(left, right), {"mid"}));
}

// ---------------------------------------------------------------------------
// Separation of sets
// ---------------------------------------------------------------------------

namespace {

VpProcess separation_small(long lo, long hi, int cap) {
    VTypePtr wt = VType::int_range(lo, hi);
    VpProcess p;
    p.vars = {{"S", VType::list(wt, cap)}, {"mx", wt}, {"x", wt}};
    p.init = ve_top();
    p.states = {"A", "D", "B", "C"};
    p.initial = "A";
    p.transitions = {
        T("A", {Operator::assign("mx", maxl(V("S"))), Operator::out("alpha", V("mx")),
                Operator::assign("S", removeone(V("S"), V("mx")))}, "D"),
        T("D", {Operator::in("beta", "x"),
                Operator::assign("S", concat(V("S"), single(V("x")))),
                Operator::assign("mx", maxl(V("S")))}, "B"),
        T("B", {Operator::guard(ge(V("x"), V("mx")))}, "C"),
        T("B", {Operator::guard(lt(V("x"), V("mx")))}, "A"),
    };
    return p;
}

VpProcess separation_large(long lo, long hi, int cap) {
    VTypePtr wt = VType::int_range(lo, hi);
    VpProcess p;
    p.vars = {{"L", VType::list(wt, cap)}, {"mn", wt}, {"y", wt}};
    p.init = ve_top();
    p.states = {"a", "d", "b", "c"};
    p.initial = "a";
    p.transitions = {
        T("a", {Operator::in("alpha", "y"),
                Operator::assign("L", concat(V("L"), single(V("y")))),
                Operator::assign("mn", minl(V("L")))}, "d"),
        T("d", {Operator::out("beta", V("mn")),
                Operator::assign("L", removeone(V("L"), V("mn"))),
                Operator::assign("mn", minl(V("L")))}, "b"),
        T("b", {Operator::guard(le(V("y"), V("mn")))}, "c"),
        T("b", {Operator::guard(gt(V("y"), V("mn")))}, "a"),
    };
    return p;
}

}  // namespace

VpProcess separation_system(const std::vector<long>& u, const std::vector<long>& v,
                            long lo, long hi) {
    check_range(!u.empty() && !v.empty(), "separation: U and V must be non-empty");
    check_range(lo <= hi, "separation: empty weight range");
    for (long w : u) check_range(w >= lo && w <= hi, "separation: U weight out of range");
    for (long w : v) check_range(w >= lo && w <= hi, "separation: V weight out of range");

    VpProcess sys = vp_restrict(
        vp_parallel(separation_small(lo, hi, static_cast<int>(u.size())),
                    separation_large(lo, hi, static_cast<int>(v.size()) + 1)),
        {"alpha", "beta"});
    VpProcess red = reduce_pruned(sys);
    red = rename_states(red, {{"⟨A,a⟩", "Aa"}, {"⟨B,b⟩", "Bb"}, {"⟨C,c⟩", "Cc"},
                              {"⟨A,c⟩", "Ac"}, {"⟨C,a⟩", "Ca"}});
    red.init = conj({eq(V("S"), ve_const(int_list(u))), eq(V("L"), ve_const(int_list(v))),
                     eq(V("mx"), I(lo)), eq(V("x"), I(lo)), eq(V("mn"), I(lo)),
                     eq(V("y"), I(lo))});
    return red;
}

// ---------------------------------------------------------------------------
// Squaring pipeline
// ---------------------------------------------------------------------------

VpProcess multiplier() {
    VTypePtr bit = VType::int_range(0, 1);
    VpProcess p;
    p.vars = {{"x", bit}, {"y", bit}};
    p.init = land(eq(V("x"), I(0)), eq(V("y"), I(0)));
    p.states = {"A", "B", "C"};
    p.initial = "A";
    p.transitions = {T("A", {Operator::in("In1", "x")}, "B"),
                     T("B", {Operator::in("In2", "y")}, "C"),
                     T("C", {Operator::out("Out", mulx(V("x"), V("y")))}, "A")};
    return p;
}

VpProcess duplicator() {
    VTypePtr bit = VType::int_range(0, 1);
    VpProcess p;
    p.vars = {{"z", bit}};
    p.init = eq(V("z"), I(0));
    p.states = {"a", "b", "c"};
    p.initial = "a";
    p.transitions = {T("a", {Operator::in("In", "z")}, "b"),
                     T("b", {Operator::out("Out1", V("z"))}, "c"),
                     T("c", {Operator::out("Out2", V("z"))}, "a")};
    return p;
}

VpProcess square() {
    VpProcess d = vp_rename(duplicator(), {{"Out1", "pass1"}, {"Out2", "pass2"}});
    VpProcess m = vp_rename(multiplier(), {{"In1", "pass1"}, {"In2", "pass2"}});
    VpProcess sys = vp_restrict(vp_parallel(d, m), {"pass1", "pass2"});
    return rename_states(reduce_pruned(sys),
                         {{"⟨a,A⟩", "A1"}, {"⟨c,B⟩", "A2"}, {"⟨b,C⟩", "A3"}});
}

VpProcess square_spec() {
    VTypePtr bit = VType::int_range(0, 1);
    VpProcess p;
    p.vars = {{"v", bit}};
    p.init = eq(V("v"), I(0));
    p.states = {"s", "t"};
    p.initial = "s";
    p.transitions = {T("s", {Operator::in("In", "v")}, "t"),
                     T("t", {Operator::out("Out", mulx(V("v"), V("v")))}, "s")};
    return p;
}

VpProcess square_spec_buffered() {
    VpProcess b = vp_rename(buf_cell(2, "u"), {{"Out", "pass"}});
    b.init = eq(V("u"), I(0));
    VpProcess s = vp_rename(square_spec(), {{"In", "pass"}});
    VpProcess sys = vp_restrict(vp_parallel(b, s), {"pass"});
    return rename_states(reduce_pruned(sys),
                         {{"⟨a,s⟩", "a1"}, {"⟨b,s⟩", "a2"}, {"⟨b,t⟩", "a3"}});
}

MuCertificate square_certificate() {
    MuCertificate cert;
    cert.mu[{"A1", "a1"}] = ve_top();
    cert.mu[{"A2", "a2"}] = land(eq(V("x"), V("z")), eq(V("z"), V("u")));
    cert.mu[{"A3", "a3"}] = conj({eq(V("x"), V("y")), eq(V("y"), V("v")), eq(V("z"), V("u"))});
    return cert;
}

// ---------------------------------------------------------------------------
// One-way protocols
// ---------------------------------------------------------------------------

namespace {

VpProcess one_shot_timer(const std::string& start, const std::string& timeout,
                         const std::string& var) {
    VpProcess p;
    p.vars = {{var, VType::boolean()}};
    p.init = eq(V(var), B(false));
    p.states = {"T"};
    p.initial = "T";
    p.transitions = {
        T("T", {Operator::signal_in(start), Operator::assign(var, B(true))}, "T"),
        T("T", {Operator::guard(eq(V(var), B(true))), Operator::signal_out(timeout),
                Operator::assign(var, B(false))}, "T"),
    };
    return p;
}

}  // namespace

VpProcess simple_protocol() {
    VTypePtr bit = VType::int_range(0, 1);
    VTypePtr fr = frame_type("phi", {int_domain(0, 1)});

    VpProcess sender;
    sender.vars = {{"x", bit}};
    sender.init = eq(V("x"), I(0));
    sender.states = {"sA", "sB", "sC", "sD"};
    sender.initial = "sA";
    sender.transitions = {
        T("sA", {Operator::in("In", "x")}, "sB"),
        T("sB", {Operator::out("S", ve_frame("phi", {V("x")}))}, "sC"),
        T("sC", {Operator::signal_out("start")}, "sD"),
        T("sD", {Operator::signal_in("timeout")}, "sB"),
        T("sD", {Operator::signal_in("S")}, "sA"),
    };

    VpProcess chan;
    chan.vars = {{"y", fr}};
    chan.init = eq(V("y"), Sy("*"));
    chan.states = {"ca", "cb", "cg"};
    chan.initial = "ca";
    chan.transitions = {
        T("ca", {Operator::in("S", "y")}, "cb"),
        T("cb", {Operator::out("R", V("y"))}, "ca"),
        T("cb", {Operator::out("R", Sy("*"))}, "ca"),
        T("cb", {Operator::guard(ve_top())}, "ca"),  // loss
        T("ca", {Operator::signal_in("R")}, "cg"),
        T("cg", {Operator::signal_out("S")}, "ca"),
        T("cg", {Operator::guard(ve_top())}, "ca"),  // acknowledgement loss
    };

    VpProcess recv;
    recv.vars = {{"f", fr}};
    recv.init = eq(V("f"), Sy("*"));
    recv.states = {"ra", "rb", "rc"};
    recv.initial = "ra";
    recv.transitions = {
        T("ra", {Operator::in("R", "f")}, "rb"),
        T("rb", {Operator::guard(eq(V("f"), Sy("*")))}, "ra"),
        T("rb", {Operator::guard(ne(V("f"), Sy("*"))),
                 Operator::out("Out", ve_part(V("f"), 0))}, "rc"),
        T("rc", {Operator::signal_out("R")}, "ra"),
    };

    VpProcess sys = vp_parallel(vp_parallel(sender, one_shot_timer("start", "timeout", "t")),
                                vp_parallel(chan, recv));
    return vp_reachable(vp_restrict(sys, {"S", "R", "start", "timeout"}));
}

VpProcess abp() {
    VTypePtr bit = VType::int_range(0, 1);
    VTypePtr data = frame_type("phi", {int_domain(0, 1), int_domain(0, 1)});
    VTypePtr ack = frame_type("phi", {int_domain(0, 1)});

    VpProcess sender;
    sender.vars = {{"x", bit}, {"s", bit}, {"z", ack}};
    sender.init = conj({eq(V("x"), I(0)), eq(V("s"), I(0)), eq(V("z"), Sy("*"))});
    sender.states = {"sA", "sB", "sC", "sD", "sE"};
    sender.initial = "sA";
    sender.transitions = {
        T("sA", {Operator::in("In", "x")}, "sB"),
        T("sB", {Operator::out("S", ve_frame("phi", {V("x"), V("s")}))}, "sC"),
        T("sC", {Operator::signal_out("start")}, "sD"),
        T("sD", {Operator::signal_in("timeout")}, "sB"),
        T("sD", {Operator::in("S", "z")}, "sE"),
        T("sE", {Operator::guard(land(ne(V("z"), Sy("*")), eq(ve_part(V("z"), 0), V("s")))),
                 Operator::assign("s", sub(I(1), V("s")))}, "sA"),
        T("sE", {Operator::guard(lor(eq(V("z"), Sy("*")), ne(ve_part(V("z"), 0), V("s"))))},
          "sB"),
    };

    VpProcess chan;
    chan.vars = {{"y", data}, {"zz", ack}};
    chan.init = land(eq(V("y"), Sy("*")), eq(V("zz"), Sy("*")));
    chan.states = {"ca", "cb", "cg"};
    chan.initial = "ca";
    chan.transitions = {
        T("ca", {Operator::in("S", "y")}, "cb"),
        T("cb", {Operator::out("R", V("y"))}, "ca"),
        T("cb", {Operator::out("R", Sy("*"))}, "ca"),
        T("cb", {Operator::guard(ve_top())}, "ca"),
        T("ca", {Operator::in("R", "zz")}, "cg"),
        T("cg", {Operator::out("S", V("zz"))}, "ca"),
        T("cg", {Operator::out("S", Sy("*"))}, "ca"),
        T("cg", {Operator::guard(ve_top())}, "ca"),
    };

    VpProcess recv;
    recv.vars = {{"r", bit}, {"f", data}};
    recv.init = land(eq(V("r"), I(0)), eq(V("f"), Sy("*")));
    recv.states = {"ra", "rb", "rc"};
    recv.initial = "ra";
    recv.transitions = {
        T("ra", {Operator::in("R", "f")}, "rb"),
        T("rb", {Operator::guard(eq(V("f"), Sy("*")))}, "ra"),
        T("rb", {Operator::guard(land(ne(V("f"), Sy("*")), ne(ve_part(V("f"), 1), V("r"))))},
          "rc"),
        T("rb", {Operator::guard(land(ne(V("f"), Sy("*")), eq(ve_part(V("f"), 1), V("r")))),
                 Operator::out("Out", ve_part(V("f"), 0)),
                 Operator::assign("r", sub(I(1), V("r")))}, "rc"),
        T("rc", {Operator::out("R", ve_frame("phi", {sub(I(1), V("r"))}))}, "ra"),
    };

    VpProcess sys = vp_parallel(vp_parallel(sender, one_shot_timer("start", "timeout", "t")),
                                vp_parallel(chan, recv));
    return vp_reachable(vp_restrict(sys, {"S", "R", "start", "timeout"}));
}

VpProcess abp_reduced() {
    VTypePtr bit = VType::int_range(0, 1);
    VpProcess p;
    p.vars = {{"x", bit}, {"s", bit}, {"r", bit}};
    p.init = conj({eq(V("s"), I(0)), eq(V("r"), I(0)), eq(V("x"), I(0))});
    p.states = {"i", "j"};
    p.initial = "i";
    p.transitions = {
        T("i", {Operator::in("In", "x")}, "j"),
        T("j", {Operator::guard(ne(V("s"), V("r"))),
                Operator::assign("s", sub(I(1), V("s")))}, "i"),
        T("j", {Operator::guard(eq(V("s"), V("r"))), Operator::out("Out", V("x")),
                Operator::assign("s", sub(I(1), V("s"))),
                Operator::assign("r", sub(I(1), V("r")))}, "i"),
        T("j", {Operator::guard(ne(V("s"), V("r")))}, "j"),
        T("j", {Operator::guard(eq(V("s"), V("r"))), Operator::out("Out", V("x")),
                Operator::assign("r", sub(I(1), V("r")))}, "j"),
    };
    return p;
}

MuCertificate abp_certificate() {
    MuCertificate cert;
    cert.mu[{"i", "a"}] = eq(V("s"), V("r"));
    cert.mu[{"j", "a"}] = ne(V("s"), V("r"));
    cert.mu[{"j", "b"}] = land(eq(V("s"), V("r")), eq(V("x_b"), V("x")));
    return cert;
}

// ---------------------------------------------------------------------------
// Two-way alternating bit protocol
// ---------------------------------------------------------------------------

namespace {

VpProcess abp_double_agent(const std::string& sfx, const VTypePtr& fr) {
    VTypePtr bit = VType::int_range(0, 1);
    auto n = [&](const std::string& base) { return base + sfx; };
    std::string x = n("x"), s = n("s"), r = n("r"), f = n("f");

    VpProcess p;
    p.vars = {{x, bit}, {s, bit}, {r, bit}, {f, fr}};
    p.init = conj({eq(V(x), I(0)), eq(V(s), I(0)), eq(V(r), I(0)), eq(V(f), Sy("*"))});
    p.states = {n("M0"), n("SND"), n("ST"), n("WT"), n("RCV"), n("D1")};
    p.initial = n("M0");
    p.transitions = {
        T(n("M0"), {Operator::in(n("In"), x)}, n("SND")),
        T(n("SND"),
          {Operator::out(n("C"), ve_frame("phi", {V(x), V(s), sub(I(1), V(r))}))}, n("ST")),
        T(n("ST"), {Operator::signal_out(n("start"))}, n("WT")),
        T(n("WT"), {Operator::signal_in(n("timeout"))}, n("SND")),
        T(n("WT"), {Operator::in(n("C"), f)}, n("RCV")),
        T(n("RCV"), {Operator::guard(eq(V(f), Sy("*")))}, n("SND")),
        T(n("RCV"), {Operator::guard(land(ne(V(f), Sy("*")), eq(ve_part(V(f), 1), V(r)))),
                     Operator::out(n("Out"), ve_part(V(f), 0)),
                     Operator::assign(r, sub(I(1), V(r)))}, n("D1")),
        T(n("RCV"), {Operator::guard(land(ne(V(f), Sy("*")), ne(ve_part(V(f), 1), V(r))))},
          n("D1")),
        T(n("D1"), {Operator::guard(eq(ve_part(V(f), 2), V(s))),
                    Operator::assign(s, sub(I(1), V(s)))}, n("M0")),
        T(n("D1"), {Operator::guard(ne(ve_part(V(f), 2), V(s)))}, n("SND")),
    };
    return p;
}

}  // namespace

VpProcess abp_double() {
    VTypePtr fr = frame_type("phi", {int_domain(0, 1), int_domain(0, 1), int_domain(0, 1)});

    VpProcess chan;
    chan.vars = {{"y1", fr}, {"y2", fr}};
    chan.init = land(eq(V("y1"), Sy("*")), eq(V("y2"), Sy("*")));
    chan.states = {"ca", "cb", "cg"};
    chan.initial = "ca";
    chan.transitions = {
        T("ca", {Operator::in("C1", "y1")}, "cb"),
        T("cb", {Operator::out("C2", V("y1"))}, "ca"),
        T("cb", {Operator::out("C2", Sy("*"))}, "ca"),
        T("cb", {Operator::guard(ve_top())}, "ca"),
        T("ca", {Operator::in("C2", "y2")}, "cg"),
        T("cg", {Operator::out("C1", V("y2"))}, "ca"),
        T("cg", {Operator::out("C1", Sy("*"))}, "ca"),
        T("cg", {Operator::guard(ve_top())}, "ca"),
    };

    VpProcess a1 = vp_parallel(abp_double_agent("1", fr),
                               one_shot_timer("start1", "timeout1", "t1"));
    VpProcess a2 = vp_parallel(abp_double_agent("2", fr),
                               one_shot_timer("start2", "timeout2", "t2"));
    VpProcess sys = vp_parallel(vp_parallel(a1, a2), chan);
    return vp_reachable(
        vp_restrict(sys, {"C1", "C2", "start1", "timeout1", "start2", "timeout2"}));
}

// ---------------------------------------------------------------------------
// Sliding window protocols
// ---------------------------------------------------------------------------

namespace {

// Array of n timers indexed by sequence number; fires timeout!j for any set
// timer j.
VpProcess timer_array(const std::string& sfx, int n) {
    auto nm = [&](const std::string& base) { return base + sfx; };
    std::string t = nm("t"), ti = nm("ti"), tj = nm("tj");
    VpProcess p;
    p.vars = {{t, VType::list(VType::boolean(), n)},
              {ti, VType::int_range(0, n - 1)},
              {tj, VType::int_range(0, n - 1)}};
    p.init = conj({eq(V(t), ve_const(const_list(n, Value::of_bool(false)))),
                   eq(V(ti), I(0)), eq(V(tj), I(0))});
    p.states = {"TT"};
    p.initial = "TT";
    p.transitions = {
        T("TT", {Operator::in(nm("start"), ti),
                 Operator::assign(t, ve_setindex(V(t), V(ti), B(true)))}, "TT"),
        T("TT", {Operator::in(nm("stop"), tj),
                 Operator::assign(t, ve_setindex(V(t), V(tj), B(false)))}, "TT"),
    };
    for (int j = 0; j < n; ++j)
        p.transitions.push_back(
            T("TT", {Operator::guard(eq(ve_index(V(t), I(j)), B(true))),
                     Operator::out(nm("timeout"), I(j)),
                     Operator::assign(t, ve_setindex(V(t), I(j), B(false)))}, "TT"));
    return p;
}

// Two-directional queue channel (capacity 2 each way) that may lose or
// distort the frame at the head of a queue.
VpProcess queue_channel(const VTypePtr& fr) {
    VpProcess p;
    p.vars = {{"q12", VType::list(fr, 2)}, {"q21", VType::list(fr, 2)},
              {"g1", fr}, {"g2", fr}};
    p.init = conj({eq(V("q12"), ve_const(Value::of_list({}))),
                   eq(V("q21"), ve_const(Value::of_list({}))),
                   eq(V("g1"), Sy("*")), eq(V("g2"), Sy("*"))});
    p.states = {"CH"};
    p.initial = "CH";
    auto way = [&](const std::string& q, const std::string& g, const std::string& from,
                   const std::string& to) {
        p.transitions.push_back(T("CH", {Operator::guard(lt(len(V(q)), I(2))),
                                         Operator::in(from, g),
                                         Operator::assign(q, concat(V(q), single(V(g))))},
                                  "CH"));
        p.transitions.push_back(T("CH", {Operator::guard(gt(len(V(q)), I(0))),
                                         Operator::out(to, head(V(q))),
                                         Operator::assign(q, tail(V(q)))}, "CH"));
        p.transitions.push_back(T("CH", {Operator::guard(gt(len(V(q)), I(0))),
                                         Operator::assign(q, tail(V(q)))}, "CH"));  // loss
        p.transitions.push_back(T("CH", {Operator::guard(gt(len(V(q)), I(0))),
                                         Operator::assign(q, ve_setindex(V(q), I(0), Sy("*")))},
                                  "CH"));  // distortion
    };
    way("q12", "g1", "C1", "C2");
    way("q21", "g2", "C2", "C1");
    return p;
}

VpProcess gbn_agent(const std::string& sfx, int n, const VTypePtr& fr) {
    VTypePtr pkt = VType::int_range(0, 1);
    VTypePtr seq = VType::int_range(0, n - 1);
    auto nm = [&](const std::string& base) { return base + sfx; };
    std::string x = nm("x"), b = nm("b"), s = nm("s"), r = nm("r"), w = nm("w"),
                i = nm("i"), en = nm("enable"), xin = nm("xin"), f = nm("f");

    VpProcess p;
    p.vars = {{x, VType::list(pkt, n)}, {b, seq}, {s, seq}, {r, seq},
              {w, seq}, {i, VType::int_range(0, n)}, {en, VType::boolean()},
              {xin, pkt}, {f, fr}};
    p.init = conj({eq(V(x), ve_const(const_list(n, Value::of_int(0)))), eq(V(b), I(0)),
                   eq(V(s), I(0)), eq(V(r), I(0)), eq(V(w), I(0)), eq(V(i), I(0)),
                   eq(V(en), B(true)), eq(V(xin), I(0)), eq(V(f), Sy("*"))});
    for (const auto& st : {"M", "I1", "I2", "TL", "R1", "F", "D"}) p.states.insert(nm(st));
    p.initial = nm("M");

    VE data_frame = ve_frame("phi", {ve_index(V(x), V(s)), V(s), subm(V(r), I(1), n)});
    Operator set_enable = Operator::assign(en, lt(V(w), I(n - 1)));

    p.transitions = {
        // accept a packet from the environment and send it
        T(nm("M"), {Operator::guard(eq(V(en), B(true))), Operator::in(nm("In"), xin),
                    Operator::assign(x, ve_setindex(V(x), V(s), V(xin)))}, nm("I1")),
        T(nm("I1"), {Operator::out(nm("C"), data_frame)}, nm("I2")),
        T(nm("I2"), {Operator::out(nm("start"), V(s)),
                     Operator::assign(s, addm(V(s), I(1), n)),
                     Operator::assign(w, add(V(w), I(1))), set_enable}, nm("M")),
        // a timer fired: resend the whole window from b
        T(nm("M"), {Operator::in(nm("timeout"), i), Operator::assign(s, V(b)),
                    Operator::assign(i, I(1))}, nm("TL")),
        T(nm("TL"), {Operator::guard(le(V(i), V(w))), Operator::out(nm("C"), data_frame)},
          nm("R1")),
        T(nm("R1"), {Operator::out(nm("start"), V(s)),
                     Operator::assign(s, addm(V(s), I(1), n)),
                     Operator::assign(i, add(V(i), I(1)))}, nm("TL")),
        T(nm("TL"), {Operator::guard(gt(V(i), V(w))), set_enable}, nm("M")),
        // receive a frame
        T(nm("M"), {Operator::in(nm("C"), f)}, nm("F")),
        T(nm("F"), {Operator::guard(eq(V(f), Sy("*"))), set_enable}, nm("M")),
        T(nm("F"), {Operator::guard(land(ne(V(f), Sy("*")), eq(ve_part(V(f), 1), V(r)))),
                    Operator::out(nm("Out"), ve_part(V(f), 0)),
                    Operator::assign(r, addm(V(r), I(1), n))}, nm("D")),
        T(nm("F"), {Operator::guard(land(ne(V(f), Sy("*")), ne(ve_part(V(f), 1), V(r))))},
          nm("D")),
        // sweep cumulative acknowledgements
        T(nm("D"), {Operator::guard(ve_between(V(b), ve_part(V(f), 2), V(s))),
                    Operator::assign(w, sub(V(w), I(1))), Operator::out(nm("stop"), V(b)),
                    Operator::assign(b, addm(V(b), I(1), n))}, nm("D")),
        T(nm("D"), {Operator::guard(ve_not(ve_between(V(b), ve_part(V(f), 2), V(s)))),
                    set_enable}, nm("M")),
    };
    return p;
}

VpProcess sr_agent(const std::string& sfx, int n, const VTypePtr& fr) {
    int m = n / 2;
    VTypePtr pkt = VType::int_range(0, 1);
    VTypePtr seq = VType::int_range(0, n - 1);
    auto nm = [&](const std::string& base) { return base + sfx; };
    std::string x = nm("x"), y = nm("y"), arr = nm("arrived"), b = nm("b"), s = nm("s"),
                r = nm("r"), u = nm("u"), w = nm("w"), i = nm("i"), en = nm("enable"),
                nn = nm("no_nak"), xin = nm("xin"), f = nm("f");
    auto modm = [&](VE e) { return addm(std::move(e), I(0), m); };

    VpProcess p;
    p.vars = {{x, VType::list(pkt, m)}, {y, VType::list(pkt, m)},
              {arr, VType::list(VType::boolean(), m)}, {b, seq}, {s, seq}, {r, seq},
              {u, seq}, {w, VType::int_range(0, m)}, {i, seq}, {en, VType::boolean()},
              {nn, VType::boolean()}, {xin, pkt}, {f, fr}};
    p.init = conj({eq(V(x), ve_const(const_list(m, Value::of_int(0)))),
                   eq(V(y), ve_const(const_list(m, Value::of_int(0)))),
                   eq(V(arr), ve_const(const_list(m, Value::of_bool(false)))),
                   eq(V(b), I(0)), eq(V(s), I(0)), eq(V(r), I(0)), eq(V(u), I(m)),
                   eq(V(w), I(0)), eq(V(i), I(0)), eq(V(en), B(true)),
                   eq(V(nn), B(true)), eq(V(xin), I(0)), eq(V(f), Sy("*"))});
    for (const auto& st : {"M", "I1", "I2", "I3", "T1", "T2", "T3", "A1", "A2", "F", "N1",
                           "G1", "G2", "RW", "DL", "DL1", "NK", "K1", "K2", "AS"})
        p.states.insert(nm(st));
    p.initial = nm("M");

    auto frame_of = [&](VE kind, VE info, VE sq) {
        return ve_frame("phi", {std::move(kind), std::move(info), std::move(sq),
                                subm(V(r), I(1), n)});
    };
    VE kind_f = ve_part(V(f), 0);
    VE info_f = ve_part(V(f), 1);
    VE seq_f = ve_part(V(f), 2);
    VE ack_f = ve_part(V(f), 3);
    VE resend_seq = addm(ack_f, I(1), n);
    Operator set_enable = Operator::assign(en, lt(V(w), I(m)));
    VE distorted = eq(V(f), Sy("*"));
    VE new_data = land(ne(seq_f, V(r)), eq(V(nn), B(true)));

    p.transitions = {
        // accept a packet from the environment and send(data, s)
        T(nm("M"), {Operator::guard(eq(V(en), B(true))), Operator::in(nm("In"), xin),
                    Operator::assign(x, ve_setindex(V(x), modm(V(s)), V(xin)))}, nm("I1")),
        T(nm("I1"), {Operator::out(nm("C"),
                                   frame_of(Sy("data"), ve_index(V(x), modm(V(s))), V(s)))},
          nm("I2")),
        T(nm("I2"), {Operator::out(nm("start"), V(s))}, nm("I3")),
        T(nm("I3"), {Operator::signal_out(nm("stop_ack_timer")),
                     Operator::assign(s, addm(V(s), I(1), n)),
                     Operator::assign(w, add(V(w), I(1))), set_enable}, nm("M")),
        // a frame timer fired: send(data, i)
        T(nm("M"), {Operator::in(nm("timeout"), i)}, nm("T1")),
        T(nm("T1"), {Operator::out(nm("C"),
                                   frame_of(Sy("data"), ve_index(V(x), modm(V(i))), V(i)))},
          nm("T2")),
        T(nm("T2"), {Operator::out(nm("start"), V(i))}, nm("T3")),
        T(nm("T3"), {Operator::signal_out(nm("stop_ack_timer")), set_enable}, nm("M")),
        // the acknowledgement timer fired: send(ack, 0)
        T(nm("M"), {Operator::signal_in(nm("ack_timeout"))}, nm("A1")),
        T(nm("A1"), {Operator::out(nm("C"),
                                   frame_of(Sy("ack"), ve_index(V(x), I(0)), I(0)))},
          nm("A2")),
        T(nm("A2"), {Operator::signal_out(nm("stop_ack_timer")), set_enable}, nm("M")),
        // receive a frame
        T(nm("M"), {Operator::in(nm("C"), f)}, nm("F")),
        // distorted: send(nak, 0) unless one is already outstanding
        T(nm("F"), {Operator::guard(land(distorted, ne(V(nn), B(true)))), set_enable},
          nm("M")),
        T(nm("F"), {Operator::guard(land(distorted, eq(V(nn), B(true)))),
                    Operator::out(nm("C"), frame_of(Sy("nak"), ve_index(V(x), I(0)), I(0))),
                    Operator::assign(nn, B(false))}, nm("N1")),
        T(nm("N1"), {Operator::signal_out(nm("stop_ack_timer")), set_enable}, nm("M")),
        // data frame out of turn: NAK the expected one, then process normally
        T(nm("F"), {Operator::guard(conj({ve_not(distorted), eq(kind_f, Sy("data")),
                                          new_data})),
                    Operator::out(nm("C"), frame_of(Sy("nak"), ve_index(V(x), I(0)), I(0))),
                    Operator::assign(nn, B(false))}, nm("G1")),
        T(nm("G1"), {Operator::signal_out(nm("stop_ack_timer"))}, nm("G2")),
        T(nm("G2"), {Operator::signal_out(nm("start_ack_timer"))}, nm("RW")),
        T(nm("F"), {Operator::guard(conj({ve_not(distorted), eq(kind_f, Sy("data")),
                                          ve_not(new_data)}))}, nm("RW")),
        // receiving window: store a packet falling into it
        T(nm("RW"), {Operator::guard(land(ve_between(V(r), seq_f, V(u)),
                                          eq(ve_index(V(arr), modm(seq_f)), B(false)))),
                     Operator::assign(arr, ve_setindex(V(arr), modm(seq_f), B(true))),
                     Operator::assign(y, ve_setindex(V(y), modm(seq_f), info_f))}, nm("DL")),
        T(nm("RW"), {Operator::guard(ve_not(land(ve_between(V(r), seq_f, V(u)),
                                                 eq(ve_index(V(arr), modm(seq_f)),
                                                    B(false)))))}, nm("NK")),
        // deliver every packet at the lower boundary of the window
        T(nm("DL"), {Operator::guard(eq(ve_index(V(arr), modm(V(r))), B(true))),
                     Operator::out(nm("Out"), ve_index(V(y), modm(V(r)))),
                     Operator::assign(nn, B(true)),
                     Operator::assign(arr, ve_setindex(V(arr), modm(V(r)), B(false))),
                     Operator::assign(r, addm(V(r), I(1), n)),
                     Operator::assign(u, addm(V(u), I(1), n))}, nm("DL1")),
        T(nm("DL1"), {Operator::signal_out(nm("start_ack_timer"))}, nm("DL")),
        T(nm("DL"), {Operator::guard(eq(ve_index(V(arr), modm(V(r))), B(false)))}, nm("NK")),
        // non-data frames skip the receiving window
        T(nm("F"), {Operator::guard(land(ve_not(distorted), ne(kind_f, Sy("data"))))},
          nm("NK")),
        // a NAK asks for a retransmission of ack(f) + 1
        T(nm("NK"), {Operator::guard(land(eq(kind_f, Sy("nak")),
                                          ve_between(V(b), resend_seq, V(s)))),
                     Operator::out(nm("C"),
                                   frame_of(Sy("data"), ve_index(V(x), modm(resend_seq)),
                                            resend_seq))}, nm("K1")),
        T(nm("K1"), {Operator::out(nm("start"), resend_seq)}, nm("K2")),
        T(nm("K2"), {Operator::signal_out(nm("stop_ack_timer"))}, nm("AS")),
        T(nm("NK"), {Operator::guard(ve_not(land(eq(kind_f, Sy("nak")),
                                                 ve_between(V(b), resend_seq, V(s)))))},
          nm("AS")),
        // sweep cumulative acknowledgements
        T(nm("AS"), {Operator::guard(ve_between(V(b), ack_f, V(s))),
                     Operator::assign(w, sub(V(w), I(1))), Operator::out(nm("stop"), V(b)),
                     Operator::assign(b, addm(V(b), I(1), n))}, nm("AS")),
        T(nm("AS"), {Operator::guard(ve_not(ve_between(V(b), ack_f, V(s)))), set_enable},
          nm("M")),
    };
    return p;
}

VpProcess ack_timer(const std::string& sfx) {
    auto nm = [&](const std::string& base) { return base + sfx; };
    std::string at = nm("at");
    VpProcess p;
    p.vars = {{at, VType::boolean()}};
    p.init = eq(V(at), B(false));
    p.states = {"AT"};
    p.initial = "AT";
    p.transitions = {
        T("AT", {Operator::signal_in(nm("start_ack_timer")),
                 Operator::assign(at, B(true))}, "AT"),
        T("AT", {Operator::signal_in(nm("stop_ack_timer")),
                 Operator::assign(at, B(false))}, "AT"),
        T("AT", {Operator::guard(eq(V(at), B(true))),
                 Operator::signal_out(nm("ack_timeout")),
                 Operator::assign(at, B(false))}, "AT"),
    };
    return p;
}

void check_swp_n(int n) {
    check_range(n == 2 || n == 4, "swp: n must be 2 or 4");
}

}  // namespace

VpProcess swp_go_back_n(int n) {
    check_swp_n(n);
    VTypePtr fr = frame_type("phi", {int_domain(0, 1), int_domain(0, n - 1),
                                     int_domain(0, n - 1)});
    VpProcess a1 = vp_parallel(gbn_agent("1", n, fr), timer_array("1", n));
    VpProcess a2 = vp_parallel(gbn_agent("2", n, fr), timer_array("2", n));
    VpProcess sys = vp_parallel(vp_parallel(a1, a2), queue_channel(fr));
    return vp_reachable(vp_restrict(
        sys, {"C1", "C2", "start1", "stop1", "timeout1", "start2", "stop2", "timeout2"}));
}

VpProcess swp_selective_repeat(int n) {
    check_swp_n(n);
    VTypePtr fr = frame_type("phi",
                             {{Value::of_sym("data"), Value::of_sym("ack"),
                               Value::of_sym("nak")},
                              int_domain(0, 1), int_domain(0, n - 1), int_domain(0, n - 1)});
    VpProcess a1 = vp_parallel(vp_parallel(sr_agent("1", n, fr), timer_array("1", n)),
                               ack_timer("1"));
    VpProcess a2 = vp_parallel(vp_parallel(sr_agent("2", n, fr), timer_array("2", n)),
                               ack_timer("2"));
    VpProcess sys = vp_parallel(vp_parallel(a1, a2), queue_channel(fr));
    std::set<std::string> hidden{"C1", "C2"};
    for (const auto& sfx : {"1", "2"})
        for (const auto& base : {"start", "stop", "timeout", "start_ack_timer",
                                 "stop_ack_timer", "ack_timeout"})
            hidden.insert(std::string(base) + sfx);
    return vp_reachable(vp_restrict(sys, hidden));
}

PetriNet petri_example() {
    PetriNet net;
    net.places = {"p1", "p2", "p3"};
    net.transitions = {{{"p1"}, {"p2", "p3"}}, {{"p2", "p3"}, {"p1"}}};
    net.marking0 = {{"p1", 1}, {"p2", 0}, {"p3", 0}};
    return net;
}

// ---------------------------------------------------------------------------
// Randomized simulation
// ---------------------------------------------------------------------------

SimResult simulate(const Lts& p, std::size_t steps, std::uint64_t seed) {
    p.validate();
    std::mt19937_64 rng(seed);
    SimResult res;
    std::string cur = p.initial;
    for (std::size_t k = 0; k < steps; ++k) {
        auto outs = p.out(cur);
        if (outs.empty()) {
            res.deadlocked = true;
            break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, outs.size() - 1);
        const Transition& t = outs[pick(rng)];
        res.trace.push_back(t.act);
        cur = t.dst;
    }
    res.final_control = cur;
    return res;
}

namespace {

// Mirrors the concretization rule: a write escaping its declared domain
// disables the transition.
bool sim_assigns(const CompositeOp& co, std::size_t from, std::size_t to, Evaluation& sigma,
                 const std::map<std::string, VTypePtr>& vars) {
    for (std::size_t k = from; k < to; ++k) {
        const Operator& op = co.ops[k];
        if (op.kind != Operator::Kind::Assign) continue;
        Value v = eval_expr(op.expr, sigma);
        auto it = vars.find(op.var);
        if (it != vars.end() && !value_in_domain(v, *it->second)) return false;
        sigma[op.var] = v;
    }
    return true;
}

// Collect init conjuncts of the form var = <closed expression> into sigma.
void seed_from_init(const VE& init, Evaluation& sigma) {
    if (init->kind == VExprKind::And) {
        seed_from_init(init->args[0], sigma);
        seed_from_init(init->args[1], sigma);
        return;
    }
    if (init->kind != VExprKind::Eq) return;
    for (int side = 0; side < 2; ++side) {
        const VE& lhs = init->args[side];
        const VE& rhs = init->args[1 - side];
        std::set<std::string> fv;
        free_vars(rhs, fv);
        if (lhs->kind == VExprKind::Var && fv.empty()) {
            sigma[lhs->name] = eval_expr(rhs, {});
            return;
        }
    }
}

}  // namespace

SimResult simulate(const VpProcess& p, std::size_t steps, std::uint64_t seed) {
    p.validate();
    std::mt19937_64 rng(seed);

    Evaluation sigma;
    for (const auto& [n, t] : p.vars) sigma[n] = least_value(*t);
    seed_from_init(p.init, sigma);
    if (!eval_bool(p.init, sigma))
        throw BadParamsError(
            "simulate: the initial condition is not a satisfiable conjunction of "
            "variable bindings");

    std::map<std::string, std::vector<const VpTransition*>> by_src;
    for (const auto& t : p.transitions) by_src[t.src].push_back(&t);

    struct Option {
        const VpTransition* t;
        Action act;
        Evaluation post;
    };

    SimResult res;
    std::string cur = p.initial;
    for (std::size_t step = 0; step < steps; ++step) {
        std::vector<Option> options;
        for (const VpTransition* t : by_src[cur]) {
            if (!eval_bool(t->op.cond(), sigma)) continue;
            std::size_t io = t->op.io_index().value_or(t->op.ops.size());
            Evaluation pre = sigma;
            if (!sim_assigns(t->op, 1, io, pre, p.vars)) continue;
            if (io == t->op.ops.size()) {
                options.push_back({t, Action::tau(), std::move(pre)});
                continue;
            }
            const Operator& op = t->op.ops[io];
            if (op.is_signal()) {
                Evaluation post = pre;
                if (!sim_assigns(t->op, io + 1, t->op.ops.size(), post, p.vars)) continue;
                Action a = op.kind == Operator::Kind::Out ? Action::out(op.chan)
                                                          : Action::in(op.chan);
                options.push_back({t, a, std::move(post)});
            } else if (op.kind == Operator::Kind::Out) {
                Value v = eval_expr(op.expr, pre);
                Evaluation post = pre;
                if (!sim_assigns(t->op, io + 1, t->op.ops.size(), post, p.vars)) continue;
                options.push_back({t, Action::outv(op.chan, render(v)), std::move(post)});
            } else {
                for (const auto& v : enumerate_domain(*p.vars.at(op.var))) {
                    Evaluation post = pre;
                    post[op.var] = v;
                    if (!sim_assigns(t->op, io + 1, t->op.ops.size(), post, p.vars))
                        continue;
                    options.push_back({t, Action::inv(op.chan, render(v)), std::move(post)});
                }
            }
        }
        if (options.empty()) {
            res.deadlocked = true;
            break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        Option& chosen = options[pick(rng)];
        res.trace.push_back(chosen.act);
        sigma = std::move(chosen.post);
        cur = chosen.t->dst;
    }
    res.final_control = cur;
    res.final_eval = sigma;
    return res;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

int param_int(const std::map<std::string, std::string>& params, const std::string& key,
              int fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw BadParamsError("parameter '" + key + "' must be an integer, got '" +
                             it->second + "'");
    }
}

std::vector<long> param_longs(const std::map<std::string, std::string>& params,
                              const std::string& key, const std::vector<long>& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::vector<long> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw BadParamsError("parameter '" + key + "' must be a comma-separated "
                                 "integer list, got '" + it->second + "'");
        }
    if (out.empty())
        throw BadParamsError("parameter '" + key + "' must be a non-empty list");
    return out;
}

std::vector<std::vector<std::string>> param_sessions(
    const std::map<std::string, std::string>& params) {
    std::string text = "a11,a12;a21,a22";
    if (auto it = params.find("sessions"); it != params.end()) text = it->second;
    std::vector<std::vector<std::string>> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<std::string> acts;
        std::stringstream items(group);
        std::string act;
        while (std::getline(items, act, ','))
            if (!act.empty()) acts.push_back(act);
        if (acts.empty()) throw BadParamsError("sessions: empty session in '" + text + "'");
        out.push_back(std::move(acts));
    }
    if (out.empty()) throw BadParamsError("sessions: no sessions in '" + text + "'");
    return out;
}

BuiltModel of_lts(Lts p) {
    BuiltModel m;
    m.lts = std::move(p);
    return m;
}

BuiltModel of_vp(VpProcess p) {
    BuiltModel m;
    m.vp = std::move(p);
    return m;
}

}  // namespace

const std::vector<ModelInfo>& model_list() {
    static const std::vector<ModelInfo> list = {
        {"vending-simple", "", "two-state coin/chocolate vending machine"},
        {"vending-complex", "", "six-state tea/coffee vending machine"},
        {"jobber", "", "worker cycling through a job with a shared mallet"},
        {"mallet", "", "the shared mallet"},
        {"jobshop", "", "two jobbers sharing one mallet, synchronizations hidden"},
        {"abs-jobshop", "", "two abstract jobbers, no shared resource"},
        {"dispatcher", "n", "dispatcher serving n clients one at a time"},
        {"dispatcher-spec", "", "start/finish alternation specification"},
        {"scheduler", "n", "Milner-style round-robin scheduler of n cyclers"},
        {"scheduler-reference", "n", "explicit (token, active-set) scheduler automaton"},
        {"semaphore", "sessions", "clients sharing one semaphore; sessions 'a,b;c,d'"},
        {"semaphore-spec", "sessions", "interleaving-free specification of the semaphore"},
        {"buffer", "n,messages", "bounded FIFO buffer, reduced one-state form"},
        {"buffer-process", "n,messages", "bounded FIFO buffer, flowchart transcription"},
        {"buf-cell", "messages", "one-place buffer specification"},
        {"buffer-chain", "n1,n2,messages", "two buffers in series over a hidden channel"},
        {"separation", "u,v,lo,hi", "set separation by repeated min/max exchange"},
        {"multiplier", "", "two-input multiplier"},
        {"duplicator", "", "one-input fan-out"},
        {"square", "", "squaring pipeline (duplicator feeding the multiplier)"},
        {"square-spec", "", "direct squaring specification"},
        {"square-spec-buffered", "", "squaring specification behind a one-place buffer"},
        {"simple-protocol", "", "unnumbered one-way protocol over a lossy channel"},
        {"abp", "", "alternating bit protocol, full composition"},
        {"abp-reduced", "", "alternating bit protocol, two-state reduced form"},
        {"abp-double", "", "two-way alternating bit protocol with piggybacked acks"},
        {"swp-gbn", "n", "sliding window protocol, go-back-n"},
        {"swp-sr", "n", "sliding window protocol, selective repeat"},
        {"petri", "", "small marked Petri net as a counter process"},
    };
    return list;
}

BuiltModel build(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "vending-simple") return of_lts(vending_simple());
    if (name == "vending-complex") return of_lts(vending_complex());
    if (name == "jobber") return of_lts(jobber());
    if (name == "mallet") return of_lts(mallet());
    if (name == "jobshop") return of_lts(jobshop());
    if (name == "abs-jobshop") return of_lts(abs_jobshop());
    if (name == "dispatcher") return of_lts(dispatcher_system(param_int(params, "n", 2)));
    if (name == "dispatcher-spec") return of_lts(dispatcher_spec());
    if (name == "scheduler") return of_lts(scheduler(param_int(params, "n", 2)));
    if (name == "scheduler-reference")
        return of_lts(scheduler_reference(param_int(params, "n", 2)));
    if (name == "semaphore") return of_lts(semaphore_system(param_sessions(params)));
    if (name == "semaphore-spec") return of_lts(semaphore_spec(param_sessions(params)));
    if (name == "buffer")
        return of_vp(buffer(param_int(params, "n", 1), param_int(params, "messages", 2)));
    if (name == "buffer-process")
        return of_vp(
            buffer_process(param_int(params, "n", 1), param_int(params, "messages", 2)));
    if (name == "buf-cell") return of_vp(buf_cell(param_int(params, "messages", 2)));
    if (name == "buffer-chain")
        return of_vp(buffer_chain(param_int(params, "n1", 1), param_int(params, "n2", 1),
                                  param_int(params, "messages", 2)));
    if (name == "separation")
        return of_vp(separation_system(param_longs(params, "u", {3}),
                                       param_longs(params, "v", {1, 2}),
                                       param_int(params, "lo", 1),
                                       param_int(params, "hi", 3)));
    if (name == "multiplier") return of_vp(multiplier());
    if (name == "duplicator") return of_vp(duplicator());
    if (name == "square") return of_vp(square());
    if (name == "square-spec") return of_vp(square_spec());
    if (name == "square-spec-buffered") return of_vp(square_spec_buffered());
    if (name == "simple-protocol") return of_vp(simple_protocol());
    if (name == "abp") return of_vp(abp());
    if (name == "abp-reduced") return of_vp(abp_reduced());
    if (name == "abp-double") return of_vp(abp_double());
    if (name == "swp-gbn") return of_vp(swp_go_back_n(param_int(params, "n", 4)));
    if (name == "swp-sr") return of_vp(swp_selective_repeat(param_int(params, "n", 4)));
    if (name == "petri") return of_vp(petri_to_process(petri_example()));
    throw UnknownModelError("unknown model '" + name + "'");
}

}  // namespace ccsv::models
