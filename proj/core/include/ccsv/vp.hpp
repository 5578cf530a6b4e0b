#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccsv/lts.hpp"

namespace ccsv {

// ---------------------------------------------------------------------------
// Types and values (all domains finite)
// ---------------------------------------------------------------------------

struct VType;
using VTypePtr = std::shared_ptr<const VType>;

struct VType {
    enum class Kind { IntRange, Enum, Bool, List };
    Kind kind = Kind::Bool;
    long lo = 0, hi = 0;               // IntRange
    std::vector<std::string> symbols;  // Enum (non-empty)
    VTypePtr elem;                     // List
    int maxlen = 0;                    // List

    static VTypePtr int_range(long lo, long hi);
    static VTypePtr enumeration(std::vector<std::string> symbols);
    static VTypePtr boolean();
    static VTypePtr list(VTypePtr elem, int maxlen);

    bool operator==(const VType& other) const;
};

struct Value {
    enum class Kind { Int, Bool, Sym, List };
    Kind kind = Kind::Int;
    long i = 0;
    bool b = false;
    std::string sym;
    std::vector<Value> items;

    static Value of_int(long v);
    static Value of_bool(bool v);
    static Value of_sym(std::string s);
    static Value of_list(std::vector<Value> items);

    friend auto operator<=>(const Value&, const Value&) = default;
};

std::string render(const Value& v);
Value least_value(const VType& t);
std::vector<Value> enumerate_domain(const VType& t);
bool value_in_domain(const Value& v, const VType& t);
std::size_t domain_size(const VType& t);

using Evaluation = std::map<std::string, Value>;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class VExprKind {
    Const, Var,
    Add, Sub, Mul, AddMod, SubMod,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or, Not, Implies,
    Head, Tail, Singleton, Concat, Length, Index, SetIndex,
    MaxL, MinL,  // greatest / least element of an integer list (0 when empty)
    RemoveOne,   // list with the first occurrence of a value removed
    Between,
    Frame,  // tagged tuple rendered as an Enum symbol "tag(v1,...,vn)"
    Part,   // i-th component of a Frame symbol
};

struct VExpr;
using VE = std::shared_ptr<const VExpr>;

struct VExpr {
    VExprKind kind = VExprKind::Const;
    Value cval;        // Const
    std::string name;  // Var name / Frame tag
    long modn = 0;     // AddMod / SubMod modulus
    int index = 0;     // Part component index
    std::vector<VE> args;
};

VE ve_const(Value v);
VE ve_int(long v);
VE ve_bool(bool v);
VE ve_sym(std::string s);
VE ve_var(std::string name);
VE ve_bin(VExprKind kind, VE a, VE b);
VE ve_mod(VExprKind kind, VE a, VE b, long n);
VE ve_not(VE a);
VE ve_un(VExprKind kind, VE a);  // Head, Tail, Singleton, Length, MaxL, MinL
VE ve_index(VE list, VE i);
VE ve_setindex(VE list, VE i, VE v);
VE ve_between(VE a, VE b, VE c);
VE ve_frame(std::string tag, std::vector<VE> args);
VE ve_part(VE frame, int index);
VE ve_top();
VE ve_bottom();

Value eval_expr(const VE& e, const Evaluation& sigma);
bool eval_bool(const VE& e, const Evaluation& sigma);
VE subst(const VE& e, const std::string& var, const VE& replacement);
void free_vars(const VE& e, std::set<std::string>& out);
std::string render(const VE& e);
// Constant-fold trivial boolean structure (x & true -> x etc.).
VE simplify(const VE& e);

// ---------------------------------------------------------------------------
// Operators, composite operators, processes
// ---------------------------------------------------------------------------

struct Operator {
    enum class Kind { In, Out, Assign, Guard };
    Kind kind = Kind::Guard;
    std::string chan;  // In / Out
    std::string var;   // In target / Assign target
    VE expr;           // Out value / Assign value / Guard condition

    static Operator in(std::string chan, std::string var);
    static Operator out(std::string chan, VE expr);
    static Operator assign(std::string var, VE expr);
    static Operator guard(VE cond);
    // Pure synchronization signals: an input binding no variable and an
    // output carrying no value. They handshake only with each other.
    static Operator signal_in(std::string chan);
    static Operator signal_out(std::string chan);

    bool is_signal() const {
        return (kind == Kind::In && var.empty()) || (kind == Kind::Out && !expr);
    }
};

std::string render(const Operator& op);

// Guard-headed sequence of assignments with at most one input/output.
struct CompositeOp {
    std::vector<Operator> ops;

    void validate() const;  // throws Error on shape violations
    const VE& cond() const { return ops.front().expr; }
    std::optional<std::size_t> io_index() const;
    bool internal() const { return !io_index().has_value(); }
};

std::string render(const CompositeOp& co);
CompositeOp co_of(const Operator& op);  // plain operator as a CO
CompositeOp co_of(std::vector<Operator> ops);

// Sequential composition; absent when undefined (neither operand internal,
// or the guard pushback hits an input the guard depends on).
std::optional<CompositeOp> seq_compose(const CompositeOp& op1, const CompositeOp& op2);

struct VpTransition {
    std::string src;
    CompositeOp op;
    std::string dst;
};

// Value-passing process: typed variables, an initial condition, control
// states and CO-labelled transitions. The control variable at_P is implicit
// in the state set.
struct VpProcess {
    std::map<std::string, VTypePtr> vars;
    VE init;
    std::set<std::string> states;
    std::string initial;
    std::vector<VpTransition> transitions;

    void validate() const;
};

// Restriction of p to the control states reachable from the initial one in
// the control graph (guards ignored). Compositions leave unreachable product
// states behind; the reduction rules never remove them.
VpProcess vp_reachable(const VpProcess& p);

enum class ReduceRule { R1, R2, R3 };

// Applies the selected reduction rules to a fixed point (or max_passes):
// R1 composes through removable intermediate states, R2 glues parallel
// transitions differing only in their guards, R3 drops assignments to
// inessential variables.
VpProcess reduce(const VpProcess& p, const std::set<ReduceRule>& rules, int max_passes = 100);

// Expands the process over its finite domains into a plain LTS whose states
// are the evaluations (control state included) plus a fresh initial state
// fanning out over the initial-condition-satisfying evaluations.
Lts concretize(const VpProcess& p, std::size_t max_size = 200000);

// Parallel composition: product control states, interleavings, and one merged
// internal CO per In/Out pair on the same channel. Clashing variables of p2
// are renamed automatically.
VpProcess vp_parallel(const VpProcess& p1, const VpProcess& p2);

VpProcess vp_prefix(const Operator& op, const VpProcess& p);
VpProcess vp_choice(const VpProcess& p1, const VpProcess& p2);
VpProcess vp_restrict(const VpProcess& p, const std::set<std::string>& names);
VpProcess vp_rename(const VpProcess& p, const std::map<std::string, std::string>& f);

struct InvariantResult {
    bool ok = true;
    std::string witness;  // first violating (state, evaluation, CO) when !ok
};

// Brute-force check that inv is implied by the initial condition and
// preserved by every CO (inputs quantified over the message domain).
InvariantResult invariant_holds(const VpProcess& p, const VE& inv);

// ---------------------------------------------------------------------------
// Observational-equivalence certificates
// ---------------------------------------------------------------------------

// A composite transition of the answering process: a path given by
// transition indices whose COs compose sequentially (empty = stay put).
using CompositeTransition = std::vector<std::size_t>;

struct MuCertificate {
    std::map<std::pair<std::string, std::string>, VE> mu;  // default: bottom
    VE inv1, inv2;  // invariants used to strengthen all checks; default: top
    // Explicit answer sets: (moving side 1|2, state of that side, state of
    // the other side, moving transition index) -> CTs of the other side.
    std::map<std::tuple<int, std::string, std::string, std::size_t>,
             std::vector<CompositeTransition>>
        matches;
    int ct_search_len = 2;        // path length bound for auto-derived CTs
    bool check_invariants = true; // re-verify inv1/inv2 before use
};

struct CertResult {
    bool ok = false;
    std::string failed;  // description of the first failed obligation
};

// Checks the certificate's side conditions by brute force over the declared
// finite domains; acceptance certifies that the two processes are
// observationally equivalent.
CertResult verify_mu_certificate(const VpProcess& p1, const VpProcess& p2,
                                 const MuCertificate& cert);

// ---------------------------------------------------------------------------
// Petri nets
// ---------------------------------------------------------------------------

struct PetriNet {
    std::set<std::string> places;
    struct Tr {
        std::set<std::string> in;
        std::set<std::string> out;
    };
    std::vector<Tr> transitions;
    std::map<std::string, int> marking0;
};

// Single-control-state process with one counter variable per place (capped
// at cap) and one self-loop CO per net transition.
VpProcess petri_to_process(const PetriNet& net, int cap = 3);

// ---------------------------------------------------------------------------
// Flowcharts
// ---------------------------------------------------------------------------

struct Flowchart {
    struct Node {
        enum class Kind { Start, Assign, Cond, Send, Receive, Choice, Join, Halt };
        Kind kind = Kind::Halt;
        Operator op;  // Assign / Send / Receive payload
        VE cond;      // Cond payload
    };
    struct Edge {
        std::string id;
        std::string from;
        std::string to;
        int sign = 0;  // +1 / -1 for conditional out-edges, 0 otherwise
    };
    std::map<std::string, Node> nodes;
    std::vector<Edge> edges;
    std::map<std::string, VTypePtr> vars;
    VE init;
};

// Edge points become states; node traversals become single-operator
// transitions; choice/join points are merged away; the initial state is the
// point the start edge ends up at.
VpProcess flowchart_to_process(const Flowchart& fc);

}  // namespace ccsv
