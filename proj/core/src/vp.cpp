#include "ccsv/vp.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

namespace ccsv {

// ---------------------------------------------------------------------------
// Types and values
// ---------------------------------------------------------------------------

VTypePtr VType::int_range(long lo, long hi) {
    if (lo > hi) throw Error("IntRange: lo must not exceed hi");
    VType t;
    t.kind = Kind::IntRange;
    t.lo = lo;
    t.hi = hi;
    return std::make_shared<VType>(t);
}
VTypePtr VType::enumeration(std::vector<std::string> symbols) {
    if (symbols.empty()) throw Error("Enum: symbol list must be non-empty");
    VType t;
    t.kind = Kind::Enum;
    t.symbols = std::move(symbols);
    return std::make_shared<VType>(t);
}
VTypePtr VType::boolean() {
    VType t;
    t.kind = Kind::Bool;
    return std::make_shared<VType>(t);
}
VTypePtr VType::list(VTypePtr elem, int maxlen) {
    if (maxlen < 0) throw Error("List: maxlen must be non-negative");
    VType t;
    t.kind = Kind::List;
    t.elem = std::move(elem);
    t.maxlen = maxlen;
    return std::make_shared<VType>(t);
}

bool VType::operator==(const VType& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::IntRange: return lo == other.lo && hi == other.hi;
        case Kind::Enum: return symbols == other.symbols;
        case Kind::Bool: return true;
        case Kind::List: return maxlen == other.maxlen && *elem == *other.elem;
    }
    return false;
}

Value Value::of_int(long v) {
    Value x;
    x.kind = Kind::Int;
    x.i = v;
    return x;
}
Value Value::of_bool(bool v) {
    Value x;
    x.kind = Kind::Bool;
    x.b = v;
    return x;
}
Value Value::of_sym(std::string s) {
    Value x;
    x.kind = Kind::Sym;
    x.sym = std::move(s);
    return x;
}
Value Value::of_list(std::vector<Value> items) {
    Value x;
    x.kind = Kind::List;
    x.items = std::move(items);
    return x;
}

std::string render(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Int: return std::to_string(v.i);
        case Value::Kind::Bool: return v.b ? "true" : "false";
        case Value::Kind::Sym: return v.sym;
        case Value::Kind::List: {
            std::string s = "[";
            for (std::size_t i = 0; i < v.items.size(); ++i) {
                if (i) s += ",";
                s += render(v.items[i]);
            }
            return s + "]";
        }
    }
    return "?";
}

Value least_value(const VType& t) {
    switch (t.kind) {
        case VType::Kind::IntRange: return Value::of_int(t.lo);
        case VType::Kind::Enum: return Value::of_sym(t.symbols.front());
        case VType::Kind::Bool: return Value::of_bool(false);
        case VType::Kind::List: return Value::of_list({});
    }
    return Value::of_int(0);
}

std::vector<Value> enumerate_domain(const VType& t) {
    std::vector<Value> out;
    switch (t.kind) {
        case VType::Kind::IntRange:
            for (long v = t.lo; v <= t.hi; ++v) out.push_back(Value::of_int(v));
            break;
        case VType::Kind::Enum:
            for (const auto& s : t.symbols) out.push_back(Value::of_sym(s));
            break;
        case VType::Kind::Bool:
            out.push_back(Value::of_bool(false));
            out.push_back(Value::of_bool(true));
            break;
        case VType::Kind::List: {
            std::vector<Value> elems = enumerate_domain(*t.elem);
            std::vector<std::vector<Value>> level{{}};
            out.push_back(Value::of_list({}));
            for (int len = 1; len <= t.maxlen; ++len) {
                std::vector<std::vector<Value>> next;
                for (const auto& l : level)
                    for (const auto& e : elems) {
                        auto l2 = l;
                        l2.push_back(e);
                        out.push_back(Value::of_list(l2));
                        next.push_back(std::move(l2));
                    }
                level = std::move(next);
            }
            break;
        }
    }
    return out;
}

std::size_t domain_size(const VType& t) {
    switch (t.kind) {
        case VType::Kind::IntRange: return static_cast<std::size_t>(t.hi - t.lo + 1);
        case VType::Kind::Enum: return t.symbols.size();
        case VType::Kind::Bool: return 2;
        case VType::Kind::List: {
            std::size_t e = domain_size(*t.elem);
            std::size_t total = 0, pw = 1;
            for (int len = 0; len <= t.maxlen; ++len) {
                total += pw;
                if (total > 100000000) return 100000000;  // saturate
                pw *= e;
            }
            return total;
        }
    }
    return 1;
}

bool value_in_domain(const Value& v, const VType& t) {
    switch (t.kind) {
        case VType::Kind::IntRange:
            return v.kind == Value::Kind::Int && v.i >= t.lo && v.i <= t.hi;
        case VType::Kind::Enum:
            return v.kind == Value::Kind::Sym &&
                   std::find(t.symbols.begin(), t.symbols.end(), v.sym) != t.symbols.end();
        case VType::Kind::Bool: return v.kind == Value::Kind::Bool;
        case VType::Kind::List:
            if (v.kind != Value::Kind::List) return false;
            if (static_cast<int>(v.items.size()) > t.maxlen) return false;
            for (const auto& e : v.items)
                if (!value_in_domain(e, *t.elem)) return false;
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

namespace {
VE mk(VExpr e) { return std::make_shared<VExpr>(std::move(e)); }
}  // namespace

VE ve_const(Value v) {
    VExpr e;
    e.kind = VExprKind::Const;
    e.cval = std::move(v);
    return mk(std::move(e));
}
VE ve_int(long v) { return ve_const(Value::of_int(v)); }
VE ve_bool(bool v) { return ve_const(Value::of_bool(v)); }
VE ve_sym(std::string s) { return ve_const(Value::of_sym(std::move(s))); }
VE ve_top() { return ve_bool(true); }
VE ve_bottom() { return ve_bool(false); }
VE ve_var(std::string name) {
    VExpr e;
    e.kind = VExprKind::Var;
    e.name = std::move(name);
    return mk(std::move(e));
}
VE ve_bin(VExprKind kind, VE a, VE b) {
    VExpr e;
    e.kind = kind;
    e.args = {std::move(a), std::move(b)};
    return mk(std::move(e));
}
VE ve_mod(VExprKind kind, VE a, VE b, long n) {
    if (n <= 0) throw Error("modular arithmetic requires a positive modulus");
    VExpr e;
    e.kind = kind;
    e.modn = n;
    e.args = {std::move(a), std::move(b)};
    return mk(std::move(e));
}
VE ve_not(VE a) {
    VExpr e;
    e.kind = VExprKind::Not;
    e.args = {std::move(a)};
    return mk(std::move(e));
}
VE ve_un(VExprKind kind, VE a) {
    VExpr e;
    e.kind = kind;
    e.args = {std::move(a)};
    return mk(std::move(e));
}
VE ve_index(VE list, VE i) {
    VExpr e;
    e.kind = VExprKind::Index;
    e.args = {std::move(list), std::move(i)};
    return mk(std::move(e));
}
VE ve_setindex(VE list, VE i, VE v) {
    VExpr e;
    e.kind = VExprKind::SetIndex;
    e.args = {std::move(list), std::move(i), std::move(v)};
    return mk(std::move(e));
}
VE ve_between(VE a, VE b, VE c) {
    VExpr e;
    e.kind = VExprKind::Between;
    e.args = {std::move(a), std::move(b), std::move(c)};
    return mk(std::move(e));
}
VE ve_frame(std::string tag, std::vector<VE> args) {
    VExpr e;
    e.kind = VExprKind::Frame;
    e.name = std::move(tag);
    e.args = std::move(args);
    return mk(std::move(e));
}
VE ve_part(VE frame, int index) {
    VExpr e;
    e.kind = VExprKind::Part;
    e.index = index;
    e.args = {std::move(frame)};
    return mk(std::move(e));
}

namespace {

long as_int(const Value& v, const char* where) {
    if (v.kind != Value::Kind::Int) throw TypeCheckError(std::string(where) + ": integer expected");
    return v.i;
}
bool as_bool(const Value& v, const char* where) {
    if (v.kind != Value::Kind::Bool) throw TypeCheckError(std::string(where) + ": boolean expected");
    return v.b;
}
const std::vector<Value>& as_list(const Value& v, const char* where) {
    if (v.kind != Value::Kind::List) throw TypeCheckError(std::string(where) + ": list expected");
    return v.items;
}

// Parse a rendered scalar back into a Value (used by frame projection).
Value parse_scalar(const std::string& s) {
    if (s == "true") return Value::of_bool(true);
    if (s == "false") return Value::of_bool(false);
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                       (s[0] == '-' && s.size() > 1)))
        return Value::of_int(std::stol(s));
    return Value::of_sym(s);
}

}  // namespace

Value eval_expr(const VE& e, const Evaluation& sigma) {
    switch (e->kind) {
        case VExprKind::Const: return e->cval;
        case VExprKind::Var: {
            auto it = sigma.find(e->name);
            if (it == sigma.end())
                throw TypeCheckError("unbound variable '" + e->name + "'");
            return it->second;
        }
        case VExprKind::Add:
            return Value::of_int(as_int(eval_expr(e->args[0], sigma), "+") +
                                 as_int(eval_expr(e->args[1], sigma), "+"));
        case VExprKind::Sub:
            return Value::of_int(as_int(eval_expr(e->args[0], sigma), "-") -
                                 as_int(eval_expr(e->args[1], sigma), "-"));
        case VExprKind::Mul:
            return Value::of_int(as_int(eval_expr(e->args[0], sigma), "*") *
                                 as_int(eval_expr(e->args[1], sigma), "*"));
        case VExprKind::AddMod: {
            long a = as_int(eval_expr(e->args[0], sigma), "+%");
            long b = as_int(eval_expr(e->args[1], sigma), "+%");
            return Value::of_int((((a + b) % e->modn) + e->modn) % e->modn);
        }
        case VExprKind::SubMod: {
            long a = as_int(eval_expr(e->args[0], sigma), "-%");
            long b = as_int(eval_expr(e->args[1], sigma), "-%");
            return Value::of_int((((a - b) % e->modn) + e->modn) % e->modn);
        }
        case VExprKind::Eq:
            return Value::of_bool(eval_expr(e->args[0], sigma) == eval_expr(e->args[1], sigma));
        case VExprKind::Ne:
            return Value::of_bool(eval_expr(e->args[0], sigma) != eval_expr(e->args[1], sigma));
        case VExprKind::Lt:
            return Value::of_bool(as_int(eval_expr(e->args[0], sigma), "<") <
                                  as_int(eval_expr(e->args[1], sigma), "<"));
        case VExprKind::Le:
            return Value::of_bool(as_int(eval_expr(e->args[0], sigma), "<=") <=
                                  as_int(eval_expr(e->args[1], sigma), "<="));
        case VExprKind::Gt:
            return Value::of_bool(as_int(eval_expr(e->args[0], sigma), ">") >
                                  as_int(eval_expr(e->args[1], sigma), ">"));
        case VExprKind::Ge:
            return Value::of_bool(as_int(eval_expr(e->args[0], sigma), ">=") >=
                                  as_int(eval_expr(e->args[1], sigma), ">="));
        case VExprKind::And:
            return Value::of_bool(as_bool(eval_expr(e->args[0], sigma), "&") &&
                                  as_bool(eval_expr(e->args[1], sigma), "&"));
        case VExprKind::Or:
            return Value::of_bool(as_bool(eval_expr(e->args[0], sigma), "|") ||
                                  as_bool(eval_expr(e->args[1], sigma), "|"));
        case VExprKind::Not:
            return Value::of_bool(!as_bool(eval_expr(e->args[0], sigma), "!"));
        case VExprKind::Implies:
            return Value::of_bool(!as_bool(eval_expr(e->args[0], sigma), "=>") ||
                                  as_bool(eval_expr(e->args[1], sigma), "=>"));
        case VExprKind::Head: {
            Value lv = eval_expr(e->args[0], sigma);
            const auto& l = as_list(lv, "head");
            if (l.empty()) return Value::of_int(0);  // placeholder least element
            return l.front();
        }
        case VExprKind::Tail: {
            auto l = as_list(eval_expr(e->args[0], sigma), "tail");
            if (l.empty()) return Value::of_list({});
            return Value::of_list(std::vector<Value>(l.begin() + 1, l.end()));
        }
        case VExprKind::Singleton:
            return Value::of_list({eval_expr(e->args[0], sigma)});
        case VExprKind::Concat: {
            auto a = as_list(eval_expr(e->args[0], sigma), "++");
            Value bv = eval_expr(e->args[1], sigma);
            const auto& b = as_list(bv, "++");
            a.insert(a.end(), b.begin(), b.end());
            return Value::of_list(std::move(a));
        }
        case VExprKind::Length:
            return Value::of_int(
                static_cast<long>(as_list(eval_expr(e->args[0], sigma), "len").size()));
        case VExprKind::Index: {
            Value lv = eval_expr(e->args[0], sigma);
            const auto& l = as_list(lv, "idx");
            long i = as_int(eval_expr(e->args[1], sigma), "idx");
            if (i < 0 || i >= static_cast<long>(l.size())) return Value::of_int(0);
            return l[static_cast<std::size_t>(i)];
        }
        case VExprKind::SetIndex: {
            auto l = as_list(eval_expr(e->args[0], sigma), "setidx");
            long i = as_int(eval_expr(e->args[1], sigma), "setidx");
            Value v = eval_expr(e->args[2], sigma);
            if (i >= 0 && i < static_cast<long>(l.size())) l[static_cast<std::size_t>(i)] = v;
            return Value::of_list(std::move(l));
        }
        case VExprKind::MaxL: {
            Value lv = eval_expr(e->args[0], sigma);
            const auto& l = as_list(lv, "maxl");
            long best = 0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                long v = as_int(l[i], "maxl");
                if (i == 0 || v > best) best = v;
            }
            return Value::of_int(best);
        }
        case VExprKind::MinL: {
            Value lv = eval_expr(e->args[0], sigma);
            const auto& l = as_list(lv, "minl");
            long best = 0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                long v = as_int(l[i], "minl");
                if (i == 0 || v < best) best = v;
            }
            return Value::of_int(best);
        }
        case VExprKind::RemoveOne: {
            auto l = as_list(eval_expr(e->args[0], sigma), "removeone");
            Value v = eval_expr(e->args[1], sigma);
            auto it = std::find(l.begin(), l.end(), v);
            if (it != l.end()) l.erase(it);
            return Value::of_list(std::move(l));
        }
        case VExprKind::Between: {
            long a = as_int(eval_expr(e->args[0], sigma), "between");
            long b = as_int(eval_expr(e->args[1], sigma), "between");
            long c = as_int(eval_expr(e->args[2], sigma), "between");
            return Value::of_bool((a <= b && b < c) || (c < a && a <= b) || (b < c && c < a));
        }
        case VExprKind::Frame: {
            std::string s = e->name + "(";
            for (std::size_t i = 0; i < e->args.size(); ++i) {
                if (i) s += ",";
                s += render(eval_expr(e->args[i], sigma));
            }
            return Value::of_sym(s + ")");
        }
        case VExprKind::Part: {
            Value f = eval_expr(e->args[0], sigma);
            if (f.kind != Value::Kind::Sym) throw TypeCheckError("part: frame symbol expected");
            auto open = f.sym.find('(');
            if (open == std::string::npos || f.sym.back() != ')')
                return Value::of_sym("*");  // distorted or atypical frame
            std::string body = f.sym.substr(open + 1, f.sym.size() - open - 2);
            std::vector<std::string> parts;
            std::string cur;
            int depth = 0;
            for (char c : body) {
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ',' && depth == 0) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            parts.push_back(cur);
            if (e->index < 0 || e->index >= static_cast<int>(parts.size()))
                throw TypeCheckError("part: component index out of range");
            return parse_scalar(parts[static_cast<std::size_t>(e->index)]);
        }
    }
    throw TypeCheckError("eval: unknown expression kind");
}

bool eval_bool(const VE& e, const Evaluation& sigma) {
    return as_bool(eval_expr(e, sigma), "formula");
}

VE subst(const VE& e, const std::string& var, const VE& replacement) {
    if (e->kind == VExprKind::Var) return e->name == var ? replacement : e;
    if (e->args.empty()) return e;
    VExpr copy = *e;
    bool changed = false;
    for (auto& a : copy.args) {
        VE next = subst(a, var, replacement);
        if (next != a) changed = true;
        a = next;
    }
    return changed ? mk(std::move(copy)) : e;
}

void free_vars(const VE& e, std::set<std::string>& out) {
    if (e->kind == VExprKind::Var) out.insert(e->name);
    for (const auto& a : e->args) free_vars(a, out);
}

std::string render(const VE& e) {
    auto bin = [&](const char* op) {
        return "(" + render(e->args[0]) + " " + op + " " + render(e->args[1]) + ")";
    };
    switch (e->kind) {
        case VExprKind::Const: return render(e->cval);
        case VExprKind::Var: return e->name;
        case VExprKind::Add: return bin("+");
        case VExprKind::Sub: return bin("-");
        case VExprKind::Mul: return bin("*");
        case VExprKind::AddMod:
            return "addmod(" + render(e->args[0]) + "," + render(e->args[1]) + "," +
                   std::to_string(e->modn) + ")";
        case VExprKind::SubMod:
            return "submod(" + render(e->args[0]) + "," + render(e->args[1]) + "," +
                   std::to_string(e->modn) + ")";
        case VExprKind::Eq: return bin("=");
        case VExprKind::Ne: return bin("!=");
        case VExprKind::Lt: return bin("<");
        case VExprKind::Le: return bin("<=");
        case VExprKind::Gt: return bin(">");
        case VExprKind::Ge: return bin(">=");
        case VExprKind::And: return bin("&");
        case VExprKind::Or: return bin("|");
        case VExprKind::Not: return "!" + render(e->args[0]);
        case VExprKind::Implies: return bin("=>");
        case VExprKind::Head: return "head(" + render(e->args[0]) + ")";
        case VExprKind::Tail: return "tail(" + render(e->args[0]) + ")";
        case VExprKind::Singleton: return "[" + render(e->args[0]) + "]";
        case VExprKind::Concat: return bin("++");
        case VExprKind::Length: return "len(" + render(e->args[0]) + ")";
        case VExprKind::Index:
            return "idx(" + render(e->args[0]) + "," + render(e->args[1]) + ")";
        case VExprKind::SetIndex:
            return "setidx(" + render(e->args[0]) + "," + render(e->args[1]) + "," +
                   render(e->args[2]) + ")";
        case VExprKind::MaxL: return "maxl(" + render(e->args[0]) + ")";
        case VExprKind::MinL: return "minl(" + render(e->args[0]) + ")";
        case VExprKind::RemoveOne:
            return "removeone(" + render(e->args[0]) + "," + render(e->args[1]) + ")";
        case VExprKind::Between:
            return "between(" + render(e->args[0]) + "," + render(e->args[1]) + "," +
                   render(e->args[2]) + ")";
        case VExprKind::Frame: {
            std::string s = "frame(" + e->name;
            for (const auto& a : e->args) s += "," + render(a);
            return s + ")";
        }
        case VExprKind::Part:
            return "part(" + render(e->args[0]) + "," + std::to_string(e->index) + ")";
    }
    return "?";
}

VE simplify(const VE& e) {
    if (e->args.empty()) return e;
    VExpr copy = *e;
    for (auto& a : copy.args) a = simplify(a);

    auto is_true = [](const VE& x) {
        return x->kind == VExprKind::Const && x->cval == Value::of_bool(true);
    };
    auto is_false = [](const VE& x) {
        return x->kind == VExprKind::Const && x->cval == Value::of_bool(false);
    };

    switch (copy.kind) {
        case VExprKind::And:
            if (is_true(copy.args[0])) return copy.args[1];
            if (is_true(copy.args[1])) return copy.args[0];
            if (is_false(copy.args[0]) || is_false(copy.args[1])) return ve_bottom();
            break;
        case VExprKind::Or:
            if (is_false(copy.args[0])) return copy.args[1];
            if (is_false(copy.args[1])) return copy.args[0];
            if (is_true(copy.args[0]) || is_true(copy.args[1])) return ve_top();
            break;
        case VExprKind::Not:
            if (is_true(copy.args[0])) return ve_bottom();
            if (is_false(copy.args[0])) return ve_top();
            break;
        default: break;
    }
    // Constant-fold fully constant subtrees.
    bool all_const = true;
    for (const auto& a : copy.args)
        if (a->kind != VExprKind::Const) all_const = false;
    if (all_const && copy.kind != VExprKind::Const) {
        try {
            return ve_const(eval_expr(mk(VExpr(copy)), {}));
        } catch (const Error&) {
        }
    }
    return mk(std::move(copy));
}

// ---------------------------------------------------------------------------
// Operators and composite operators
// ---------------------------------------------------------------------------

Operator Operator::in(std::string chan, std::string var) {
    Operator op;
    op.kind = Kind::In;
    op.chan = std::move(chan);
    op.var = std::move(var);
    return op;
}
Operator Operator::out(std::string chan, VE expr) {
    Operator op;
    op.kind = Kind::Out;
    op.chan = std::move(chan);
    op.expr = std::move(expr);
    return op;
}
Operator Operator::assign(std::string var, VE expr) {
    Operator op;
    op.kind = Kind::Assign;
    op.var = std::move(var);
    op.expr = std::move(expr);
    return op;
}
Operator Operator::guard(VE cond) {
    Operator op;
    op.kind = Kind::Guard;
    op.expr = std::move(cond);
    return op;
}
Operator Operator::signal_in(std::string chan) { return in(std::move(chan), ""); }
Operator Operator::signal_out(std::string chan) { return out(std::move(chan), nullptr); }

std::string render(const Operator& op) {
    switch (op.kind) {
        case Operator::Kind::In: return op.chan + "?" + op.var;
        case Operator::Kind::Out:
            return op.expr ? op.chan + "!" + render(op.expr) : op.chan + "!";
        case Operator::Kind::Assign: return op.var + " := " + render(op.expr);
        case Operator::Kind::Guard: return "<" + render(op.expr) + ">";
    }
    return "?";
}

void CompositeOp::validate() const {
    if (ops.empty()) throw Error("composite operator must be non-empty");
    if (ops.front().kind != Operator::Kind::Guard)
        throw Error("composite operator must start with a guard");
    int io = 0;
    for (std::size_t i = 1; i < ops.size(); ++i) {
        if (ops[i].kind == Operator::Kind::Guard)
            throw Error("composite operator may contain only the leading guard");
        if (ops[i].kind == Operator::Kind::In || ops[i].kind == Operator::Kind::Out) ++io;
    }
    if (io > 1) throw Error("composite operator may contain at most one input/output");
}

std::optional<std::size_t> CompositeOp::io_index() const {
    for (std::size_t i = 1; i < ops.size(); ++i)
        if (ops[i].kind == Operator::Kind::In || ops[i].kind == Operator::Kind::Out) return i;
    return std::nullopt;
}

std::string render(const CompositeOp& co) {
    std::string s;
    for (std::size_t i = 0; i < co.ops.size(); ++i) {
        if (i) s += "; ";
        s += render(co.ops[i]);
    }
    return s;
}

CompositeOp co_of(const Operator& op) {
    CompositeOp co;
    if (op.kind == Operator::Kind::Guard) {
        co.ops = {op};
    } else {
        co.ops = {Operator::guard(ve_top()), op};
    }
    co.validate();
    return co;
}

CompositeOp co_of(std::vector<Operator> ops) {
    CompositeOp co;
    if (ops.empty() || ops.front().kind != Operator::Kind::Guard)
        ops.insert(ops.begin(), Operator::guard(ve_top()));
    co.ops = std::move(ops);
    co.validate();
    return co;
}

namespace {

// Push a guard condition leftwards through the tail of an accumulated CO,
// substituting through assignments; fails if it crosses an input binding a
// variable the condition depends on.
bool push_guard(std::vector<Operator>& ops, VE cond) {
    for (std::size_t i = ops.size(); i-- > 1;) {
        const Operator& op = ops[i];
        switch (op.kind) {
            case Operator::Kind::Assign: cond = subst(cond, op.var, op.expr); break;
            case Operator::Kind::Out: break;
            case Operator::Kind::In: {
                std::set<std::string> fv;
                free_vars(cond, fv);
                if (fv.count(op.var)) return false;
                break;
            }
            case Operator::Kind::Guard: return false;  // unreachable by shape
        }
    }
    ops[0].expr = simplify(ve_bin(VExprKind::And, ops[0].expr, cond));
    return true;
}

}  // namespace

std::optional<CompositeOp> seq_compose(const CompositeOp& op1, const CompositeOp& op2) {
    op1.validate();
    op2.validate();
    if (!op1.internal() && !op2.internal()) return std::nullopt;

    std::vector<Operator> acc = op1.ops;
    bool has_io = op1.io_index().has_value();
    for (std::size_t i = 0; i < op2.ops.size(); ++i) {
        const Operator& op = op2.ops[i];
        switch (op.kind) {
            case Operator::Kind::Guard:
                if (!push_guard(acc, op.expr)) return std::nullopt;
                break;
            case Operator::Kind::Assign: acc.push_back(op); break;
            case Operator::Kind::In:
            case Operator::Kind::Out:
                if (has_io) return std::nullopt;
                has_io = true;
                acc.push_back(op);
                break;
        }
    }
    CompositeOp result;
    result.ops = std::move(acc);
    result.validate();
    return result;
}

// ---------------------------------------------------------------------------
// Processes
// ---------------------------------------------------------------------------

void VpProcess::validate() const {
    if (!states.count(initial)) throw Error("vp: initial state not in state set");
    for (const auto& t : transitions) {
        if (!states.count(t.src) || !states.count(t.dst))
            throw Error("vp: transition endpoint not in state set");
        t.op.validate();
        std::set<std::string> fv;
        for (const auto& op : t.op.ops) {
            if (op.expr) free_vars(op.expr, fv);
            if (op.kind == Operator::Kind::Assign && op.var.empty())
                throw Error("vp: assignment without a target variable");
            if (op.kind == Operator::Kind::Out && !op.expr && op.chan.empty())
                throw Error("vp: output without a channel");
            if ((op.kind == Operator::Kind::In || op.kind == Operator::Kind::Assign) &&
                !op.var.empty())
                fv.insert(op.var);
        }
        for (const auto& v : fv)
            if (!vars.count(v)) throw Error("vp: undeclared variable '" + v + "'");
    }
    std::set<std::string> fv;
    free_vars(init, fv);
    for (const auto& v : fv)
        if (!vars.count(v)) throw Error("vp: undeclared variable '" + v + "' in init");
}

// ---------------------------------------------------------------------------
// Reduction rules
// ---------------------------------------------------------------------------

namespace {

bool ops_tail_equal(const CompositeOp& a, const CompositeOp& b) {
    if (a.ops.size() != b.ops.size()) return false;
    for (std::size_t i = 1; i < a.ops.size(); ++i)
        if (render(a.ops[i]) != render(b.ops[i])) return false;
    return true;
}

bool apply_r1(VpProcess& p) {
    for (const auto& s : p.states) {
        if (s == p.initial) continue;
        std::vector<std::size_t> ins, outs;
        bool self_loop = false;
        for (std::size_t i = 0; i < p.transitions.size(); ++i) {
            const auto& t = p.transitions[i];
            if (t.src == s && t.dst == s) self_loop = true;
            if (t.dst == s) ins.push_back(i);
            if (t.src == s) outs.push_back(i);
        }
        if (self_loop || ins.empty() || outs.empty()) continue;

        std::vector<VpTransition> composed;
        bool all_defined = true;
        for (auto i : ins) {
            for (auto j : outs) {
                auto co = seq_compose(p.transitions[i].op, p.transitions[j].op);
                if (!co) {
                    all_defined = false;
                    break;
                }
                composed.push_back({p.transitions[i].src, *co, p.transitions[j].dst});
            }
            if (!all_defined) break;
        }
        if (!all_defined) continue;

        std::vector<VpTransition> next;
        for (const auto& t : p.transitions)
            if (t.src != s && t.dst != s) next.push_back(t);
        next.insert(next.end(), composed.begin(), composed.end());
        p.transitions = std::move(next);
        p.states.erase(s);
        return true;
    }
    return false;
}

bool apply_r2(VpProcess& p) {
    for (std::size_t i = 0; i < p.transitions.size(); ++i) {
        for (std::size_t j = i + 1; j < p.transitions.size(); ++j) {
            const auto& a = p.transitions[i];
            const auto& b = p.transitions[j];
            if (a.src != b.src || a.dst != b.dst) continue;
            if (!ops_tail_equal(a.op, b.op)) continue;
            VpTransition merged = a;
            merged.op.ops[0].expr =
                simplify(ve_bin(VExprKind::Or, a.op.cond(), b.op.cond()));
            p.transitions[i] = std::move(merged);
            p.transitions.erase(p.transitions.begin() + static_cast<long>(j));
            return true;
        }
    }
    return false;
}

bool apply_r3(VpProcess& p) {
    // Essential variables: those read by any guard or output, closed under
    // "read by an assignment to an essential variable".
    std::set<std::string> essential;
    for (const auto& t : p.transitions)
        for (const auto& op : t.op.ops)
            if ((op.kind == Operator::Kind::Guard || op.kind == Operator::Kind::Out) && op.expr)
                free_vars(op.expr, essential);
    for (;;) {
        std::size_t before = essential.size();
        for (const auto& t : p.transitions)
            for (const auto& op : t.op.ops)
                if (op.kind == Operator::Kind::Assign && essential.count(op.var))
                    free_vars(op.expr, essential);
        if (essential.size() == before) break;
    }

    bool changed = false;
    for (auto& t : p.transitions) {
        std::vector<Operator> kept;
        for (const auto& op : t.op.ops) {
            if (op.kind == Operator::Kind::Assign && !essential.count(op.var)) {
                changed = true;
                continue;
            }
            kept.push_back(op);
        }
        t.op.ops = std::move(kept);
    }

    if (changed) {
        // Drop variables that no longer occur anywhere (and are free of the
        // initial condition): they only inflate concretization.
        std::set<std::string> used;
        free_vars(p.init, used);
        for (const auto& t : p.transitions)
            for (const auto& op : t.op.ops) {
                if (op.expr) free_vars(op.expr, used);
                if ((op.kind == Operator::Kind::In || op.kind == Operator::Kind::Assign) &&
                    !op.var.empty())
                    used.insert(op.var);
            }
        for (auto it = p.vars.begin(); it != p.vars.end();)
            it = used.count(it->first) ? std::next(it) : p.vars.erase(it);
    }
    return changed;
}

}  // namespace

VpProcess vp_reachable(const VpProcess& p) {
    std::set<std::string> seen{p.initial};
    std::vector<std::string> queue{p.initial};
    while (!queue.empty()) {
        std::string cur = queue.back();
        queue.pop_back();
        for (const auto& t : p.transitions)
            if (t.src == cur && seen.insert(t.dst).second) queue.push_back(t.dst);
    }
    VpProcess out;
    out.vars = p.vars;
    out.init = p.init;
    out.initial = p.initial;
    out.states = seen;
    for (const auto& t : p.transitions)
        if (seen.count(t.src)) out.transitions.push_back(t);
    return out;
}

VpProcess reduce(const VpProcess& p, const std::set<ReduceRule>& rules, int max_passes) {
    VpProcess cur = p;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        if (rules.count(ReduceRule::R1))
            while (apply_r1(cur)) changed = true;
        if (rules.count(ReduceRule::R2))
            while (apply_r2(cur)) changed = true;
        if (rules.count(ReduceRule::R3))
            if (apply_r3(cur)) changed = true;
        if (!changed) break;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Concretization
// ---------------------------------------------------------------------------

namespace {

struct DomainIter {
    std::vector<std::pair<std::string, std::vector<Value>>> axes;

    explicit DomainIter(const std::map<std::string, VTypePtr>& vars) {
        for (const auto& [n, t] : vars) axes.push_back({n, enumerate_domain(*t)});
    }
    std::size_t count() const {
        std::size_t c = 1;
        for (const auto& [n, d] : axes) {
            if (d.empty()) return 0;
            if (c > 1000000000 / d.size()) return 1000000001;  // saturate
            c *= d.size();
        }
        return c;
    }
    template <class F>
    void for_each(F&& f) const {
        Evaluation sigma;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == axes.size()) {
                f(sigma);
                return;
            }
            for (const auto& v : axes[k].second) {
                sigma[axes[k].first] = v;
                rec(k + 1);
            }
        };
        rec(0);
    }
};

std::string sigma_id(const std::string& control, const Evaluation& sigma) {
    std::string s = control + "|";
    bool first = true;
    for (const auto& [n, v] : sigma) {
        if (!first) s += ",";
        s += n + "=" + render(v);
        first = false;
    }
    return s;
}

// Run the assignment operators of co in positions [from, to) on sigma,
// checking written values against the declared domains. Returns false when a
// written value escapes its domain (the transition is then skipped).
bool run_assigns(const CompositeOp& co, std::size_t from, std::size_t to, Evaluation& sigma,
                 const std::map<std::string, VTypePtr>& vars) {
    for (std::size_t i = from; i < to; ++i) {
        const Operator& op = co.ops[i];
        if (op.kind != Operator::Kind::Assign) continue;
        Value v = eval_expr(op.expr, sigma);
        auto it = vars.find(op.var);
        if (it != vars.end() && !value_in_domain(v, *it->second)) return false;
        sigma[op.var] = v;
    }
    return true;
}

}  // namespace

Lts concretize(const VpProcess& p, std::size_t max_size) {
    p.validate();
    DomainIter dom(p.vars);
    std::size_t evals = dom.count();
    if (evals == 0) throw Error("concretize: empty variable domain");
    if (evals > max_size / std::max<std::size_t>(p.states.size(), 1))
        throw StateExplosionError("concretize: state space exceeds bound " +
                                  std::to_string(max_size));

    Lts result;
    const std::string init_id = "⟨init⟩";
    result.initial = init_id;
    result.states.insert(init_id);
    for (const auto& c : p.states)
        dom.for_each([&](const Evaluation& sigma) { result.states.insert(sigma_id(c, sigma)); });

    for (const auto& t : p.transitions) {
        std::size_t io = t.op.io_index().value_or(t.op.ops.size());
        dom.for_each([&](const Evaluation& sigma0) {
            if (!eval_bool(t.op.cond(), sigma0)) return;
            Evaluation pre = sigma0;
            if (!run_assigns(t.op, 1, io, pre, p.vars)) return;
            std::string src = sigma_id(t.src, sigma0);

            if (io == t.op.ops.size()) {  // internal
                Evaluation post = pre;
                result.add_transition(src, Action::tau(), sigma_id(t.dst, post));
                return;
            }
            const Operator& op = t.op.ops[io];
            if (op.is_signal()) {
                Evaluation post = pre;
                if (!run_assigns(t.op, io + 1, t.op.ops.size(), post, p.vars)) return;
                Action a = op.kind == Operator::Kind::Out ? Action::out(op.chan)
                                                          : Action::in(op.chan);
                result.add_transition(src, a, sigma_id(t.dst, post));
            } else if (op.kind == Operator::Kind::Out) {
                Value v = eval_expr(op.expr, pre);
                Evaluation post = pre;
                if (!run_assigns(t.op, io + 1, t.op.ops.size(), post, p.vars)) return;
                result.add_transition(src, Action::outv(op.chan, render(v)),
                                      sigma_id(t.dst, post));
            } else {  // In
                auto it = p.vars.find(op.var);
                if (it == p.vars.end()) throw Error("concretize: untyped input variable");
                for (const auto& v : enumerate_domain(*it->second)) {
                    Evaluation post = pre;
                    post[op.var] = v;
                    if (!run_assigns(t.op, io + 1, t.op.ops.size(), post, p.vars)) continue;
                    result.add_transition(src, Action::inv(op.chan, render(v)),
                                          sigma_id(t.dst, post));
                }
            }
        });
    }

    // Initial fan-out over the evaluations satisfying the initial condition.
    std::multimap<std::string, Transition> by_src;
    for (const auto& t : result.transitions) by_src.emplace(t.src, t);
    dom.for_each([&](const Evaluation& sigma) {
        if (!eval_bool(p.init, sigma)) return;
        auto [lo, hi] = by_src.equal_range(sigma_id(p.initial, sigma));
        for (auto it = lo; it != hi; ++it)
            result.add_transition(init_id, it->second.act, it->second.dst);
    });
    return result;
}

// ---------------------------------------------------------------------------
// Operations on vp processes
// ---------------------------------------------------------------------------

namespace {

std::string vp_pair_id(const std::string& a, const std::string& b) {
    return "⟨" + a + "," + b + "⟩";
}

Operator rename_op_vars(const Operator& op, const std::map<std::string, std::string>& rn) {
    Operator out = op;
    if ((op.kind == Operator::Kind::In || op.kind == Operator::Kind::Assign) &&
        rn.count(op.var))
        out.var = rn.at(op.var);
    if (op.expr) {
        VE e = op.expr;
        for (const auto& [from, to] : rn) e = subst(e, from, ve_var(to));
        out.expr = e;
    }
    return out;
}

VpProcess rename_vars(const VpProcess& p, const std::map<std::string, std::string>& rn) {
    if (rn.empty()) return p;
    VpProcess out = p;
    out.vars.clear();
    for (const auto& [n, t] : p.vars) out.vars[rn.count(n) ? rn.at(n) : n] = t;
    VE init = p.init;
    for (const auto& [from, to] : rn) init = subst(init, from, ve_var(to));
    out.init = init;
    for (auto& t : out.transitions)
        for (auto& op : t.op.ops) op = rename_op_vars(op, rn);
    return out;
}

// Renaming map making p2's variables disjoint from p1's.
std::map<std::string, std::string> disjoint_renaming(const VpProcess& p1, const VpProcess& p2) {
    std::map<std::string, std::string> rn;
    for (const auto& [n, t] : p2.vars) {
        if (!p1.vars.count(n)) continue;
        std::string fresh = n;
        do {
            fresh += "_2";
        } while (p1.vars.count(fresh) || p2.vars.count(fresh));
        rn[n] = fresh;
    }
    return rn;
}

}  // namespace

VpProcess vp_parallel(const VpProcess& p1, const VpProcess& p2raw) {
    VpProcess p2 = rename_vars(p2raw, disjoint_renaming(p1, p2raw));

    VpProcess out;
    out.vars = p1.vars;
    out.vars.insert(p2.vars.begin(), p2.vars.end());
    out.init = simplify(ve_bin(VExprKind::And, p1.init, p2.init));
    for (const auto& a : p1.states)
        for (const auto& b : p2.states) out.states.insert(vp_pair_id(a, b));
    out.initial = vp_pair_id(p1.initial, p2.initial);

    for (const auto& t : p1.transitions)
        for (const auto& b : p2.states)
            out.transitions.push_back({vp_pair_id(t.src, b), t.op, vp_pair_id(t.dst, b)});
    for (const auto& t : p2.transitions)
        for (const auto& a : p1.states)
            out.transitions.push_back({vp_pair_id(a, t.src), t.op, vp_pair_id(a, t.dst)});

    // Handshakes: splice an In CO and an Out CO on the same channel into one
    // internal CO (input prefix, output prefix, x := e, input suffix, output
    // suffix).
    auto splice = [&](const VpTransition& ti, const VpTransition& to, bool in_left) {
        std::size_t i = *ti.op.io_index();
        std::size_t j = *to.op.io_index();
        const Operator& inop = ti.op.ops[i];
        const Operator& outop = to.op.ops[j];
        if (inop.chan != outop.chan) return;
        if (inop.is_signal() != outop.is_signal()) return;  // no valued/signal mix
        std::vector<Operator> ops;
        ops.push_back(Operator::guard(
            simplify(ve_bin(VExprKind::And, ti.op.cond(), to.op.cond()))));
        for (std::size_t k = 1; k < i; ++k) ops.push_back(ti.op.ops[k]);
        for (std::size_t k = 1; k < j; ++k) ops.push_back(to.op.ops[k]);
        if (!inop.is_signal()) ops.push_back(Operator::assign(inop.var, outop.expr));
        for (std::size_t k = i + 1; k < ti.op.ops.size(); ++k) ops.push_back(ti.op.ops[k]);
        for (std::size_t k = j + 1; k < to.op.ops.size(); ++k) ops.push_back(to.op.ops[k]);
        CompositeOp co;
        co.ops = std::move(ops);
        co.validate();
        if (in_left)
            out.transitions.push_back(
                {vp_pair_id(ti.src, to.src), co, vp_pair_id(ti.dst, to.dst)});
        else
            out.transitions.push_back(
                {vp_pair_id(to.src, ti.src), co, vp_pair_id(to.dst, ti.dst)});
    };

    for (const auto& t1 : p1.transitions) {
        auto i1 = t1.op.io_index();
        if (!i1) continue;
        for (const auto& t2 : p2.transitions) {
            auto i2 = t2.op.io_index();
            if (!i2) continue;
            const auto& o1 = t1.op.ops[*i1];
            const auto& o2 = t2.op.ops[*i2];
            if (o1.kind == Operator::Kind::In && o2.kind == Operator::Kind::Out)
                splice(t1, t2, true);
            else if (o1.kind == Operator::Kind::Out && o2.kind == Operator::Kind::In)
                splice(t2, t1, false);
        }
    }
    return out;
}

VpProcess vp_prefix(const Operator& op, const VpProcess& p) {
    VpProcess out = p;
    std::string s0 = "p0";
    while (out.states.count(s0)) s0 += "'";
    out.states.insert(s0);
    out.transitions.insert(out.transitions.begin(), {s0, co_of(op), p.initial});
    out.initial = s0;
    return out;
}

VpProcess vp_choice(const VpProcess& p1, const VpProcess& p2raw) {
    VpProcess p2 = rename_vars(p2raw, disjoint_renaming(p1, p2raw));

    VpProcess out;
    out.vars = p1.vars;
    out.vars.insert(p2.vars.begin(), p2.vars.end());
    out.init = simplify(ve_bin(VExprKind::And, p1.init, p2.init));
    out.states = p1.states;

    std::map<std::string, std::string> rn;
    for (const auto& s : p2.states) {
        std::string id = s;
        while (out.states.count(id)) id += "'";
        out.states.insert(id);
        rn[s] = id;
    }
    out.transitions = p1.transitions;
    for (const auto& t : p2.transitions)
        out.transitions.push_back({rn[t.src], t.op, rn[t.dst]});

    std::string s0 = "c0";
    while (out.states.count(s0)) s0 += "'";
    out.states.insert(s0);
    out.initial = s0;
    for (const auto& t : p1.transitions)
        if (t.src == p1.initial) out.transitions.push_back({s0, t.op, t.dst});
    for (const auto& t : p2.transitions)
        if (t.src == p2.initial) out.transitions.push_back({s0, t.op, rn[t.dst]});
    return out;
}

VpProcess vp_restrict(const VpProcess& p, const std::set<std::string>& names) {
    VpProcess out = p;
    out.transitions.clear();
    for (const auto& t : p.transitions) {
        auto io = t.op.io_index();
        if (io && names.count(t.op.ops[*io].chan)) continue;
        out.transitions.push_back(t);
    }
    return out;
}

VpProcess vp_rename(const VpProcess& p, const std::map<std::string, std::string>& f) {
    VpProcess out = p;
    for (auto& t : out.transitions)
        for (auto& op : t.op.ops)
            if ((op.kind == Operator::Kind::In || op.kind == Operator::Kind::Out) &&
                f.count(op.chan))
                op.chan = f.at(op.chan);
    return out;
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

InvariantResult invariant_holds(const VpProcess& p, const VE& inv) {
    // Quantified input values use the target variable's own domain, so no
    // extra variable is needed here.
    DomainIter dom(p.vars);

    InvariantResult result;
    dom.for_each([&](const Evaluation& sigma) {
        if (!result.ok) return;
        if (eval_bool(p.init, sigma) && !eval_bool(inv, sigma)) {
            result.ok = false;
            result.witness = "initial condition at " + sigma_id(p.initial, sigma);
        }
    });
    if (!result.ok) return result;

    for (const auto& t : p.transitions) {
        std::size_t io = t.op.io_index().value_or(t.op.ops.size());
        dom.for_each([&](const Evaluation& sigma0) {
            if (!result.ok) return;
            if (!eval_bool(inv, sigma0) || !eval_bool(t.op.cond(), sigma0)) return;
            Evaluation pre = sigma0;
            if (!run_assigns(t.op, 1, io, pre, p.vars)) return;

            auto finish = [&](Evaluation post) {
                if (!run_assigns(t.op, io == t.op.ops.size() ? t.op.ops.size() : io + 1,
                                 t.op.ops.size(), post, p.vars))
                    return;
                if (!eval_bool(inv, post)) {
                    result.ok = false;
                    result.witness = "transition " + t.src + " -> " + t.dst + " [" +
                                     render(t.op) + "] from " + sigma_id(t.src, sigma0);
                }
            };

            if (io == t.op.ops.size()) {
                finish(pre);
            } else if (t.op.ops[io].kind == Operator::Kind::Out || t.op.ops[io].is_signal()) {
                finish(pre);
            } else {
                for (const auto& v : enumerate_domain(*p.vars.at(t.op.ops[io].var))) {
                    if (!result.ok) break;
                    Evaluation post = pre;
                    post[t.op.ops[io].var] = v;
                    finish(post);
                }
            }
        });
        if (!result.ok) break;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Observational-equivalence certificates
// ---------------------------------------------------------------------------

namespace {

// Result of running a composite operator (or a path of them) on an
// evaluation without domain checks: the updated evaluation, the value
// emitted by an output (if any) and whether an input was consumed.
struct RunOutcome {
    Evaluation sigma;
    std::optional<Value> emitted;
    bool consumed = false;
};

// Execute co on sigma with guards evaluated at their stage points. Returns
// nullopt when a guard fails. An input consumes *input (required present by
// the kind filter applied to candidates).
std::optional<RunOutcome> run_co(const CompositeOp& co, Evaluation sigma,
                                 const std::optional<Value>& input,
                                 std::optional<Value>& emitted, bool& consumed) {
    if (!eval_bool(co.cond(), sigma)) return std::nullopt;
    for (std::size_t i = 1; i < co.ops.size(); ++i) {
        const Operator& op = co.ops[i];
        switch (op.kind) {
            case Operator::Kind::Assign: sigma[op.var] = eval_expr(op.expr, sigma); break;
            case Operator::Kind::Out:
                emitted = op.expr ? eval_expr(op.expr, sigma) : Value::of_sym("⟨signal⟩");
                break;
            case Operator::Kind::In:
                if (op.var.empty()) {
                    consumed = true;
                    break;
                }
                if (!input) return std::nullopt;
                sigma[op.var] = *input;
                consumed = true;
                break;
            case Operator::Kind::Guard: break;
        }
    }
    RunOutcome out;
    out.sigma = std::move(sigma);
    return out;
}

enum class MoveKind { Internal, Input, Output };

MoveKind move_kind(const CompositeOp& co, std::string& chan) {
    auto io = co.io_index();
    if (!io) return MoveKind::Internal;
    chan = co.ops[*io].chan;
    return co.ops[*io].kind == Operator::Kind::In ? MoveKind::Input : MoveKind::Output;
}

// Execute a path of transitions starting at `state`; all guards must pass.
std::optional<RunOutcome> run_path(const VpProcess& p, const std::string& state,
                                   const CompositeTransition& path, Evaluation sigma,
                                   const std::optional<Value>& input, std::string& end_state) {
    std::optional<Value> emitted;
    bool consumed = false;
    std::string cur = state;
    for (std::size_t idx : path) {
        const VpTransition& t = p.transitions[idx];
        if (t.src != cur) return std::nullopt;
        auto step = run_co(t.op, std::move(sigma), input, emitted, consumed);
        if (!step) return std::nullopt;
        sigma = std::move(step->sigma);
        cur = t.dst;
    }
    end_state = cur;
    RunOutcome out;
    out.sigma = std::move(sigma);
    out.emitted = emitted;
    out.consumed = consumed;
    return out;
}

// Enumerate connected paths from `state` of length 0..max_len whose I/O
// content matches the mover's kind: internal movers need all-internal paths,
// input/output movers need exactly one matching operation on `chan`.
std::vector<CompositeTransition> enumerate_cts(const VpProcess& p, const std::string& state,
                                               MoveKind kind, const std::string& chan,
                                               int max_len) {
    std::vector<CompositeTransition> result;
    std::function<void(const std::string&, CompositeTransition&, bool)> rec =
        [&](const std::string& cur, CompositeTransition& path, bool have_io) {
            if (kind == MoveKind::Internal ? !have_io : have_io) result.push_back(path);
            if (static_cast<int>(path.size()) >= max_len) return;
            for (std::size_t i = 0; i < p.transitions.size(); ++i) {
                const VpTransition& t = p.transitions[i];
                if (t.src != cur) continue;
                std::string c;
                MoveKind k = move_kind(t.op, c);
                bool io_here = k != MoveKind::Internal;
                if (io_here && (have_io || kind == MoveKind::Internal || k != kind || c != chan))
                    continue;
                path.push_back(i);
                rec(t.dst, path, have_io || io_here);
                path.pop_back();
            }
        };
    CompositeTransition path;
    rec(state, path, false);
    return result;
}

bool path_kind_ok(const VpProcess& p, const std::string& state, const CompositeTransition& path,
                  MoveKind kind, const std::string& chan) {
    std::string cur = state;
    int io = 0;
    for (std::size_t idx : path) {
        if (idx >= p.transitions.size()) return false;
        const VpTransition& t = p.transitions[idx];
        if (t.src != cur) return false;
        std::string c;
        MoveKind k = move_kind(t.op, c);
        if (k != MoveKind::Internal) {
            if (kind == MoveKind::Internal || k != kind || c != chan) return false;
            ++io;
        }
        cur = t.dst;
    }
    return kind == MoveKind::Internal ? io == 0 : io == 1;
}

}  // namespace

CertResult verify_mu_certificate(const VpProcess& p1, const VpProcess& p2,
                                 const MuCertificate& cert) {
    p1.validate();
    p2.validate();
    for (const auto& [n, t] : p1.vars)
        if (p2.vars.count(n))
            throw VariableClashError("certificate: processes share variable '" + n + "'");

    VE inv1 = cert.inv1 ? cert.inv1 : ve_top();
    VE inv2 = cert.inv2 ? cert.inv2 : ve_top();
    auto mu_at = [&](const std::string& a, const std::string& b) -> VE {
        auto it = cert.mu.find({a, b});
        return it == cert.mu.end() ? ve_bottom() : it->second;
    };

    CertResult result;
    if (cert.check_invariants) {
        auto r1 = invariant_holds(p1, inv1);
        if (!r1.ok) {
            result.failed = "left invariant not preserved: " + r1.witness;
            return result;
        }
        auto r2 = invariant_holds(p2, inv2);
        if (!r2.ok) {
            result.failed = "right invariant not preserved: " + r2.witness;
            return result;
        }
    }

    std::map<std::string, VTypePtr> all_vars = p1.vars;
    all_vars.insert(p2.vars.begin(), p2.vars.end());
    DomainIter dom(all_vars);

    // Initial condition: joint initial evaluations lie in mu at the root.
    {
        VE root = mu_at(p1.initial, p2.initial);
        bool ok = true;
        std::string witness;
        dom.for_each([&](const Evaluation& sigma) {
            if (!ok) return;
            if (eval_bool(p1.init, sigma) && eval_bool(p2.init, sigma) &&
                !eval_bool(root, sigma)) {
                ok = false;
                witness = sigma_id("init", sigma);
            }
        });
        if (!ok) {
            result.failed = "initial evaluations escape mu at " + witness;
            return result;
        }
    }

    // Transfer conditions: every move of either side is answered by a
    // composite transition of the other with mu re-established (and emitted
    // values equal for outputs, all message values covered for inputs).
    auto check_side = [&](int side) -> bool {
        const VpProcess& mover = side == 1 ? p1 : p2;
        const VpProcess& other = side == 1 ? p2 : p1;
        auto mu_pair = [&](const std::string& ms, const std::string& os) {
            return side == 1 ? mu_at(ms, os) : mu_at(os, ms);
        };

        for (std::size_t ti = 0; ti < mover.transitions.size(); ++ti) {
            const VpTransition& t = mover.transitions[ti];
            std::string chan;
            MoveKind kind = move_kind(t.op, chan);
            std::vector<Value> messages{Value::of_int(0)};  // dummy for non-inputs
            if (kind == MoveKind::Input && !t.op.ops[*t.op.io_index()].var.empty())
                messages = enumerate_domain(*mover.vars.at(t.op.ops[*t.op.io_index()].var));

            for (const auto& os : other.states) {
                VE phi = mu_pair(t.src, os);

                // Candidate answers: explicit when given, else enumerated.
                std::vector<CompositeTransition> cands;
                bool explicit_set = false;
                auto mit = cert.matches.find({side, t.src, os, ti});
                if (mit != cert.matches.end()) {
                    explicit_set = true;
                    cands = mit->second;
                    for (const auto& ct : cands)
                        if (!path_kind_ok(other, os, ct, kind, chan))
                            throw MalformedCtError(
                                "certificate: answer path malformed or of the wrong kind at (" +
                                t.src + "," + os + ")");
                } else {
                    cands = enumerate_cts(other, os, kind, chan, cert.ct_search_len);
                }

                // A candidate is good when its diagram commutes at every
                // joint evaluation where both it and the mover are enabled.
                std::vector<bool> good(cands.size(), true);
                bool covered = true;
                std::string witness;

                dom.for_each([&](const Evaluation& sigma) {
                    if (!covered) return;
                    if (!eval_bool(phi, sigma) || !eval_bool(inv1, sigma) ||
                        !eval_bool(inv2, sigma))
                        return;
                    for (const auto& msg : messages) {
                        std::optional<Value> input =
                            kind == MoveKind::Input ? std::optional<Value>(msg) : std::nullopt;
                        std::string mend;
                        auto mrun = run_path(mover, t.src, {ti}, sigma, input, mend);
                        if (!mrun) continue;  // mover not enabled here

                        bool any = false;
                        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
                            std::string oend;
                            auto orun = run_path(other, os, cands[ci], sigma, input, oend);
                            if (!orun) continue;
                            bool correct = true;
                            if (kind == MoveKind::Output &&
                                !(mrun->emitted && orun->emitted &&
                                  *mrun->emitted == *orun->emitted))
                                correct = false;
                            if (correct) {
                                // Variables are disjoint: take the mover's
                                // updates for its own variables and the
                                // answer's updates for the other side's.
                                Evaluation post = mrun->sigma;
                                for (const auto& [k, v] : orun->sigma)
                                    if (other.vars.count(k)) post[k] = v;
                                if (!eval_bool(mu_pair(t.dst, oend), post)) correct = false;
                            }
                            if (!correct) {
                                good[ci] = false;
                                if (explicit_set) {
                                    covered = false;
                                    witness = "answer diagram fails at " + sigma_id(t.src, sigma);
                                    return;
                                }
                                continue;
                            }
                            if (good[ci]) any = true;
                        }
                        if (!any) {
                            covered = false;
                            witness = "no answer for transition " + std::to_string(ti) + " (" +
                                      t.src + " -> " + t.dst + ", [" + render(t.op) +
                                      "]) against state " + os + " at " +
                                      sigma_id(t.src, sigma);
                            return;
                        }
                    }
                });

                if (!covered) {
                    result.failed = (side == 1 ? "left" : "right") + std::string(" move: ") +
                                    witness;
                    return false;
                }

                // Second pass: a candidate invalidated late may have been the
                // only enabled answer earlier; re-check coverage with the
                // surviving candidates only.
                bool stable = true;
                dom.for_each([&](const Evaluation& sigma) {
                    if (!stable) return;
                    if (!eval_bool(phi, sigma) || !eval_bool(inv1, sigma) ||
                        !eval_bool(inv2, sigma))
                        return;
                    for (const auto& msg : messages) {
                        std::optional<Value> input =
                            kind == MoveKind::Input ? std::optional<Value>(msg) : std::nullopt;
                        std::string mend;
                        auto mrun = run_path(mover, t.src, {ti}, sigma, input, mend);
                        if (!mrun) continue;
                        bool any = false;
                        for (std::size_t ci = 0; ci < cands.size() && !any; ++ci) {
                            if (!good[ci]) continue;
                            std::string oend;
                            if (run_path(other, os, cands[ci], sigma, input, oend)) any = true;
                        }
                        if (!any) {
                            stable = false;
                            result.failed =
                                (side == 1 ? "left" : "right") +
                                std::string(" move: no consistently correct answer for "
                                            "transition ") +
                                std::to_string(ti) + " against state " + os + " at " +
                                sigma_id(t.src, sigma);
                            return;
                        }
                    }
                });
                if (!stable) return false;
            }
        }
        return true;
    };

    if (!check_side(1)) return result;
    if (!check_side(2)) return result;
    result.ok = true;
    return result;
}

// ---------------------------------------------------------------------------
// Petri nets
// ---------------------------------------------------------------------------

VpProcess petri_to_process(const PetriNet& net, int cap) {
    if (cap < 1) throw CapacityError("petri: capacity must be positive");
    VpProcess p;
    p.states = {"s"};
    p.initial = "s";

    VE init = ve_top();
    for (const auto& place : net.places) {
        std::string v = "x_" + place;
        p.vars[v] = VType::int_range(0, cap);
        int m0 = 0;
        auto it = net.marking0.find(place);
        if (it != net.marking0.end()) m0 = it->second;
        if (m0 < 0 || m0 > cap)
            throw CapacityError("petri: initial marking of '" + place +
                                "' outside 0.." + std::to_string(cap));
        init = simplify(ve_bin(VExprKind::And, init,
                               ve_bin(VExprKind::Eq, ve_var(v), ve_int(m0))));
    }
    p.init = init;

    for (const auto& tr : net.transitions) {
        for (const auto& place : tr.in)
            if (!net.places.count(place)) throw Error("petri: unknown place '" + place + "'");
        for (const auto& place : tr.out)
            if (!net.places.count(place)) throw Error("petri: unknown place '" + place + "'");
        VE g = ve_top();
        for (const auto& place : tr.in)
            g = simplify(ve_bin(VExprKind::And, g,
                                ve_bin(VExprKind::Gt, ve_var("x_" + place), ve_int(0))));
        std::vector<Operator> ops{Operator::guard(g)};
        for (const auto& place : tr.in) {
            std::string v = "x_" + place;
            ops.push_back(Operator::assign(v, ve_bin(VExprKind::Sub, ve_var(v), ve_int(1))));
        }
        for (const auto& place : tr.out) {
            std::string v = "x_" + place;
            ops.push_back(Operator::assign(v, ve_bin(VExprKind::Add, ve_var(v), ve_int(1))));
        }
        p.transitions.push_back({"s", co_of(std::move(ops)), "s"});
    }
    return p;
}

// ---------------------------------------------------------------------------
// Flowcharts
// ---------------------------------------------------------------------------

VpProcess flowchart_to_process(const Flowchart& fc) {
    using NK = Flowchart::Node::Kind;

    // Edge ids name the points between nodes; generate missing ones.
    std::vector<Flowchart::Edge> edges = fc.edges;
    std::set<std::string> edge_ids;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].id.empty()) edges[i].id = "e" + std::to_string(i);
        if (!edge_ids.insert(edges[i].id).second)
            throw MalformedFlowchartError("duplicate edge id '" + edges[i].id + "'");
    }

    std::map<std::string, std::vector<const Flowchart::Edge*>> ins, outs;
    for (const auto& e : edges) {
        if (!fc.nodes.count(e.from) || !fc.nodes.count(e.to))
            throw MalformedFlowchartError("edge '" + e.id + "' references an unknown node");
        outs[e.from].push_back(&e);
        ins[e.to].push_back(&e);
    }

    const std::string* start_out = nullptr;
    for (const auto& [name, node] : fc.nodes) {
        const auto& in = ins[name];
        const auto& out = outs[name];
        switch (node.kind) {
            case NK::Start:
                if (start_out || !in.empty() || out.size() != 1)
                    throw MalformedFlowchartError("start node must be unique with one out-edge");
                start_out = &out.front()->id;
                break;
            case NK::Assign:
            case NK::Send:
            case NK::Receive: {
                if (in.empty() || out.size() != 1)
                    throw MalformedFlowchartError("operation node '" + name +
                                                  "' needs in-edges and one out-edge");
                auto want = node.kind == NK::Assign  ? Operator::Kind::Assign
                            : node.kind == NK::Send  ? Operator::Kind::Out
                                                     : Operator::Kind::In;
                if (node.op.kind != want)
                    throw MalformedFlowchartError("operation node '" + name +
                                                  "' carries the wrong operator kind");
                break;
            }
            case NK::Cond: {
                if (in.empty() || out.empty() || out.size() > 2 || !node.cond)
                    throw MalformedFlowchartError("conditional node '" + name +
                                                  "' needs in-edges, a condition and one or "
                                                  "two out-edges");
                int plus = 0, minus = 0;
                for (const auto* e : out) (e->sign >= 0 ? plus : minus)++;
                if (plus != 1 || (out.size() == 2 && minus != 1))
                    throw MalformedFlowchartError("conditional node '" + name +
                                                  "' needs one positive out-edge and at most "
                                                  "one negative");
                break;
            }
            case NK::Choice:
                if (in.size() != 1 || out.empty())
                    throw MalformedFlowchartError("choice node '" + name +
                                                  "' needs one in-edge and out-edges");
                break;
            case NK::Join:
                if (in.empty() || out.size() != 1)
                    throw MalformedFlowchartError("join node '" + name +
                                                  "' needs in-edges and one out-edge");
                break;
            case NK::Halt:
                if (in.empty() || !out.empty())
                    throw MalformedFlowchartError("halt node '" + name +
                                                  "' must have in-edges only");
                break;
        }
    }
    if (!start_out) throw MalformedFlowchartError("flowchart has no start node");

    // Choice merges its out-points into its in-point; join merges its
    // in-points into its out-point.
    std::map<std::string, std::string> merged;
    for (const auto& [name, node] : fc.nodes) {
        if (node.kind == NK::Choice)
            for (const auto* e : outs[name]) merged[e->id] = ins[name].front()->id;
        else if (node.kind == NK::Join)
            for (const auto* e : ins[name]) merged[e->id] = outs[name].front()->id;
    }
    auto resolve = [&](std::string id) {
        std::set<std::string> seen;
        while (merged.count(id)) {
            if (!seen.insert(id).second)
                throw MalformedFlowchartError("choice/join merging cycles at point '" + id + "'");
            id = merged.at(id);
        }
        return id;
    };

    VpProcess p;
    p.vars = fc.vars;
    p.init = fc.init ? fc.init : ve_top();
    for (const auto& e : edges) p.states.insert(resolve(e.id));
    p.initial = resolve(*start_out);

    for (const auto& [name, node] : fc.nodes) {
        switch (node.kind) {
            case NK::Assign:
            case NK::Send:
            case NK::Receive: {
                std::string dst = resolve(outs[name].front()->id);
                for (const auto* e : ins[name])
                    p.transitions.push_back({resolve(e->id), co_of(node.op), dst});
                break;
            }
            case NK::Cond: {
                const Flowchart::Edge* pos = nullptr;
                const Flowchart::Edge* neg = nullptr;
                for (const auto* e : outs[name]) (e->sign >= 0 ? pos : neg) = e;
                for (const auto* e : ins[name]) {
                    std::string src = resolve(e->id);
                    p.transitions.push_back(
                        {src, co_of(Operator::guard(node.cond)), resolve(pos->id)});
                    if (neg)
                        p.transitions.push_back({src, co_of(Operator::guard(ve_not(node.cond))),
                                                 resolve(neg->id)});
                }
                break;
            }
            default: break;
        }
    }
    p.validate();
    return p;
}

}  // namespace ccsv
