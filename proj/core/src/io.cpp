#include "ccsv/io.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace ccsv::io {

namespace {

// --- lexer -------------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Int, Str, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    long ival = 0;
    int line = 1, col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                     msg);
}

std::vector<Token> lex(const std::string& text, int first_line = 1) {
    static const char* puncts[] = {":=", "..", "!=", "<=", ">=", "=>", "->",
                                   "(", ")", "{", "}", "[", "]", ",", ";", ":",
                                   "=", "<", ">", "+", "-", "*", "&", "|", "!",
                                   "?", ".", "\\", "/", "~"};
    std::vector<Token> out;
    int line = first_line, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (c == '"') {
            advance(1);
            std::size_t start = i;
            while (i < text.size() && text[i] != '"') advance(1);
            if (i == text.size()) fail_at(t.line, t.col, "unterminated string");
            t.kind = Token::Kind::Str;
            t.text = text.substr(start, i - start);
            advance(1);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                advance(1);
            t.kind = Token::Kind::Int;
            t.text = text.substr(start, i - start);
            t.ival = std::stol(t.text);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                       text[i] == '_'))
                advance(1);
            t.kind = Token::Kind::Ident;
            t.text = text.substr(start, i - start);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* p : puncts) {
            std::size_t n = std::char_traits<char>::length(p);
            if (text.compare(i, n, p) == 0) {
                t.kind = Token::Kind::Punct;
                t.text = p;
                advance(n);
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) fail_at(line, col, std::string("unexpected character '") + c + "'");
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t i = 0;

    explicit Parser(std::vector<Token> t) : toks(std::move(t)) {}

    const Token& peek(std::size_t ahead = 0) const {
        return toks[std::min(i + ahead, toks.size() - 1)];
    }
    const Token& get() { return toks[std::min(i++, toks.size() - 1)]; }
    bool done() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& msg) const {
        fail_at(peek().line, peek().col, msg);
    }
    bool at_punct(const std::string& p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
    }
    bool accept_punct(const std::string& p) {
        if (!at_punct(p)) return false;
        ++i;
        return true;
    }
    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) fail("expected '" + p + "'");
    }
    std::string expect_ident(const std::string& what) {
        if (peek().kind != Token::Kind::Ident) fail("expected " + what);
        return get().text;
    }
    long expect_int(const std::string& what) {
        bool neg = accept_punct("-");
        if (peek().kind != Token::Kind::Int) fail("expected " + what);
        long v = get().ival;
        return neg ? -v : v;
    }
    // State names and the like: a bare identifier or a quoted string.
    std::string expect_name(const std::string& what) {
        if (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Str)
            return get().text;
        fail("expected " + what);
    }
};

// --- .ccs ---------------------------------------------------------------------

PePtr ccs_expr(Parser& P);

PePtr ccs_atom(Parser& P) {
    if (P.peek().kind == Token::Kind::Int && P.peek().ival == 0) {
        P.get();
        return ProcExpr::nil();
    }
    if (P.accept_punct("(")) {
        PePtr e = ccs_expr(P);
        P.expect_punct(")");
        return e;
    }
    if (P.peek().kind == Token::Kind::Ident) return ProcExpr::ref(P.get().text);
    P.fail("expected '0', an agent name, or '('");
}

PePtr ccs_postfixed(Parser& P) {
    PePtr e = ccs_atom(P);
    while (true) {
        if (P.accept_punct("\\")) {
            P.expect_punct("{");
            std::set<std::string> names;
            if (!P.at_punct("}")) {
                names.insert(P.expect_ident("a channel name"));
                while (P.accept_punct(",")) names.insert(P.expect_ident("a channel name"));
            }
            P.expect_punct("}");
            e = ProcExpr::restriction(e, std::move(names));
        } else if (P.accept_punct("[")) {
            Renaming ren;
            do {
                std::string to = P.expect_ident("a new channel name");
                P.expect_punct("/");
                std::string from = P.expect_ident("an old channel name");
                ren[from] = to;
            } while (P.accept_punct(","));
            P.expect_punct("]");
            e = ProcExpr::renaming_of(e, std::move(ren));
        } else {
            return e;
        }
    }
}

PePtr ccs_prefixed(Parser& P) {
    if (P.peek().kind == Token::Kind::Ident) {
        const std::string& name = P.peek().text;
        if (P.at_punct("?", 1) || P.at_punct("!", 1)) {
            bool input = P.peek(1).text == "?";
            P.get();
            P.get();
            P.expect_punct(".");
            Action a = input ? Action::in(name) : Action::out(name);
            return ProcExpr::prefix(a, ccs_prefixed(P));
        }
        if (name == "tau" && P.at_punct(".", 1)) {
            P.get();
            P.get();
            return ProcExpr::prefix(Action::tau(), ccs_prefixed(P));
        }
    }
    return ccs_postfixed(P);
}

PePtr ccs_par(Parser& P) {
    PePtr e = ccs_prefixed(P);
    while (P.accept_punct("|")) e = ProcExpr::par(e, ccs_prefixed(P));
    return e;
}

PePtr ccs_expr(Parser& P) {
    PePtr e = ccs_par(P);
    while (P.accept_punct("+")) e = ProcExpr::choice(e, ccs_par(P));
    return e;
}

// --- .vpm expressions ----------------------------------------------------------

VE vpm_expr(Parser& P);

VE vpm_call(Parser& P, const std::string& fn) {
    std::vector<VE> args;
    std::vector<std::string> idents;  // raw first-arg idents (frame tag)
    P.expect_punct("(");
    if (fn == "frame") {
        idents.push_back(P.expect_ident("a frame tag"));
        while (P.accept_punct(",")) args.push_back(vpm_expr(P));
        P.expect_punct(")");
        return ve_frame(idents[0], std::move(args));
    }
    if (!P.at_punct(")")) {
        args.push_back(vpm_expr(P));
        while (P.accept_punct(",")) args.push_back(vpm_expr(P));
    }
    P.expect_punct(")");
    auto arity = [&](std::size_t n) {
        if (args.size() != n)
            P.fail(fn + " takes " + std::to_string(n) + " argument(s)");
    };
    auto lit = [&](std::size_t k) {
        if (args[k]->kind != VExprKind::Const || args[k]->cval.kind != Value::Kind::Int)
            P.fail(fn + ": argument " + std::to_string(k + 1) + " must be an integer literal");
        return args[k]->cval.i;
    };
    if (fn == "one") return arity(1), ve_un(VExprKind::Singleton, args[0]);
    if (fn == "head") return arity(1), ve_un(VExprKind::Head, args[0]);
    if (fn == "tail") return arity(1), ve_un(VExprKind::Tail, args[0]);
    if (fn == "len") return arity(1), ve_un(VExprKind::Length, args[0]);
    if (fn == "maxl") return arity(1), ve_un(VExprKind::MaxL, args[0]);
    if (fn == "minl") return arity(1), ve_un(VExprKind::MinL, args[0]);
    if (fn == "removeone") return arity(2), ve_bin(VExprKind::RemoveOne, args[0], args[1]);
    if (fn == "concat") return arity(2), ve_bin(VExprKind::Concat, args[0], args[1]);
    if (fn == "idx") return arity(2), ve_index(args[0], args[1]);
    if (fn == "setidx") return arity(3), ve_setindex(args[0], args[1], args[2]);
    if (fn == "between") return arity(3), ve_between(args[0], args[1], args[2]);
    if (fn == "addmod") return arity(3), ve_mod(VExprKind::AddMod, args[0], args[1], lit(2));
    if (fn == "submod") return arity(3), ve_mod(VExprKind::SubMod, args[0], args[1], lit(2));
    if (fn == "part") return arity(2), ve_part(args[0], static_cast<int>(lit(1)));
    P.fail("unknown function '" + fn + "'");
}

VE vpm_primary(Parser& P) {
    if (P.accept_punct("(")) {
        VE e = vpm_expr(P);
        P.expect_punct(")");
        return e;
    }
    if (P.accept_punct("-")) {
        if (P.peek().kind != Token::Kind::Int) P.fail("expected an integer after '-'");
        return ve_int(-P.get().ival);
    }
    if (P.peek().kind == Token::Kind::Int) return ve_int(P.get().ival);
    if (P.peek().kind == Token::Kind::Str) return ve_sym(P.get().text);
    if (P.accept_punct("[")) {
        std::vector<Value> items;
        if (!P.at_punct("]")) {
            do {
                VE e = vpm_expr(P);
                if (e->kind != VExprKind::Const)
                    P.fail("list literals must contain constants only (use one/concat "
                           "for computed lists)");
                items.push_back(e->cval);
            } while (P.accept_punct(","));
        }
        P.expect_punct("]");
        return ve_const(Value::of_list(std::move(items)));
    }
    if (P.peek().kind == Token::Kind::Ident) {
        std::string name = P.get().text;
        if (name == "true") return ve_bool(true);
        if (name == "false") return ve_bool(false);
        if (P.at_punct("(")) return vpm_call(P, name);
        return ve_var(name);
    }
    P.fail("expected an expression");
}

VE vpm_unary(Parser& P) {
    if (P.accept_punct("!")) return ve_not(vpm_unary(P));
    return vpm_primary(P);
}

VE vpm_mul(Parser& P) {
    VE e = vpm_unary(P);
    while (P.at_punct("*")) {
        P.get();
        e = ve_bin(VExprKind::Mul, e, vpm_unary(P));
    }
    return e;
}

VE vpm_add(Parser& P) {
    VE e = vpm_mul(P);
    while (P.at_punct("+") || P.at_punct("-")) {
        VExprKind k = P.get().text == "+" ? VExprKind::Add : VExprKind::Sub;
        e = ve_bin(k, e, vpm_mul(P));
    }
    return e;
}

VE vpm_cmp(Parser& P) {
    VE e = vpm_add(P);
    static const std::pair<const char*, VExprKind> ops[] = {
        {"=", VExprKind::Eq}, {"!=", VExprKind::Ne}, {"<=", VExprKind::Le},
        {">=", VExprKind::Ge}, {"<", VExprKind::Lt}, {">", VExprKind::Gt}};
    for (const auto& [p, k] : ops)
        if (P.at_punct(p)) {
            P.get();
            return ve_bin(k, e, vpm_add(P));
        }
    return e;
}

VE vpm_and(Parser& P) {
    VE e = vpm_cmp(P);
    while (P.accept_punct("&")) e = ve_bin(VExprKind::And, e, vpm_cmp(P));
    return e;
}

VE vpm_or(Parser& P) {
    VE e = vpm_and(P);
    while (P.accept_punct("|")) e = ve_bin(VExprKind::Or, e, vpm_and(P));
    return e;
}

VE vpm_expr(Parser& P) {
    VE e = vpm_or(P);
    if (P.accept_punct("=>")) return ve_bin(VExprKind::Implies, e, vpm_expr(P));
    return e;
}

// --- .vpm types -----------------------------------------------------------------

VTypePtr vpm_type(Parser& P, const std::map<std::string, VTypePtr>& aliases) {
    std::string head = P.expect_ident("a type");
    if (head == "bool") return VType::boolean();
    if (head == "int") {
        long lo = P.expect_int("a lower bound");
        P.expect_punct("..");
        long hi = P.expect_int("an upper bound");
        if (lo > hi) P.fail("empty integer range");
        return VType::int_range(lo, hi);
    }
    if (head == "enum") {
        P.expect_punct("{");
        std::vector<std::string> syms;
        do {
            if (P.peek().kind != Token::Kind::Str) P.fail("expected a quoted symbol");
            syms.push_back(P.get().text);
        } while (P.accept_punct(","));
        P.expect_punct("}");
        return VType::enumeration(std::move(syms));
    }
    if (head == "list") {
        P.expect_punct("(");
        VTypePtr elem = vpm_type(P, aliases);
        P.expect_punct(",");
        long n = P.expect_int("a maximum length");
        P.expect_punct(")");
        if (n < 0) P.fail("negative list capacity");
        return VType::list(std::move(elem), static_cast<int>(n));
    }
    auto it = aliases.find(head);
    if (it == aliases.end()) P.fail("unknown type '" + head + "'");
    return it->second;
}

// --- .vpm operators ---------------------------------------------------------------

bool at_op_start(const Parser& P) {
    return P.peek().kind == Token::Kind::Ident &&
           (P.at_punct("?", 1) || P.at_punct("!", 1) || P.at_punct(":=", 1));
}

Operator vpm_op(Parser& P) {
    std::string name = P.expect_ident("a channel or variable name");
    if (P.accept_punct("?")) {
        if (P.peek().kind == Token::Kind::Ident) return Operator::in(name, P.get().text);
        return Operator::signal_in(name);
    }
    if (P.accept_punct("!")) {
        if (P.at_punct(";") || P.done()) return Operator::signal_out(name);
        return Operator::out(name, vpm_expr(P));
    }
    P.expect_punct(":=");
    return Operator::assign(name, vpm_expr(P));
}

// Split a text into logical lines, dropping blanks and comment-only lines.
std::vector<std::pair<int, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::stringstream ss(text);
    std::string line;
    int no = 0;
    while (std::getline(ss, line)) {
        ++no;
        std::string body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.emplace_back(no, body);
    }
    return out;
}

}  // namespace

// --- public .ccs API ------------------------------------------------------------

RecDef parse_ccs(const std::string& text) {
    Parser P(lex(text));
    RecDef rd;
    while (!P.done()) {
        std::string kw = P.expect_ident("'agent'");
        if (kw != "agent") P.fail("expected 'agent'");
        std::string name = P.expect_ident("an agent name");
        P.expect_punct("=");
        PePtr body = ccs_expr(P);
        P.expect_punct(";");
        rd.equations.emplace_back(std::move(name), std::move(body));
    }
    rd.validate();
    return rd;
}

std::string render_ccs(const Lts& p, const std::string& name) {
    p.validate();
    std::map<std::string, std::string> ids;
    ids[p.initial] = name;
    int k = 0;
    for (const auto& s : p.states)
        if (s != p.initial) ids[s] = name + "_" + std::to_string(++k);

    std::string out;
    auto equation = [&](const std::string& s) {
        std::string rhs;
        for (const auto& t : p.out(s)) {
            std::string a;
            switch (t.act.kind) {
                case ActKind::Tau: a = "tau"; break;
                case ActKind::Input: a = t.act.name + "?"; break;
                case ActKind::Output: a = t.act.name + "!"; break;
                default:
                    throw Error("render_ccs: valued actions have no .ccs form");
            }
            if (!rhs.empty()) rhs += " + ";
            rhs += a + "." + ids[t.dst];
        }
        if (rhs.empty()) rhs = "0";
        out += "agent " + ids[s] + " = " + rhs + ";\n";
    };
    equation(p.initial);
    for (const auto& s : p.states)
        if (s != p.initial) equation(s);
    return out;
}

// --- public formula API -----------------------------------------------------------

namespace {

FormulaPtr formula_conj(Parser& P);

FormulaPtr formula_unary(Parser& P) {
    if (P.accept_punct("~")) return Formula::negate(formula_unary(P));
    if (P.accept_punct("(")) {
        FormulaPtr f = formula_conj(P);
        P.expect_punct(")");
        return f;
    }
    if (P.accept_punct("<")) {
        std::string name = P.expect_ident("an action");
        if (name == "tau") {
            bool plus = P.accept_punct("+");
            P.expect_punct(">");
            FormulaPtr f = formula_unary(P);
            return plus ? Formula::diamond_tau_plus(f) : Formula::diamond(Action::tau(), f);
        }
        Action a = P.accept_punct("?") ? Action::in(name)
                                       : (P.expect_punct("!"), Action::out(name));
        P.expect_punct(">");
        return Formula::diamond(a, formula_unary(P));
    }
    std::string id = P.expect_ident("'T', 'F', '~', '<' or '('");
    if (id == "T") return Formula::top();
    if (id == "F") return Formula::bottom();
    P.fail("expected a formula");
}

FormulaPtr formula_conj(Parser& P) {
    FormulaPtr f = formula_unary(P);
    while (P.accept_punct("&")) f = Formula::conj(f, formula_unary(P));
    return f;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser P(lex(text));
    FormulaPtr f = formula_conj(P);
    if (!P.done()) P.fail("trailing input after the formula");
    return f;
}

// --- public .vpm API ---------------------------------------------------------------

VpProcess parse_vpm(const std::string& text) {
    VpProcess p;
    std::map<std::string, VTypePtr> aliases;
    bool saw_init = false, saw_initial = false;

    for (const auto& [no, body] : logical_lines(text)) {
        Parser P(lex(body, no));
        std::string kw = P.expect_ident("a declaration keyword");
        if (kw == "type") {
            std::string name = P.expect_ident("a type name");
            P.expect_punct("=");
            if (aliases.count(name)) P.fail("duplicate type '" + name + "'");
            aliases[name] = vpm_type(P, aliases);
        } else if (kw == "var") {
            std::string name = P.expect_ident("a variable name");
            P.expect_punct(":");
            if (p.vars.count(name)) P.fail("duplicate variable '" + name + "'");
            p.vars[name] = vpm_type(P, aliases);
        } else if (kw == "init") {
            if (saw_init) P.fail("duplicate init declaration");
            saw_init = true;
            p.init = vpm_expr(P);
        } else if (kw == "state") {
            std::string name = P.expect_name("a state name");
            p.states.insert(name);
            if (!P.done()) {
                if (P.expect_ident("'init'") != "init") P.fail("expected 'init'");
                if (saw_initial) P.fail("two initial states");
                saw_initial = true;
                p.initial = name;
            }
        } else if (kw == "trans") {
            VpTransition t;
            t.src = P.expect_name("a source state");
            P.expect_punct("->");
            t.dst = P.expect_name("a target state");
            P.expect_punct(":");
            std::vector<Operator> ops;
            if (!P.done() && !P.at_punct(";") && !at_op_start(P))
                ops.push_back(Operator::guard(vpm_expr(P)));
            // operators separated by ';' (a leading ';' after the guard slot is fine)
            while (!P.done()) {
                if (P.accept_punct(";")) continue;
                ops.push_back(vpm_op(P));
                if (!P.done()) P.expect_punct(";");
            }
            t.op = co_of(std::move(ops));
            p.transitions.push_back(std::move(t));
        } else {
            P.fail("unknown declaration '" + kw + "'");
        }
    }
    if (!p.init) p.init = ve_top();
    for (const auto& t : p.transitions) {
        if (!p.states.count(t.src))
            throw ParseError("transition from undeclared state '" + t.src + "'");
        if (!p.states.count(t.dst))
            throw ParseError("transition to undeclared state '" + t.dst + "'");
    }
    p.validate();
    return p;
}

namespace {

int expr_prec(VExprKind k) {
    switch (k) {
        case VExprKind::Implies: return 1;
        case VExprKind::Or: return 2;
        case VExprKind::And: return 3;
        case VExprKind::Eq: case VExprKind::Ne: case VExprKind::Lt:
        case VExprKind::Le: case VExprKind::Gt: case VExprKind::Ge: return 4;
        case VExprKind::Add: case VExprKind::Sub: return 5;
        case VExprKind::Mul: return 6;
        case VExprKind::Not: return 7;
        default: return 8;  // atoms and function forms never need parens
    }
}

const char* infix_sym(VExprKind k) {
    switch (k) {
        case VExprKind::Implies: return "=>";
        case VExprKind::Or: return "|";
        case VExprKind::And: return "&";
        case VExprKind::Eq: return "=";
        case VExprKind::Ne: return "!=";
        case VExprKind::Lt: return "<";
        case VExprKind::Le: return "<=";
        case VExprKind::Gt: return ">";
        case VExprKind::Ge: return ">=";
        case VExprKind::Add: return "+";
        case VExprKind::Sub: return "-";
        case VExprKind::Mul: return "*";
        default: return nullptr;
    }
}

std::string render_value_io(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Int: return std::to_string(v.i);
        case Value::Kind::Bool: return v.b ? "true" : "false";
        case Value::Kind::Sym: return "\"" + v.sym + "\"";
        case Value::Kind::List: {
            std::string s = "[";
            for (std::size_t k = 0; k < v.items.size(); ++k) {
                if (k) s += ", ";
                s += render_value_io(v.items[k]);
            }
            return s + "]";
        }
    }
    return "?";
}

std::string call(const std::string& fn, std::initializer_list<std::string> args) {
    std::string s = fn + "(";
    bool first = true;
    for (const auto& a : args) {
        if (!first) s += ", ";
        first = false;
        s += a;
    }
    return s + ")";
}

std::string rexpr(const VE& e, int parent_prec, bool right_side) {
    int prec = expr_prec(e->kind);
    std::string s;
    switch (e->kind) {
        case VExprKind::Const: s = render_value_io(e->cval); break;
        case VExprKind::Var: s = e->name; break;
        case VExprKind::Not: s = "!" + rexpr(e->args[0], prec, false); break;
        case VExprKind::Singleton: s = call("one", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::Head: s = call("head", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::Tail: s = call("tail", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::Length: s = call("len", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::MaxL: s = call("maxl", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::MinL: s = call("minl", {rexpr(e->args[0], 0, false)}); break;
        case VExprKind::RemoveOne:
            s = call("removeone", {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false)});
            break;
        case VExprKind::Concat:
            s = call("concat", {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false)});
            break;
        case VExprKind::Index:
            s = call("idx", {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false)});
            break;
        case VExprKind::SetIndex:
            s = call("setidx", {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false),
                                rexpr(e->args[2], 0, false)});
            break;
        case VExprKind::Between:
            s = call("between", {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false),
                                 rexpr(e->args[2], 0, false)});
            break;
        case VExprKind::AddMod:
        case VExprKind::SubMod:
            s = call(e->kind == VExprKind::AddMod ? "addmod" : "submod",
                     {rexpr(e->args[0], 0, false), rexpr(e->args[1], 0, false),
                      std::to_string(e->modn)});
            break;
        case VExprKind::Frame: {
            std::string body = e->name;
            for (const auto& a : e->args) body += ", " + rexpr(a, 0, false);
            s = "frame(" + body + ")";
            break;
        }
        case VExprKind::Part:
            s = call("part", {rexpr(e->args[0], 0, false), std::to_string(e->index)});
            break;
        default: {
            const char* op = infix_sym(e->kind);
            bool rassoc = e->kind == VExprKind::Implies;
            s = rexpr(e->args[0], prec + (rassoc ? 1 : 0), false) + " " + op + " " +
                rexpr(e->args[1], prec + (rassoc ? 0 : 1), true);
            break;
        }
    }
    bool need = prec < parent_prec || (prec == parent_prec && right_side);
    // comparisons are non-associative: parenthesize nested comparisons always
    if (prec == 4 && parent_prec == 4) need = true;
    return need ? "(" + s + ")" : s;
}

std::string quoted_if_needed(const std::string& name) {
    bool plain = !name.empty() &&
                 (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) plain = false;
    if (plain && name != "init") return name;
    return "\"" + name + "\"";
}

std::string render_type_io(const VType& t) {
    switch (t.kind) {
        case VType::Kind::Bool: return "bool";
        case VType::Kind::IntRange:
            return "int " + std::to_string(t.lo) + ".." + std::to_string(t.hi);
        case VType::Kind::Enum: {
            std::string s = "enum { ";
            for (std::size_t k = 0; k < t.symbols.size(); ++k) {
                if (k) s += ", ";
                s += "\"" + t.symbols[k] + "\"";
            }
            return s + " }";
        }
        case VType::Kind::List:
            return "list(" + render_type_io(*t.elem) + ", " + std::to_string(t.maxlen) + ")";
    }
    return "?";
}

std::string render_op_io(const Operator& op) {
    switch (op.kind) {
        case Operator::Kind::Guard: return rexpr(op.expr, 0, false);
        case Operator::Kind::In: return op.chan + "?" + op.var;
        case Operator::Kind::Out:
            return op.expr ? op.chan + "!" + rexpr(op.expr, 0, false) : op.chan + "!";
        case Operator::Kind::Assign: return op.var + " := " + rexpr(op.expr, 0, false);
    }
    return "?";
}

}  // namespace

std::string render_expr(const VE& e) { return rexpr(e, 0, false); }

std::string render_vpm(const VpProcess& p) {
    std::string out;
    for (const auto& [name, type] : p.vars)
        out += "var " + name + " : " + render_type_io(*type) + "\n";
    out += "init " + render_expr(p.init ? p.init : ve_top()) + "\n";
    for (const auto& s : p.states) {
        out += "state " + quoted_if_needed(s);
        if (s == p.initial) out += " init";
        out += "\n";
    }
    for (const auto& t : p.transitions) {
        out += "trans " + quoted_if_needed(t.src) + " -> " + quoted_if_needed(t.dst) + " : ";
        for (std::size_t k = 0; k < t.op.ops.size(); ++k) {
            if (k) out += " ; ";
            out += render_op_io(t.op.ops[k]);
        }
        out += "\n";
    }
    return out;
}

// --- public .cert API ------------------------------------------------------------

CertFile parse_cert(const std::string& text) {
    CertFile cf;
    bool saw_left = false, saw_right = false;

    for (const auto& [no, body] : logical_lines(text)) {
        Parser probe(lex(body, no));
        std::string kw = probe.expect_ident("a certificate keyword");

        if (kw == "left" || kw == "right") {
            CertFile::Side side;
            std::string how = probe.expect_ident("'file' or 'model'");
            if (how == "file") {
                // the remainder of the line, verbatim, is the path
                std::size_t pos = body.find("file");
                std::string rest = body.substr(pos + 4);
                std::size_t a = rest.find_first_not_of(" \t\r");
                std::size_t b = rest.find_last_not_of(" \t\r");
                if (a == std::string::npos) probe.fail("missing file path");
                side.from_file = true;
                side.ref = rest.substr(a, b - a + 1);
            } else if (how == "model") {
                side.from_file = false;
                side.ref = probe.expect_ident("a model name");
                while (probe.accept_punct("-"))
                    side.ref += "-" + probe.expect_ident("a model name");
                while (!probe.done()) {
                    std::string key = probe.expect_ident("a parameter name");
                    probe.expect_punct("=");
                    std::string val;
                    if (probe.accept_punct("-")) val = "-";
                    while (!probe.done() && probe.peek().kind != Token::Kind::Ident) {
                        val += probe.get().text;
                    }
                    if (val.empty() && probe.peek().kind == Token::Kind::Ident)
                        val = probe.get().text;
                    side.params[key] = val;
                }
            } else {
                probe.fail("expected 'file' or 'model'");
            }
            if (kw == "left") {
                cf.left = std::move(side);
                saw_left = true;
            } else {
                cf.right = std::move(side);
                saw_right = true;
            }
        } else if (kw == "mu") {
            std::string s1 = probe.expect_name("a state of the left process");
            std::string s2 = probe.expect_name("a state of the right process");
            probe.expect_punct(":");
            cf.cert.mu[{s1, s2}] = vpm_expr(probe);
        } else if (kw == "inv1") {
            cf.cert.inv1 = vpm_expr(probe);
        } else if (kw == "inv2") {
            cf.cert.inv2 = vpm_expr(probe);
        } else if (kw == "ctlen") {
            cf.cert.ct_search_len = static_cast<int>(probe.expect_int("a length bound"));
        } else if (kw == "match") {
            long side = probe.expect_int("the moving side (1 or 2)");
            if (side != 1 && side != 2) probe.fail("the moving side must be 1 or 2");
            std::string s1 = probe.expect_name("the moving side's state");
            std::string s2 = probe.expect_name("the other side's state");
            long idx = probe.expect_int("a transition index");
            probe.expect_punct(":");
            std::vector<CompositeTransition> cts;
            while (probe.accept_punct("[")) {
                CompositeTransition ct;
                while (!probe.at_punct("]"))
                    ct.push_back(static_cast<std::size_t>(probe.expect_int("an index")));
                probe.expect_punct("]");
                cts.push_back(std::move(ct));
            }
            cf.cert.matches[{static_cast<int>(side), s1, s2,
                             static_cast<std::size_t>(idx)}] = std::move(cts);
        } else {
            probe.fail("unknown certificate keyword '" + kw + "'");
        }
    }
    if (!saw_left || !saw_right)
        throw ParseError("certificate must declare both 'left' and 'right' processes");
    return cf;
}

// --- graph dumps -------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const Lts& p, const std::string& name) {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n";
    for (const auto& s : p.states) {
        out += "  \"" + dot_escape(s) + "\"";
        if (s == p.initial) out += " [shape=doublecircle]";
        out += ";\n";
    }
    for (const auto& t : p.transitions)
        out += "  \"" + dot_escape(t.src) + "\" -> \"" + dot_escape(t.dst) + "\" [label=\"" +
               dot_escape(render(t.act)) + "\"];\n";
    out += "}\n";
    return out;
}

std::string to_json(const Lts& p) {
    nlohmann::ordered_json j;
    j["initial"] = p.initial;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto& s : p.states) j["states"].push_back(s);
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& t : p.transitions) {
        nlohmann::ordered_json e;
        e["src"] = t.src;
        e["act"] = render(t.act);
        e["dst"] = t.dst;
        j["transitions"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string to_dot(const VpProcess& p, const std::string& name) {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n";
    for (const auto& s : p.states) {
        out += "  \"" + dot_escape(s) + "\"";
        if (s == p.initial) out += " [shape=doublecircle]";
        out += ";\n";
    }
    for (const auto& t : p.transitions) {
        std::string label;
        for (std::size_t k = 0; k < t.op.ops.size(); ++k) {
            if (k) label += "; ";
            label += render_op_io(t.op.ops[k]);
        }
        out += "  \"" + dot_escape(t.src) + "\" -> \"" + dot_escape(t.dst) + "\" [label=\"" +
               dot_escape(label) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string to_json(const VpProcess& p) {
    nlohmann::ordered_json j;
    j["vars"] = nlohmann::ordered_json::object();
    for (const auto& [n, t] : p.vars) j["vars"][n] = render_type_io(*t);
    j["init"] = render_expr(p.init ? p.init : ve_top());
    j["initial"] = p.initial;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto& s : p.states) j["states"].push_back(s);
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& t : p.transitions) {
        nlohmann::ordered_json e;
        e["src"] = t.src;
        e["ops"] = nlohmann::ordered_json::array();
        for (const auto& op : t.op.ops) e["ops"].push_back(render_op_io(op));
        e["dst"] = t.dst;
        j["transitions"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

}  // namespace ccsv::io
