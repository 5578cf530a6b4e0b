#include "doctest.h"

#include "json.hpp"

#include "ccsv/equiv.hpp"
#include "ccsv/io.hpp"
#include "ccsv/models.hpp"

using namespace ccsv;

TEST_CASE("ccs parsing covers the grammar") {
    RecDef rd = io::parse_ccs(R"(
# a tiny system
agent A = a?.A + tau.B;
agent B = (b!.0 | c!.0) \ {c} [d/b];
)");
    rd.validate();
    REQUIRE(rd.equations.size() == 2);
    Lts a = materialize("A", rd);
    a.validate();
    CHECK(equivalent(a, materialize("A", rd), EquivKind::Strong));
    // The renamed restriction really applies: b! shows up as d!.
    auto names = names_of(act_of(a));
    CHECK(names.count("d"));
    CHECK_FALSE(names.count("b"));
    CHECK_FALSE(names.count("c"));
}

TEST_CASE("ccs parse errors carry positions") {
    try {
        io::parse_ccs("agent A = a?.;");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS((void)io::parse_ccs("agent A = Undefined;"), UndefinedNameError);
    CHECK_THROWS_AS((void)io::parse_ccs("agent = 0;"), ParseError);
}

TEST_CASE("render_ccs emits parseable equations reproducing the system") {
    for (const char* name : {"vending-simple", "jobshop", "dispatcher-spec"}) {
        models::BuiltModel m = models::build(name, {});
        REQUIRE(m.lts.has_value());
        std::string text = io::render_ccs(*m.lts, "Root");
        RecDef rd = io::parse_ccs(text);
        Lts back = materialize("Root", rd);
        CHECK(equivalent(*m.lts, back, EquivKind::Strong));
    }
}

TEST_CASE("formula parsing and rendering round-trip") {
    for (const char* text :
         {"T", "F", "~T", "(<a?>T & <b!>F)", "<tau>~<a?>T", "<tau+>(T & ~F)"}) {
        FormulaPtr f = io::parse_formula(text);
        FormulaPtr again = io::parse_formula(render(f));
        CHECK(render(f) == render(again));
    }
    CHECK_THROWS_AS((void)io::parse_formula("<a?>"), ParseError);
    CHECK_THROWS_AS((void)io::parse_formula("T &"), ParseError);
}

TEST_CASE("vpm files round-trip byte-for-byte through render and parse") {
    for (const char* name : {"buf-cell", "buffer", "buffer-process", "square",
                             "simple-protocol", "abp-reduced", "separation", "petri"}) {
        CAPTURE(name);
        models::BuiltModel m = models::build(name, {});
        REQUIRE(m.vp.has_value());
        std::string once = io::render_vpm(*m.vp);
        VpProcess parsed = io::parse_vpm(once);
        parsed.validate();
        CHECK(io::render_vpm(parsed) == once);
    }
}

TEST_CASE("vpm parsing handles the declaration forms") {
    VpProcess p = io::parse_vpm(R"(
# a cell with a type alias
type msg = int 0..1
var x : msg
var q : list(msg, 2)
var ok : bool
var col : enum { "red", "green" }
init x = 0 & q = [] & !ok
state empty init
state full
trans empty -> full : In?x
trans full -> empty : x < 2 ; Out!x ; q := concat(q, one(x))
trans full -> full : col := "red" ; ok := true
)");
    p.validate();
    CHECK(p.states == std::set<std::string>{"empty", "full"});
    CHECK(p.initial == "empty");
    CHECK(p.vars.size() == 4);
    REQUIRE(p.transitions.size() == 3);
    CHECK(p.transitions[2].op.internal());

    CHECK_THROWS_AS((void)io::parse_vpm("state s init\ntrans s -> ghost : In?x"),
                    ParseError);
    CHECK_THROWS_AS((void)io::parse_vpm("var x : int 5..2\nstate s init"), Error);
}

TEST_CASE("expression sub-syntax round-trips") {
    const std::string decls = "var x : int 0..3\nvar q : list(int 0..3, 2)\n";
    for (const char* text :
         {"x + 1 * 2", "(x + 1) * 2", "maxl(q) - minl(q) <= 3", "addmod(x, 1, 4) = 0",
          "between(0, x, 3) & len(q) = 1", "x = 2 | x != 2", "idx(q, 0) >= 1",
          "head(concat(q, one(x))) = x", "!(x < 1) => true"}) {
        CAPTURE(text);
        VE e = io::parse_vpm(decls + "init " + text + "\nstate s init").init;
        std::string r = io::render_expr(e);
        VpProcess again = io::parse_vpm(decls + "init " + r + "\nstate s init");
        CHECK(io::render_expr(again.init) == r);
        // Rendering is semantics-preserving on a sample environment.
        Evaluation sigma = {{"x", Value::of_int(2)},
                            {"q", Value::of_list({Value::of_int(1)})}};
        CHECK(eval_expr(e, sigma) == eval_expr(again.init, sigma));
    }
}

TEST_CASE("cert files parse sides, mu entries and matches") {
    io::CertFile cf = io::parse_cert(R"(
left model buffer n=1 messages=2
right file cell.vpm
mu B s : k = 0 & q = []
mu B t : k = 1
inv1 k <= 1
ctlen 3
match 1 B s 0 : [0 1] [ ]
)");
    CHECK_FALSE(cf.left.from_file);
    CHECK(cf.left.ref == "buffer");
    CHECK(cf.left.params.at("n") == "1");
    CHECK(cf.right.from_file);
    CHECK(cf.right.ref == "cell.vpm");
    CHECK(cf.cert.mu.size() == 2);
    CHECK(cf.cert.ct_search_len == 3);
    REQUIRE(cf.cert.matches.size() == 1);
    const auto& cts = cf.cert.matches.begin()->second;
    REQUIRE(cts.size() == 2);
    CHECK(cts[0] == CompositeTransition{0, 1});
    CHECK(cts[1].empty());

    CHECK_THROWS_AS((void)io::parse_cert("mu A b : true"), ParseError);  // no sides
}

TEST_CASE("dot and json dumps are well-formed") {
    Lts p = models::vending_simple();
    std::string dot = io::to_dot(p, "vend");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);

    auto j = nlohmann::json::parse(io::to_json(p));
    CHECK(j.at("initial").get<std::string>() == p.initial);
    CHECK(j.at("states").size() == p.states.size());
    CHECK(j.at("transitions").size() == p.transitions.size());

    VpProcess cell = models::buf_cell(2);
    std::string vdot = io::to_dot(cell, "cell");
    CHECK(vdot.find("digraph") != std::string::npos);
    auto vj = nlohmann::json::parse(io::to_json(cell));
    CHECK(vj.at("states").size() == cell.states.size());
    CHECK(vj.at("transitions").size() == cell.transitions.size());
}
