// Command-line driver: equivalence checking, minimization, model checking,
// value-passing transformations, simulation, the model registry, and
// certificate verification. Exit codes: 0 = the property holds / output
// produced, 1 = the property does not hold, 2 = any error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/io.hpp"
#include "ccsv/minimize.hpp"
#include "ccsv/models.hpp"

namespace {

using namespace ccsv;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RecDef load_agents(const std::vector<std::string>& files) {
    RecDef rd;
    for (const auto& f : files) {
        RecDef part = io::parse_ccs(slurp(f));
        for (auto& eq : part.equations) rd.equations.push_back(std::move(eq));
    }
    rd.validate();
    return rd;
}

EquivKind parse_kind(const std::string& kind) {
    if (kind == "strong") return EquivKind::Strong;
    if (kind == "weak") return EquivKind::Weak;
    if (kind == "cong") return EquivKind::Congruence;
    if (kind == "trace") return EquivKind::TraceLanguage;
    if (kind == "ctrace") return EquivKind::ChoiceTrace;
    throw Error("unknown equivalence kind '" + kind + "'");
}

Semantics parse_semantics(const std::string& sem) {
    if (sem == "strong") return Semantics::Strong;
    if (sem == "weak") return Semantics::Weak;
    if (sem == "plus") return Semantics::Plus;
    throw Error("unknown semantics '" + sem + "'");
}

std::string lts_text(const Lts& p) {
    std::string out = "initial " + p.initial + "\n";
    for (const auto& t : p.transitions)
        out += t.src + " --" + render(t.act) + "--> " + t.dst + "\n";
    return out;
}

void emit_lts(const Lts& p, const std::string& format, const std::string& agent) {
    if (format == "dot")
        std::cout << io::to_dot(p, "lts");
    else if (format == "json")
        std::cout << io::to_json(p);
    else if (format == "ccs")
        std::cout << io::render_ccs(p, agent);
    else
        std::cout << lts_text(p);
}

void emit_vp(const VpProcess& p, const std::string& format) {
    if (format == "dot")
        std::cout << io::to_dot(p, "vp");
    else if (format == "json")
        std::cout << io::to_json(p);
    else
        std::cout << io::render_vpm(p);
}

VpProcess resolve_cert_side(const io::CertFile::Side& side,
                            const std::filesystem::path& cert_dir) {
    if (side.from_file) {
        std::filesystem::path p(side.ref);
        if (p.is_relative()) p = cert_dir / p;
        return io::parse_vpm(slurp(p.string()));
    }
    models::BuiltModel m = models::build(side.ref, side.params);
    if (!m.vp) throw Error("model '" + side.ref + "' is not a value-passing process");
    return *m.vp;
}

int run(int argc, char** argv) {
    CLI::App app{"process-algebra verification toolkit"};
    app.require_subcommand(1);

    std::string kind = "strong", semantics = "strong", formula, agent, agent_b;
    std::string format = "text", name, rules = "r1,r2";
    std::vector<std::string> files;
    std::vector<std::string> params;
    std::size_t max_states = 200000, steps = 0;
    std::uint64_t seed = 0;
    bool list_models = false;

    auto* check = app.add_subcommand("check", "decide an equivalence between two agents");
    check->add_option("--kind", kind, "strong|weak|cong|trace|ctrace")->required();
    check->add_option("agentA", agent)->required();
    check->add_option("agentB", agent_b)->required();
    check->add_option("files", files, ".ccs files")->required();

    auto* minimize_cmd = app.add_subcommand("minimize", "print the minimized agent");
    minimize_cmd->add_option("--kind", kind, "strong|weak|cong")->required();
    minimize_cmd->add_option("--agent", agent)->required();
    minimize_cmd->add_option("--format", format, "ccs|text|dot|json");
    minimize_cmd->add_option("files", files, ".ccs files")->required();

    auto* mc = app.add_subcommand("mc", "evaluate a modal formula at an agent");
    mc->add_option("--semantics", semantics, "strong|weak|plus")->required();
    mc->add_option("--formula", formula)->required();
    mc->add_option("--agent", agent)->required();
    mc->add_option("files", files, ".ccs files")->required();

    auto* dist = app.add_subcommand("distinguish",
                                    "print a formula telling two agents apart");
    dist->add_option("--semantics", semantics, "strong|weak|plus")->required();
    dist->add_option("agentA", agent)->required();
    dist->add_option("agentB", agent_b)->required();
    dist->add_option("files", files, ".ccs files")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a value-passing process");
    reduce_cmd->add_option("--rules", rules, "comma list of r1,r2,r3 (default r1,r2)");
    reduce_cmd->add_option("--format", format, "vpm|dot|json");
    reduce_cmd->add_option("file", files, "a .vpm file")->required()->expected(1);

    auto* conc = app.add_subcommand("concretize", "expand a value-passing process");
    conc->add_option("--max-states", max_states);
    conc->add_option("--format", format, "text|dot|json");
    conc->add_option("file", files, "a .vpm file")->required()->expected(1);

    auto* sim = app.add_subcommand("simulate", "random walk through a process");
    sim->add_option("--steps", steps)->required();
    sim->add_option("--seed", seed)->required();
    sim->add_option("file", files, "a .vpm file")->required()->expected(1);

    auto* examples = app.add_subcommand("examples", "emit a model from the registry");
    examples->add_option("--name", name);
    examples->add_option("--param", params, "k=v, repeatable");
    examples->add_flag("--list", list_models, "list available models");
    examples->add_option("--format", format, "native|dot|json");

    auto* vc = app.add_subcommand("verify-cert", "verify an equivalence certificate");
    vc->add_option("file", files, "a .cert file")->required()->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (check->parsed()) {
        RecDef rd = load_agents(files);
        Lts a = materialize(agent, rd);
        Lts b = materialize(agent_b, rd);
        bool eq = equivalent(a, b, parse_kind(kind));
        std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
        return eq ? 0 : 1;
    }
    if (minimize_cmd->parsed()) {
        RecDef rd = load_agents(files);
        MinimizeKind mk = kind == "strong"  ? MinimizeKind::Strong
                          : kind == "weak"  ? MinimizeKind::Weak
                          : kind == "cong"  ? MinimizeKind::Congruence
                                            : throw Error("unknown kind '" + kind + "'");
        if (format == "text") format = "ccs";
        emit_lts(minimize(materialize(agent, rd), mk), format, agent);
        return 0;
    }
    if (mc->parsed()) {
        RecDef rd = load_agents(files);
        bool value = eval(materialize(agent, rd), io::parse_formula(formula),
                          parse_semantics(semantics));
        std::cout << (value ? 1 : 0) << "\n";
        return value ? 0 : 1;
    }
    if (dist->parsed()) {
        RecDef rd = load_agents(files);
        auto phi = distinguish(materialize(agent, rd), materialize(agent_b, rd),
                               parse_semantics(semantics));
        if (!phi) {
            std::cout << "equivalent\n";
            return 0;
        }
        std::cout << render(*phi) << "\n";
        return 1;
    }
    if (reduce_cmd->parsed()) {
        std::set<ReduceRule> rs;
        std::stringstream ss(rules);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "r1") rs.insert(ReduceRule::R1);
            else if (item == "r2") rs.insert(ReduceRule::R2);
            else if (item == "r3") rs.insert(ReduceRule::R3);
            else throw Error("unknown reduction rule '" + item + "'");
        }
        emit_vp(reduce(io::parse_vpm(slurp(files[0])), rs), format);
        return 0;
    }
    if (conc->parsed()) {
        emit_lts(concretize(io::parse_vpm(slurp(files[0])), max_states), format, "P");
        return 0;
    }
    if (sim->parsed()) {
        models::SimResult r = models::simulate(io::parse_vpm(slurp(files[0])), steps, seed);
        for (const auto& a : r.trace) std::cout << render(a) << "\n";
        if (r.deadlocked)
            std::cout << "deadlock after " << r.trace.size() << " steps in "
                      << r.final_control << "\n";
        return 0;
    }
    if (examples->parsed()) {
        if (list_models) {
            for (const auto& m : models::model_list())
                std::cout << m.name << (m.params.empty() ? "" : " [" + m.params + "]")
                          << " — " << m.summary << "\n";
            return 0;
        }
        if (name.empty()) throw Error("examples: --name or --list required");
        std::map<std::string, std::string> kv;
        for (const auto& p : params) {
            auto pos = p.find('=');
            if (pos == std::string::npos) throw Error("--param expects k=v, got '" + p + "'");
            kv[p.substr(0, pos)] = p.substr(pos + 1);
        }
        models::BuiltModel m = models::build(name, kv);
        if (m.lts) {
            std::string agent_name = name;
            for (char& c : agent_name)
                if (c == '-') c = '_';
            if (format == "text" || format == "native") format = "ccs";
            emit_lts(*m.lts, format, agent_name);
        } else {
            if (format == "native") format = "vpm";
            emit_vp(*m.vp, format);
        }
        return 0;
    }
    if (vc->parsed()) {
        io::CertFile cf = io::parse_cert(slurp(files[0]));
        std::filesystem::path dir = std::filesystem::path(files[0]).parent_path();
        VpProcess left = resolve_cert_side(cf.left, dir);
        VpProcess right = resolve_cert_side(cf.right, dir);
        CertResult r = verify_mu_certificate(left, right, cf.cert);
        if (r.ok) {
            std::cout << "certificate accepted\n";
            return 0;
        }
        std::cout << "certificate rejected: " << r.failed << "\n";
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
