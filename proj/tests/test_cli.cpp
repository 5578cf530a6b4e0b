#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* cli = std::getenv("CCSV_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "CCSV_CLI must point at the ccsv binary");
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string models_dir() {
    const char* d = std::getenv("CCSV_MODELS_DIR");
    REQUIRE_MESSAGE(d != nullptr, "CCSV_MODELS_DIR must point at the shipped models");
    return d;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("examples lists the registry and emits models") {
    Run list = run("examples --list");
    CHECK(list.code == 0);
    CHECK(list.out.find("jobshop") != std::string::npos);
    CHECK(list.out.find("swp-gbn") != std::string::npos);

    Run ccs = run("examples --name jobshop");
    CHECK(ccs.code == 0);
    CHECK(ccs.out.find("agent jobshop") != std::string::npos);

    Run vpm = run("examples --name buffer --param n=2");
    CHECK(vpm.code == 0);
    CHECK(vpm.out.find("state B init") != std::string::npos);

    CHECK(run("examples --name no-such-model").code == 2);
    CHECK(run("examples --name buffer --param n=frog").code == 2);
}

TEST_CASE("check decides equivalences with exit code semantics") {
    std::string f = models_dir() + "/jobshop.ccs";
    Run weak = run("check --kind weak Jobshop Abs_Jobshop " + f);
    CHECK(weak.code == 0);
    CHECK(weak.out == "equivalent\n");
    CHECK(run("check --kind cong Jobshop Abs_Jobshop " + f).code == 0);

    Run strong = run("check --kind strong Jobshop Abs_Jobshop " + f);
    CHECK(strong.code == 1);
    CHECK(strong.out == "not equivalent\n");

    CHECK(run("check --kind weak Jobshop NoSuchAgent " + f).code == 2);
    CHECK(run("check --kind weird Jobshop Abs_Jobshop " + f).code == 2);
    CHECK(run("check --kind weak A B /nonexistent.ccs").code == 2);
}

TEST_CASE("minimize prints a parseable small system") {
    std::string f = models_dir() + "/jobshop.ccs";
    Run r = run("minimize --kind weak --agent Jobshop " + f);
    CHECK(r.code == 0);
    // Three states -> three agent equations.
    std::size_t count = 0, pos = 0;
    while ((pos = r.out.find("agent ", pos)) != std::string::npos) {
        ++count;
        pos += 6;
    }
    CHECK(count == 3);

    // Re-checking the minimized text against the original closes the loop.
    auto tmp = write_temp("ccsv_min.ccs", r.out);
    Run back = run("check --kind weak Jobshop Jobshop " + f + " " + tmp.string());
    // Same agent name twice in merged files is a duplicate definition error.
    CHECK(back.code == 2);
    std::string renamed = r.out;
    std::size_t at = 0;
    while ((at = renamed.find("Jobshop", at)) != std::string::npos)
        renamed.replace(at, 7, "MinShop");
    auto tmp2 = write_temp("ccsv_min2.ccs", renamed);
    Run ok = run("check --kind weak Jobshop MinShop " + f + " " + tmp2.string());
    CHECK(ok.code == 0);
}

TEST_CASE("mc evaluates formulas with exit code semantics") {
    std::string f = models_dir() + "/dispatcher.ccs";
    Run yes = run("mc --semantics strong --formula \"<start!>T\" --agent Spec " + f);
    CHECK(yes.code == 0);
    CHECK(yes.out == "1\n");
    Run no = run("mc --semantics strong --formula \"<finish!>T\" --agent Spec " + f);
    CHECK(no.code == 1);
    CHECK(no.out == "0\n");
    CHECK(run("mc --semantics strong --formula \"<oops\" --agent Spec " + f).code == 2);
}

TEST_CASE("distinguish prints a formula exactly when the agents differ") {
    std::string f = models_dir() + "/dispatcher.ccs";
    Run diff = run("distinguish --semantics strong Sys Spec " + f);
    CHECK(diff.code == 1);
    CHECK(diff.out.find("<") != std::string::npos);

    Run same = run("distinguish --semantics weak Sys Spec " + f);
    CHECK(same.code == 0);
    CHECK(same.out == "equivalent\n");
}

TEST_CASE("reduce and concretize emit deterministic output") {
    std::string f = models_dir() + "/simple-protocol.vpm";
    Run r1 = run("reduce " + f);
    Run r2 = run("reduce " + f);
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("state") != std::string::npos);

    Run c = run("concretize --format json " + models_dir() + "/buffer1.vpm");
    CHECK(c.code == 0);
    CHECK(c.out.find("\"transitions\"") != std::string::npos);

    CHECK(run("reduce --rules r9 " + f).code == 2);
}

TEST_CASE("simulate is reproducible per seed") {
    std::string f = models_dir() + "/buffer1.vpm";
    Run a = run("simulate --steps 10 --seed 3 " + f);
    Run b = run("simulate --steps 10 --seed 3 " + f);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::size_t lines = std::count(a.out.begin(), a.out.end(), '\n');
    CHECK(lines == 10);
}

TEST_CASE("verify-cert accepts the shipped certificates and rejects tampering") {
    Run good = run("verify-cert " + models_dir() + "/buffer1.cert");
    CHECK(good.code == 0);
    CHECK(good.out == "certificate accepted\n");
    CHECK(run("verify-cert " + models_dir() + "/abp.cert").code == 0);

    auto bad = write_temp("ccsv_bad.cert",
                          "left model buffer n=1 messages=2\n"
                          "right model buf-cell messages=2\n"
                          "mu B a : k = 1 & q = []\n"
                          "mu B b : k = 1 & q = one(x_b)\n");
    Run rej = run("verify-cert " + bad.string());
    CHECK(rej.code == 1);
    CHECK(rej.out.find("certificate rejected") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2 and help with 0") {
    CHECK(run("--help").code == 0);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check --kind weak onlyone file.ccs").code != 0);
}
