#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" NECKTIE_CLI_PATH "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("classify") {
    CHECK(run("classify --alpha 0.6 --beta 0.7").out == "D_CM\n");
    CHECK(run("classify --alpha 0.5 --beta 0.5").out == "ZeroFunction\n");
    CHECK(run("classify --alpha 0.6 --beta 0.6 --boundary").out == "D_CM,boundary\n");
}

TEST_CASE("eval") {
    const auto r = run("eval --alpha 2 --beta 1 --what E --x 1");
    REQUIRE(r.code == 0);
    CHECK(std::fabs(std::stod(r.out) - std::cosh(1.0)) < 1e-15);
    const auto g = run("eval --alpha 0.5 --what D --grid 0.5:2:4");
    CHECK(g.code == 0);
    CHECK(g.out.rfind("x,value\n", 0) == 0);
    CHECK(std::count(g.out.begin(), g.out.end(), '\n') == 5);
}

TEST_CASE("verify subcommands") {
    CHECK(run("verify identity --name Dbar41").code == 0);
    CHECK(run("verify representation --name b1 --alpha 0.75").code == 0);
    CHECK(run("verify mellin --alpha 0.6").code == 0);
    CHECK(run("verify laplace --which D_a1 --alpha 0.6 --s 2").code == 0);
    CHECK(run("verify cm --fn prop1 --alpha 0.6").code == 0);
    CHECK(run("verify cm --fn prop1 --alpha 0.4").code == 1);
    const auto f = run("verify cm --fn prop1 --alpha 0.4 --expect-fail");
    CHECK(f.code == 0);
    // passed = 0, witness at x = 0.2 of order 3
    CHECK(f.out.find(",0,0.2") != std::string::npos);
    CHECK(f.out.find(",3,1.93") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("classify --alpha 0.5").code == 2);
    CHECK(run("eval --alpha -1 --what E --x 1").code == 2);
    CHECK(run("eval --alpha 0.5 --what Nope --x 1").code == 2);
    CHECK(run("eval --alpha 0.5 --what E --grid 1:0:5").code == 2);
    CHECK(run("verify identity --name NoSuch").code == 2);
    CHECK(run("mc --name StableLT --alpha 0.5 --n 1000", "NECKTIE_SEED=banana").code == 2);
    CHECK(run("densities --kind BetaKernel --params 2,3 --grid 0.5:2:4").code == 2);
}

TEST_CASE("mc is deterministic in the seed") {
    const std::string cmd = "mc --name StableLT --alpha 0.5 --n 20000";
    const auto a = run(cmd + " --seed 5");
    const auto b = run(cmd, "NECKTIE_SEED=5");
    const auto c = run(cmd + " --seed 6");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(run("mc --name StableLT --alpha 0.5 --n 20000 --shift 0.3").code == 1);
}

TEST_CASE("--out writes the file") {
    const auto path = std::filesystem::temp_directory_path() / "necktie_cli_test.csv";
    std::filesystem::remove(path);
    const auto r = run("--out '" + path.string() + "' densities --kind FAlpha --params 0.7 --grid 0.5:2:4");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().rfind("t,value\n", 0) == 0);
    std::filesystem::remove(path);
}
