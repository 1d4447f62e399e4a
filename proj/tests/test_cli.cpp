// Copyright 2026 The superlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SUPERLIND_CLI_PATH;
const std::string kSource = SUPERLIND_SOURCE_DIR;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    const int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / "superlind_cli_test";
    fs::create_directories(d);
    return d;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

const char* kSmallSweep =
    "[model]\ninv_v = 2, 3\nwindow = 10\n[bath]\nkind = dephasing\ngamma0 = 0, 0.1\n"
    "[basis]\nmode = superadiabatic, closed\norder = 3\n";

} // namespace

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("sweep").code == 2);
    CHECK(run("sweep /nonexistent.cfg").code == 2);
    CHECK(run("spectrum --wc 5").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("validation and domain errors") {
    CHECK(run("sweep " + write_config("bad.cfg", "[model]\nwindow = 2\n").string()).code == 3);
    CHECK(run("sweep " + write_config("typo.cfg", "[model]\nspeed = 2\n").string()).code == 3);
    CHECK(run("spectrum --gamma0 -1").code == 4);
    const auto cfg = write_config("small.cfg", kSmallSweep);
    CHECK(run("sweep " + cfg.string() + " -o /nonexistent/dir/out.csv").code == 5);
    CHECK(run("sweep " + cfg.string() + " --set solver.step=30 -o -").code == 6);
}

TEST_CASE("sweep reruns are byte identical and flags override the config") {
    const auto cfg = write_config("small.cfg", kSmallSweep);
    const fs::path a = scratch() / "a.csv";
    const fs::path b = scratch() / "b.csv";
    REQUIRE(run("sweep " + cfg.string() + " -o " + a.string() + " --dat").code == 0);
    REQUIRE(run("sweep " + cfg.string() + " -o " + b.string() + " --threads 2").code == 0);
    const std::string sa = slurp(a);
    CHECK(sa == slurp(b));
    CHECK(fs::exists(scratch() / "a.dat"));
    CHECK(sa.find("# order = 3\n") != std::string::npos);
    CHECK(sa.find("inv_v,P_ge,P_ge_stderr,mode,bath,gamma0,T,j,") != std::string::npos);

    const Run r = run("sweep " + cfg.string() + " -o - --order 2 --inv-v 4 --set bath.gamma0=0.03");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# order = 2\n") != std::string::npos);
    CHECK(r.out.find("# inv_v = 4\n") != std::string::npos);
    CHECK(r.out.find("\n4,") != std::string::npos);
    CHECK(r.out.find(",dephasing,0.03,") != std::string::npos);
}

TEST_CASE("stamped runs differ only in the metadata block") {
    const auto cfg = write_config("small.cfg", kSmallSweep);
    const Run a = run("sweep " + cfg.string() + " -o - --timestamp --inv-v 2");
    const Run b = run("sweep " + cfg.string() + " -o - --inv-v 2");
    CHECK(a.out.find("# generated_at = ") != std::string::npos);
    const auto body = [](const std::string& s) { return s.substr(s.find("\ninv_v,")); };
    CHECK(body(a.out) == body(b.out));
}

TEST_CASE("fig1 writes three paths") {
    const auto cfg = write_config("fig1.cfg", "[model]\ninv_v = 4\n[fig1]\nmax_rows = 100\n");
    const fs::path prefix = scratch() / "f1";
    REQUIRE(run("fig1 " + cfg.string() + " -o " + prefix.string() + " --frames").code == 0);
    for (const char* s : {"_instantaneous.csv", "_superadiabatic.csv", "_evolved.csv", "_frames.csv"}) {
        const std::string text = slurp(prefix.string() + s);
        CHECK_MESSAGE(!text.empty(), s);
    }
    CHECK(slurp(prefix.string() + "_evolved.csv").find("t,x,y,z\n") != std::string::npos);
}

TEST_CASE("spectrum table") {
    const Run r = run("spectrum --gamma0 0.05 --wc 5 --T 0.1 --wmin -1 --wmax 1 --n 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# kind = ohmic\n") != std::string::npos);
    CHECK(r.out.find("\n0,0.005\n") != std::string::npos);
}

TEST_CASE("shipped configs parse") {
    for (const char* name : {"fig2a.cfg", "fig2b.cfg", "fig3a.cfg", "fig3b.cfg", "trajectories.cfg"}) {
        const fs::path p = fs::path(kSource) / "configs" / name;
        const Run r = run("sweep " + p.string() + " --inv-v 3 --trajectories 20 -o -");
        CHECK_MESSAGE(r.code == 0, name);
    }
}

TEST_CASE("check subcommand") {
    const Run r = run("check");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
