#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(GENZGAMMA_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
    const auto r = run(args + " --format json");
    EXPECT_EQ(r.code, expected_code) << args;
    return nlohmann::json::parse(r.out);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, EvalExamples) {
    EXPECT_DOUBLE_EQ(run_json("eval gamma_p --p 1 --t 1")["results"][0]["value"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(run_json("eval psi_p --p 1 --t 1")["results"][0]["value"].get<double>(), -1.5);
    EXPECT_DOUBLE_EQ(run_json("eval gamma_k --k 2 --t 2")["results"][0]["value"].get<double>(), 1.0);
    const auto d = run_json("eval psi_pq --p 1 --q 0.5 --t 1")["results"][0];
    EXPECT_NEAR(d["discrepancy"].get<double>(), -std::log(0.5) / 3.0, 1e-12);
    EXPECT_NEAR(d["value"].get<double>() - d["definitional_value"].get<double>(), d["discrepancy"].get<double>(), 1e-14);
    const auto j = run_json("eval psi_q --q 0.5 --t 1,2,3");
    EXPECT_EQ(j["results"].size(), 3u);
    EXPECT_EQ(j["summary"]["passed"], 3);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("eval gamma_p --p 0 --t 1").code, 2);
    EXPECT_EQ(run("eval gamma_q --q 1.5 --t 1").code, 2);
    EXPECT_EQ(run("eval nonsense --t 1").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("eval gamma_p --p 1 --t 1 --format yaml").code, 2);
    EXPECT_EQ(run("eval gamma_p --p 1 --t 1 --no-such-flag").code, 2);
    EXPECT_EQ(run("eval psi_q --q 0.999 --t 1 --max-terms 5").code, 3);
    EXPECT_EQ(run("eval gamma_p --p 1 --t 1", "GENZGAMMA_WORKERS=zero").code, 2);
    EXPECT_EQ(run("verify-lemmas --lambda 0.5 --mu 1").code, 2);
}

TEST(Cli, ExploratoryLemmasExitZero) {
    const auto j = run_json("verify-lemmas --lambda 0.5 --mu 1 --allow-out-of-hypothesis");
    bool any = false;
    for (const auto& c : j["results"]["checks"]) any |= c["exploratory"].get<bool>();
    EXPECT_TRUE(any);
}

TEST(Cli, VerifyDefaults) {
    auto j = run_json("verify-lemmas");
    EXPECT_EQ(j["summary"]["failed"], 0);
    EXPECT_EQ(j["summary"]["inconclusive"], 0);
    EXPECT_GE(j["summary"]["passed"].get<int>(), 2000);
    j = run_json("verify-theorems --g affine --alpha 1 --beta 1");
    EXPECT_EQ(j["summary"]["failed"], 0);
    EXPECT_GT(j["summary"]["passed"].get<int>(), 0);
}

TEST(Cli, Limits) {
    const auto j = run_json("limits");
    for (const auto& path : j["results"]) EXPECT_TRUE(path["strictly_decreasing"].get<bool>()) << path["family"];
}

TEST(Cli, ExploreCsvAndMaxPoints) {
    auto r = run("explore P1 --max-points 1 --format csv");
    EXPECT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "p,q,t,value,tail_bound,verdict");
    EXPECT_FALSE(row.empty());
    EXPECT_FALSE(std::getline(lines, extra) && !extra.empty());
    r = run("explore P2 --k-range 0.25:4:16 --p-range 5 --q-range 0.5 --t-range 1 --format json");
    EXPECT_EQ(r.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["results"]["boundaries"].empty());
}

TEST(Cli, ByteIdenticalJson) {
    const auto a = run("explore P1 --format json --workers 1");
    const auto b = run("explore P1 --format json --workers 1");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto c = run("verify-lemmas --format json --workers 3");
    const auto d = run("verify-lemmas --format json --workers 3");
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, OutWritesFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "genzgamma_cli_test";
    std::filesystem::create_directories(dir);
    const auto prefix = (dir / "scan").string();
    EXPECT_EQ(run("explore P1 --max-points 50 --out " + prefix).code, 0);
    const auto csv = slurp(prefix + ".csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,q,t,value,tail_bound,verdict");
    const auto j = nlohmann::json::parse(slurp(prefix + ".json"));
    EXPECT_EQ(j["command"], "explore");
    std::filesystem::remove_all(dir);
}

TEST(Cli, IsaVariantsAgree) {
    const auto a = run_json("eval psi_k --k 0.5 --t 0.3 --isa scalar");
    const auto b = run("eval psi_k --k 0.5 --t 0.3 --isa avx2 --format json");
    if (b.code != 0) GTEST_SKIP() << "AVX2 variant unavailable";
    EXPECT_NEAR(a["results"][0]["value"].get<double>(),
                nlohmann::json::parse(b.out)["results"][0]["value"].get<double>(), 1e-13);
}
