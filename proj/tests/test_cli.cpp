#include "job.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace splinter;

namespace {

struct CliRun {
    int code;
    std::string out;
};

/// Runs the CLI through the shell; stderr is folded into out when `merge`.
CliRun run(const std::string& args, bool merge = false, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + SPLINTER_BIN + std::string(" ") + args +
                            (merge ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect_code = 0) {
    const CliRun r = run(args + " --format json");
    EXPECT_EQ(r.code, expect_code) << args << "\n" << r.out;
    return json::parse(r.out);
}

fs::path temp_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("splinter-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string bad_catalog(const fs::path& dir) {
    json doc = json::parse(kBuiltinCatalog);
    doc["splints"][0]["phi2"]["map"][2]["image"] = {3, 1};
    const auto p = (dir / "bad.json").string();
    std::ofstream(p) << doc.dump(2);
    return p;
}

}  // namespace

TEST(ParseLabels, Forms) {
    EXPECT_EQ(cli::parse_labels("1,0"), (std::vector<std::int64_t>{1, 0}));
    EXPECT_EQ(cli::parse_labels(" 2 , 3 "), (std::vector<std::int64_t>{2, 3}));
    EXPECT_THROW(cli::parse_labels("1,,0"), InvalidInput);
    EXPECT_THROW(cli::parse_labels("1,x"), InvalidInput);
    EXPECT_THROW(cli::parse_labels("-1"), InvalidInput);
    EXPECT_THROW(cli::parse_labels(""), InvalidInput);
}

TEST(Validate, AggregatesErrors) {
    cli::JobConfig cfg;
    cfg.command = "strings";
    cfg.algebra = "A1";
    cfg.format = "xml";
    auto v = cli::validate(cfg);
    ASSERT_TRUE(std::holds_alternative<std::vector<std::string>>(v));
    const auto& errs = std::get<std::vector<std::string>>(v);
    EXPECT_GE(errs.size(), 4u);  // format, level, grade-max, weight
}

TEST(Validate, ResolvesSplintAndDefaults) {
    cli::JobConfig cfg;
    cfg.command = "verify";
    cfg.splint = "A2A2";
    cfg.algebra = "G2";
    auto v = cli::validate(cfg);
    ASSERT_TRUE(std::holds_alternative<cli::Job>(v));
    const auto& job = std::get<cli::Job>(v);
    EXPECT_EQ(job.entry->splint.qualified_name(), "G2:A2A2");
    EXPECT_EQ(job.grade_max, 4);
    EXPECT_EQ(job.identities.size(), 3u);
}

TEST(Cache, RoundTripAndKeyMismatch) {
    const fs::path dir = temp_dir("cache");
    const cli::ResultCache cache(dir);
    const RootSystem b2 = build_root_system("B2");
    const AffineWeight mu{b2.from_dynkin({0, 1}), 1, 0};
    const GradedCharacter ch = cli::cached_affine_character(cache, b2, mu, 2);
    const std::string key = cli::ResultCache::affine_key(b2, mu, 2);
    ASSERT_TRUE(fs::exists(cache.path_for(key)));
    const auto loaded = cache.load(key);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_EQ(*loaded, ch);
    EXPECT_FALSE(cache.load(cli::ResultCache::affine_key(b2, mu, 3)).has_value());
    std::ofstream(cache.path_for(key)) << "splinter-cache 1\ngarbage";
    EXPECT_FALSE(cache.load(key).has_value());
    EXPECT_EQ(cli::cached_affine_character(cache, b2, mu, 2), ch);  // recomputed and rewritten
    EXPECT_TRUE(cache.load(key).has_value());
    std::string text;
    {
        std::ifstream in(cache.path_for(key));
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto at = text.find("layer 0 ");
    ASSERT_NE(at, std::string::npos);
    const auto line = text.find('\n', at) + 1;
    text.replace(line, text.find(' ', line) - line, "zz");
    std::ofstream(cache.path_for(key)) << text;
    EXPECT_FALSE(cache.load(key).has_value());
    fs::remove_all(dir);
}

TEST(Cli, Roots) {
    const json g2 = run_json("roots --algebra G2");
    EXPECT_EQ(g2["positive_roots"].size(), 6u);
    EXPECT_EQ(g2["dual_coxeter"], json::array({4}));
    EXPECT_EQ(g2["weyl_order"], 12);
    EXPECT_EQ(run_json("roots --algebra A1")["positive_roots"].size(), 1u);
    EXPECT_EQ(run("roots --algebra X9").code, 2);
    EXPECT_EQ(run("roots").code, 2);
}

TEST(Cli, BranchWithOracle) {
    const json j = run_json("branch --algebra G2 --splint A2A2 --weight 0,1 --oracle");
    EXPECT_TRUE(j["match"].get<bool>());
    std::multiset<int> dims;
    for (const auto& e : j["table"]) dims.insert(e["dimension"].get<int>() * e["b"].get<int>());
    EXPECT_EQ(dims, (std::multiset<int>{3, 3, 8}));
    const json triv = run_json("branch --splint G2:A2A2 --weight 0,0");
    ASSERT_EQ(triv["table"].size(), 1u);
    EXPECT_EQ(triv["table"][0]["labels"], json::array({0, 0}));
}

TEST(Cli, UnknownSplintListsCatalog) {
    const CliRun r = run("branch --splint G2:B3 --weight 0,0", true);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("G2:A2A2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("B2:A1A1"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("strings --algebra A1 --weight 0 --grade-max 3").code, 2);           // no level
    EXPECT_EQ(run("strings --algebra A1 --weight 3 --level 1 --grade-max 3").code, 2);  // not integrable
    EXPECT_EQ(run("strings --algebra A1 --weight 0 --level 1 --grade-max 99").code, 2);
    EXPECT_EQ(run("qdim --algebra A1+A1 --weight 0,0 --level 1 --grade-max 1").code, 2);
    EXPECT_EQ(run("verify --splint G2:A2A2 --identity eq7").code, 2);
    EXPECT_EQ(run("splint frobnicate").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("roots --algebra G2 --format yaml").code, 2);
    const CliRun many = run("strings --algebra A1 --format yaml --weight x", true);
    EXPECT_EQ(many.code, 2);
    EXPECT_NE(many.out.find("--format"), std::string::npos);
    EXPECT_NE(many.out.find("--level"), std::string::npos);
    EXPECT_NE(many.out.find("--weight"), std::string::npos);
}

TEST(Cli, Strings) {
    const json j = run_json("strings --algebra A1 --level 1 --weight 0 --grade-max 5 --no-cache");
    ASSERT_EQ(j["strings"].size(), 3u);  // weight 2 alpha enters at grade 4
    EXPECT_EQ(j["strings"][0]["sigma"], json::array({1, 1, 2, 3, 5, 7}));
    EXPECT_EQ(j["strings"][2]["sigma"], json::array({0, 0, 0, 0, 1, 1}));
    const json z = run_json("strings --algebra A1 --level 1 --weight 0 --grade-max 0 --no-cache");
    EXPECT_EQ(z["strings"].size(), 1u);
    const json m = run_json("strings --algebra A1 --level 2 --weight 1 --grade-max 6 --emit matrix --no-cache");
    EXPECT_TRUE(m["matrix"]["consistent"].get<bool>());
    EXPECT_EQ(m["matrix"]["b"], m["matrix"]["b_from_sigma"]);
}

TEST(Cli, QdimAndAffineBranch) {
    const json q = run_json("qdim --algebra A1 --level 1 --weight 0 --grade-max 4 --no-cache");
    EXPECT_EQ(q["qdim"], json::array({1, 3, 4, 7, 13}));
    const json a = run_json("affine-branch --splint B2:A1A1 --level 1 --weight 0,0 --grade-max 2 --no-cache");
    EXPECT_TRUE(a["match"].get<bool>());
}

TEST(Cli, VerifyIdentities) {
    EXPECT_EQ(run("verify --identity denominator --splint G2:A2A2 --grade-max 6").code, 0);
    EXPECT_EQ(run("verify --identity eq6 --splint B2:A1A1 --grade-max 4").code, 0);
    const json all = run_json("verify --splint A2:A1-A1A1");
    EXPECT_TRUE(all["pass"].get<bool>());
    EXPECT_EQ(all["reports"].size(), 3u);
    const json bare = run_json("verify --splint G2:A2A2 --identity eq6-bare", 1);
    EXPECT_FALSE(bare["pass"].get<bool>());
}

TEST(Cli, CorruptedCatalogFailsVerification) {
    const fs::path dir = temp_dir("catalog");
    const std::string cat = bad_catalog(dir);
    const CliRun r = run("verify --catalog " + cat + " --splint G2:A2A2 --identity denominator");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("first mismatch"), std::string::npos) << r.out;
    EXPECT_EQ(run("splint check --catalog " + cat + " --splint G2:A2A2").code, 1);
    EXPECT_EQ(run("splint check --catalog " + cat + " --splint B2:A1A1").code, 0);
    std::ofstream(dir / "broken.json") << "{ not json";
    EXPECT_EQ(run("splint list --catalog " + (dir / "broken.json").string()).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, SplintListAndFan) {
    const json l = run_json("splint list");
    ASSERT_EQ(l["splints"].size(), 3u);
    for (const auto& s : l["splints"]) EXPECT_TRUE(s["eq9"]["applicable"].get<bool>());
    EXPECT_EQ(run_json("splint list --algebra A1")["splints"].size(), 0u);
    const json f = run_json("fan --splint G2:A2A2");
    EXPECT_EQ(f["coefficients"].size(), 6u);
    EXPECT_TRUE(f["reconstruction"].get<bool>());
}

TEST(Cli, DeterministicWithWarmCache) {
    const fs::path dir = temp_dir("warm");
    const std::string args = "strings --algebra B2 --level 1 --weight 0,1 --grade-max 3 --emit matrix --format json";
    const CliRun cold = run(args + " --cache-dir " + dir.string());
    ASSERT_EQ(cold.code, 0);
    ASSERT_FALSE(fs::is_empty(dir));
    const CliRun warm = run(args + " --cache-dir " + dir.string());
    EXPECT_EQ(warm.out, cold.out);
    const CliRun env = run(args, false, "SPLINTER_CACHE_DIR=" + dir.string());
    EXPECT_EQ(env.out, cold.out);
    const CliRun none = run(args + " --no-cache");
    EXPECT_EQ(none.out, cold.out);
    const CliRun text1 = run("qdim --algebra G2 --level 1 --weight 0,0 --grade-max 2 --cache-dir " + dir.string());
    const CliRun text2 = run("qdim --algebra G2 --level 1 --weight 0,0 --grade-max 2 --cache-dir " + dir.string());
    EXPECT_EQ(text1.out, text2.out);
    fs::remove_all(dir);
}
