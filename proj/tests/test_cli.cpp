#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "xforge/cli.hpp"
#include "xforge/serialize.hpp"

using namespace xforge;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
 public:
    TempDir() : path_(fs::temp_directory_path() / ("xforge_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream(path, std::ios::binary) << bytes;
}

Json report_of(const std::string& path) { return Json::parse(slurp(path)); }

}  // namespace

TEST_CASE("params qproof at n=24, b=4, epsilon=1/8") {
    TempDir dir;
    const Result r = run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "1/8", "--out",
                          dir.file("spec.json"), "--report", dir.file("report.json")});
    REQUIRE(r.code == cli::kPass);
    const Json report = report_of(dir.file("report.json"));
    CHECK(report.at("totalError").get<double>() == doctest::Approx(0.375));
    CHECK(report.at("kind") == "block");
    CHECK(report.at("outputBits") == 4);
    const AnySpec spec = parse_spec(slurp(dir.file("spec.json")));
    CHECK(std::holds_alternative<HighEntropySpec>(spec));
    CHECK(report.at("specHash") == cli::sha256_hex(canonical_text(spec)));
}

TEST_CASE("params is idempotent") {
    const std::vector<std::string> args{"params", "--mode", "storage", "--n", "1024", "--k", "512",
                                        "--beta", "0.25", "--eps", "0.125"};
    const Result a = run(args), b = run(args);
    REQUIRE(a.code == cli::kPass);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"kind\": \"pipeline\"") != std::string::npos);
    CHECK(run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "0.125"}).out ==
          run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "1/8"}).out);
}

TEST_CASE("params rejects beta >= 1/2 and other infeasible requests") {
    const Result r = run({"params", "--mode", "flat", "--n", "1024", "--k", "512", "--beta", "0.5", "--eps", "0.125"});
    CHECK(r.code == cli::kInfeasible);
    CHECK(r.err.find("beta < 1/2") != std::string::npos);
    const Result q = run({"params", "--mode", "qproof", "--n", "24", "--b", "9", "--eps", "1/8"});
    CHECK(q.code == cli::kInfeasible);
    CHECK(q.err.find("b < n/2 - log2(1/epsilon)") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"params", "--mode", "qproof", "--n", "24", "--eps", "1/8"}).code == cli::kUsage);
    CHECK(run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "2"}).code == cli::kUsage);
    CHECK(run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "abc"}).code == cli::kUsage);
    CHECK(run({"params", "--mode", "nonsense", "--n", "24"}).code == cli::kUsage);
    CHECK(run({"verify", "--target", "lemmas", "--budget", "0"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kPass);
}

TEST_CASE("extract: zero input gives zero output, replay is identical") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "trevisan", "--n", "64", "--m", "8", "--eps", "1/8", "--out",
                 dir.file("spec.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    const std::size_t t = report_of(dir.file("p.json")).at("seedBits").get<std::size_t>();
    std::string seed(2 * ((t + 7) / 8), '0');
    seed[0] = '5';
    seed[2] = 'c';
    spit(dir.file("zero.bin"), std::string(8, '\0'));
    REQUIRE(run({"extract", "--spec", dir.file("spec.json"), "--in", dir.file("zero.bin"), "--seed", seed, "--out",
                 dir.file("z.bin"), "--report", dir.file("z.json")})
                .code == cli::kPass);
    CHECK(slurp(dir.file("z.bin")) == std::string(1, '\0'));

    spit(dir.file("x.bin"), "arbitrary source bytes");
    const std::vector<std::string> args{"extract", "--spec", dir.file("spec.json"), "--in", dir.file("x.bin"),
                                        "--seed", seed, "--out", dir.file("a.bin"), "--report", dir.file("a.json")};
    REQUIRE(run(args).code == cli::kPass);
    const std::string first = slurp(dir.file("a.bin"));
    REQUIRE(run(args).code == cli::kPass);
    CHECK(slurp(dir.file("a.bin")) == first);
    const Json report = report_of(dir.file("a.json"));
    CHECK(report.at("specHash").get<std::string>().size() == 64);
    CHECK(report.at("outputSha256") == cli::sha256_hex(first));
    CHECK(report.at("outputBits") == 8);
    CHECK(report.at("seedSource") == "hex");
    CHECK(report.at("ignoredInputBits") == 22 * 8 - 64);

    const auto seed_bytes = BitString::from_hex(seed, t).to_bytes();
    spit(dir.file("seed.bin"), std::string(seed_bytes.begin(), seed_bytes.end()));
    REQUIRE(run({"extract", "--spec", dir.file("spec.json"), "--in", dir.file("x.bin"), "--seed-file",
                 dir.file("seed.bin"), "--out", dir.file("b.bin"), "--report", dir.file("b.json")})
                .code == cli::kPass);
    CHECK(slurp(dir.file("b.bin")) == first);
    CHECK(report_of(dir.file("b.json")).at("seedSource") == "file");
}

TEST_CASE("extract error codes") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "toeplitz", "--n", "16", "--m", "4", "--out", dir.file("spec.json"),
                 "--report", dir.file("p.json")})
                .code == cli::kPass);
    spit(dir.file("short.bin"), "a");
    spit(dir.file("x.bin"), "abcd");
    spit(dir.file("bad.json"), "{\"kind\": \"toeplitz\", \"n\": 2, \"m\": 5}");
    const std::string seed = "001102";  // 19 bits in 3 bytes
    auto extract = [&](const std::string& spec, const std::string& in, std::vector<std::string> seed_args) {
        std::vector<std::string> args{"extract", "--spec", spec, "--in", in, "--out", dir.file("o.bin"),
                                      "--report", dir.file("r.json")};
        args.insert(args.end(), seed_args.begin(), seed_args.end());
        return run(args).code;
    };
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {"--seed", seed}) == cli::kPass);
    CHECK(extract(dir.file("spec.json"), dir.file("short.bin"), {"--seed", seed}) == cli::kShortInput);
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {"--seed", "0011"}) == cli::kSeedMismatch);
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {"--seed", "0011ff"}) == cli::kSeedMismatch);
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {"--seed-file", dir.file("short.bin")}) ==
          cli::kSeedMismatch);
    CHECK(extract(dir.file("missing.json"), dir.file("x.bin"), {"--seed", seed}) == cli::kUnreadableSpec);
    CHECK(extract(dir.file("bad.json"), dir.file("x.bin"), {"--seed", seed}) == cli::kUnreadableSpec);
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {}) == cli::kUsage);
    CHECK(extract(dir.file("spec.json"), dir.file("x.bin"), {"--seed", seed, "--seed-file", dir.file("x.bin")}) ==
          cli::kUsage);
}

TEST_CASE("system entropy seeds are logged") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "toeplitz", "--n", "16", "--m", "4", "--out", dir.file("spec.json"),
                 "--report", dir.file("p.json")})
                .code == cli::kPass);
    spit(dir.file("x.bin"), "abcd");
    const Result r = run({"extract", "--spec", dir.file("spec.json"), "--in", dir.file("x.bin"), "--seed", "system",
                          "--out", dir.file("o.bin"), "--report", dir.file("r.json")});
    REQUIRE(r.code == cli::kPass);
    CHECK(r.err.find("seed drawn from system entropy") != std::string::npos);
    const Json report = report_of(dir.file("r.json"));
    CHECK(report.at("seedSource") == "system");
    CHECK(r.err.find(report.at("seedHex").get<std::string>()) != std::string::npos);
}

TEST_CASE("throughput is recorded for a 1 MiB input") {
    TempDir dir;
    const std::size_t n = std::size_t{8} << 20;
    REQUIRE(run({"params", "--mode", "toeplitz", "--n", std::to_string(n), "--m", "64", "--out",
                 dir.file("spec.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    std::string source(1 << 20, '\0');
    for (std::size_t i = 0; i < source.size(); ++i) source[i] = static_cast<char>((i * 2654435761U) >> 13);
    spit(dir.file("x.bin"), source);
    spit(dir.file("seed.bin"), std::string((n + 64 - 1 + 7) / 8, '\x5a'));
    REQUIRE(run({"extract", "--spec", dir.file("spec.json"), "--in", dir.file("x.bin"), "--seed-file",
                 dir.file("seed.bin"), "--out", dir.file("o.bin"), "--report", dir.file("r.json")})
                .code == cli::kPass);
    const Json report = report_of(dir.file("r.json"));
    CHECK(report.at("inputBits") == n);
    CHECK(report.at("ignoredInputBits") == 0);
    CHECK(report.at("inputBitsPerSecond").get<double>() > 0);
    CHECK(slurp(dir.file("o.bin")).size() == 8);
}

TEST_CASE("verify design and pipeline on a block spec") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "1/8", "--out",
                 dir.file("q.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    Result r = run({"verify", "--target", "design", "--spec", dir.file("q.json"), "--report", dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    CHECK(r.out == "verify design: pass\n");
    r = run({"verify", "--target", "pipeline", "--spec", dir.file("q.json"), "--samples", "200", "--report",
             dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    CHECK(report_of(dir.file("r.json")).at("testSeed") == 1);
}

TEST_CASE("verify code: exhaustive weights or inconclusive") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "trevisan", "--n", "12", "--m", "2", "--eps", "1/4", "--out",
                 dir.file("t.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    Result r = run({"verify", "--target", "code", "--spec", dir.file("t.json"), "--report", dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    const Json check = report_of(dir.file("r.json")).at("checks").at(0);
    CHECK(check.at("pass") == true);
    CHECK(check.at("measuredDistance").at("value").get<double>() >= check.at("designedDistance").at("value").get<double>());
    r = run({"verify", "--target", "code", "--spec", dir.file("t.json"), "--budget", "10", "--report",
             dir.file("r.json")});
    CHECK(r.code == cli::kInconclusive);
    CHECK(r.out == "verify code: inconclusive\n");
}

TEST_CASE("sha256 of a known string") {
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("verify lemmas echoes the test seed") {
    TempDir dir;
    const Result r = run({"verify", "--target", "lemmas", "--samples", "40", "--test-seed", "99", "--report",
                          dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    const Json report = report_of(dir.file("r.json"));
    CHECK(report.at("testSeed") == 99);
    CHECK(report.at("checks").at(0).at("violations") == 0);
}

TEST_CASE("verify extractor passes a real spec and fails the constant stub") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "toeplitz", "--n", "10", "--m", "2", "--out", dir.file("t.json"), "--report",
                 dir.file("p.json")})
                .code == cli::kPass);
    Result r = run({"verify", "--target", "extractor", "--spec", dir.file("t.json"), "--k", "6", "--samples", "20",
                    "--report", dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    CHECK(report_of(dir.file("r.json")).at("checks").at(0).at("threshold").at("exact") == "1/4");

    spit(dir.file("stub.json"), canonical_text(ConstantSpec{10, 4, BitString::from_string("0")}));
    r = run({"verify", "--target", "extractor", "--spec", dir.file("stub.json"), "--k", "6", "--eps", "1/4",
             "--samples", "5", "--report", dir.file("r.json")});
    CHECK(r.code == cli::kFail);
    CHECK(r.out == "verify extractor: fail\n");
    CHECK(report_of(dir.file("r.json")).at("checks").at(0).at("worstDistance").at("exact") == "1/2");

    r = run({"verify", "--target", "extractor", "--spec", dir.file("t.json"), "--k", "6", "--budget", "100",
             "--report", dir.file("r.json")});
    CHECK(r.code == cli::kInconclusive);
}

TEST_CASE("verify condenser on a small spec") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "condenser", "--n", "12", "--k", "6", "--eps", "1/4", "--out",
                 dir.file("c.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    const Result r = run({"verify", "--target", "condenser", "--spec", dir.file("c.json"), "--samples", "3",
                          "--report", dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    CHECK(run({"verify", "--target", "extractor", "--spec", dir.file("c.json"), "--k", "6"}).code == cli::kUsage);
}

TEST_CASE("bench reports timing") {
    TempDir dir;
    REQUIRE(run({"params", "--mode", "qproof", "--n", "24", "--b", "4", "--eps", "1/8", "--out",
                 dir.file("q.json"), "--report", dir.file("p.json")})
                .code == cli::kPass);
    const Result r = run({"bench", "--spec", dir.file("q.json"), "--samples", "100", "--report", dir.file("r.json")});
    CHECK(r.code == cli::kPass);
    CHECK(report_of(dir.file("r.json")).at("evaluations") == 100);
}

TEST_CASE("the installed binary returns the same exit codes") {
    const std::string tool = XFORGE_TOOL_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("params --mode qproof --n 24 --b 4 --eps 1/8") == cli::kPass);
    CHECK(status("params --mode storage --n 1024 --k 512 --beta 0.6 --eps 1/8") == cli::kInfeasible);
    CHECK(status("params --bogus") == cli::kUsage);
    CHECK(status("verify --target extractor --spec /nonexistent/spec.json --k 3") == cli::kUnreadableSpec);
}
