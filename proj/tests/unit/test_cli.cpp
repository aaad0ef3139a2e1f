#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qppldpc/code_spec.hpp"
#include "qppldpc/gf2.hpp"
#include "qppldpc/tanner.hpp"

using namespace qppldpc;
using nlohmann::json;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(QPPLDPC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("construct exports an alist matching the library build") {
    const std::string alist = "/tmp/qppldpc_test_code1.alist";
    REQUIRE(run(std::string("construct --spec ") + QPPLDPC_CODES_DIR + "/code1.json --alist " + alist) == 0);
    const CodeSpec spec = load_code_spec(std::string(QPPLDPC_CODES_DIR) + "/code1.json");
    const SparseBitMatrix expected = TannerGraph(spec.profile(), spec.qpp()).to_parity_check();
    CHECK(from_alist(slurp(alist)) == expected);
    std::remove(alist.c_str());
}

TEST_CASE("qc then dmin reproduces the published bound for the smallest code") {
    const std::string weights = "/tmp/qppldpc_test_code1_w.json";
    const std::string out = "/tmp/qppldpc_test_code1_dmin.json";
    REQUIRE(run(std::string("qc --spec ") + QPPLDPC_CODES_DIR + "/code1.json --weights " + weights) == 0);
    REQUIRE(run(std::string("dmin --weights ") + weights + " --out " + out) == 0);
    const json res = json::parse(slurp(out));
    CHECK(res.at("bound").get<int>() == 22);
    std::remove(weights.c_str());
    std::remove(out.c_str());
}

TEST_CASE("malformed spec files fail with a nonzero exit") {
    const std::string bad = "/tmp/qppldpc_test_bad.json";
    {
        std::ofstream os(bad);
        os << R"({"name":"bad","lambda":3,"rho":6,"n":504,"N":1000,"f1":5,"f2":210})";
    }
    CHECK(run("construct --spec " + bad) != 0);
    {
        std::ofstream os(bad);
        os << R"({"name":"bad","lambda":3,"rho":6,"n":504,"N":"x","f1":5,"f2":210})";
    }
    CHECK(run("construct --spec " + bad) != 0);
    CHECK(run("construct --spec /tmp/qppldpc_does_not_exist.json") != 0);
    std::remove(bad.c_str());
}

TEST_CASE("simulate writes consistent CSV counters") {
    const std::string csv = "/tmp/qppldpc_test_sim.csv";
    REQUIRE(run(std::string("simulate --spec ") + QPPLDPC_CODES_DIR +
                "/code1.json --ebno 1.0 --max-frames 300 --stop-errors 20 --iters 10 --seed 5 --out " +
                csv) == 0);
    std::ifstream is(csv);
    std::string header, row;
    REQUIRE(std::getline(is, header));
    CHECK(header == "ebno_db,frames,bit_errors,frame_errors,detected,undetected,ber,fer");
    REQUIRE(std::getline(is, row));
    double ebno, ber, fer;
    long long frames, bit_errors, frame_errors, detected, undetected;
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream rs(row);
    REQUIRE((rs >> ebno >> frames >> bit_errors >> frame_errors >> detected >> undetected >> ber >> fer));
    CHECK(frame_errors == detected + undetected);
    CHECK(fer == doctest::Approx(static_cast<double>(frame_errors) / frames));
    std::remove(csv.c_str());
}

TEST_CASE("spec round trip preserves every field") {
    const CodeSpec spec = load_code_spec(std::string(QPPLDPC_CODES_DIR) + "/code9.json");
    const std::string path = "/tmp/qppldpc_test_spec.json";
    save_code_spec(spec, path);
    const CodeSpec back = load_code_spec(path);
    CHECK(back.name == spec.name);
    CHECK(back.lambda == spec.lambda);
    CHECK(back.rho == spec.rho);
    CHECK(back.n == spec.n);
    CHECK(back.edges == spec.edges);
    CHECK(back.f1 == spec.f1);
    CHECK(back.f2 == spec.f2);
    CHECK(back.k_expected == spec.k_expected);
    std::remove(path.c_str());
}
