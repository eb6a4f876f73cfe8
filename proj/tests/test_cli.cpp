#include "mgn/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = mgn::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

mgn::Json json_of(const Result& r) { return mgn::Json::parse(r.out); }

}  // namespace

TEST(Cli, BignessCertifyJson) {
    auto r = run({"bigness-certify", "--n", "15", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["n"], 15);
    EXPECT_EQ(j["s"], "1823/504");
    EXPECT_EQ(j["t"], "15/56");
    EXPECT_EQ(j["epsilon_max"], "5/1512");
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["binding"], "delta_irr");
    EXPECT_EQ(j["coefficients"]["delta_irr"], "5/504");
    EXPECT_EQ(j["coefficients"]["delta_0_2"], "13/56");
}

TEST(Cli, BignessFailureExitCode) {
    auto r = run({"bigness-certify", "--n", "14", "--format", "json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json_of(r)["binding_value"], "-1/36");
    EXPECT_EQ(run({"bigness-certify", "--n", "13"}).code, 2);
}

TEST(Cli, Sweep) {
    EXPECT_EQ(run({"bigness-sweep", "--from", "14", "--to", "100"}).code, 0);
    auto strict = run({"bigness-sweep", "--from", "14", "--to", "100", "--strict"});
    EXPECT_EQ(strict.code, 1);
    EXPECT_EQ(run({"bigness-sweep", "--from", "15", "--to", "100", "--strict"}).code, 0);
    auto j = json_of(run({"bigness-sweep", "--from", "14", "--to", "30", "--format", "json"}));
    ASSERT_EQ(j.size(), 17u);
    int fails = 0;
    for (const auto& c : j) fails += c["verdict"] == "fail";
    EXPECT_EQ(fails, 1);
    EXPECT_EQ(j[0]["n"], 14);
}

TEST(Cli, RigidComponent) {
    auto r = run({"rigid-component", "--n", "20", "--m", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "12\n");
    EXPECT_EQ(run({"rigid-component", "--n", "40", "--m", "5"}).out, "20\n");
    EXPECT_EQ(run({"rigid-component", "--n", "5", "--set", "1,2", "--i", "0"}).code, 2);
}

TEST(Cli, ReidTai) {
    auto r = run({"reid-tai-classify", "--order", "6", "--exponents", "1,2,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("non-canonical; lifts given vanishing b1 >= m", 0), 0u) << r.out;
    auto j = json_of(run({"reid-tai-classify", "--order", "6", "--exponents", "1,2,0", "--vanishing", "2,0,0", "--m",
                          "2", "--format", "json"}));
    EXPECT_EQ(j["canonical"], false);
    EXPECT_EQ(j["reduced"]["order"], 3);
    EXPECT_EQ(j["juniors"][0]["age"], "2/3");
    EXPECT_EQ(j["lifts"], true);
    EXPECT_EQ(run({"reid-tai-classify", "--order", "6", "--exponents", "4,2,3"}).out.rfind("canonical", 0), 0u);
    EXPECT_EQ(run({"reid-tai-classify", "--order", "6", "--exponents", "1,x"}).code, 2);
    EXPECT_EQ(run({"reid-tai-classify", "--order", "6", "--exponents", "2,4"}).code, 2);
}

TEST(Cli, EllipticTailAndTable) {
    auto r = run({"elliptic-tail-classify", "--eigenvalues", "1/6,1/3,1,1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("lifts given vanishing b1 >= m"), std::string::npos);
    EXPECT_EQ(json_of(run({"elliptic-tail-classify", "--eigenvalues", "i,-1,1", "--format", "json"}))["verdict"],
              "canonical");
    EXPECT_EQ(run({"elliptic-tail-classify", "--eigenvalues", "1/5,1"}).code, 2);
    auto t = json_of(run({"table1", "--format", "json"}));
    ASSERT_EQ(t.size(), 8u);
    EXPECT_EQ(t[6]["age"], "1/2");
    EXPECT_EQ(t[3]["age"], "1/3");
}

TEST(Cli, ClassRoundTripIsByteIdentical) {
    for (std::vector<std::string> args : {std::vector<std::string>{"class", "--name", "canonical", "--n", "4"},
                                          std::vector<std::string>{"class", "--name", "omega_total", "--n", "3"},
                                          std::vector<std::string>{"class", "--name", "canonical", "--n", "60"},
                                          std::vector<std::string>{"class", "--name", "farkas", "--symmetric"}}) {
        args.insert(args.end(), {"--format", "json"});
        auto first = run(args);
        ASSERT_EQ(first.code, 0) << first.err;
        std::string path = std::string(MGN_TEST_DATA_DIR) + "/roundtrip.json";
        std::ofstream(path) << first.out;
        auto second = run({"class", "--input", path, "--format", "json"});
        EXPECT_EQ(second.code, 0) << second.err;
        EXPECT_EQ(second.out, first.out);
    }
}

TEST(Cli, PullbackAndGamma) {
    auto j = json_of(run({"pullback", "--name", "psi", "--g", "3", "--n", "1", "--to", "2", "--format", "json"}));
    EXPECT_EQ(j["coeffs"]["psi_1"], "+1/1");
    EXPECT_EQ(j["coeffs"]["delta_0_{1,2}"], "-1/1");
    auto s = json_of(run({"pullback", "--name", "hyperelliptic", "--symmetric", "--to", "30", "--format", "json"}));
    EXPECT_EQ(s["coeffs"]["delta_1_0"], "-3/1");
    EXPECT_EQ(run({"intersect-gamma", "--name", "canonical", "--n", "7", "--m", "2"}).out, "-4/3\n");
    EXPECT_EQ(run({"intersect-gamma", "--name", "kappa1", "--n", "30"}).out, "1/12\n");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"bigness-certify", "--n", "15", "--bogus"}).code, 2);
    EXPECT_EQ(run({"bigness-certify", "--n", "15", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"class", "--name", "canonical", "--g", "1", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"class", "--name", "nope", "--n", "2"}).code, 2);
    auto h = run({"bigness-certify", "--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("--n"), std::string::npos);
}

TEST(Cli, Deterministic) {
    for (std::vector<std::string> args : {std::vector<std::string>{"bigness-sweep", "--from", "14", "--to", "60"},
                                          std::vector<std::string>{"table1"},
                                          std::vector<std::string>{"class", "--name", "canonical", "--n", "6"}})
        EXPECT_EQ(run(args).out, run(args).out);
}
