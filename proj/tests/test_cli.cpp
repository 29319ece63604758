#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsseq/job.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lsseq;

namespace {

const std::filesystem::path kTests = LSSEQ_TEST_DIR;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

JobResult run(const std::string& doc, const std::string& command, Emit emit = Emit::human, unsigned jobs = 1,
              Convention conv = Convention::e1) {
    return run_job(doc, JobOptions{command, emit, conv, jobs});
}

std::string command_of(const std::string& doc) {
    return nlohmann::json::parse(doc).at("command").get<std::string>();
}

}  // namespace

TEST_CASE("golden reports") {
    for (const auto& entry : std::filesystem::directory_iterator(kTests / "jobs")) {
        const std::string name = entry.path().stem().string();
        CAPTURE(name);
        const std::string doc = slurp(entry.path());
        const std::string command = command_of(doc);
        const auto human = run(doc, command);
        CHECK(human.exit_code == kSuccess);
        CHECK(human.report == slurp(kTests / "golden" / (name + ".txt")));
        const auto machine = run(doc, command, Emit::machine);
        CHECK(machine.report == slurp(kTests / "golden" / (name + ".machine.json")));
    }
}

TEST_CASE("reports are identical for any number of jobs") {
    for (const char* name : {"ncp_worked", "cohomology_torus", "check_genus", "spectral_worked"}) {
        const std::string doc = slurp(kTests / "jobs" / (std::string(name) + ".json"));
        const std::string command = command_of(doc);
        const auto one = run(doc, command, Emit::machine, 1);
        for (unsigned jobs : {2U, 4U, 8U}) CHECK(run(doc, command, Emit::machine, jobs).report == one.report);
        CHECK(run(doc, command, Emit::machine, 1).report == one.report);
    }
}

TEST_CASE("worked example report") {
    const auto r = run(slurp(kTests / "jobs" / "ncp_worked.json"), "ncp");
    REQUIRE(r.exit_code == kSuccess);
    CHECK(r.report.find("k = gcd of windings: 2") != std::string::npos);
    CHECK(r.report.find("d2[U_1] = 1 mod 2") != std::string::npos);
    CHECK(r.report.find("verdict: not RKK-trivial") != std::string::npos);

    const auto m = nlohmann::json::parse(run(slurp(kTests / "jobs" / "ncp_worked.json"), "ncp", Emit::machine).report);
    CHECK(m["k"] == 2);
    CHECK(m["d2"][0]["unit_coefficient"] == 1);
    CHECK(m["d2"][1]["unit_coefficient"] == 0);
    CHECK(m["rkk_trivial"] == false);
    CHECK(m["assembled"][0]["graded_pieces"][2]["group"] == "Z");
}

TEST_CASE("cohomology table") {
    const auto m = nlohmann::json::parse(run(slurp(kTests / "jobs" / "cohomology_torus.json"), "cohomology", Emit::machine).report);
    REQUIRE(m["groups"].size() == 3);
    CHECK(m["groups"][0]["group"] == "Z");
    CHECK(m["groups"][1]["group"] == "Z^2");
    CHECK(m["groups"][2]["group"] == "Z");
    const auto classical = run(slurp(kTests / "jobs" / "cohomology_torus.json"), "cohomology", Emit::machine, 1,
                               Convention::classical);
    CHECK(nlohmann::json::parse(classical.report)["groups"] == m["groups"]);
}

TEST_CASE("input errors exit with code 2") {
    const auto bad_row = run(R"j({"complex":"torus2","system":{"rank":2,"monodromy":[[[1,0],[0]],[[1,0],[0,1]]]}})j",
                             "cohomology");
    CHECK(bad_row.exit_code == kInputError);
    CHECK(bad_row.report.empty());
    CHECK(bad_row.diagnostic.find("malformed matrix row") != std::string::npos);

    const auto syntax = run("{\"complex\": \"torus2\",\n \"system\": {\"rank\": 1,}}", "cohomology");
    CHECK(syntax.exit_code == kInputError);
    CHECK(syntax.diagnostic.find("parse error at byte") != std::string::npos);

    CHECK(run(R"j({"complex":"klein","system":{"rank":1}})j", "cohomology").exit_code == kInputError);
    CHECK(run(R"j({"complex":"torus2"})j", "cohomology").exit_code == kInputError);
    CHECK(run(R"j([1,2])j", "cohomology").exit_code == kInputError);
    CHECK(run(R"j({"command":"ncp","complex":"torus2","system":{"rank":1}})j", "cohomology").exit_code == kInputError);
    CHECK(run(R"j({"complex":"torus2","system":{"rank":1}})j", "homology").exit_code == kInputError);

    const auto relation = run(R"j({"complex":"torus2","system":{"rank":2,
        "monodromy":[[[1,1],[0,1]],[[0,1],[1,0]]]}})j", "cohomology");
    CHECK(relation.exit_code == kInputError);
    CHECK(relation.diagnostic.find("relation violated") != std::string::npos);

    const auto singular = run(R"j({"complex":"circle(3)","system":{"rank":1,"monodromy":[[[2]]]}})j", "cohomology");
    CHECK(singular.exit_code == kInputError);
    CHECK(singular.diagnostic.find("not unimodular") != std::string::npos);

    CHECK(run(R"j({"rank":2,"action":[[[1,1],[0,1]],[[0,1],[1,0]]]})j", "group-cohomology").exit_code == kInputError);
    CHECK(run(R"j({"bundle":{"windings":[1],"chern":[0,0]}})j", "ncp").exit_code == kInputError);
    CHECK(run(R"j({"complex":"torus2","bundle":{"even":{"rank":1},"odd":{"rank":1}},
        "d2":[{"from":[0,1],"matrix":[[1,1]]}]})j", "spectral").exit_code == kInputError);
}

TEST_CASE("computation failures exit with code 1") {
    // transports that are individually invertible but not flat
    std::string transports;
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) {
            if (!transports.empty()) transports += ",";
            const char* m = (u == 0 && v == 1) ? "[[1,1],[0,1]]" : "[[1,0],[0,1]]";
            transports += R"j({"edge":[)j" + std::to_string(u) + "," + std::to_string(v) + R"j(],"matrix":)j" + m + "}";
        }
    const std::string doc = R"j({"complex":"simplex(2)","system":{"rank":2,"transports":[)j" + transports + "]}}";
    const auto coh = run(doc, "cohomology");
    CHECK(coh.exit_code == kInvariantFailure);
    CHECK(coh.diagnostic.find("flatness violation") != std::string::npos);

    const auto check = run(doc, "check");
    CHECK(check.exit_code == kInvariantFailure);
    CHECK(check.report.find("FAIL") != std::string::npos);
}

TEST_CASE("integers beyond 64 bits travel as strings") {
    const auto r = run(R"j({"bundle":{"windings":["200000000000000000000","0"],"chern":[1,0]}})j", "ncp", Emit::machine);
    REQUIRE(r.exit_code == kSuccess);
    const auto m = nlohmann::json::parse(r.report);
    CHECK(m["k"] == "200000000000000000000");
    CHECK(m["windings"][0] == "200000000000000000000");
    CHECK(m["windings"][1] == 0);
    CHECK(m["d2"][0]["unit_coefficient"] == 1);
    CHECK(m["pages"][0]["entries"][4]["group"]["torsion"][0] == "200000000000000000000");
}
