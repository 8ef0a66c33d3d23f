#include "cli.hpp"

#include <json.hpp>

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = coulomb::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("1D Dirichlet spectrum as CSV", "[cli]") {
    Result r = call({"spectrum", "--named", "dirichlet", "--dim", "1", "--tau-max", "3.5", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "n,energy,multiplicity,tau\n"
          "1,-0.5,2,1\n"
          "2,-0.125,2,2\n"
          "3,-0.0555555555556,2,3\n");
}

TEST_CASE("3D Dirichlet spectrum as CSV", "[cli]") {
    Result r = call({"spectrum", "--dim", "3", "--named", "dirichlet", "--n-max", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,energy,multiplicity,tau\n1,-0.5,1,1\n2,-0.125,4,2\n");
}

TEST_CASE("permeability verdict from parameters", "[cli]") {
    Result r = call({"permeability", "--uparams", "1.5707963,1,0,0,0"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "v1");
    CHECK(j["verdict"] == "Impermeable");
    CHECK(j["case"] == "Case1");
}

TEST_CASE("unitary given as JSON", "[cli]") {
    const std::string ex3 = "[[[0,0.7071067811865476],[0,-0.7071067811865476]],"
                            "[[0,0.7071067811865476],[0,0.7071067811865476]]]";
    Result r = call({"permeability", "--unitary", ex3});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "Permeable");
    CHECK(j["witness"].is_object());
}

TEST_CASE("output is deterministic", "[cli]") {
    std::vector<std::string> args{"spectrum", "--uparams", "0.3,0.6,0.8,0,0", "--tau-max", "4"};
    CHECK(call(args).out == call(args).out);
}

TEST_CASE("--out writes the same bytes", "[cli]") {
    auto path = std::filesystem::temp_directory_path() / "coulomb_cli_test.json";
    Result a = call({"report"});
    Result b = call({"--out", path.string(), "report"});
    REQUIRE(b.code == 0);
    CHECK(b.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == a.out);
    std::filesystem::remove(path);
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"spectrum"}).code == 2);
    CHECK(call({"spectrum", "--named", "robin"}).code == 2);
    CHECK(call({"--hbar", "-1", "spectrum", "--named", "dirichlet"}).code == 2);
    CHECK(call({"permeability", "--uparams", "0,1,1,0,0"}).code == 2);
    CHECK(call({"eval", "--energy", "0.5"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    Result pole = call({"eval", "--energy", "-0.5"});
    CHECK(pole.code == 0);
    CHECK(nlohmann::json::parse(pole.out)["omega"].is_null());
    Result hit = call({"greens", "--energy", "-0.5", "--x", "1", "--y", "2"});
    CHECK(hit.code == 3);
    auto err = nlohmann::json::parse(hit.err.substr(0, hit.err.find('\n')));
    CHECK(err["error"]["kind"] == "EigenvalueHit");
}

TEST_CASE("global unit flags rescale energies", "[cli]") {
    Result r = call({"--kappa", "2", "spectrum", "--named", "dirichlet", "--tau-max", "1.5", "--format", "csv"});
    CHECK(r.out == "n,energy,multiplicity,tau\n1,-2,2,1\n");
}

TEST_CASE("laplace-spectrum and report", "[cli]") {
    Result r = call({"laplace-spectrum", "--n-max", "2", "--format", "csv"});
    CHECK(r.out == "n,energy,multiplicity,parity\n1,0.808616517466,1,even\n2,1.85575708149,1,odd\n");
    Result q = call({"report", "--potential", "VC", "--domain", "R-0"});
    CHECK(nlohmann::json::parse(q.out)["query"]["deficiency_index"] == 2);
}
