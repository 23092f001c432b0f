#include "pcong/commands.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace pcong;
using namespace pcong::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("pcong_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

const std::string& modsym_file(long level) {
    static std::map<long, std::string> files;
    auto it = files.find(level);
    if (it == files.end()) {
        auto r = cmd_modsym({level, 2, 5, 12});
        REQUIRE(r.status == kOk);
        it = files.emplace(level, write("m" + std::to_string(level) + ".json", r.output)).first;
    }
    return it->second;
}

const FieldPtr Q5 = LocalField::rationals(5);

PadicPowerSeries S(std::vector<long> v, long t = 11) {
    return PadicPowerSeries::from_ints(Q5, std::vector<Int>(v.begin(), v.end()), 40, t);
}

std::string series_file(const std::string& name, const std::string& kind, const std::vector<std::pair<std::string, PadicPowerSeries>>& sections,
                        Json extra = Json::object()) {
    io::SeriesDocument doc;
    doc.header = {{"schema_version", 1}, {"kind", kind}, {"p", 5}, {"p_precision", 40}};
    doc.header.update(extra);
    for (const auto& [n, f] : sections) doc.sections.emplace_back(n, f.str());
    return write(name, io::write_document(doc));
}

}  // namespace

TEST_CASE("modsym output") {
    auto r = cmd_modsym({11, 2, 5, 12});
    REQUIRE(r.status == kOk);
    CHECK(r.output == cmd_modsym({11, 2, 5, 12}).output);
    auto doc = Json::parse(r.output);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["space"]["cuspidal_dimension"] == 2);
    CHECK(doc["space"]["sturm_bound"] == 10);
    REQUIRE(doc["eigen_symbols"]["plus"].size() == 1);
    REQUIRE(doc["eigen_symbols"]["minus"].size() == 1);
    const auto& f = doc["eigen_symbols"]["plus"][0];
    CHECK(f["eigenvalues"]["2"]["exact"] == "-2");
    CHECK(f["eigenvalues"]["3"]["exact"] == "-1");
    CHECK(f["qexpansion"][0] == "0");
    CHECK(f["qexpansion"][1] == "1");
    CHECK(f["qexpansion"][2] == "244140623");  // -2 mod 5^12
}

TEST_CASE("modsym input errors") {
    CHECK(cmd_modsym({2, 2, 5, 12}).status == kInputError);
    CHECK(cmd_modsym({11, 2, 4, 12}).status == kInputError);
    CHECK(cmd_modsym({11, 2, 5, 0}).status == kInputError);
    CHECK(cmd_modsym({11, 1, 5, 12}).status == kInputError);
}

TEST_CASE("congruence between stored forms") {
    const auto& f23 = modsym_file(23);
    auto r = cmd_congruence({f23 + ":0", f23 + ":1"});
    REQUIRE(r.status == kOk);
    auto rep = Json::parse(r.output)["report"];
    CHECK(rep["r_q"]["value"] == 1);
    CHECK(rep["r_L"]["value"] == 1);
    CHECK(rep["r_coordinates"]["value"] == 1);
    CHECK(rep["consistent"] == true);

    auto r2 = cmd_congruence({modsym_file(11), modsym_file(14)});
    REQUIRE(r2.status == kOk);
    auto rep2 = Json::parse(r2.output)["report"];
    CHECK(rep2["r_q"]["value"] == 0);
    CHECK(rep2["r_L"]["value"] == 0);
}

TEST_CASE("congruence input validation") {
    const auto& f11 = modsym_file(11);
    CHECK(cmd_congruence({f11 + ":3", f11}).status == kInputError);
    CHECK(cmd_congruence({(scratch_dir() / "missing.json").string(), f11}).status == kInputError);
    auto doc = Json::parse(read_file(f11));
    doc["schema_version"] = 7;
    CHECK(cmd_congruence({write("bad_schema.json", doc.dump()), f11}).status == kInputError);
    doc = Json::parse(read_file(f11));
    doc["eigen_symbols"]["plus"][0]["eigenvalues"]["2"]["exact"] = "3";
    CHECK(cmd_congruence({write("bad_eigen.json", doc.dump()), f11}).status == kInputError);
    doc = Json::parse(read_file(f11));
    doc["parameters"].erase("level");
    CHECK(cmd_congruence({write("no_level.json", doc.dump()), f11}).status == kInputError);
    CHECK(cmd_congruence({write("not_json.json", "{"), f11}).status == kInputError);
}

TEST_CASE("branch command") {
    BranchPair bp{5, 1, S({0, 1, 0, 1}), S({0, 1, 0, 2})};
    auto pair = write("pair.txt", io::write_document(io::pair_document(bp)));
    auto fam = series_file("fam.txt", "two_variable_family", {{"chi 0", S({0, 0, 0, 1})}, {"chi 1", S({1})}, {"psi 0", S({7})}});
    auto r = cmd_branch({pair, fam});
    REQUIRE(r.status == kOk);
    auto doc = Json::parse(r.output);
    CHECK(doc["verdicts"]["intersection"]["ord"] == 3);
    CHECK(doc["verdicts"]["intersection"]["quotient"] == 3);
    CHECK(doc["verdicts"]["taylor"]["kind"] == "pass");
    CHECK(doc["verdicts"]["sampled"]["kind"] == "pass");
    CHECK(r.output == cmd_branch({pair, fam}).output);

    auto bad = series_file("fam_bad.txt", "two_variable_family", {{"psi 0", S({7})}});
    CHECK(cmd_branch({pair, bad}).status == kFalsified);
    CHECK(cmd_branch({fam, pair}).status == kInputError);
    CHECK(cmd_branch({pair, write("garbage.txt", "{\"schema_version\":1,\"kind\":\"two_variable_family\",\"p\":5}\n--- a 0\nx y z\n")}).status ==
          kInputError);

    auto shallow = cmd_branch({pair, fam, 40, 3});
    REQUIRE(shallow.status == kOk);
    CHECK(Json::parse(shallow.output)["verdicts"]["intersection"]["lower_bound"] == true);
}

TEST_CASE("ramified model command") {
    RamifiedBranchModel m{1, 3, S({1, 1}, 7)};
    auto model = write("model.txt", io::write_document(io::model_document(m, 1)));
    auto fam = series_file("lfam.txt", "one_variable_family", {{"chi", S({0, 1}, 7)}});
    auto r = cmd_branch({model, fam});
    REQUIRE(r.status == kOk);
    auto doc = Json::parse(r.output);
    CHECK(doc["verdicts"]["pole_order"] == 2);
    CHECK(doc["verdicts"]["ramification"]["index"] == 3);

    RamifiedBranchModel m2{1, 2, S({1, 1}, 7)};
    auto model2 = write("model2.txt", io::write_document(io::model_document(m2, 1)));
    CHECK(cmd_branch({model2, series_file("lfam3.txt", "one_variable_family", {{"chi", S({0, 0, 1}, 7)}})}).status == kOk);

    // p divides e: the pole order is undetermined and reported rather than guessed.
    RamifiedBranchModel m5{1, 5, S({1, 1}, 7)};
    auto model5 = write("model5.txt", io::write_document(io::model_document(m5, 1)));
    auto r5 = cmd_branch({model5, fam});
    REQUIRE(r5.status == kOk);
    CHECK(Json::parse(r5.output)["verdicts"]["pole_order"].is_null());
}

TEST_CASE("command-line binary") {
    const char* bin = std::getenv("PCONG_CLI");
    if (!bin) SKIP("PCONG_CLI not set");
    auto status = [&](const std::string& args) {
        int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("modsym --level 11 --prime 5") == 0);
    CHECK(status("modsym --level 2 --prime 5") == 2);
    CHECK(status("modsym --prime 5") == 2);
    CHECK(status("nonsense") == 2);
    const auto& f23 = modsym_file(23);
    auto out = (scratch_dir() / "cong.json").string();
    CHECK(status("congruence " + f23 + ":0 " + f23 + ":1 --out " + out) == 0);
    CHECK(Json::parse(read_file(out))["report"]["r_q"]["value"] == 1);
}
