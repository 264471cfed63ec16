#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cadph/cli.hpp"
#include "cadph/diagram.hpp"
#include "cadph/oracle.hpp"
#include "support.hpp"

using namespace cadph;
using namespace support;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "cadph-test-cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_doc(const std::string& name, const json& doc) {
    const auto path = scratch(name);
    std::ofstream(path) << doc.dump(2);
    return path.string();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("validate exit codes") {
    CHECK(run({"validate", fixture("triangle.json")}).code == exit_ok);

    auto bad = run({"validate", fixture("edge_before_vertex.json")});
    CHECK(bad.code == exit_invalid);
    CHECK(std::count(bad.out.begin(), bad.out.end(), '\n') == 1);

    auto js = run({"validate", fixture("edge_before_vertex.json"), "--json"});
    CHECK(js.code == exit_invalid);
    const auto doc = json::parse(js.out);
    CHECK(doc["valid"] == false);
    CHECK(doc["violations"].size() == 1);

    auto field = run({"validate", fixture("bad_field.json")});
    CHECK(field.code == exit_usage);
    CHECK_FALSE(field.err.empty());
    CHECK(run({"validate", fixture("unknown_face.json")}).code == exit_usage);
    CHECK(run({"validate", fixture("does_not_exist.json")}).code == exit_usage);
    CHECK(run({"validate", fixture("triangle.json"), "--field", "gf:9"}).code == exit_usage);
    CHECK(run({"validate", fixture("triangle.json"), "--field", "rational"}).code == exit_ok);

    const auto broken = scratch("broken.json");
    std::ofstream(broken) << "{\"format_version\": 1, \"poset\": ";
    CHECK(run({"validate", broken.string()}).code == exit_usage);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == exit_usage);
    CHECK(run({"frobnicate"}).code == exit_usage);
    CHECK(run({"diagram"}).code == exit_usage);
    CHECK(run({"diagram", fixture("triangle.json"), "--method", "guess"}).code == exit_usage);
    CHECK(run({"diagram", fixture("triangle.json"), "--mode", "sideways"}).code == exit_usage);
    CHECK(run({"diagram", fixture("triangle.json"), "--json", "--csv"}).code == exit_usage);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("diagram on the triangle") {
    auto r = run({"diagram", fixture("triangle.json"), "--degree", "1"});
    REQUIRE(r.code == exit_ok);
    auto doc = json::parse(r.out);
    CHECK(doc["format_version"] == 1);
    CHECK(doc["entries"] == json::parse(R"([{"degree":1,"birth":[1],"death":[2],"multiplicity":1}])"));

    r = run({"diagram", fixture("triangle.json"), "--degree", "0"});
    doc = json::parse(r.out);
    CHECK(doc["entries"] == json::parse(R"([{"degree":0,"birth":[0],"death":[1],"multiplicity":2},
                                             {"degree":0,"birth":[0],"death":"inf","multiplicity":1}])"));

    r = run({"diagram", fixture("triangle.json"), "--csv"});
    CHECK(r.out == "degree,birth,death,multiplicity\n0,0,1,2\n0,0,inf,1\n1,1,2,1\n");

    // Both methods and both modes agree on a chain.
    for (const char* method : {"derivative", "lifespan"})
        for (const char* mode : {"full", "principal"})
            CHECK(run({"diagram", fixture("triangle.json"), "--csv", "--method", method, "--mode", mode}).out == r.out);

    CHECK(json::parse(run({"diagram", fixture("triangle.json"), "--degree", "7"}).out)["entries"].empty());

    const auto all = json::parse(run({"diagram", fixture("triangle.json"), "--degree", "1", "--all"}).out);
    CHECK(all["entries"].size() == enumerate_diagram_pairs(FinitePoset::chain(3)).size());
}

TEST_CASE("diagram on the bifiltration") {
    auto r = run({"diagram", fixture("bifiltration.json"), "--degree", "1"});
    REQUIRE(r.code == exit_ok);
    CHECK(json::parse(r.out)["entries"] ==
          json::parse(R"([{"degree":1,"birth":[[1,1]],"death":[[2,2]],"multiplicity":1}])"));
    CHECK(run({"diagram", fixture("bifiltration.json"), "--degree", "1", "--csv"}).out ==
          "degree,birth,death,multiplicity\n1,\"(1,1)\",\"(2,2)\",1\n");
    CHECK(run({"diagram", fixture("diamond.json")}).code == exit_ok);
}

TEST_CASE("diagram output round-trips") {
    const auto spec = load_fixture("bifiltration.json");
    const auto js = run({"diagram", fixture("bifiltration.json"), "--all"});
    const auto csv = run({"diagram", fixture("bifiltration.json"), "--all", "--csv"});
    const auto from_json = diagram_from_json(spec.poset, json::parse(js.out));
    const auto from_csv = diagram_from_csv(spec.poset, csv.out);
    CHECK(from_json == from_csv);
    CHECK(diagram_to_json(spec.poset, from_json).dump(2) + "\n" == js.out);
    CHECK(diagram_to_csv(spec.poset, from_csv) == csv.out);

    auto k = FilteredComplex<PrimeField>::build(spec, gf2);
    Memory<PrimeField> mem(k);
    DiagramOptions opt;
    opt.all = true;
    CHECK(from_json == compute_full_diagram(mem, opt));
}

TEST_CASE("barcode") {
    auto r = run({"barcode", fixture("triangle.json")});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out == "H0 [0, 1) x2\nH0 [0, inf)\nH1 [1, 2)\n");

    CHECK(run({"barcode", fixture("two_points.json")}).out == "H0 [0, inf) x2\n");
    CHECK(run({"barcode", fixture("circle.json")}).out.find("H1 [1, inf)") != std::string::npos);
    r = run({"barcode", fixture("empty.json")});
    CHECK(r.code == exit_ok);
    CHECK(r.out.empty());

    auto nonchain = run({"barcode", fixture("bifiltration.json")});
    CHECK(nonchain.code == exit_usage);
    CHECK(nonchain.err.find("diagram") != std::string::npos);

    const auto bars = json::parse(run({"barcode", fixture("triangle.json"), "--json"}).out);
    CHECK(bars["bars"].size() == 3);
    CHECK(bars["bars"][1]["death"] == "inf");

    const auto svg = scratch("triangle.svg");
    std::filesystem::remove(svg);
    CHECK(run({"barcode", fixture("triangle.json"), "--svg", svg.string()}).code == exit_ok);
    const auto drawing = slurp(svg);
    CHECK(drawing.rfind("<svg", 0) == 0);
    CHECK(drawing.find("</svg>") != std::string::npos);
}

TEST_CASE("barcode agrees with the oracle on random chains") {
    Rng rng(61);
    for (int t = 0; t < 25; ++t) {
        RandomComplexOptions opt;
        opt.shape = {static_cast<long>(uniform(rng, 1, 6))};
        opt.max_cells = 25;
        opt.max_dim = 3;
        const auto spec = random_complex(opt, rng);
        const auto path = write_doc("chain.json", document_to_json(spec));
        const auto ours = json::parse(run({"barcode", path, "--json"}).out);
        auto k = FilteredComplex<PrimeField>::build(spec, gf2);
        CHECK(ours == bars_to_json(spec.poset, oracle_barcode(k)));
    }
}

TEST_CASE("blankets") {
    auto r = run({"blankets", fixture("fig3.json"), "--birth", "{(1,1)}", "--death", "{(4,4)}"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out == "({(1,1)}, {(3,3)})\n({(1,0)}, {(4,4)})\n({(0,1)}, {(4,4)})\n");

    r = run({"blankets", fixture("fig4.json"), "--birth", "{(2,2)}", "--death", "{(2,4)}", "--mode", "principal"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out == "({(2,2)}, {(2,2)})\n({(2,0)}, {(2,4)})\n({(0,2)}, {(2,4)})\n");

    r = run({"blankets", fixture("fig4.json"), "--birth", "{(2,2)}", "--death", "{(2,4)}", "--degree", "0"});
    CHECK(r.out == "({(2,2)}, {(2,4)})\n");

    auto bad = run({"blankets", fixture("fig4.json"), "--birth", "{(2,4)}", "--death", "{(2,2)}"});
    CHECK(bad.code == exit_invalid);
    CHECK(bad.err.find("{(2,2)}") != std::string::npos);
    CHECK(bad.err.find("{(2,4)}") != std::string::npos);
    CHECK(run({"blankets", fixture("fig4.json"), "--birth", "{(9,9)}", "--death", "inf"}).code == exit_usage);

    const auto js = json::parse(
        run({"blankets", fixture("fig3.json"), "--birth", "{(1,1)}", "--death", "inf", "--json"}).out);
    CHECK(js["pair"]["death"] == "inf");
    CHECK(js["degree"] == 1);
    CHECK(js["blankets"].is_array());
}

TEST_CASE("verify") {
    auto r = run({"verify", fixture("triangle.json"), "--oracle"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("verify: ok") != std::string::npos);
    CHECK(r.out.find("PASS oracle") != std::string::npos);

    const auto js = json::parse(run({"verify", fixture("triangle.json"), "--json", "--samples", "10"}).out);
    CHECK(js["ok"] == true);

    const auto path = scratch("generated.json");
    REQUIRE(run({"generate", "--cells", "12", "--seed", "42", "-o", path.string()}).code == exit_ok);
    const auto doc = json::parse(slurp(path));
    CHECK(doc["cells"].size() == 12);
    CHECK(run({"validate", path.string()}).code == exit_ok);
    r = run({"verify", path.string(), "--seed", "42"});
    INFO(r.out);
    CHECK(r.code == exit_ok);
    CHECK(run({"verify", path.string(), "--seed", "42", "--mode", "principal"}).code == exit_ok);
}

TEST_CASE("determinism") {
    const auto a = run({"generate", "--shape", "3,3", "--cells", "20", "--seed", "7"});
    const auto b = run({"generate", "--shape", "3,3", "--cells", "20", "--seed", "7"});
    CHECK(a.out == b.out);
    CHECK(a.out != run({"generate", "--shape", "3,3", "--cells", "20", "--seed", "8"}).out);

    const auto path = write_doc("det.json", json::parse(a.out));
    for (std::vector<std::string> args : {std::vector<std::string>{"diagram", path},
                                          std::vector<std::string>{"diagram", path, "--csv"},
                                          std::vector<std::string>{"verify", path, "--json"}}) {
        const auto first = run(args).out;
        CHECK(run(args).out == first);
        args.push_back("--jobs");
        args.push_back("4");
        CHECK(run(args).out == first);
    }
}
