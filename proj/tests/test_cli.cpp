#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "skewgroup/analysis.hpp"
#include "skewgroup/families.hpp"
#include "skewgroup/json_io.hpp"

using namespace skewgroup;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "skewgroup");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("skewgroup_test_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("families round-trip through JSON") {
  for (const auto& e : corpus::families()) {
    CAPTURE(e.name);
    const Json j = config_to_json(e.config);
    const LineConfig back = config_from_json(Json::parse(j.dump()));
    CHECK(back.key() == e.config.key());
    CHECK(config_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("families match their expected groups") {
  for (const Family& f : {example_a4(), example_s4(), prop_case2(3), cyclic_4line(3, 3), c3_scaled(2),
                          standard_construction(4), affine(5, AffineMode::Primitive),
                          elementary_abelian(5, 2, {"z"}, "z+2")}) {
    CAPTURE(f.name);
    CHECK(corpus::valid(f.config));
    const GroupClosure g = group_closure(generator_set(f.config, GeneratorMode::AllTriples));
    CHECK(g.order() == f.expected_order);
    CHECK(classify(g).name() == f.expected_label);
  }
  CHECK_THROWS_AS(cyclic_4line(1, 3), Error);
  CHECK_THROWS_AS(build_family("no_such_family", {}), Error);
}

TEST_CASE("family builder examples") {
  const Family s3 = standard_construction(3);
  CHECK(s3.config.line_count() == 5);
  CHECK(s3.expected_order == 6);

  const Family c3 = cyclic_4line(3, 3);
  const Field& f = c3.config.field();
  const FieldElement eps = f.gen();
  const Mat2& m = c3.config.matrices()[1];
  CHECK(m == Mat2::diag(-eps * eps, -eps));
  CHECK(c3.expected_order == 3);

  CHECK(c3_scaled(2).expected_order == 6);
}

TEST_CASE("analyze pipeline") {
  const Outcome a5 = analyze(example_a5().config, AnalyzeOptions{});
  CHECK(a5.exit_code == kExitOk);
  CHECK(a5.report["schema_version"] == kSchemaVersion);
  CHECK(a5.report["group"]["order"] == 60);
  CHECK(a5.report["group"]["label"] == "A5");
  CHECK(a5.report["transversals"]["exists"] == false);

  const Outcome pc = analyze(prop_case2(3).config, AnalyzeOptions{});
  CHECK(pc.report["group"]["order"] == 9);
  CHECK(pc.report["group"]["label"] == "elementary_abelian(3,2)");
}

TEST_CASE("command-line exit codes") {
  const std::string bad = write_temp("dup", R"({"field":{"kind":"rational"},"lines":["zero","infinity","identity",[["2","0"],["0","3"]],[["2","0"],["0","3"]]]})");
  CHECK(cli({"validate", bad}).code == kExitInvalidInput);
  CHECK(cli({"group", bad}).code == kExitInvalidInput);

  const std::string broken = write_temp("broken", "{ not json");
  CHECK(cli({"group", broken}).code == kExitInvalidInput);
  CHECK(cli({"group", "/nonexistent/config.json"}).code == kExitInvalidInput);

  const std::string inf = write_temp("inf", R"({"field":{"kind":"rational"},"lines":["zero","infinity","identity",[["2","0"],["0","3"]]]})");
  const Run r = cli({"--json", "group", inf, "--budget", "100"});
  CHECK(r.code == kExitBudget);
  CHECK(Json::parse(r.out)["budget_hit"] == true);

  const std::string ok = write_temp("a4", config_to_json(example_a4().config).dump());
  CHECK(cli({"group", ok}).code == kExitOk);
  CHECK(cli({"orbit", ok, "--seed-point", "[1:2:3:5]"}).code == kExitInvalidInput);
  CHECK(cli({"family", "cyclic_4line", "-p", "m=1", "-p", "n=3"}).code == kExitInvalidInput);
}

TEST_CASE("command-line output is deterministic") {
  const std::string path = write_temp("s4", config_to_json(example_s4().config).dump());
  const Run a = cli({"--json", "analyze", path, "--orbits"});
  const Run b = cli({"--json", "analyze", path, "--orbits"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  const Run f1 = cli({"--json", "family", "standard_construction", "-p", "n=5", "--analyze"});
  const Run f2 = cli({"--json", "family", "standard_construction", "-p", "n=5", "--analyze"});
  CHECK(f1.out == f2.out);
  CHECK(Json::parse(f1.out)["matches_expected"] == true);
}
