#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "frobkit/cli.hpp"
#include "frobkit/errors.hpp"

using namespace frobkit;
using nlohmann::json;

namespace {

const std::string kSpecs = FROBKIT_SPEC_DIR;

json base() {
  return json::parse(R"j({"name": "x", "rank": 2, "charge": "-1", "degrees": ["2", "1"],
                         "variables": ["t1", "t2"], "potential": "1/2*t2^2*t1 + t1^2*log(t1)"})j");
}

Report run(const std::string& cmd, const std::string& file, RunOptions opt = {}) {
  std::string digest;
  FrobeniusSpec s = load_spec(kSpecs + "/" + file, &digest);
  return run_command(cmd, s, digest, opt);
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_NOTHROW(spec_from_json(base()));
  auto bad = [](const std::function<void(json&)>& edit) {
    json j = base();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["rank"] = 1; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["extra"] = 1; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j.erase("potential"); })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["degrees"] = {"2", "3"}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["degrees"] = {"2"}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["charge"] = "1/0"; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["variables"] = {"t1", "t1"}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["variables"] = {"log", "t2"}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["metric"] = {{"1", "0"}, {"0", "0"}}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["metric"] = {{"0", "1"}, {"2", "0"}}; })), SpecError);
  CHECK_THROWS_AS(spec_from_json(bad([](json& j) { j["potential"] = "t1 + q7"; })), ParseError);
  try {
    spec_from_json(bad([](json& j) { j["potential"] = "t1 + * t2"; }));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 1, column") != std::string::npos);
  }
  CHECK(spec_from_json(bad([](json& j) { j["charge"] = -1; })).charge == -1);
}

TEST_CASE("spec round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(kSpecs)) {
    CAPTURE(entry.path().string());
    FrobeniusSpec s = load_spec(entry.path().string());
    json once = spec_to_json(s);
    json twice = spec_to_json(spec_from_json(once));
    CHECK(once == twice);
  }
  CHECK_THROWS_AS(load_spec(kSpecs + "/missing.json"), SpecError);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reports are deterministic and exit codes follow the contract") {
  RunOptions opt;
  opt.seed = 9;
  Report a = run("oracle", "family_k4_c1.json", opt);
  Report b = run("oracle", "family_k4_c1.json", opt);
  CHECK(emit_json(a) == emit_json(b));
  CHECK(a.exit_code == kPass);
  CHECK(a.doc["meta"]["seed"] == 9);
  CHECK_FALSE(a.doc["meta"].contains("timing_ms"));
  CHECK(a.doc["meta"]["digest"].get<std::string>().rfind("sha256:", 0) == 0);

  for (const char* cmd : {"verify", "pencil", "conjugate", "invert"}) {
    CAPTURE(cmd);
    Report r = run(cmd, "rank3_trivial.json");
    CHECK(r.exit_code == kPass);
    CHECK(emit_json(r) == emit_json(run(cmd, "rank3_trivial.json")));
  }

  // charge 1 has no conjugate
  json one = json::parse(R"j({"name": "one", "rank": 2, "charge": "1", "degrees": ["0", "1"],
                             "variables": ["t1", "t2"], "potential": "1/2*t2^2*t1"})j");
  Report c = run_command("conjugate", spec_from_json(one), "", {});
  CHECK(c.exit_code == kInapplicable);
  CHECK(c.doc["status"] == "inapplicable: charge = 1");

  // a potential that violates WDVV fails verify, with the component named
  json bad = json::parse(R"j({"name": "bad", "rank": 3, "charge": "0", "degrees": ["1", "1", "1"],
                             "variables": ["t1", "t2", "t3"],
                             "potential": "1/2*t3^2*t1 + 1/2*t2^2*t3 + t1*t2^3"})j");
  Report v = run_command("verify", spec_from_json(bad), "", {});
  CHECK(v.exit_code == kFail);
  CHECK(v.doc["checks"]["wdvv"]["status"] == "fail");
  CHECK(v.doc["checks"]["wdvv"]["detail"].get<std::string>().find("(i,j,q,n)") != std::string::npos);

  RunOptions only;
  only.only = {"wdvv"};
  Report w = run("verify", "family_k5_c1.json", only);
  CHECK(w.doc["checks"].size() == 1);
  only.only = {"qfpm"};
  CHECK(run("verify", "family_k5_c1.json", only).doc["checks"].size() > 5);
  only.only = {"no_such_check"};
  CHECK_THROWS_AS(run("verify", "family_k5_c1.json", only), SpecError);
  CHECK_THROWS_AS(run("transmogrify", "family_k5_c1.json"), SpecError);
}

TEST_CASE("charge -1 report carries the regularity flags") {
  Report r = run("verify", "charge_minus_one.json");
  CHECK(r.exit_code == kPass);
  CHECK(r.doc["values"]["regularity"]["regular"] == false);
  CHECK(r.doc["values"]["regularity"]["prose_discrepancy"] == true);
  Report c = run("conjugate", "charge_minus_one.json");
  CHECK(c.doc["checks"]["pencil.regularity_negated"]["status"] == "refuted");
  CHECK(c.doc["values"]["pencil_sign"] == -1);
  CHECK(c.exit_code == kPass);
}
