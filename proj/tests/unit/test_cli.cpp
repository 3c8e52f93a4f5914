#include "doctest.h"
#include "golden.hpp"

using namespace ff_test;

namespace {
fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("ff_cli_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("exit code contract") {
  SUBCASE("usage errors") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"frame", "--fd-order", "3"}).code == 2);
    CHECK(run_cli({"frame", "--config", "/nonexistent.toml"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
  }
  SUBCASE("malformed CSV names the row") {
    const auto dir = scratch("badcsv");
    fs::create_directories(dir);
    std::ofstream(dir / "c.csv") << "s,x0,x1,x2,x3\n0,1,0,0,0\n0.1,0.99,0.1,zz,0\n";
    const auto r = run_cli({"frame", "--input", (dir / "c.csv").string(), "--set", "space_form.q=0", "--set",
                            "space_form.c=1", "--out", (dir / "out").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("3") != std::string::npos);
  }
  SUBCASE("grid below stencil width") {
    const auto r = run_cli({"congruence", "--set", "congruence.shape=5,13,13", "--out", scratch("small").string()});
    CHECK(r.code == 2);
  }
  SUBCASE("zero curvature synthesis") {
    const auto r = run_cli({"maxwell", "--synthesize", "--set", "curve.family=great-circle", "--out",
                            scratch("zk").string()});
    CHECK(r.code == 3);
  }
  SUBCASE("maxwell without a field") { CHECK(run_cli({"maxwell", "--out", scratch("nf").string()}).code == 2); }
  SUBCASE("all rejects input") { CHECK(run_cli({"all", "--input", "x.csv"}).code == 2); }
}

TEST_CASE("strict-paper run reports the printed variants") {
  const auto dir = scratch("strict");
  const auto r = run_cli({"maxwell", "--synthesize", "--strict-paper", "--set", "congruence.shape=81,13,13", "--out",
                          dir.string()});
  CHECK(r.code == 4);
  const auto rep = load_report(dir / "maxwell_report.json");
  bool flagged = false;
  for (const auto& f : rep["flags"]) flagged = flagged || f["id"] == "printed-variant:electric_eta_derivative";
  CHECK(flagged);
  CHECK(rep["status"] == "fail");
  CHECK(rep["maxwell"]["variant"] == "printed");
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  CHECK(run_cli({"congruence", "--set", "congruence.shape=41,9,9", "--out", a.string()}).code == 0);
  CHECK(run_cli({"congruence", "--set", "congruence.shape=41,9,9", "--out", b.string()}).code == 0);
  CHECK(load_report(a / "congruence_report.json").dump() == load_report(b / "congruence_report.json").dump());
  const auto raw = json::parse(slurp(a / "congruence_report.json"));
  CHECK(raw["schema_version"] == 1);
  CHECK(raw.items().begin().key() == "schema_version");
  CHECK((--raw.end()).key() == "timestamp");
}

TEST_CASE("tolerance flags move the primary gate") {
  const auto dir = scratch("tol");
  const auto r = run_cli({"frame", "--tol", "1e-20", "--out", dir.string()});
  CHECK(r.code == 4);
  CHECK(run_cli({"frame", "--tol", "-1", "--out", dir.string()}).code == 2);
}

TEST_CASE("energy report carries the nine named fields") {
  const auto dir = scratch("energy");
  REQUIRE(run_cli({"energy", "--config", (data_dir() / "configs" / "great_circle.toml").string(), "--out",
                   dir.string()})
              .code == 0);
  const auto rep = load_report(dir / "energy_report.json");
  const auto& e = rep["energies"];
  for (const char* k : {"energy_T_s", "energy_N_s", "energy_B_s", "energy_T_xi", "energy_N_xi", "energy_B_xi",
                        "energy_T_eta", "energy_N_eta", "energy_B_eta"})
    CHECK(e.contains(k));
  CHECK(std::abs(e["energy_T_s"].get<double>() - 2 * 3.141592653589793) <= 1e-8);
  CHECK(std::abs(e["energy_B_s"].get<double>() - 3.141592653589793) <= 1e-8);
}
