#include <algorithm>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "pac/checks.hpp"
#include "pac/errors.hpp"

using namespace pac;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  FILE* p = popen((std::string(PAC_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

CheckReport fake(std::string id, std::optional<bool> pass) {
  CheckReport r;
  r.check_id = std::move(id);
  r.paper_ref = "x = y";
  r.manifold = "m";
  r.tolerance = 1e-7;
  r.pass = pass;
  if (pass) {
    r.max_abs_residual = *pass ? 1e-9 : 0.5;
    r.points = 4;
  } else {
    r.note = "hypothesis not met";
  }
  return r;
}

}  // namespace

TEST_CASE("report formats") {
  CHECK(emit_report({}, ReportFormat::Json) == "[]");
  const std::vector<CheckReport> rs{fake("a-check", true), fake("b-check", false), fake("c-check", std::nullopt)};
  const std::string text = emit_report(rs, ReportFormat::Text);
  CHECK(text.find("\nFAIL   b-check") != std::string::npos);
  CHECK(text.find("\nSKIP   c-check") != std::string::npos);
  CHECK(text.find("# hypothesis not met") != std::string::npos);
  CHECK(text.find("1 passed, 1 failed, 1 skipped") != std::string::npos);
  const std::string json = emit_report(rs, ReportFormat::Json);
  CHECK(json.find("\"max_abs_residual\": null") != std::string::npos);
  CHECK(json.find("\"pass\": null") != std::string::npos);
  CHECK(json.find("note") == std::string::npos);
  CHECK(json.find("\"check_id\": \"a-check\",\n    \"paper_ref\"") != std::string::npos);
  CHECK(exit_code(rs) == 1);
  CHECK(exit_code({rs[0], rs[2]}) == 0);
}

TEST_CASE("suite lookup errors") {
  CHECK_THROWS_AS(run_suite("heis-para", "bogus", {}), UsageError);
  CHECK_THROWS_AS(run_suite("nowhere", "axioms", {}), LookupError);
  CHECK(suite_names().size() == 5);
}

TEST_CASE("axiom suite on the Heisenberg chart") {
  const auto rs = run_suite("heis-para", "axioms", {16, 7, std::nullopt});
  REQUIRE_FALSE(rs.empty());
  CHECK(std::is_sorted(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.check_id < b.check_id; }));
  for (const CheckReport& r : rs) {
    CAPTURE(r.check_id);
    CHECK(r.manifold == "heis-para");
    CHECK(r.seed == 7);
    CHECK(r.tolerance == 1e-7);
    if (r.pass) CHECK(*r.pass);
  }
}

TEST_CASE("skipped checks carry no residual") {
  const auto rs = run_suite("flat-pac", "connections", {8, 42, std::nullopt});
  const auto it = std::find_if(rs.begin(), rs.end(), [](const auto& r) { return r.check_id == "canonical-nabla-g"; });
  REQUIRE(it != rs.end());
  CHECK_FALSE(it->pass.has_value());
  CHECK_FALSE(it->max_abs_residual.has_value());
  CHECK(it->points == 0);
  const auto skew = std::find_if(rs.begin(), rs.end(), [](const auto& r) { return r.check_id == "skew-levi-civita"; });
  REQUIRE(skew != rs.end());
  CHECK(skew->pass == std::optional<bool>(true));
}

TEST_CASE("expected rejection passes with zero residual") {
  const auto rs = run_suite("solv-para", "connections", {8, 42, std::nullopt});
  const auto it = std::find_if(rs.begin(), rs.end(), [](const auto& r) { return r.check_id == "t10-skew-connection"; });
  REQUIRE(it != rs.end());
  CHECK(it->pass == std::optional<bool>(true));
  CHECK(it->max_abs_residual == std::optional<double>(0.0));
}

TEST_CASE("tolerance override") {
  const auto rs = run_suite("sl2-para", "axioms", {8, 42, 1e-3});
  for (const CheckReport& r : rs) CHECK(r.tolerance == 1e-3);
}

TEST_CASE("command line exit codes") {
  CHECK(cli("verify --manifold flat-pac --suite axioms").status == 0);
  CHECK(cli("verify --manifold heis-para --suite curvature --points 8").status == 1);
  CHECK(cli("verify --manifold heis-para --suite nope").status == 2);
  CHECK(cli("verify --manifold nowhere --suite axioms").status == 2);
  CHECK(cli("verify --suite axioms").status == 2);
  CHECK(cli("verify --manifold flat-pac --suite axioms --format xml").status == 2);
  CHECK(cli("transform --manifold heis-para").status == 2);
  CHECK(cli("transform --manifold heis-para --alpha 2 --sigma constant").status == 2);
  CHECK(cli("transform --manifold heis-para --alpha 0").status == 1);
}

TEST_CASE("command line output") {
  const Run list = cli("list");
  CHECK(list.status == 0);
  CHECK(list.out.find("sl2-para  ") != std::string::npos);
  const Run json = cli("verify --manifold flat-pac --suite axioms --format json --points 8");
  CHECK(json.out.front() == '[');
  CHECK(json.out.substr(json.out.size() - 2) == "]\n");
  CHECK(json.out == cli("verify --manifold flat-pac --suite axioms --format json --points 8").out);
  const Run text = cli("verify --manifold heis-para --suite curvature --points 8");
  CHECK(text.out.find("\nFAIL   curvature-phi-sectional-literal") != std::string::npos);
  const Run d = cli("describe --manifold solv-para");
  CHECK(d.status == 0);
  CHECK(d.out.find("\"backend\": \"frame\"") != std::string::npos);
  const Run t = cli("transform --manifold heis-para --alpha 2");
  CHECK(t.status == 0);
  CHECK(t.out.find("\"kind\": \"d-homothety\"") != std::string::npos);
  const Run g = cli("transform --manifold heis-para --sigma exp-bump");
  CHECK(g.status == 0);
  CHECK(g.out.find("\"paracontact\": true") != std::string::npos);
}
