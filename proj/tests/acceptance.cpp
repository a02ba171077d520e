// One pass/fail line per acceptance criterion. Exit status is 0 when every
// criterion passes except those listed in kUnattainable, which must fail.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pac/checks.hpp"
#include "pac/connections.hpp"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/transforms.hpp"
#include "pac/zoo.hpp"

using namespace pac;

namespace {

// Criteria containing printed identities that are false as stated. The
// `-literal` checks evaluate them verbatim; corrected forms pass separately.
const std::set<int> kUnattainable{10};

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool is_frame(const std::string& id) { return get_entry(id).structure.manifold().backend() == Backend::HomogeneousFrame; }

const std::vector<CheckReport>& suite(const std::string& m, const std::string& name, double tol) {
  static std::map<std::string, std::vector<CheckReport>> cache;
  const std::string key = m + "|" + name + "|" + num(tol);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, run_suite(m, name, RunOptions{64, 42, tol})).first;
  return it->second;
}

const CheckReport& report(const std::string& m, const std::string& name, double tol, const std::string& id) {
  for (const CheckReport& r : suite(m, name, tol)) {
    if (r.check_id == id) return r;
  }
  throw LookupError("no check " + id + " in suite " + name);
}

// Requires the check to have run and passed.
void expect_pass(Verdict& v, const std::string& m, const std::string& name, double tol, const std::string& id) {
  const CheckReport& r = report(m, name, tol, id);
  if (!r.pass) {
    v.require(false, id + " on " + m + " skipped");
  } else {
    v.require(*r.pass, id + " on " + m + " residual " + (r.max_abs_residual ? num(*r.max_abs_residual) : "error") +
                           " >= " + num(tol) + (r.note.empty() ? "" : " (" + r.note + ")"));
  }
}

std::vector<std::string> entries_where(const std::function<bool(const ExpectedFlags&)>& pred) {
  std::vector<std::string> out;
  for (const std::string& id : list_entries()) {
    if (pred(get_entry(id).expected)) out.push_back(id);
  }
  return out;
}

Verdict axioms() {
  Verdict v;
  for (const std::string& id : list_entries()) {
    const ZooEntry& e = get_entry(id);
    const double tol = default_tolerance(e.structure.manifold());
    const double ax = validate_structure(e.structure, 64, 42).max();
    v.require(ax < tol, id + " axiom residual " + num(ax));
    const ClassificationReport c = classify(e.structure, tol, 64, 42);
    const ExpectedFlags& x = e.expected;
    const std::vector<std::pair<const char*, std::pair<bool, bool>>> flags{
        {"almost_pac_metric", {c.almost_pac_metric.value, x.almost_pac_metric}},
        {"paracontact", {c.paracontact.value, x.paracontact}},
        {"K_paracontact", {c.K_paracontact.value, x.K_paracontact}},
        {"integrable", {c.integrable.value, x.integrable}},
        {"normal", {c.normal.value, x.normal}},
        {"paraSasakian", {c.paraSasakian.value, x.paraSasakian}}};
    for (const auto& [name, got] : flags) v.require(got.first == got.second, id + " flag " + name);
  }
  v.detail = v.pass ? std::to_string(list_entries().size()) + " entries x 6 flags" : v.detail;
  return v;
}

Verdict ricci_xi_xi() {
  Verdict v;
  std::ostringstream os;
  for (auto [id, want, tol] : {std::tuple{"heis-para", -2.0, 1e-6}, {"heis-para-5", -4.0, 1e-5}, {"solv-para", -4.0, 1e-9}}) {
    const PacStructure& s = get_entry(id).structure;
    const auto& d = s.derived();
    double lhs_dev = 0, rhs_dev = 0, h2 = 0;
    for (const Point& p : s.manifold().sample_points(64, 42)) {
      Snapshot sn(s.manifold_ptr(), p, required_order({&d.Ric, &d.norm_h}));
      const NumTensor& xi = sn(s.xi());
      const double ric = einsum("ab,a,b->", sn(d.Ric), xi, xi)[0];
      h2 = sn.scalar(d.norm_h);
      lhs_dev = std::max(lhs_dev, std::abs(ric - want));
      rhs_dev = std::max(rhs_dev, std::abs(-2.0 * s.n() + h2 - want));
    }
    v.require(lhs_dev < tol, std::string(id) + " Ric(xi,xi) off by " + num(lhs_dev));
    v.require(rhs_dev < tol, std::string(id) + " -2n + |h|^2 off by " + num(rhs_dev));
    if (std::string(id) == "solv-para") v.require(std::abs(h2 + 2.0) < tol, "solv-para |h|^2 = " + num(h2));
    os << id << " " << num(std::max(lhs_dev, rhs_dev)) << " ";
  }
  if (v.pass) v.detail = os.str();
  return v;
}

Verdict parasasakian_nabla_phi() {
  Verdict v;
  double worst = 0;
  for (const char* id : {"heis-para", "heis-para-5"}) {
    const CheckReport& r = report(id, "curvature", 1e-6, "parasasakian-nabla-phi");
    expect_pass(v, id, "curvature", 1e-6, "parasasakian-nabla-phi");
    worst = std::max(worst, r.max_abs_residual.value_or(INFINITY));
  }
  // Same expression on the non-paraSasakian entry, as a witness of size.
  const PacStructure& s = get_entry("solv-para").structure;
  const auto& d = s.derived();
  double seen = 0;
  int k = 0;
  for (const Point& p : s.manifold().sample_points(64, 42)) {
    Snapshot sn(s.manifold_ptr(), p, required_order({&d.nabla_phi}));
    SampleRng rng(42, 0x74, static_cast<std::uint64_t>(k++));
    const NumTensor X = as_vector(rng.vector(3)), Y = as_vector(rng.vector(3));
    NumTensor e = einsum("aij,a,j->i", sn(d.nabla_phi), X, Y);
    e = axpy(e, einsum("ab,a,b->", sn(s.g()), X, Y)[0], sn(s.xi()));
    e = axpy(e, -einsum("a,a->", sn(s.eta()), Y)[0], X);
    seen = std::max(seen, max_abs(e));
  }
  v.require(seen >= 0.1, "solv-para witness " + num(seen) + " < 0.1");
  if (v.pass) v.detail = "paraSasakian max " + num(worst) + ", solv-para max " + num(seen);
  return v;
}

Verdict scalar_star() {
  Verdict v;
  for (const std::string& id : entries_where([](const ExpectedFlags& x) { return x.paraSasakian; })) {
    expect_pass(v, id, "curvature", 1e-5, "scalar-star-parasasakian");
  }
  expect_pass(v, "solv-para", "curvature", 1e-9, "scalar-star-sum");
  expect_pass(v, "solv-para", "curvature", 1e-9, "p-norm");
  return v;
}

Verdict canonical() {
  Verdict v;
  for (const std::string& id : entries_where([](const ExpectedFlags& x) { return x.paracontact; })) {
    for (const char* c : {"canonical-nabla-g", "canonical-nabla-eta", "canonical-nabla-xi", "canonical-torsion",
                          "canonical-ricci-xi-xi"}) {
      expect_pass(v, id, "connections", 1e-6, c);
    }
    expect_pass(v, id, "connections", 1e-5, "canonical-w1");
  }
  return v;
}

Verdict gauge_law() {
  Verdict v;
  std::ostringstream os;
  for (const char* id : {"heis-para", "heis-para-5"}) {
    const PacStructure& s = get_entry(id).structure;
    const ScalarField sigma = sigma_preset(s.manifold_ptr(), "exp-bump", 0.05);
    const LawResidual w1 = verify_w1_law(s, sigma, 32, 42);
    const int y = s.manifold().half_dim();
    const int dim = s.manifold().dim();
    const ScalarField f = chart_field(s.manifold_ptr(), Valence::scalar(), "y^2", [dim, y](std::span<const Jet> x) {
      JetTensor t(dim, 0, Jet(0.0));
      t[0] = x[y] * x[y];
      return t;
    });
    const LawResidual lap = verify_laplacian_law(s, sigma, f, 32, 42);
    v.require(w1.points == 32 && w1.residual < 1e-4, std::string(id) + " W1 law " + num(w1.residual));
    v.require(lap.residual < 1e-5, std::string(id) + " Laplacian law " + num(lap.residual));
    os << id << " " << num(w1.residual) << "/" << num(lap.residual) << " ";
  }
  if (v.pass) v.detail = os.str();
  return v;
}

Verdict homothety() {
  Verdict v;
  for (const char* a : {"@0.5", "@2", "@3"}) {
    expect_pass(v, "heis-para", "transforms", 1e-6, std::string("dhom-scalar-law") + a);
    expect_pass(v, "heis-para", "transforms", 1e-6, std::string("dhom-flags") + a);
  }
  const Einsteinized ez = einsteinize(get_entry("sl2-para").structure, 1e-10);
  const PacStructure& sb = ez.structure;
  const int n = sb.n();
  double scal = 0, ric = 0;
  Snapshot sn(sb.manifold_ptr(), sb.manifold().basepoint(), required_order({&sb.derived().scal, &sb.derived().Ric}));
  scal = std::abs(sn.scalar(sb.derived().scal) + 2.0 * n * (2 * n + 1));
  ric = max_abs(axpy(sn(sb.derived().Ric), 2.0 * n, sn(sb.g())));
  v.require(scal < 1e-5, "sl2-para einsteinized scal off by " + num(scal));
  v.require(ric < 1e-5, "sl2-para |Ric + 2n g| = " + num(ric));
  if (v.pass) v.detail = "sl2-para alpha " + num(ez.alpha) + ", scal off by " + num(scal);
  return v;
}

Verdict skew_connection() {
  Verdict v;
  expect_pass(v, "heis-para", "connections", 1e-8, "skew-torsion-parasasakian");
  expect_pass(v, "heis-para", "connections", 1e-6, "t10-skew-connection");
  expect_pass(v, "heis-para", "connections", 1e-6, "skew-nabla-torsion");
  expect_pass(v, "heis-para", "connections", 1e-6, "skew-uniqueness");
  expect_pass(v, "flat-pac", "connections", 1e-7, "skew-levi-civita");
  try {
    skew_torsion_connection(get_entry("solv-para").structure, 1e-10);
    v.require(false, "solv-para built a skew torsion connection");
  } catch (const NotKillingError&) {
  }
  return v;
}

Verdict ricci_forms_criterion() {
  Verdict v;
  for (const std::string& id : list_entries()) {
    const CheckReport& r = report(id, "connections", 1e-5, "skew-rho");
    if (r.pass) expect_pass(v, id, "connections", 1e-5, "skew-rho");
  }
  for (const std::string& id : entries_where([](const ExpectedFlags& x) { return x.paraSasakian; })) {
    expect_pass(v, id, "connections", 1e-5, "skew-rho-parasasakian");
    expect_pass(v, id, "connections", 1e-5, "skew-dt");
  }
  double dt1 = 0, dt2 = 0;
  for (auto [id, out] : {std::pair{"heis-para", &dt1}, {"heis-para-5", &dt2}}) {
    const PacStructure& s = get_entry(id).structure;
    const RicciForms rf = ricci_forms(skew_torsion_connection(s, 1e-7), s);
    Snapshot sn(s.manifold_ptr(), s.manifold().sample_points(1, 42)[0], required_order({&rf.dt}));
    *out = max_abs(sn(rf.dt));
  }
  v.require(dt1 < 1e-5, "n = 1 dt = " + num(dt1));
  v.require(dt2 > 1e-2, "n = 2 dt = " + num(dt2));
  if (v.pass) v.detail = "|dt| n=1 " + num(dt1) + ", n=2 " + num(dt2);
  return v;
}

Verdict identity_suite() {
  Verdict v;
  const std::set<std::string> from_connections{"phi-forms-minus-literal", "n1-phi-phi", "n1-nabla-phi",
                                               "skew-n1-nabla-xi-xi", "skew-n1-nabla-eta", "skew-n1-xi"};
  std::map<std::string, int> exercised;
  for (const std::string& id : list_entries()) {
    const double tol = is_frame(id) ? 1e-9 : 1e-5;
    std::vector<const CheckReport*> rs;
    for (const CheckReport& r : suite(id, "curvature", tol)) {
      if (r.check_id != "parasasakian-nabla-phi-witness" && r.check_id != "curvature-phi-sectional" &&
          r.check_id != "ricci-phi-skew") {
        rs.push_back(&r);
      }
    }
    for (const CheckReport& r : suite(id, "connections", tol)) {
      if (from_connections.count(r.check_id)) rs.push_back(&r);
    }
    for (const CheckReport* r : rs) {
      exercised[r->check_id] += r->pass.has_value() ? 1 : 0;
      if (r->pass && !*r->pass) {
        v.require(false, r->check_id + " on " + id + " residual " +
                             (r->max_abs_residual ? num(*r->max_abs_residual) : "error"));
      }
    }
  }
  for (const auto& [cid, count] : exercised) v.require(count > 0, cid + " not exercised by any entry");
  return v;
}

Verdict backends() {
  Verdict v;
  expect_pass(v, "heis-para", "axioms", 1e-7, "backend-equivalence");
  return v;
}

std::string run_cli(const std::string& cli) {
  const std::string cmd = cli + " verify --manifold heis-para --suite all --seed 42 --format json";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw Error("cannot run " + cli);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  pclose(p);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path to pac cli>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"axioms and classification flags", axioms},
      {"Ric(xi,xi) = -2n + |h|^2", ricci_xi_xi},
      {"paraSasakian nabla phi identity and solv-para witness", parasasakian_nabla_phi},
      {"scal + scal* + 4n^2 = 0 and the solv-para norms", scalar_star},
      {"canonical connection identities and W1", canonical},
      {"W1 gauge law and D-Laplacian law", gauge_law},
      {"D-homothety scalar law, flags and Einstein-izing", homothety},
      {"skew torsion connection", skew_connection},
      {"Ricci forms of the skew torsion connection", ricci_forms_criterion},
      {"identity suite on every admissible entry", identity_suite},
      {"backend equivalence at 16 points", backends},
      {"byte-identical JSON across two runs", [&] {
         Verdict v;
         const std::string a = run_cli(cli), b = run_cli(cli);
         v.require(!a.empty() && a == b, "outputs differ or are empty");
         if (v.pass) v.detail = std::to_string(a.size()) + " bytes";
         return v;
       }},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    const bool known = kUnattainable.count(k) > 0;
    if (v.pass == known) ++unexpected;
    std::printf("criterion %2d %s  %s", k, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str());
    if (!v.detail.empty()) std::printf("  [%s]", v.detail.c_str());
    std::printf("\n");
    if (!v.pass && known) std::printf("             known unattainable: printed identities that are false as stated\n");
  }
  return unexpected == 0 ? 0 : 1;
}
