#include <cmath>

#include "doctest.h"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/paracontact.hpp"
#include "pac/zoo.hpp"

using namespace pac;

namespace {

NumTensor mat3(std::vector<double> v) {
  NumTensor t(3, 2, 0.0);
  for (int i = 0; i < 9; ++i) t[i] = v[i];
  return t;
}

ManifoldPtr cube() { return Manifold::chart("cube", std::vector<Interval>(3, Interval{-1.0, 1.0})); }

// The flat phi (swap d/dx and d/dy), eta = dz and a given constant metric.
PacStructure flat_with(const NumTensor& g) {
  auto m = cube();
  NumTensor phi = mat3({0, 1, 0, 1, 0, 0, 0, 0, 0});
  NumTensor e(3, 1, 0.0);
  e[2] = 1;
  return PacStructure(constant_field(m, Valence::endomorphism(), phi, "phi"), constant_field(m, Valence::vector(), e, "xi"),
                      constant_field(m, Valence::form(1), e, "eta"), constant_field(m, Valence::form(2), g, "g"));
}

}  // namespace

TEST_CASE("every zoo entry satisfies the axioms") {
  for (const std::string& id : list_entries()) {
    const PacStructure& s = get_entry(id).structure;
    CAPTURE(id);
    CHECK(validate_structure(s).max() < default_tolerance(s.manifold()));
  }
}

TEST_CASE("a Riemannian metric is rejected by signature") {
  CHECK_THROWS_AS(validate_structure(flat_with(mat3({1, 0, 0, 0, 1, 0, 0, 0, 1}))), StructureError);
  CHECK(signature(mat3({1, 0, 0, 0, -1, 0, 0, 0, 1})) == Signature{2, 1, 0});
  CHECK(signature(mat3({1, 0, 0, 0, 0, 0, 0, 0, 1})) == Signature{2, 0, 1});
}

TEST_CASE("compatible metric construction") {
  auto m = cube();
  NumTensor e(3, 1, 0.0);
  e[2] = 1;
  auto phi = constant_field(m, Valence::endomorphism(), mat3({0, 1, 0, 1, 0, 0, 0, 0, 0}), "phi");
  auto xi = constant_field(m, Valence::vector(), e, "xi");
  auto eta = constant_field(m, Valence::form(1), e, "eta");
  const TensorField g = build_compatible_metric(phi, xi, eta, constant_field(m, Valence::form(2), mat3({2, 0, 0, 0, 1, 0, 0, 0, 1}), "G"));
  CHECK(max_abs_diff(evaluate(g, m->basepoint()), mat3({0.5, 0, 0, 0, -0.5, 0, 0, 0, 1})) < 1e-15);
  // A phi-invariant G on D collapses to a degenerate metric.
  CHECK_THROWS_AS(build_compatible_metric(phi, xi, eta, constant_field(m, Valence::form(2), mat3({1, 0, 0, 0, 1, 0, 0, 0, 1}), "G")),
                  ConstructionError);
}

TEST_CASE("classification reproduces the expected flags") {
  for (const std::string& id : list_entries()) {
    const ZooEntry& e = get_entry(id);
    const ClassificationReport c = classify(e.structure, default_tolerance(e.structure.manifold()));
    CAPTURE(id);
    CHECK(c.almost_pac_metric.value == e.expected.almost_pac_metric);
    CHECK(c.paracontact.value == e.expected.paracontact);
    CHECK(c.K_paracontact.value == e.expected.K_paracontact);
    CHECK(c.integrable.value == e.expected.integrable);
    CHECK(c.normal.value == e.expected.normal);
    CHECK(c.paraSasakian.value == e.expected.paraSasakian);
  }
}

TEST_CASE("classification norms match the reference values") {
  const ClassificationReport solv = classify(get_entry("solv-para").structure, 1e-10);
  CHECK(solv.norm_h == doctest::Approx(-2.0));
  CHECK(solv.scal == doctest::Approx(0.0).scale(1.0));
  CHECK_FALSE(solv.eta_einstein.has_value());
  const ClassificationReport heis = classify(get_entry("heis-para").structure, 1e-7);
  CHECK(heis.scal == doctest::Approx(2.0));
  CHECK(heis.scal_star == doctest::Approx(-6.0));
  REQUIRE(heis.eta_einstein.has_value());
  CHECK(heis.eta_einstein->a == doctest::Approx(2.0));
  CHECK(heis.eta_einstein->b == doctest::Approx(-4.0));
  const auto sl2 = fit_eta_einstein(get_entry("sl2-para").structure, 1e-10);
  REQUIRE(sl2.has_value());
  CHECK(sl2->a == doctest::Approx(0.0).scale(1.0));
  CHECK(sl2->b == doctest::Approx(-2.0));
}

TEST_CASE("fundamental form and the contact condition") {
  const FundamentalForm heis = fundamental_form(get_entry("heis-para").structure, 1e-7);
  CHECK(heis.is_paracontact);
  CHECK(heis.residual < 1e-12);
  CHECK(std::abs(heis.min_volume) > 0.1);
  const FundamentalForm flat = fundamental_form(get_entry("flat-pac").structure, 1e-7);
  CHECK_FALSE(flat.is_paracontact);
  CHECK(flat.residual == doctest::Approx(1.0));
}

TEST_CASE("eta wedge F on a basis") {
  NumTensor eta(3, 1, 0.0);
  eta[0] = 1;
  NumTensor F(3, 2, 0.0);
  F(1, 2) = 2;
  F(2, 1) = -2;
  CHECK(eta_wedge_fn(eta, F) != 0.0);
  F(1, 2) = F(2, 1) = 0;
  CHECK(eta_wedge_fn(eta, F) == 0.0);
}

TEST_CASE("phi-basis is pseudo-orthonormal") {
  const PacStructure& s = get_entry("heis-para-5").structure;
  const Point p = s.manifold().sample_points(1, 5)[0];
  const std::vector<NumTensor> basis = build_phi_basis(s, p, 9);
  REQUIRE(basis.size() == 5);
  const NumTensor g = evaluate(s.g(), p);
  const std::vector<double> diag{1, 1, -1, -1, 1};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(einsum("ab,a,b->", g, basis[i], basis[j])[0] == doctest::Approx(i == j ? diag[i] : 0.0).scale(1.0));
    }
  }
}

TEST_CASE("Nijenhuis tensors") {
  const PacStructure& heis = get_entry("heis-para").structure;
  const NijenhuisSuite ns = nijenhuis_suite(heis);
  for (const Point& p : heis.manifold().sample_points(4, 1)) {
    Snapshot sn(heis.manifold_ptr(), p, required_order({&ns.N1, &ns.N2, &ns.N3, &ns.N4}));
    CHECK(max_abs(sn(ns.N1)) < 1e-12);
    CHECK(max_abs(sn(ns.N2)) < 1e-12);
    CHECK(max_abs(sn(ns.N3)) < 1e-12);
    CHECK(max_abs(sn(ns.N4)) < 1e-12);
  }
  const PacStructure& solv = get_entry("solv-para").structure;
  Snapshot sn(solv.manifold_ptr(), solv.manifold().basepoint(), required_order({&solv.derived().N1}));
  CHECK(max_abs(sn(solv.derived().N1)) > 0.5);
}

TEST_CASE("h on solv-para") {
  const PacStructure& s = get_entry("solv-para").structure;
  Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&s.derived().h}));
  const NumTensor& h = sn(s.derived().h);
  // h e1 = -e2, h e2 = e1 with h(i,j) = h^i_j.
  CHECK(h(2, 1) == doctest::Approx(-1.0));
  CHECK(h(1, 2) == doctest::Approx(1.0));
  CHECK(h(0, 0) == 0.0);
}
