#include <cmath>

#include "doctest.h"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/transforms.hpp"
#include "pac/zoo.hpp"

using namespace pac;

TEST_CASE("D-homothety parameter and flags") {
  const PacStructure& s = get_entry("heis-para").structure;
  CHECK_THROWS_AS(d_homothetic(s, 0.0), ParameterError);
  for (double a : {0.5, 2.0, 3.0}) {
    const PacStructure t = d_homothetic(s, a);
    CHECK(validate_structure(t).max() < 1e-10);
    const ClassificationReport c = classify(t, 1e-7);
    CHECK(c.paraSasakian.value);
  }
}

TEST_CASE("D-homothety scalar curvature on the Heisenberg frame") {
  // Reference: Koszul curvature of diag(a^2, a/2, -a/2) on [e,f] = -xi gives 2 for every a.
  const PacStructure& s = get_entry("heis-para-frame").structure;
  for (double a : {0.5, 2.0, 3.0}) {
    const PacStructure t = d_homothetic(s, a);
    CHECK(evaluate_scalar(t.derived().scal, s.manifold().basepoint()) == doctest::Approx(2.0));
  }
}

TEST_CASE("einsteinize") {
  CHECK_THROWS_AS(einsteinize(get_entry("heis-para").structure, 1e-7), DegenerateScaleError);
  CHECK_THROWS_AS(einsteinize(get_entry("solv-para").structure, 1e-10), PreconditionError);
  const Einsteinized e = einsteinize(get_entry("sl2-para").structure, 1e-10);
  CHECK(e.alpha == doctest::Approx(0.5));
  CHECK(e.scal == doctest::Approx(-2.0));
  const Point p = e.structure.manifold().basepoint();
  // Reference Ricci tensor diag(-1/2, -1, 1) = -2 gbar.
  const NumTensor ric = evaluate(e.structure.derived().Ric, p);
  CHECK(ric(0, 0) == doctest::Approx(-0.5));
  CHECK(ric(1, 1) == doctest::Approx(-1.0));
  CHECK(ric(2, 2) == doctest::Approx(1.0));
  CHECK(evaluate_scalar(e.structure.derived().scal, p) == doctest::Approx(-6.0));
}

TEST_CASE("eta-Einstein report on sl2") {
  const EtaEinsteinReport r = eta_einstein_check(get_entry("sl2-para").structure, 1e-10);
  REQUIRE(r.fit.has_value());
  CHECK(r.scal == doctest::Approx(-2.0));
  CHECK(r.sum_defect < 1e-12);
  CHECK(r.closed_form_defect < 1e-12);
  CHECK_FALSE(eta_einstein_check(get_entry("solv-para").structure, 1e-10).fit.has_value());
}

TEST_CASE("gauge presets") {
  const ManifoldPtr& chart = get_entry("heis-para").structure.manifold_ptr();
  const ManifoldPtr& frame = get_entry("heis-para-frame").structure.manifold_ptr();
  const Point p{{0.4, -0.3, 0.0}};
  CHECK(evaluate_scalar(sigma_preset(chart, "constant", 0.05), p) == doctest::Approx(1.05));
  CHECK(evaluate_scalar(sigma_preset(chart, "exp-bump", 0.05), p) == doctest::Approx(std::exp(0.05 * std::sin(0.4) * std::cos(-0.3))));
  CHECK(evaluate_scalar(sigma_preset(chart, "radial", 0.05), p) == doctest::Approx(1 + 0.05 * std::exp(-0.25)));
  CHECK_NOTHROW(sigma_preset(frame, "constant"));
  CHECK_THROWS(sigma_preset(frame, "exp-bump"));
  CHECK_THROWS_AS(sigma_preset(chart, "unknown"), UsageError);
  CHECK(sigma_preset_names().size() == 3);
}

TEST_CASE("gauge transformation") {
  const PacStructure& s = get_entry("heis-para").structure;
  CHECK_THROWS_AS(gauge_transform(s, constant_scalar(s.manifold_ptr(), -1.0, "-1")), PositivityError);
  const ScalarField sigma = sigma_preset(s.manifold_ptr(), "exp-bump", 0.05);
  const PacStructure t = gauge_transform(s, sigma);
  CHECK(validate_structure(t).max() < 1e-7);
  CHECK(classify(t, 1e-7).paracontact.value);
  // eta~ = sigma eta
  const Point p = s.manifold().sample_points(1, 6)[0];
  CHECK(max_abs_diff(evaluate(t.eta(), p), scaled(evaluate(s.eta(), p), evaluate_scalar(sigma, p))) < 1e-14);
}

TEST_CASE("gauge laws") {
  const PacStructure& s = get_entry("heis-para-5").structure;
  const ScalarField sigma = sigma_preset(s.manifold_ptr(), "radial", 0.1);
  const LawResidual w1 = verify_w1_law(s, sigma, 8, 3);
  CHECK(w1.points == 8);
  CHECK(w1.residual < 1e-9);
  const ScalarField f = sigma_preset(s.manifold_ptr(), "exp-bump", 0.3);
  CHECK(verify_laplacian_law(s, sigma, f, 8, 3).residual < 1e-9);
  CHECK_THROWS_AS(verify_w1_law(get_entry("flat-pac").structure, sigma_preset(get_entry("flat-pac").structure.manifold_ptr(), "radial"), 4),
                  NotParacontactError);
}
