#include <cmath>

#include "doctest.h"
#include "pac/connections.hpp"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/riemann.hpp"
#include "pac/zoo.hpp"

using namespace pac;

TEST_CASE("canonical connection requires a paracontact structure") {
  CHECK_THROWS_AS(canonical_connection(get_entry("flat-pac").structure, 1e-7), NotParacontactError);
  CHECK_THROWS_AS(canonical_connection(get_entry("twisted-pac").structure, 1e-7), NotParacontactError);
  CHECK_NOTHROW(canonical_connection(get_entry("solv-para").structure, 1e-10));
}

TEST_CASE("canonical connection preserves g, eta and xi") {
  for (const char* id : {"heis-para", "solv-para", "sl2-para"}) {
    const PacStructure& s = get_entry(id).structure;
    const TorsionConnection c = canonical_connection(s, default_tolerance(s.manifold()));
    const TensorField ng = covariant_derivative(c.connection, s.g());
    const TensorField ne = covariant_derivative(c.connection, s.eta());
    const TensorField nx = covariant_derivative(c.connection, s.xi());
    for (const Point& p : s.manifold().sample_points(3, 2)) {
      Snapshot sn(s.manifold_ptr(), p, required_order({&ng, &ne, &nx}));
      CAPTURE(id);
      CHECK(max_abs(sn(ng)) < 1e-12);
      CHECK(max_abs(sn(ne)) < 1e-12);
      CHECK(max_abs(sn(nx)) < 1e-12);
    }
  }
}

TEST_CASE("W1 equals scal - Ric(xi,xi) - 4n") {
  // Reference: Heisenberg 2 + 2 - 4, sl2 -2 + 2 - 4, solv 0 + 4 - 4.
  for (auto [id, want] : {std::pair{"heis-para-frame", 0.0}, {"sl2-para", -4.0}, {"solv-para", 0.0}}) {
    const PacStructure& s = get_entry(id).structure;
    const ConnectionCurvature cc = connection_curvature(canonical_connection(s, 1e-10));
    CHECK(evaluate_scalar(cc.W1, s.manifold().basepoint()) == doctest::Approx(want).scale(1.0));
  }
}

TEST_CASE("skew torsion connection hypotheses") {
  CHECK_THROWS_AS(skew_torsion_connection(get_entry("solv-para").structure, 1e-10), NotKillingError);
  const SkewHypotheses h = skew_hypotheses(get_entry("solv-para").structure);
  CHECK(h.killing > 1.0);
  const SkewHypotheses heis = skew_hypotheses(get_entry("heis-para").structure);
  CHECK(heis.killing < 1e-12);
  CHECK(heis.skew_defect < 1e-12);
}

TEST_CASE("skew torsion on the Heisenberg chart is 2 eta ^ d eta") {
  const PacStructure& s = get_entry("heis-para").structure;
  const TorsionConnection c = skew_torsion_connection(s, 1e-7);
  const TensorField expected = scalar_multiple(constant_scalar(s.manifold_ptr(), 2.0, "2"), wedge(s.eta(), s.derived().deta), "2 eta ^ d eta");
  const TensorField ng = covariant_derivative(c.connection, s.g());
  const TensorField nphi = covariant_derivative(c.connection, s.phi());
  for (const Point& p : s.manifold().sample_points(4, 8)) {
    Snapshot sn(s.manifold_ptr(), p, required_order({&c.torsion3, &expected, &ng, &nphi}));
    CHECK(max_abs_diff(sn(c.torsion3), sn(expected)) < 1e-12);
    CHECK(max_abs(sn(ng)) < 1e-12);
    CHECK(max_abs(sn(nphi)) < 1e-12);
  }
}

TEST_CASE("skew torsion vanishes on the flat structure") {
  const PacStructure& s = get_entry("flat-pac").structure;
  const TorsionConnection c = skew_torsion_connection(s, 1e-7);
  Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&c.torsion3}));
  CHECK(max_abs(sn(c.torsion3)) == 0.0);
}

TEST_CASE("perturbing the torsion breaks parallelism") {
  const PacStructure& s = get_entry("heis-para").structure;
  const TorsionConnection c = skew_torsion_connection(s, 1e-7);
  const NumTensor delta = random_skew_form(3, 1e-3, 17);
  CHECK(std::sqrt(einsum("abc,abc->", delta, delta)[0]) == doctest::Approx(1e-3));
  CHECK(max_abs(axpy(delta, 1.0, permuted(delta, {1, 0, 2}))) < 1e-18);
  const auto pts = s.manifold().sample_points(4, 3);
  CHECK(perturbed_parallelism(s, c, NumTensor(3, 3, 0.0), pts) < 1e-12);
  CHECK(perturbed_parallelism(s, c, delta, pts) >= 1e-4);
}

TEST_CASE("Ricci forms: basis traces agree with metric traces") {
  const PacStructure& s = get_entry("heis-para-5").structure;
  const RicciForms rf = ricci_forms(skew_torsion_connection(s, 1e-7), s);
  const Point p = s.manifold().sample_points(1, 4)[0];
  Snapshot sn(s.manifold_ptr(), p, required_order({&rf.dT, &rf.dt}));
  for (std::uint64_t seed : {1u, 2u}) {
    const NumTensor t = basis_trace(sn(rf.dT), build_phi_basis(s, p, seed), sn(s.g()), sn(s.phi()));
    CHECK(max_abs_diff(t, sn(rf.dt)) < 1e-11);
  }
  // dt = 8(n - 1) F with n = 2.
  CHECK(max_abs_diff(sn(rf.dt), scaled(sn(s.derived().F), 8.0)) < 1e-11);
}

TEST_CASE("phi forms on the Heisenberg chart") {
  const PacStructure& s = get_entry("heis-para").structure;
  const PhiForms f = phi_forms(s);
  Snapshot sn(s.manifold_ptr(), s.manifold().sample_points(1, 1)[0], required_order({&f.dF_minus, &f.dF_phi}));
  CHECK(max_abs(sn(f.dF_minus)) < 1e-12);
  CHECK(max_abs(sn(f.dF_phi)) < 1e-12);
}
