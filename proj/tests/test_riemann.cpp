#include <array>
#include <cmath>

#include "doctest.h"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/riemann.hpp"
#include "pac/zoo.hpp"

using namespace pac;

namespace {

const Point kPoint{{0.3, -0.2, 0.1}};

void check_matrix(const NumTensor& got, const std::vector<std::vector<double>>& want, double tol) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    for (std::size_t j = 0; j < want.size(); ++j) {
      INFO("entry " << i << "," << j);
      CHECK(got(i, j) == doctest::Approx(want[i][j]).epsilon(tol).scale(1.0));
    }
  }
}

}  // namespace

// Reference values below come from a symbolic Christoffel computation of
// g = [[y^2 + 1/2, 0, -y], [0, -1/2, 0], [-y, 0, 1]] and from the Koszul
// formula on the frames, both done outside this library.

TEST_CASE("Heisenberg chart: Christoffel symbols and curvature at a point") {
  const PacStructure& s = get_entry("heis-para").structure;
  const auto& d = s.derived();
  Snapshot sn(s.manifold_ptr(), kPoint, required_order({&d.R, &d.Ric, &d.scal}));
  // Gamma^z_xy = y^2 - 1/2
  CHECK(sn(d.lc.coefficients())(0, 1, 2) == doctest::Approx(0.04 - 0.5));
  CHECK(sn(d.R)(0, 1, 0, 1) == doctest::Approx(-73.0 / 50.0));
  check_matrix(sn(d.Ric), {{23.0 / 25, 0, -0.4}, {0, -1, 0}, {-0.4, 0, -2}}, 1e-12);
  CHECK(sn.scalar(d.scal) == doctest::Approx(2.0));
}

TEST_CASE("frame Ricci tensors match the Koszul reference") {
  SUBCASE("solv-para") {
    const PacStructure& s = get_entry("solv-para").structure;
    Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&s.derived().Ric}));
    check_matrix(sn(s.derived().Ric), {{-4, 0, 0}, {0, 2, 2}, {0, 2, -2}}, 1e-14);
    CHECK(sn.scalar(s.derived().scal) == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("sl2-para") {
    const PacStructure& s = get_entry("sl2-para").structure;
    Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&s.derived().Ric}));
    check_matrix(sn(s.derived().Ric), {{-2, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 1e-14);
  }
  SUBCASE("heis-para-frame") {
    const PacStructure& s = get_entry("heis-para-frame").structure;
    Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&s.derived().Ric}));
    check_matrix(sn(s.derived().Ric), {{-2, 0, 0}, {0, 1, 0}, {0, 0, -1}}, 1e-14);
  }
}

TEST_CASE("Levi-Civita connection is torsion free and metric") {
  for (const char* id : {"heis-para", "solv-para", "twisted-pac"}) {
    const PacStructure& s = get_entry(id).structure;
    const TensorField t = torsion(s.derived().lc);
    const TensorField ng = covariant_derivative(s.derived().lc, s.g());
    for (const Point& p : s.manifold().sample_points(4, 3)) {
      Snapshot sn(s.manifold_ptr(), p, required_order({&t, &ng}));
      CHECK(max_abs(sn(t)) < 1e-12);
      CHECK(max_abs(sn(ng)) < 1e-12);
    }
  }
}

TEST_CASE("curvature symmetries and the first Bianchi identity") {
  const PacStructure& s = get_entry("heis-para-5").structure;
  const auto& d = s.derived();
  Snapshot sn(s.manifold_ptr(), s.manifold().sample_points(1, 11)[0], required_order({&d.R4}));
  const NumTensor& r = sn(d.R4);
  CHECK(max_abs(axpy(r, 1.0, permuted(r, {1, 0, 2, 3}))) < 1e-12);
  CHECK(max_abs(axpy(r, -1.0, permuted(r, {2, 3, 0, 1}))) < 1e-12);
  const NumTensor cyc = axpy(axpy(r, 1.0, permuted(r, {1, 2, 0, 3})), 1.0, permuted(r, {2, 0, 1, 3}));
  CHECK(max_abs(cyc) < 1e-12);
}

TEST_CASE("sectional curvature rejects null planes") {
  const PacStructure& s = get_entry("sl2-para").structure;
  Snapshot sn(s.manifold_ptr(), s.manifold().basepoint(), required_order({&s.derived().R4}));
  const std::array<double, 3> null{0, 1, 1}, xi{1, 0, 0}, e1{0, 1, 0};
  CHECK_THROWS_AS(sectional_curvature(sn(s.g()), sn(s.derived().R4), null, xi), PlaneDegeneracyError);
  // K(xi, e1) = R(xi,e1,e1,xi) / g(e1,e1) = -1 on this frame.
  CHECK(sectional_curvature(sn(s.g()), sn(s.derived().R4), xi, e1) == doctest::Approx(-1.0));
}

TEST_CASE("fields evaluated beyond the snapshot order throw") {
  const PacStructure& s = get_entry("heis-para").structure;
  Snapshot sn(s.manifold_ptr(), kPoint, 0);
  CHECK_THROWS_AS(sn(s.derived().R), DerivativeDepthError);
}

TEST_CASE("codifferential of eta vanishes on the Heisenberg chart") {
  const PacStructure& s = get_entry("heis-para").structure;
  const ScalarField de = codifferential(s.g(), s.eta());
  Snapshot sn(s.manifold_ptr(), kPoint, required_order({&de}));
  CHECK(std::abs(sn.scalar(de)) < 1e-13);
}
