#include <cmath>

#include "doctest.h"
#include "pac/errors.hpp"
#include "pac/field.hpp"

using namespace pac;

namespace {

ManifoldPtr cube3() { return Manifold::chart("cube", {{-1, 1}, {-1, 1}, {-1, 1}}); }

TensorField vector_field(ManifoldPtr m, std::function<std::vector<Jet>(std::span<const Jet>)> f, std::string name) {
  return chart_field(m, Valence::vector(), std::move(name), [f](std::span<const Jet> x) {
    auto v = f(x);
    JetTensor t(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = v[i];
    return t;
  });
}

TensorField one_form(ManifoldPtr m, std::function<std::vector<Jet>(std::span<const Jet>)> f, std::string name) {
  return chart_field(m, Valence::form(1), std::move(name), [f](std::span<const Jet> x) {
    auto v = f(x);
    JetTensor t(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = v[i];
    return t;
  });
}

}  // namespace

TEST_CASE("jets differentiate products and compositions exactly") {
  const JetSpace& s = JetSpace::get(2, 3);
  Jet x = Jet::variable(s, 3, 0, 0.3);
  Jet y = Jet::variable(s, 3, 1, -0.7);
  Jet f = exp(x * y) + sin(x) / cosh(y);
  // d/dx (e^{xy} + sin x / cosh y) = y e^{xy} + cos x / cosh y
  CHECK(f.derivative(0).value() == doctest::Approx(-0.7 * std::exp(-0.21) + std::cos(0.3) / std::cosh(-0.7)).epsilon(1e-14));
  // d^2/dx dy e^{xy} = (1 + xy) e^{xy}; sin x / cosh y gives -cos x sinh y / cosh^2 y
  const double fxy = (1 - 0.21) * std::exp(-0.21) - std::cos(0.3) * std::sinh(-0.7) / std::pow(std::cosh(-0.7), 2);
  CHECK(f.derivative(0).derivative(1).value() == doctest::Approx(fxy).epsilon(1e-13));
  Jet third = f.derivative(0).derivative(0).derivative(0);
  CHECK(third.order() == 0);
  CHECK_THROWS_AS(third.derivative(1), DerivativeDepthError);
  CHECK(sqrt(x * x + 1.0).derivative(0).value() == doctest::Approx(0.3 / std::sqrt(1.09)));
  CHECK(log(x + 2.0).derivative(0).derivative(0).value() == doctest::Approx(-1.0 / (2.3 * 2.3)));
}

TEST_CASE("exact constants carry no derivatives") {
  Jet c(2.5);
  CHECK(c.is_exact());
  CHECK(c.derivative(0).value() == 0.0);
  const JetSpace& s = JetSpace::get(1, 2);
  Jet x = Jet::variable(s, 2, 0, 1.0);
  CHECK((c * x).derivative(0).value() == 2.5);
}

TEST_CASE("lie bracket of the horizontal heisenberg fields") {
  auto m = cube3();
  auto e1 = vector_field(m, [](auto x) { return std::vector<Jet>{1.0, 0.0, x[1]}; }, "e1");
  auto e2 = vector_field(m, [](auto) { return std::vector<Jet>{0.0, 1.0, 0.0}; }, "e2");
  auto br = lie_bracket(e1, e2);
  for (const auto& p : m->sample_points(3, 7)) {
    NumTensor v = evaluate(br, p);
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(-1.0));
  }
}

TEST_CASE("bracket of non-commuting polynomial fields") {
  auto m = cube3();
  auto X = vector_field(m, [](auto x) { return std::vector<Jet>{x[1] * x[1], 0.0, 0.0}; }, "X");
  auto Y = vector_field(m, [](auto x) { return std::vector<Jet>{0.0, 1.0 + 0.0 * x[0], x[0]}; }, "Y");
  // [X,Y] = X(Y) - Y(X) = (y^2 * dY/dx) - (1 * dX/dy) = (0,0,y^2) - (2y,0,0)
  auto br = lie_bracket(X, Y);
  Point p{{0.2, 0.4, -0.1}};
  NumTensor v = evaluate(br, p);
  CHECK(v[0] == doctest::Approx(-0.8));
  CHECK(v[2] == doctest::Approx(0.16));
}

TEST_CASE("half-weighted exterior derivative of a contact form") {
  auto m = cube3();
  auto eta = one_form(m, [](auto x) { return std::vector<Jet>{-x[1], 0.0, 1.0}; }, "eta");
  auto deta = exterior_derivative(eta);
  Point p{{0.1, 0.5, -0.3}};
  NumTensor d = evaluate(deta, p);
  // e1 = dx + y dz, e2 = dy; d eta(e1,e2) = 1/2
  const double y = 0.5;
  const double val = d(0, 1) + y * d(2, 1);
  CHECK(val == doctest::Approx(0.5));
  CHECK(d(1, 0) == doctest::Approx(-0.5));
  auto dd = exterior_derivative(deta);
  NumTensor z = evaluate(dd, p);
  for (double c : z.data()) CHECK(c == doctest::Approx(0.0));
}

TEST_CASE("d of d of a scalar vanishes") {
  auto m = cube3();
  auto f = chart_field(m, Valence::scalar(), "f", [](std::span<const Jet> x) {
    JetTensor t(3, 0);
    t[0] = exp(x[0] * x[1]) * sin(x[2] + x[0]);
    return t;
  });
  auto ddf = exterior_derivative(exterior_derivative(f));
  for (const auto& p : m->sample_points(64, 42)) {
    NumTensor v = evaluate(ddf, p);
    for (double c : v.data()) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("metric contractions") {
  auto m = cube3();
  NumTensor g(3, 2, 0.0);
  g(0, 0) = 1;
  g(1, 1) = -1;
  g(2, 2) = 1;
  auto gf = constant_field(m, Valence::form(2), g, "g");
  NumTensor e(3, 1, 0.0);
  e[2] = 1;
  auto eta = constant_field(m, Valence::form(1), e, "eta");
  NumTensor xi = evaluate(metric_contract(eta, gf, {IndexAction::raise(0)}), m->basepoint());
  CHECK(xi[2] == 1.0);
  CHECK(xi[0] == 0.0);
  auto tr = metric_contract(inverse_metric(gf), gf, {IndexAction::lower(0), IndexAction::trace(0, 1)});
  CHECK(evaluate_scalar(tr, m->basepoint()) == doctest::Approx(3.0));

  NumTensor bad(3, 2, 0.0);
  bad(0, 0) = 1;
  auto degenerate = constant_field(m, Valence::form(2), bad, "bad");
  CHECK_THROWS_AS(evaluate(inverse_metric(degenerate), m->basepoint()), DegeneracyError);
}

TEST_CASE("jet inverse differentiates correctly") {
  auto m = cube3();
  auto g = chart_field(m, Valence::form(2), "g", [](std::span<const Jet> x) {
    JetTensor t(3, 2, Jet(0.0));
    t(0, 0) = 0.5 + x[1] * x[1];
    t(0, 2) = -x[1];
    t(2, 0) = -x[1];
    t(1, 1) = -0.5;
    t(2, 2) = 1.0;
    return t;
  });
  auto ginv = inverse_metric(g);
  auto check = metric_contract(ginv, g, {IndexAction::lower(0)});  // delta
  auto d = TensorField(m, Valence::form(3), 1, "dd", [check](EvalContext& ctx) {
    const JetTensor& c = check.eval(ctx);
    JetTensor out(3, 3, Jet(0.0));
    for_each_index(3, 3, [&](std::span<const int> e) { out.at(e) = ctx.derive(c(e[1], e[2]), e[0]); });
    return out;
  });
  NumTensor v = evaluate(d, Point{{0.2, 0.7, 0.1}});
  for (double c : v.data()) CHECK(std::abs(c) < 1e-13);
}

TEST_CASE("frame backend brackets and domain errors") {
  NumTensor c(3, 3, 0.0);
  c(1, 2, 0) = -2;
  c(2, 1, 0) = 2;
  c(0, 1, 1) = 1;
  c(1, 0, 1) = -1;
  c(0, 2, 2) = -1;
  c(2, 0, 2) = 1;
  auto m = Manifold::frame("solv", c);
  NumTensor e1(3, 1, 0.0), e2(3, 1, 0.0);
  e1[1] = 1;
  e2[2] = 1;
  auto br = lie_bracket(constant_field(m, Valence::vector(), e1, "e1"), constant_field(m, Valence::vector(), e2, "e2"));
  NumTensor v = evaluate(br, m->basepoint());
  CHECK(v[0] == -2.0);
  CHECK(v[1] == 0.0);
  CHECK_THROWS_AS(evaluate(br, Point{{0.0}}), DomainError);

  NumTensor bad = c;
  bad(1, 2, 1) = 1;
  bad(2, 1, 1) = -1;
  bad(0, 1, 0) = 1;
  bad(1, 0, 0) = -1;
  CHECK_THROWS_AS(Manifold::frame("bad", bad), UsageError);
  CHECK_THROWS_AS(Manifold::chart("even", {{-1, 1}, {-1, 1}}), UsageError);
}

TEST_CASE("wedge and interior products") {
  auto m = cube3();
  auto eta = one_form(m, [](auto x) { return std::vector<Jet>{-x[1], 0.0, 1.0}; }, "eta");
  auto deta = exterior_derivative(eta);
  auto w = wedge(eta, deta);
  NumTensor xi(3, 1, 0.0);
  xi[2] = 1;
  auto xif = constant_field(m, Valence::vector(), xi, "xi");
  auto contracted = interior(xif, w);
  Point p{{0.3, -0.4, 0.2}};
  NumTensor a = evaluate(contracted, p), b = evaluate(deta, p);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
  CHECK_THROWS_AS(wedge(deta, eta), UsageError);
  CHECK_THROWS_AS(exterior_derivative(w), UnsupportedError);
}
