#include "pac/zoo.hpp"

#include <map>

#include "pac/errors.hpp"

namespace pac {

namespace {

ManifoldPtr unit_box(const std::string& name, int dim) {
  return Manifold::chart(name, std::vector<Interval>(dim, Interval{-1.0, 1.0}));
}

NumTensor diag(std::vector<double> d) {
  NumTensor t(static_cast<int>(d.size()), 2, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) t(i, i) = d[i];
  return t;
}

NumTensor unit(int dim, int k) {
  NumTensor t(dim, 1, 0.0);
  t[k] = 1.0;
  return t;
}

/// Constant structure on a frame manifold; phi swaps E_i and E_{i+n}.
PacStructure frame_structure(ManifoldPtr m, NumTensor g) {
  const int dim = m->dim();
  const int n = m->half_dim();
  NumTensor phi(dim, 2, 0.0);
  for (int i = 1; i <= n; ++i) {
    phi(i + n, i) = 1.0;
    phi(i, i + n) = 1.0;
  }
  return PacStructure(constant_field(m, Valence::endomorphism(), phi, "phi"),
                      constant_field(m, Valence::vector(), unit(dim, 0), "xi"),
                      constant_field(m, Valence::form(1), unit(dim, 0), "eta"),
                      constant_field(m, Valence::form(2), std::move(g), "g"), m->name());
}

void set_bracket(NumTensor& c, int a, int b, int k, double v) {
  c(a, b, k) = v;
  c(b, a, k) = -v;
}

PacStructure flat_pac() {
  auto m = unit_box("flat-pac", 3);
  NumTensor phi(3, 2, 0.0);
  phi(1, 0) = 1.0;
  phi(0, 1) = 1.0;
  return PacStructure(constant_field(m, Valence::endomorphism(), phi, "phi"),
                      constant_field(m, Valence::vector(), unit(3, 2), "xi"),
                      constant_field(m, Valence::form(1), unit(3, 2), "eta"),
                      constant_field(m, Valence::form(2), diag({1, -1, 1}), "g"), "flat-pac");
}

PacStructure solv_para() {
  NumTensor c(3, 3, 0.0);
  set_bracket(c, 1, 2, 0, -2.0);
  set_bracket(c, 0, 1, 1, 1.0);
  set_bracket(c, 0, 2, 2, -1.0);
  return frame_structure(Manifold::frame("solv-para", c), diag({1, 1, -1}));
}

PacStructure sl2_para() {
  NumTensor c(3, 3, 0.0);
  set_bracket(c, 1, 2, 0, -2.0);
  set_bracket(c, 0, 1, 2, 1.0);
  set_bracket(c, 0, 2, 1, 1.0);
  return frame_structure(Manifold::frame("sl2-para", c), diag({1, 1, -1}));
}

PacStructure twisted_pac() {
  // Coordinates (x1, x2, y1, y2, z). The second pair is boosted by y1:
  // phi U = d/dy2, phi d/dy2 = U for U = cosh y1 d/dx2 + sinh y1 d/dy2.
  auto m = unit_box("twisted-pac", 5);
  auto phi = chart_field(m, Valence::endomorphism(), "phi", [](std::span<const Jet> x) {
    const Jet c = cosh(x[2]), s = sinh(x[2]);
    JetTensor t(5, 2, Jet(0.0));
    t(2, 0) = Jet(1.0);
    t(0, 2) = Jet(1.0);
    t(1, 1) = -s;
    t(3, 1) = (1.0 - s * s) / c;
    t(1, 3) = c;
    t(3, 3) = s;
    return t;
  });
  // G = diag(1,1,-1,-1,1) in the coframe (dx1, dx2 / cosh y1, dy1, dy2 - tanh y1 dx2, dz).
  auto G = chart_field(m, Valence::form(2), "G", [](std::span<const Jet> x) {
    const Jet c = cosh(x[2]), th = tanh(x[2]);
    JetTensor t(5, 2, Jet(0.0));
    t(0, 0) = Jet(1.0);
    t(1, 1) = reciprocal(c * c) - th * th;
    t(1, 3) = th;
    t(3, 1) = th;
    t(2, 2) = Jet(-1.0);
    t(3, 3) = Jet(-1.0);
    t(4, 4) = Jet(1.0);
    return t;
  });
  auto xi = constant_field(m, Valence::vector(), unit(5, 4), "xi");
  auto eta = constant_field(m, Valence::form(1), unit(5, 4), "eta");
  return PacStructure(phi, xi, eta, build_compatible_metric(phi, xi, eta, G), "twisted-pac");
}

ExpectedFlags all_flags() { return {true, true, true, true, true, true}; }

std::map<std::string, ZooEntry> build_registry() {
  std::map<std::string, ZooEntry> r;
  auto add = [&](PacStructure s, ExpectedFlags f, std::string notes) {
    std::string id = s.name();
    r.emplace(id, ZooEntry{id, std::move(s), f, std::move(notes)});
  };
  add(flat_pac(), {true, false, false, true, true, false},
      "Constant structure on the unit cube: eta = dz, phi swaps d/dx and d/dy, g = diag(1,-1,1). d eta = 0, so not "
      "paracontact; every Nijenhuis tensor vanishes.");
  add(heisenberg_chart(1), all_flags(),
      "Heisenberg group in coordinates: eta = dz - y dx, xi = d/dz, phi(d/dx + y d/dz) = d/dy, g fixed by F = d eta.");
  add(heisenberg_frame(1), all_flags(), "The Heisenberg structure as a left-invariant frame (xi, e, f), [e, f] = -xi.");
  add(heisenberg_chart(2), all_flags(), "Five-dimensional Heisenberg structure, eta = dz - y1 dx1 - y2 dx2.");
  add(solv_para(), {true, true, false, true, false, false},
      "Left-invariant frame (xi, e1, e2) with [e1,e2] = -2 xi, [xi,e1] = e1, [xi,e2] = -e2, g = diag(1,1,-1). xi is "
      "not Killing; h e1 = -e2, h e2 = e1.");
  add(sl2_para(), all_flags(),
      "sl(2,R) frame with [e1,e2] = -2 xi, [xi,e1] = e2, [xi,e2] = e1, g = diag(1,1,-1). eta-Einstein with scal = -2.");
  add(twisted_pac(), {true, false, false, false, false, false},
      "Five-dimensional, eta = dz. phi swaps d/dx1 and d/dy1, and swaps d/dy2 with U = cosh y1 d/dx2 + sinh y1 "
      "d/dy2; metric from the compatible-metric construction with G = diag(1,1,-1,-1,1) in the frame "
      "(d/dx1, U, d/dy1, d/dy2, d/dz). The +1 eigendistribution of phi is not involutive.");
  return r;
}

const std::map<std::string, ZooEntry>& registry() {
  static const std::map<std::string, ZooEntry> r = build_registry();
  return r;
}

}  // namespace

PacStructure heisenberg_chart(int n) {
  const int dim = 2 * n + 1;
  auto m = unit_box(n == 1 ? "heis-para" : "heis-para-" + std::to_string(dim), dim);
  const int z = dim - 1;
  // Coordinates (x_1..x_n, y_1..y_n, z); y_i is coordinate n + i - 1.
  auto phi = chart_field(m, Valence::endomorphism(), "phi", [n, z, dim](std::span<const Jet> x) {
    JetTensor t(dim, 2, Jet(0.0));
    for (int i = 0; i < n; ++i) {
      t(n + i, i) = Jet(1.0);  // phi d/dx_i = d/dy_i
      t(i, n + i) = Jet(1.0);  // phi d/dy_i = d/dx_i + y_i d/dz
      t(z, n + i) = x[n + i];
    }
    return t;
  });
  auto eta = chart_field(m, Valence::form(1), "eta", [n, z, dim](std::span<const Jet> x) {
    JetTensor t(dim, 1, Jet(0.0));
    for (int i = 0; i < n; ++i) t[i] = -x[n + i];
    t[z] = Jet(1.0);
    return t;
  });
  auto g = chart_field(m, Valence::form(2), "g", [n, z, dim](std::span<const Jet> x) {
    // d/dx_i = e_i - y_i xi with g(e_i,e_i) = 1/2, g(f_i,f_i) = -1/2, g(xi,xi) = 1.
    JetTensor t(dim, 2, Jet(0.0));
    for (int i = 0; i < n; ++i) {
      const Jet& y = x[n + i];
      for (int j = 0; j < n; ++j) t(i, j) = x[n + i] * x[n + j];
      t(i, i) += 0.5;
      t(n + i, n + i) = Jet(-0.5);
      t(i, z) = -y;
      t(z, i) = -y;
    }
    t(z, z) = Jet(1.0);
    return t;
  });
  NumTensor xi(dim, 1, 0.0);
  xi[z] = 1.0;
  return PacStructure(phi, constant_field(m, Valence::vector(), xi, "xi"), eta, g, m->name());
}

PacStructure heisenberg_frame(int n) {
  const int dim = 2 * n + 1;
  NumTensor c(dim, 3, 0.0);
  for (int i = 1; i <= n; ++i) set_bracket(c, i, i + n, 0, -1.0);
  std::vector<double> g(dim, 0.5);
  g[0] = 1.0;
  for (int i = 1; i <= n; ++i) g[i + n] = -0.5;
  const std::string name = n == 1 ? "heis-para-frame" : "heis-para-" + std::to_string(dim) + "-frame";
  return frame_structure(Manifold::frame(name, c), diag(g));
}

NumTensor heisenberg_frame_matrix(int n, const Point& p) {
  const int dim = 2 * n + 1;
  const int z = dim - 1;
  NumTensor E(dim, 2, 0.0);
  E(0, z) = 1.0;
  for (int i = 0; i < n; ++i) {
    E(1 + i, i) = 1.0;
    E(1 + i, z) = p.coords[n + i];
    E(1 + n + i, n + i) = 1.0;
  }
  return E;
}

std::vector<std::string> list_entries() {
  std::vector<std::string> ids;
  for (const auto& [id, e] : registry()) ids.push_back(id);
  return ids;
}

const ZooEntry& get_entry(const std::string& id) {
  const auto& r = registry();
  auto it = r.find(id);
  if (it == r.end()) throw LookupError("unknown manifold '" + id + "'");
  return it->second;
}

}  // namespace pac
