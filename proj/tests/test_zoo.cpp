#include <algorithm>

#include "doctest.h"
#include "pac/einsum.hpp"
#include "pac/errors.hpp"
#include "pac/zoo.hpp"

using namespace pac;

TEST_CASE("registry contents") {
  const std::vector<std::string> ids = list_entries();
  CHECK(ids.size() == 7);
  for (const char* id : {"flat-pac", "heis-para", "heis-para-frame", "heis-para-5", "solv-para", "sl2-para", "twisted-pac"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    CHECK(get_entry(id).id == id);
    CHECK_FALSE(get_entry(id).notes.empty());
  }
  CHECK_THROWS_AS(get_entry("nope"), LookupError);
}

TEST_CASE("dimensions and backends") {
  CHECK(get_entry("heis-para-5").structure.n() == 2);
  CHECK(get_entry("twisted-pac").structure.manifold().dim() == 5);
  CHECK(get_entry("heis-para-frame").structure.manifold().backend() == Backend::HomogeneousFrame);
  CHECK(get_entry("heis-para").structure.manifold().backend() == Backend::CoordinateChart);
}

TEST_CASE("Heisenberg frame matrix maps frame metric to chart metric") {
  const PacStructure& chart = heisenberg_chart(2);
  const PacStructure& frame = heisenberg_frame(2);
  const Point p{{0.2, -0.5, 0.7, 0.1, -0.3}};
  const NumTensor E = heisenberg_frame_matrix(2, p);
  const NumTensor gc = evaluate(chart.g(), p);
  const NumTensor gf = evaluate(frame.g(), frame.manifold().basepoint());
  CHECK(max_abs_diff(einsum("ai,bj,ij->ab", E, E, gc), gf) < 1e-14);
}

TEST_CASE("frames satisfy the Jacobi identity") {
  for (const char* id : {"heis-para-frame", "solv-para", "sl2-para"}) {
    CHECK(get_entry(id).structure.manifold().jacobi_defect() < 1e-15);
  }
  NumTensor c(3, 3, 0.0);
  c(0, 1, 2) = 1;
  CHECK_THROWS_AS(Manifold::frame("bad", c), UsageError);
}
