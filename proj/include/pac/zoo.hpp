#pragma once

#include <string>
#include <vector>

#include "pac/paracontact.hpp"

namespace pac {

struct ExpectedFlags {
  bool almost_pac_metric = true;
  bool paracontact = false;
  bool K_paracontact = false;
  bool integrable = false;
  bool normal = false;
  bool paraSasakian = false;
};

struct ZooEntry {
  std::string id;
  PacStructure structure;
  ExpectedFlags expected;
  std::string notes;
};

std::vector<std::string> list_entries();
/// Throws LookupError for an unknown id.
const ZooEntry& get_entry(const std::string& id);

/// Heisenberg-type structure of dimension 2n+1 as a coordinate chart on the
/// unit box, coordinates (x_1..x_n, y_1..y_n, z), eta = dz - sum y_i dx_i.
PacStructure heisenberg_chart(int n);
/// The same structure as a left-invariant frame (xi, e_1..e_n, f_1..f_n)
/// with [e_i, f_i] = -xi, g = diag(1, 1/2.., -1/2..).
PacStructure heisenberg_frame(int n);

/// Frame matrix E(a, i) = E_a^i of the Heisenberg frame at a chart point,
/// in the frame order (xi, e_i, f_i), e_i = d/dx_i + y_i d/dz, f_i = d/dy_i.
NumTensor heisenberg_frame_matrix(int n, const Point& p);

}  // namespace pac
