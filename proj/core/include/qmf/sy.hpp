#pragma once

#include <vector>

#include "qmf/poly.hpp"

namespace qmf {

// The classical 6x6 matrix S_y of quadrics in y_1..y_20 (Lambda3Coordinates
// order), satisfying S_y^2 = sl6_quartic * I_6. Entries come from a fixed
// 150-term table; build_sy materializes them over F.
std::vector<std::vector<SparsePoly>> build_sy(const Field& F);

// Independent reconstruction from the representation theory. Let y be the
// generic 3-vector with coordinates y_k and split(y) in Lambda^2 (x) C^6 the
// polarization expanding each basis 3-form u_a^u_b^u_c (a<b<c) as
//   u_b^u_c (x) u_a  -  u_a^u_c (x) u_b  +  u_a^u_b (x) u_c.
// Then D(u) in C^6 pairs u ^ y in Lambda^4 against the 2-form part of
// split(y) via the coefficient of the volume form u_123456, keeping the
// vector factor. Row r of the returned matrix holds the coordinates of
// D(e_{r+1}); this row convention reproduces build_sy exactly, with global
// sign +1.
std::vector<std::vector<SparsePoly>> kimura_sato_oracle(const Field& F);

} // namespace qmf
