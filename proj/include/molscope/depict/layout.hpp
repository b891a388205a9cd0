#pragma once

#include <vector>

#include "molscope/chem/mol.hpp"

namespace molscope::depict {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

class LayoutError : public Error {
public:
    using Error::Error;
};

// Deterministic 2D sketch coordinates (bond length 1): ring systems laid
// out as fused regular polygons, acyclic neighbors sprouted into the
// widest free angular gap. No randomness, so identical molecules always
// get identical coordinates.
std::vector<Point> layout_2d(const chem::Molecule& mol);

}  // namespace molscope::depict
