#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rootmirror/rational.hpp"

namespace rootmirror {

using RationalVector = std::vector<Rational>;
// Row-major dense matrix; all rows share one length.
using RationalMatrix = std::vector<RationalVector>;

struct EchelonForm {
  RationalMatrix rows;              // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

EchelonForm reduced_row_echelon(RationalMatrix m);

// Some solution x of A x = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b);

// Basis of {x : A x = 0}; `columns` is needed when A has no rows.
RationalMatrix kernel_basis(const RationalMatrix& a, std::size_t columns);

}  // namespace rootmirror
