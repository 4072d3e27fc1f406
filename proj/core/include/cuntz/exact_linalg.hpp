#pragma once

#include <vector>

#include "cuntz/rational.hpp"

namespace cuntz {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> row_reduce(RationalMatrix& a);

int rank(RationalMatrix a);

// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(RationalMatrix a, int columns);

// Unique solution of A x = b; throws DomainError if A is singular or the
// system is inconsistent.
std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b);

}  // namespace cuntz
