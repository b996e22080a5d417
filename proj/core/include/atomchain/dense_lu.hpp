#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atomchain/domain.hpp"

namespace atomchain {

/// LU factorization with partial pivoting of a dense complex matrix (LAPACK
/// zgetrf / zgetrs). Factor once, then solve for any number of right-hand sides.
class DenseLu {
public:
  /// Relative pivot threshold below which the matrix is declared singular.
  static constexpr double singular_threshold = 1e-14;

  /// `a` is row-major n x n and is consumed. Throws SolverError when a pivot
  /// falls below singular_threshold * max|a_ij|.
  DenseLu(std::vector<cplx> a, std::size_t n);

  std::size_t size() const { return n_; }
  std::vector<cplx> solve(std::span<const cplx> rhs) const;

  /// Smallest |pivot| / max|a_ij| encountered.
  double min_relative_pivot() const { return min_rel_pivot_; }

private:
  std::vector<cplx> lu_;
  std::vector<int> ipiv_;
  std::size_t n_ = 0;
  double min_rel_pivot_ = 1.0;
};

}  // namespace atomchain
