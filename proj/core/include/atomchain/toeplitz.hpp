#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atomchain/domain.hpp"

namespace atomchain {

/// Symmetric complex Toeplitz matrix with zero diagonal, stored as one row
/// of separation-indexed coefficients: entry (l, j) = row[|l - j|], row[0] = 0.
class SymmetricToeplitz {
public:
  SymmetricToeplitz() = default;
  explicit SymmetricToeplitz(std::vector<cplx> row);

  std::size_t size() const { return row_.size(); }
  cplx operator()(std::size_t l, std::size_t j) const {
    return row_[l > j ? l - j : j - l];
  }
  std::span<const cplx> row() const { return row_; }

  /// y = T x, O(N^2).
  std::vector<cplx> apply(std::span<const cplx> x) const;
  /// y = T x via circulant embedding and FFT, O(N log N).
  std::vector<cplx> apply_fft(std::span<const cplx> x) const;

  /// Dense row-major copy of (I - T).
  std::vector<cplx> identity_minus_dense() const;

private:
  std::vector<cplx> row_;
};

}  // namespace atomchain
