#include "atomchain/dense_lu.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace atomchain {

DenseLu::DenseLu(std::vector<cplx> a, std::size_t n) : lu_(std::move(a)), ipiv_(n), n_(n) {
  if (lu_.size() != n * n) throw InvalidArgument("LU: matrix is not n x n");
  if (n == 0) return;

  double scale = 0.0;
  for (const auto& v : lu_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw SolverError("LU: zero matrix");

  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, ln, ln, lu_.data(), ln, ipiv_.data());
  if (info < 0) throw SolverError("LU: zgetrf rejected argument " + std::to_string(-info));

  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = std::abs(lu_[k * n + k]);
    min_rel_pivot_ = std::min(min_rel_pivot_, pivot / scale);
    if (pivot < singular_threshold * scale) {
      std::ostringstream os;
      os << "singular or ill-conditioned system: pivot " << pivot << " at column " << k + 1
         << " (matrix scale " << scale << "); the coupling is near a resonance of the chain";
      throw SolverError(os.str());
    }
  }
}

std::vector<cplx> DenseLu::solve(std::span<const cplx> rhs) const {
  if (rhs.size() != n_) throw InvalidArgument("LU: right-hand side has wrong length");
  std::vector<cplx> x(rhs.begin(), rhs.end());
  if (n_ == 0) return x;
  const auto ln = static_cast<lapack_int>(n_);
  const lapack_int info =
      LAPACKE_zgetrs(LAPACK_ROW_MAJOR, 'N', ln, 1, lu_.data(), ln, ipiv_.data(), x.data(), 1);
  if (info != 0) throw SolverError("LU: zgetrs failed with info " + std::to_string(info));
  return x;
}

}  // namespace atomchain
