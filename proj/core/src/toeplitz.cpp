#include "atomchain/toeplitz.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace atomchain {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;
using FftwPlan = std::unique_ptr<fftw_plan_s, FftwDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

SymmetricToeplitz::SymmetricToeplitz(std::vector<cplx> row) : row_(std::move(row)) {
  if (!row_.empty() && row_[0] != cplx{})
    throw InvalidArgument("Toeplitz coupling row must have zero diagonal");
}

std::vector<cplx> SymmetricToeplitz::apply(std::span<const cplx> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw InvalidArgument("matvec dimension mismatch");
  std::vector<cplx> y(n);
  for (std::size_t l = 0; l < n; ++l) {
    cplx acc{};
    for (std::size_t j = 0; j < l; ++j) acc += row_[l - j] * x[j];
    for (std::size_t j = l + 1; j < n; ++j) acc += row_[j - l] * x[j];
    y[l] = acc;
  }
  return y;
}

std::vector<cplx> SymmetricToeplitz::apply_fft(std::span<const cplx> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw InvalidArgument("matvec dimension mismatch");
  if (n <= 1) return std::vector<cplx>(n);

  // Circulant of size m >= 2n - 1 whose first column is
  // [r0, r1, ..., r_{n-1}, 0, ..., 0, r_{n-1}, ..., r1].
  const std::size_t m = next_pow2(2 * n - 1);
  auto col = make_buffer(m);
  auto vec = make_buffer(m);
  for (std::size_t i = 0; i < m; ++i) {
    col[i][0] = col[i][1] = 0.0;
    vec[i][0] = vec[i][1] = 0.0;
  }
  for (std::size_t d = 0; d < n; ++d) {
    col[d][0] = row_[d].real();
    col[d][1] = row_[d].imag();
    if (d > 0) {
      col[m - d][0] = row_[d].real();
      col[m - d][1] = row_[d].imag();
    }
    vec[d][0] = x[d].real();
    vec[d][1] = x[d].imag();
  }

  FftwPlan fwd_col, fwd_vec, inv;
  {
    std::lock_guard lock(planner_mutex());
    fwd_col.reset(fftw_plan_dft_1d(int(m), col.get(), col.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    fwd_vec.reset(fftw_plan_dft_1d(int(m), vec.get(), vec.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    inv.reset(fftw_plan_dft_1d(int(m), vec.get(), vec.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  fftw_execute(fwd_col.get());
  fftw_execute(fwd_vec.get());
  for (std::size_t i = 0; i < m; ++i) {
    const cplx p = cplx(col[i][0], col[i][1]) * cplx(vec[i][0], vec[i][1]);
    vec[i][0] = p.real();
    vec[i][1] = p.imag();
  }
  fftw_execute(inv.get());

  std::vector<cplx> y(n);
  const double scale = 1.0 / double(m);
  for (std::size_t i = 0; i < n; ++i) y[i] = cplx(vec[i][0], vec[i][1]) * scale;
  return y;
}

std::vector<cplx> SymmetricToeplitz::identity_minus_dense() const {
  const std::size_t n = size();
  std::vector<cplx> a(n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j)
      a[l * n + j] = (l == j ? cplx(1.0) : cplx{}) - (*this)(l, j);
  return a;
}

}  // namespace atomchain
