#include "ruledsl/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace ruledsl {
namespace {

cplx ipow(cplx base, int order) {
  cplx r = 1.0;
  for (int i = 0; i < order; ++i) r *= base;
  return r;
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft::Impl {
  std::size_t n = 0;
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    buf_in = fftw_alloc_complex(n);
    buf_out = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(len, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(len, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf_in);
    fftw_free(buf_out);
  }

  void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out, double scale) {
    if (in.size() != n || out.size() != n) throw std::invalid_argument("Fft: size mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      buf_in[j][0] = in[j].real();
      buf_in[j][1] = in[j].imag();
    }
    fftw_execute(plan);
    for (std::size_t j = 0; j < n; ++j) out[j] = scale * cplx(buf_out[j][0], buf_out[j][1]);
  }
};

Fft::Fft(std::size_t n) : impl_(std::make_unique<Impl>(n)) {
  if (n == 0) throw std::invalid_argument("Fft: empty transform");
}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const { return impl_->n; }

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) {
  impl_->run(impl_->fwd, in, out, 1.0);
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) {
  impl_->run(impl_->bwd, in, out, 1.0 / static_cast<double>(impl_->n));
}

int wavenumber(std::size_t j, std::size_t n) {
  const auto jj = static_cast<long>(j);
  const auto nn = static_cast<long>(n);
  return static_cast<int>(2 * jj < nn ? jj : jj - nn);
}

PeriodicDifferentiator::PeriodicDifferentiator(std::size_t n, double period)
    : fft_(n), period_(period), spectrum_(n) {}

void PeriodicDifferentiator::derivative(std::span<const cplx> f, std::span<cplx> out, int order) {
  const std::size_t n = fft_.size();
  fft_.forward(f, spectrum_);
  const double w = 2.0 * std::numbers::pi / period_;
  for (std::size_t j = 0; j < n; ++j) {
    const int k = wavenumber(j, n);
    const bool nyquist = n % 2 == 0 && 2 * j == n;
    if (nyquist && order % 2 == 1) {
      spectrum_[j] = 0.0;
      continue;
    }
    const double kw = nyquist ? 0.5 * static_cast<double>(n) * w : k * w;
    spectrum_[j] *= ipow(cplx(0.0, kw), order);
  }
  fft_.inverse(spectrum_, out);
}

std::vector<cplx> PeriodicDifferentiator::derivative(std::span<const cplx> f, int order) {
  std::vector<cplx> out(f.size());
  derivative(f, out, order);
  return out;
}

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples, double period)
    : coeffs_(samples.size()), omega_(2.0 * std::numbers::pi / period) {
  Fft fft(samples.size());
  fft.forward(samples, coeffs_);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& c : coeffs_) c *= inv;
}

std::vector<cplx> trig_basis(std::size_t n, double period, double x, int order) {
  const double omega = 2.0 * std::numbers::pi / period;
  std::vector<cplx> basis(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (n % 2 == 0 && 2 * j == n) {
      // split the Nyquist coefficient into a cosine
      const double kw = 0.5 * static_cast<double>(n) * omega;
      const cplx plus = ipow(cplx(0.0, kw), order) * std::exp(cplx(0.0, kw * x));
      const cplx minus = ipow(cplx(0.0, -kw), order) * std::exp(cplx(0.0, -kw * x));
      basis[j] = 0.5 * (plus + minus);
      continue;
    }
    const double kw = wavenumber(j, n) * omega;
    basis[j] = ipow(cplx(0.0, kw), order) * std::exp(cplx(0.0, kw * x));
  }
  return basis;
}

cplx TrigInterpolant::operator()(double x, int order) const {
  const double period = 2.0 * std::numbers::pi / omega_;
  const std::vector<cplx> basis = trig_basis(coeffs_.size(), period, x, order);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) sum += coeffs_[j] * basis[j];
  return sum;
}

ChebyshevDifferentiator::ChebyshevDifferentiator(std::size_t n, double a, double b)
    : nodes_(n), matrix_(n * n, 0.0) {
  if (n < 2) return;
  const std::size_t m = n - 1;
  std::vector<double> x(n), c(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = std::cos(std::numbers::pi * double(j) / double(m));
    c[j] = ((j == 0 || j == m) ? 2.0 : 1.0) * (j % 2 == 0 ? 1.0 : -1.0);
    nodes_[j] = a + 0.5 * (b - a) * (1.0 - x[j]);
  }
  // d/ds = -2 / (b - a) d/dx
  const double scale = -2.0 / (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (c[i] / c[j]) / (x[i] - x[j]);
      matrix_[i * n + j] = scale * d;
      row += d;
    }
    matrix_[i * n + i] = -scale * row;
  }
}

void ChebyshevDifferentiator::derivative(std::span<const cplx> f, std::span<cplx> out) const {
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += matrix_[i * n + j] * f[j];
    out[i] = acc;
  }
}

cplx chebyshev_interpolate(std::span<const cplx> values, double a, double b, double x) {
  const std::size_t n = values.size();
  const std::size_t m = n - 1;
  const double y = 1.0 - 2.0 * (x - a) / (b - a);
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = std::cos(std::numbers::pi * double(j) / double(m));
    if (y == xj) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == m) w *= 0.5;
    const double q = w / (y - xj);
    num += q * values[j];
    den += q;
  }
  return num / den;
}

}  // namespace ruledsl
