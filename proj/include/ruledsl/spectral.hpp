#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ruledsl {

using cplx = std::complex<double>;

/// Fixed-size complex DFT backed by FFTW. Owns its plans and buffers; one
/// instance must not be used from two threads at once.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const;

  /// out_k = sum_j in_j exp(-2 pi i j k / n), unnormalized.
  void forward(std::span<const cplx> in, std::span<cplx> out);
  /// out_j = (1/n) sum_k in_k exp(2 pi i j k / n).
  void inverse(std::span<const cplx> in, std::span<cplx> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Signed wavenumber of DFT index j for length n, in [-n/2, n/2).
int wavenumber(std::size_t j, std::size_t n);

/// Spectral differentiation of periodic samples f_j = f(j L / n).
/// The Nyquist mode is treated as a cosine: its odd-order derivative vanishes
/// on the nodes.
class PeriodicDifferentiator {
 public:
  PeriodicDifferentiator(std::size_t n, double period);

  std::size_t size() const { return fft_.size(); }
  double period() const { return period_; }

  void derivative(std::span<const cplx> f, std::span<cplx> out, int order = 1);
  std::vector<cplx> derivative(std::span<const cplx> f, int order = 1);

 private:
  Fft fft_;
  double period_;
  std::vector<cplx> spectrum_;
};

/// b_j(x) such that the order-th derivative of the trigonometric interpolant
/// with normalized DFT coefficients c_j is sum_j c_j b_j(x). The Nyquist mode
/// contributes a cosine.
std::vector<cplx> trig_basis(std::size_t n, double period, double x, int order = 0);

/// Trigonometric interpolant of periodic samples, evaluable with derivatives
/// at arbitrary points. Nyquist energy is split evenly between +n/2 and -n/2.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  TrigInterpolant(std::span<const cplx> samples, double period);

  cplx operator()(double x, int order = 0) const;
  std::size_t size() const { return coeffs_.size(); }

 private:
  std::vector<cplx> coeffs_;  // normalized DFT coefficients
  double omega_ = 1.0;        // 2 pi / period
};

/// Differentiation at the Chebyshev extrema of [a, b], ordered from a to b:
///   s_j = a + (b - a)(1 - cos(pi j / (n - 1))) / 2,  j = 0 .. n - 1.
class ChebyshevDifferentiator {
 public:
  ChebyshevDifferentiator(std::size_t n, double a, double b);
  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  void derivative(std::span<const cplx> f, std::span<cplx> out) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> matrix_;  // row-major n x n
};

/// Barycentric interpolation through values at the Chebyshev extrema of [a, b].
cplx chebyshev_interpolate(std::span<const cplx> values, double a, double b, double x);

}  // namespace ruledsl
