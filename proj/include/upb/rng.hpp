#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "upb/linalg.hpp"

namespace upb {

// Deterministic random source. std::mt19937_64 has a fully specified output
// sequence; the Gaussian transform is hand-rolled because the distribution
// adapters in <random> are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derives an independent stream seed, e.g. one per seesaw restart.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  // Haar-uniform unit vector on the complex sphere.
  ComplexVector haar_vector(int dim) {
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = complex_normal();
    v /= v.norm();
    return v;
  }

  // Haar-distributed unitary via QR of a Gaussian matrix with the usual
  // R-diagonal phase correction.
  ComplexMatrix haar_unitary(int dim) {
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = complex_normal();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
      const Complex d = r(j, j);
      const double a = std::abs(d);
      if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace upb
