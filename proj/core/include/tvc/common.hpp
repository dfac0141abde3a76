#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tvc {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iunit{0.0, 1.0};

/// Error type for precondition and domain failures across the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

/// Multiindex over the transverse dimensions (length q, entries >= 0).
using Multiindex = std::vector<int>;

inline int mi_order(const Multiindex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

inline double mi_factorial(const Multiindex& a) {
  double f = 1.0;
  for (int v : a)
    for (int j = 2; j <= v; ++j) f *= j;
  return f;
}

/// All multiindices of length q with |alpha| = k, in lexicographic order.
std::vector<Multiindex> multiindices(int q, int k);

/// Gauss-Legendre nodes/weights on [a,b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

/// d^j/dt^j exp(-a t^2) at t=0 (exact; zero for odd j).
double gaussian_jet_1d(double a, int j);

inline bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}

/// Deterministic splitmix-style hash for seeding sub-generators.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tvc
