#include <doctest.h>

#include <cmath>
#include <random>

#include "tvc/homogeneous.hpp"
#include "tvc/radial.hpp"

using namespace tvc;

namespace {

HomogeneousComponent scalar_component(
    int q, cplx degree, const std::function<cplx(const VectorXd&)>& f,
    int n_circle = 128) {
  SphereGrid g = SphereGrid::make(q, n_circle);
  return HomogeneousComponent::from_function(
      degree, 1, g,
      [&](const VectorXd& w) { return MatrixXcd::Constant(1, 1, f(w)); });
}

}  // namespace

TEST_CASE("sphere integral: constants and symmetry") {
  auto h = scalar_component(2, 0.0, [](const VectorXd&) { return cplx(1.0); });
  CHECK(std::abs(sphere_integral(h) - cplx(2.0 * pi)) < 1e-12);

  auto odd = scalar_component(2, 0.0,
                              [](const VectorXd& w) { return cplx(w[0]); });
  CHECK(std::abs(sphere_integral(odd)) < 1e-13);

  auto two = scalar_component(1, 0.0, [](const VectorXd& w) {
    return cplx(w[0] > 0 ? 3.0 : 5.0);
  });
  CHECK(std::abs(sphere_integral(two) - cplx(8.0)) < 1e-14);

  SphereGrid g1 = SphereGrid::make(1);
  SphereGrid g2 = SphereGrid::make(2, 256);
  g1.validate();
  g2.validate();
}

TEST_CASE("homogeneous evaluation and derivative") {
  auto h = scalar_component(1, -1.0, [](const VectorXd&) { return cplx(1.0); });
  CHECK(std::abs(h.eval(VectorXd::Constant(1, 4.0))(0, 0) - cplx(0.25)) <
        1e-14);

  auto r2 = scalar_component(2, 2.0, [](const VectorXd&) { return cplx(1.0); });
  auto d1 = r2.deta(0);
  VectorXd eta(2);
  eta << 0.3, -1.7;
  CHECK(std::abs(d1.eval(eta)(0, 0) - cplx(2.0 * eta[0])) < 1e-10);

  // sigma = eta1^2/|eta|^2, homogeneous of degree 0
  auto ang = scalar_component(2, 0.0, [](const VectorXd& w) {
    return cplx(w[0] * w[0]);
  });
  auto dang = ang.deta(1);
  VectorXd p(2);
  p << 0.8, 0.6;
  double expect = -2.0 * p[0] * p[0] * p[1] / std::pow(p.squaredNorm(), 2);
  CHECK(std::abs(dang.eval(p)(0, 0) - cplx(expect)) < 1e-10);
}

TEST_CASE("extension: odd principal value and obstructions") {
  auto odd = scalar_component(1, -1.0,
                              [](const VectorXd& w) { return cplx(w[0]); });
  TestFunction gauss = TestFunction::gaussian(1);
  auto res = extend_homogeneous(odd, gauss);
  CHECK(!res.is_canonical);
  REQUIRE(res.log_coefficients.size() == 1);
  CHECK(std::abs(res.log_coefficients.begin()->second) < 1e-13);
  CHECK(std::abs(res.pairing) < 1e-12);

  // pairing with phi = eta e^{-eta^2}: integrand e^{-eta^2}, value sqrt(pi)
  TestFunction etag = TestFunction::monomial_gaussian(1, {1});
  auto res2 = extend_homogeneous(odd, etag);
  CHECK(std::abs(res2.pairing - cplx(std::sqrt(pi))) < 1e-10);

  auto even = scalar_component(1, -1.0,
                               [](const VectorXd&) { return cplx(1.0); });
  auto res3 = extend_homogeneous(even, gauss);
  CHECK(!res3.is_canonical);
  CHECK(std::abs(res3.log_coefficients.begin()->second - cplx(2.0)) < 1e-13);
}

TEST_CASE("extension: canonical degree -1/2 pairing") {
  // (tau, e^{-eta^2}) = int |eta|^{-1/2} e^{-eta^2} d eta = Gamma(1/4)
  auto h = scalar_component(1, -0.5, [](const VectorXd&) { return cplx(1.0); });
  TestFunction gauss = TestFunction::gaussian(1);
  auto res = extend_homogeneous(h, gauss);
  CHECK(res.is_canonical);
  CHECK(res.log_coefficients.empty());
  CHECK(std::abs(res.pairing - cplx(std::tgamma(0.25))) < 1e-10);
}

TEST_CASE("extension scaling law at critical degrees") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int cases = 0;
  for (int trial = 0; trial < 10; ++trial) {
    int q = trial % 2 == 0 ? 1 : 2;
    int k = trial % 3;
    if (q == 2 && k > 1) k = 1;
    cplx degree = -double(q) - double(k);
    HomogeneousComponent sigma = [&]() {
      if (q == 1) {
        double a = unif(rng), b = unif(rng);
        if (trial == 0) {  // odd zero-obstruction case
          a = 1.0;
          b = -1.0;
        }
        if (trial == 2) {  // even nonzero-obstruction case
          a = 1.0;
          b = 1.0;
        }
        return scalar_component(1, degree, [a, b](const VectorXd& w) {
          return cplx(w[0] > 0 ? a : b);
        });
      }
      double c0 = unif(rng), c1 = unif(rng), s1 = unif(rng), c2 = unif(rng);
      return scalar_component(2, degree, [=](const VectorXd& w) {
        double phi = std::atan2(w[1], w[0]);
        return cplx(c0 + c1 * std::cos(phi) + s1 * std::sin(phi) +
                    c2 * std::cos(2 * phi));
      });
    }();
    TestFunction phi = TestFunction::gaussian(q, 0.7 + 0.2 * (trial % 4));
    auto base = extend_homogeneous(sigma, phi);
    for (double lambda : {2.0, 0.5, 10.0}) {
      TestFunction phil = TestFunction::rescaled(phi, q, lambda);
      auto scaled = extend_homogeneous(sigma, phil);
      cplx logterm = 0.0;
      for (const auto& alpha : multiindices(q, k))
        logterm += sphere_moment(sigma, alpha) *
                   phi.derivative_at_zero(alpha) / mi_factorial(alpha);
      cplx rhs = std::pow(lambda, -double(q) - double(k)) * scaled.pairing +
                 std::log(lambda) * logterm;
      CHECK(std::abs(base.pairing - rhs) < 1e-8);
      ++cases;
    }
  }
  CHECK(cases == 30);
}

TEST_CASE("extension: insufficient jet data reported") {
  auto h = scalar_component(1, -3.0, [](const VectorXd&) { return cplx(1.0); });
  TestFunction phi = TestFunction::gaussian(1);
  phi.max_jet_order = 1;  // degree -1-2 needs the order-2 jet
  CHECK_THROWS_AS(extend_homogeneous(h, phi), Error);
}

namespace {

// (1 + eta^2)^{z/2} as a classical ladder with the exact function attached.
EtaSymbol bessel_like_symbol(cplx z, int J, double radius = 128.0) {
  EtaSymbol s;
  s.order = z;
  s.cutoff = CutoffSpec{1.0, 2.0};
  s.full_radius = radius;
  for (int l = 0; l <= 2 * J; ++l) {
    SphereGrid g = SphereGrid::make(1);
    HomogeneousComponent h(z - double(l), 1, g);
    if (l % 2 == 0) {
      cplx c = 1.0;
      for (int j = 1; j <= l / 2; ++j)
        c *= (z / 2.0 - double(j - 1)) / double(j);
      h.at(0) = MatrixXcd::Constant(1, 1, c);
      h.at(1) = MatrixXcd::Constant(1, 1, c);
    }
    s.components.push_back(std::move(h));
  }
  s.full = [z](const VectorXd& eta) {
    return MatrixXcd::Constant(
        1, 1, std::pow(cplx(1.0 + eta[0] * eta[0]), z / 2.0));
  };
  return s;
}

}  // namespace

TEST_CASE("regularized integral: plain agreement below -q") {
  EtaSymbol s = bessel_like_symbol(-3.0, 4);
  cplx lt = regularized_integral(s, 0);
  CHECK(std::abs(lt - cplx(1.0 / pi)) < 1e-10);
  cplx plain = plain_integral(s);
  CHECK(std::abs(lt - plain) < 1e-10);

  // linearity
  EtaSymbol s2 = bessel_like_symbol(-3.0, 4);
  for (auto& h : s2.components) h = h.scaled(2.0);
  s2.full = [](const VectorXd& eta) {
    return MatrixXcd::Constant(
        1, 1, 2.0 * std::pow(cplx(1.0 + eta[0] * eta[0]), -1.5));
  };
  CHECK(std::abs(regularized_integral(s2, 0) - 2.0 * lt) < 1e-12);
}

TEST_CASE("regularized integral: obstruction error at integer order") {
  EtaSymbol s = bessel_like_symbol(-1.0, 3);
  CHECK_THROWS_WITH_AS(regularized_integral(s, 1),
                       doctest::Contains("obstruction"), Error);
}

TEST_CASE("regularized integral: N too small reported") {
  EtaSymbol s = bessel_like_symbol(1.0, 3);
  CHECK_THROWS_WITH_AS(regularized_integral(s, 0),
                       doctest::Contains("N too small"), Error);
}

TEST_CASE("regularized integral: continuation oracle at z = -1/2") {
  // samples of (2pi)^{-1} int (1+eta^2)^{z/2} d eta on the convergent side,
  // then a rational least-squares continuation to z = -1/2
  auto convergent_value = [](double z) {
    double R = 60.0;
    std::vector<double> x, w;
    double acc = 0.0;
    double lo = 0.0, hi = 0.5;
    while (lo < R) {
      gauss_legendre(64, lo, std::min(hi, R), x, w);
      for (size_t i = 0; i < x.size(); ++i)
        acc += w[i] * 2.0 * std::pow(1.0 + x[i] * x[i], z / 2.0);
      lo = std::min(hi, R);
      hi *= 2.0;
    }
    double coeff = 1.0;
    for (int t = 0; t < 6; ++t) {
      if (t > 0) coeff *= (z / 2.0 - (t - 1)) / t;
      double e = z - 2.0 * t;
      acc += 2.0 * coeff * (-std::pow(R, e + 1.0) / (e + 1.0));
    }
    return acc / (2.0 * pi);
  };

  const int ns = 60, dp = 6, dq = 6;
  Eigen::MatrixXd A(ns, dp + 1 + dq);
  Eigen::VectorXd rhs(ns);
  for (int i = 0; i < ns; ++i) {
    double z = -3.6 + ((-1.15) - (-3.6)) * i / (ns - 1);
    double wv = convergent_value(z);
    double t = z + 2.0;
    for (int j = 0; j <= dp; ++j) A(i, j) = std::pow(t, j);
    for (int j = 1; j <= dq; ++j) A(i, dp + j) = -wv * std::pow(t, j);
    rhs[i] = wv;
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);
  auto ratval = [&](double z) {
    double t = z + 2.0;
    double num = 0.0, den = 1.0;
    for (int j = 0; j <= dp; ++j) num += c[j] * std::pow(t, j);
    for (int j = 1; j <= dq; ++j) den += c[dp + j] * std::pow(t, j);
    return num / den;
  };
  double continued = ratval(-0.5);

  EtaSymbol s = bessel_like_symbol(-0.5, 4);
  cplx lt = regularized_integral(s, 1);
  CHECK(std::abs(lt - cplx(continued)) < 1e-6);

  // Gamma closed form cross-check: sqrt(pi) Gamma(-(z+1)/2) / Gamma(-z/2)
  double gamma_form = std::sqrt(pi) * std::tgamma(-0.25) /
                      std::tgamma(0.25) / (2.0 * pi);
  CHECK(std::abs(lt - cplx(gamma_form)) < 1e-8);
}

TEST_CASE("regularized integral: holomorphy in the order") {
  auto value = [](cplx z) {
    EtaSymbol s = bessel_like_symbol(z, 4);
    return regularized_integral(s, 1);
  };
  cplx z0(-1.7, 0.3);
  double h = 1e-4;
  cplx dx = (value(z0 + h) - value(z0 - h)) / (2.0 * h);
  cplx dy = (value(z0 + h * iunit) - value(z0 - h * iunit)) / (2.0 * h * iunit);
  CHECK(std::abs(dx - dy) < 1e-6);
}
