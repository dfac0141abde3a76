#include "tvc/seeley.hpp"

#include <cmath>
#include <random>

namespace tvc {

namespace {

using TComp = TransverseSymbol::Component;
using RatRep = std::vector<TComp>;  // coefficients of (a_m - lambda)^{-nu}

struct RatCtx {
  const std::vector<Axis>* ygrid;
  const SphereGrid* sgrid;
  int rank;
  TComp dam_eta[2];  // d_eta_i a_m (scalar fields, rank 1)
  TComp dam_y[2];    // D_y_i a_m
  int q;
};

// Pointwise scalar-field times matrix-field product.
TComp scalar_times(const TComp& s, const TComp& m) {
  TComp out;
  out.degree = s.degree + m.degree;
  out.data.assign(m.data.size(), MatrixXcd());
  for (size_t i = 0; i < m.data.size(); ++i)
    out.data[i] = s.data[i](0, 0) * m.data[i];
  return out;
}

TComp matrix_times(const TComp& a, const TComp& b) {
  TComp out;
  out.degree = a.degree + b.degree;
  out.data.assign(a.data.size(), MatrixXcd());
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

void rat_accumulate(RatRep& dst, const RatRep& src, cplx scale) {
  if (dst.size() < src.size()) {
    size_t old = dst.size();
    dst.resize(src.size());
    for (size_t nu = old; nu < src.size(); ++nu) {
      dst[nu].degree = src[nu].degree;
      dst[nu].data.assign(src[nu].data.size(),
                          MatrixXcd::Zero(src[nu].data[0].rows(),
                                          src[nu].data[0].cols()));
    }
  }
  for (size_t nu = 0; nu < src.size(); ++nu)
    for (size_t i = 0; i < src[nu].data.size(); ++i)
      dst[nu].data[i] += scale * src[nu].data[i];
}

// d/d eta_axis or D_y_axis of sum_nu C_nu u^{-nu}, u = a_m - lambda.
RatRep rat_derivative(const RatCtx& ctx, const RatRep& r, int axis,
                      bool eta_side) {
  RatRep out(r.size() + 1);
  for (size_t nu = 1; nu <= r.size() + 1; ++nu) {
    TComp term;
    bool have = false;
    if (nu <= r.size()) {
      Multiindex alpha(ctx.q, 0);
      alpha[axis] = 1;
      term = transverse_component_derivative(*ctx.ygrid, *ctx.sgrid, ctx.rank,
                                             r[nu - 1], alpha, eta_side);
      have = true;
    }
    if (nu >= 2) {
      const TComp& da = eta_side ? ctx.dam_eta[axis] : ctx.dam_y[axis];
      TComp grow = scalar_times(da, r[nu - 2]);
      for (auto& m : grow.data) m *= double(nu - 1);
      if (have) {
        for (size_t i = 0; i < term.data.size(); ++i)
          term.data[i] += grow.data[i];
      } else {
        term = std::move(grow);
        have = true;
      }
    }
    out[nu - 1] = std::move(term);
  }
  return out;
}

RatRep rat_mi_derivative(const RatCtx& ctx, RatRep r, const Multiindex& alpha,
                         bool eta_side) {
  for (size_t d = 0; d < alpha.size(); ++d)
    for (int rep = 0; rep < alpha[d]; ++rep)
      r = rat_derivative(ctx, r, static_cast<int>(d), eta_side);
  return r;
}

}  // namespace

EllipticityReport check_transversal_ellipticity(const FullSymbol& a,
                                                std::uint64_t seed) {
  require(!a.components.empty(), "ellipticity: principal component missing");
  const auto& pm = a.components.front();
  const double m = a.order.real();
  const int q = a.q;
  SphereGrid sg = SphereGrid::make(q, q == 1 ? 2 : 48);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<VectorXcd> probes;
  for (int i = 0; i < 24; ++i) {
    VectorXcd v(a.rank);
    for (int j = 0; j < a.rank; ++j) v[j] = cplx(unif(rng), unif(rng));
    v.normalize();
    probes.push_back(v);
  }

  std::vector<double> xs = {0.0, 1.0, 2.5};
  std::vector<VectorXd> ys;
  for (double y0 : {0.0, 1.1, 2.7, 4.4}) {
    VectorXd y = VectorXd::Constant(q, y0);
    if (q == 2) y[1] = std::fmod(y0 * 1.7, 2.0 * pi);
    ys.push_back(y);
  }

  EllipticityReport rep;
  double eps = 1.0;
  for (int step = 0; step < 12; ++step) {
    double cmin = std::numeric_limits<double>::infinity();
    for (double x : xs)
      for (const auto& y : ys)
        for (int node = 0; node < sg.size(); ++node)
          for (double t : {0.0, eps / 2.0, eps, -eps / 2.0, -eps}) {
            MatrixXcd p = pm(x, y, t, sg.nodes[node]);
            double scale = std::pow(std::abs(t) + 1.0, m);
            // |(p v, v)| over probe vectors and Hermitian eigenvectors
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
                0.5 * (p + p.adjoint()));
            for (const auto& v : probes) {
              double val = std::abs((v.adjoint() * p * v)(0, 0));
              cmin = std::min(cmin, val / scale);
            }
            for (int j = 0; j < a.rank; ++j) {
              VectorXcd v = es.eigenvectors().col(j);
              double val = std::abs((v.adjoint() * p * v)(0, 0));
              cmin = std::min(cmin, val / scale);
            }
          }
    if (cmin > 1e-9) {
      rep.elliptic = true;
      rep.epsilon = eps;
      rep.c = cmin;
      return rep;
    }
    rep.epsilon = eps;
    rep.c = cmin;
    eps /= 2.0;
  }
  rep.elliptic = false;
  return rep;
}

ResolventSymbolFamily ResolventSymbolFamily::build(const TransverseSymbol& a,
                                                   int depth, double delta) {
  ResolventSymbolFamily f;
  f.a_ = a;
  f.delta_ = delta;
  require(near_integer(a.order().real()) && std::abs(a.order().imag()) < 1e-12,
          "seeley: base symbol order must be a positive integer");
  f.m_ = int(std::round(a.order().real()));
  require(f.m_ >= 1, "seeley: base symbol order must be >= 1");
  f.ns_ = a.ns();
  const int nyt = a.ny_total(), ns = a.ns(), rank = a.rank();

  // Principal part must be scalar and positive (condition T1 on the cone).
  f.am_.assign(nyt * ns, 0.0);
  f.am_min_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nyt * ns; ++i) {
    const MatrixXcd& p = a.components()[0].data[i];
    cplx lead = p(0, 0);
    require((p - lead * MatrixXcd::Identity(rank, rank)).cwiseAbs().maxCoeff() <
                1e-10 * std::max(1.0, std::abs(lead)),
            "seeley: principal symbol must be scalar");
    require(std::abs(lead.imag()) < 1e-10 * std::max(1.0, std::abs(lead)) &&
                lead.real() > 0.0,
            "seeley: transversal ellipticity failure (principal symbol not "
            "positive on the cone)");
    f.am_[i] = lead.real();
    f.am_min_ = std::min(f.am_min_, lead.real());
  }

  // Scalar helper fields: a_m and its first derivatives.
  RatCtx ctx;
  ctx.ygrid = &f.a_.ygrid();
  ctx.sgrid = &f.a_.sphere();
  ctx.rank = rank;
  ctx.q = a.sphere().q;
  TComp am_field;
  am_field.degree = double(f.m_);
  am_field.data.assign(nyt * ns, MatrixXcd::Zero(1, 1));
  for (int i = 0; i < nyt * ns; ++i) am_field.data[i](0, 0) = f.am_[i];
  for (int d = 0; d < ctx.q; ++d) {
    Multiindex alpha(ctx.q, 0);
    alpha[d] = 1;
    ctx.dam_eta[d] = transverse_component_derivative(
        f.a_.ygrid(), f.a_.sphere(), 1, am_field, alpha, true);
    ctx.dam_y[d] = transverse_component_derivative(
        f.a_.ygrid(), f.a_.sphere(), 1, am_field, alpha, false);
  }

  // Level 0: p_{-m} = (a_m - lambda)^{-1}.
  f.comps_.resize(depth + 1);
  {
    TComp c0;
    c0.degree = 0.0;
    c0.data.assign(nyt * ns, MatrixXcd::Identity(rank, rank));
    f.comps_[0] = {c0};
  }

  // (a_m - lambda) p_{-m-l} + sum_{j<l, j+k+|alpha|=l}
  //    d_eta^alpha p_{-m-j} D_y^alpha a_{m-k} / alpha! = 0.
  for (int l = 1; l <= depth; ++l) {
    RatRep acc;
    for (int j = 0; j < l; ++j)
      for (int k = 0; k + j <= l; ++k) {
        int n = l - j - k;
        if (n < 0) continue;
        if (k > a.depth()) continue;  // missing ladder coefficients are zero
        for (const auto& alpha : multiindices(ctx.q, n)) {
          RatRep dp = rat_mi_derivative(ctx, f.comps_[j], alpha, true);
          TComp ak = transverse_component_derivative(
              f.a_.ygrid(), f.a_.sphere(), rank, a.components()[k], alpha,
              false);
          RatRep term(dp.size());
          for (size_t nu = 0; nu < dp.size(); ++nu)
            term[nu] = matrix_times(dp[nu], ak);
          rat_accumulate(acc, term, cplx(-1.0 / mi_factorial(alpha)));
        }
      }
    // divide by u = a_m - lambda: shift nu by one.
    RatRep next(acc.size() + 1);
    {
      TComp zero0;
      zero0.degree = double(f.m_) - double(l);  // nu=1 slot: degree m-m-l+...
      zero0.degree = -double(l);                // nu m - m - l with nu=1
      zero0.data.assign(nyt * ns, MatrixXcd::Zero(rank, rank));
      next[0] = zero0;
    }
    for (size_t nu = 0; nu < acc.size(); ++nu) next[nu + 1] = acc[nu];
    f.comps_[l] = std::move(next);
  }
  return f;
}

MatrixXcd ResolventSymbolFamily::eval(int l, int yk, const VectorXd& eta,
                                      cplx lambda) const {
  const double r = eta.norm();
  require(r > 0.0, "resolvent eval: eta must be nonzero");
  const int rank = a_.rank();
  MatrixXcd out = MatrixXcd::Zero(rank, rank);
  // principal value at this direction
  HomogeneousComponent am_h(double(m_), 1, a_.sphere());
  for (int node = 0; node < ns_; ++node)
    am_h.at(node) = MatrixXcd::Constant(1, 1, am_[yk * ns_ + node]);
  cplx am_at = am_h.eval(eta)(0, 0);
  cplx u = am_at - lambda;
  require(std::abs(u) > 1e-14, "resolvent eval: lambda on the spectrum");

  const auto& rats = comps_[l];
  for (size_t nu = 1; nu <= rats.size(); ++nu) {
    HomogeneousComponent ch(rats[nu - 1].degree, rank, a_.sphere());
    for (int node = 0; node < ns_; ++node)
      ch.at(node) = rats[nu - 1].data[yk * ns_ + node];
    out += ch.eval(eta) * std::pow(u, -double(nu));
  }
  return out;
}

ParametrixResult parametrix(const TransverseSymbol& a, int depth) {
  ResolventSymbolFamily f = ResolventSymbolFamily::build(a, depth);
  const int m = f.m();
  const int nyt = a.ny_total(), ns = a.ns(), rank = a.rank();
  TransverseSymbol qsym = TransverseSymbol::zero(-double(m), rank, a.ygrid(),
                                                 a.sphere(), depth);
  for (int l = 0; l <= depth; ++l) {
    auto& dst = qsym.components()[l];
    const auto& rats = f.rational(l);
    for (size_t nu = 1; nu <= rats.size(); ++nu)
      for (int i = 0; i < nyt * ns; ++i)
        dst.data[i] += rats[nu - 1].data[i] *
                       std::pow(f.principal(i / ns, i % ns), -double(nu));
  }
  ParametrixResult res{std::move(qsym), -double(m) - double(depth + 1)};
  return res;
}

}  // namespace tvc
