#include "tvc/zeta.hpp"

#include <cmath>

namespace tvc {

namespace {

// TR(Q A^{-z}) with ladder depth chosen for the window.
cplx zeta_value(const ClassicalSymbol& Q, const TransverseSymbol& a, cplx z,
                int depth, const ZetaOptions& opt) {
  TransverseSymbol P = power_components(a, -z, depth, opt.contour,
                                        opt.exact_weights);
  ClassicalSymbol composed = module_compose_right(Q, P, depth);
  return canonical_trace(composed);
}

}  // namespace

MeromorphicReport zeta_pole_table(const ClassicalSymbol& Q,
                                  const TransverseSymbol& a, double window_lo,
                                  double window_hi, const ZetaOptions& opt) {
  MeromorphicReport rep;
  rep.samples.header = {"z_re", "z_im", "tr_re", "tr_im"};
  require(window_lo < window_hi, "zeta_pole_table: empty window");
  const int q = Q.grid().q();
  const double l = Q.order().real();
  const int m = int(std::round(a.order().real()));
  require(m >= 1, "zeta_pole_table: base order must be a positive integer");

  // candidates z_k = k/m, integer k <= l + q
  std::vector<int> ks;
  int kmax = int(std::floor(l + q + 1e-9));
  for (int k = kmax; k / double(m) >= window_lo - 1e-12; --k)
    if (k / double(m) <= window_hi + 1e-12) ks.push_back(k);

  int depth_needed = 1;
  for (int k : ks)
    depth_needed = std::max(depth_needed,
                            int(std::round(l + q - k)) + opt.extra_depth);
  depth_needed = std::max(depth_needed, Q.depth() + opt.extra_depth);

  for (int k : ks) {
    cplx zk(k / double(m), 0.0);
    auto f = [&](cplx z) { return zeta_value(Q, a, z, depth_needed, opt); };
    LaurentFit fit = laurent_fit(f, zk, opt.fit_radius, opt.fit_samples,
                                 opt.detect_threshold);
    PoleRecord rec;
    rec.location = zk;
    rec.refined = fit.pole_detected ? fit.pole : zk;
    rec.residue = fit.residue;
    rec.uncertainty = fit.uncertainty;
    rec.detected = fit.pole_detected;
    rec.simple = fit.simple;
    {
      TransverseSymbol Pk = power_components(a, -zk, depth_needed, opt.contour,
                                             opt.exact_weights);
      ClassicalSymbol composed = module_compose_right(Q, Pk, depth_needed);
      rec.tau = residue_trace(composed).tau;
    }
    rec.ratio = std::abs(rec.tau) > 0 ? rec.residue / rec.tau : cplx(0.0);
    rep.poles.push_back(rec);
  }
  return rep;
}

MeromorphicReport multi_zeta(const std::vector<ClassicalSymbol>& Qs,
                             const TransverseSymbol& a, const SliceSpec& slice,
                             double s_lo, double s_hi, const ZetaOptions& opt) {
  MeromorphicReport rep;
  rep.samples.header = {"s_re", "s_im", "tr_re", "tr_im"};
  const int N = static_cast<int>(Qs.size());
  require(N >= 1 && N <= 3, "multi_zeta: N must be 1..3");
  require(static_cast<int>(slice.base.size()) == N &&
              static_cast<int>(slice.dir.size()) == N,
          "multi_zeta: slice dimension mismatch");
  const int q = Qs[0].grid().q();
  const int m = int(std::round(a.order().real()));
  double L = 0.0;
  for (const auto& Qj : Qs) L += Qj.order().real();
  cplx dir_sum = 0.0, base_sum = 0.0;
  for (int j = 0; j < N; ++j) {
    dir_sum += slice.dir[j];
    base_sum += slice.base[j];
  }
  require(std::abs(dir_sum) > 1e-12,
          "multi_zeta: slice parallel to the pole hyperplanes");

  int depth_needed = opt.extra_depth + q + 2;

  auto compose_chain = [&](cplx s) {
    ClassicalSymbol out;
    bool first = true;
    for (int j = 0; j < N; ++j) {
      cplx zj = slice.base[j] + s * slice.dir[j];
      TransverseSymbol P = power_components(a, -zj, depth_needed, opt.contour,
                                            opt.exact_weights);
      ClassicalSymbol factor = module_compose_right(Qs[j], P, depth_needed);
      out = first ? factor : compose(out, factor);
      first = false;
    }
    return out;
  };

  // hyperplane values k = L - m sum z_j(s) traversed by the real s-window
  auto order_at = [&](double s) {
    return (cplx(L) - double(m) * (base_sum + s * dir_sum)).real();
  };
  double k_a = order_at(s_lo), k_b = order_at(s_hi);
  int k_min = int(std::ceil(std::min(k_a, k_b) - 1e-9));
  int k_max = int(std::floor(std::max(k_a, k_b) + 1e-9));
  k_min = std::max(k_min, -q);
  for (int k = k_min; k <= k_max; ++k)
    depth_needed = std::max(depth_needed, k + q + opt.extra_depth);

  for (int k = k_max; k >= k_min; --k) {
    cplx sk = (cplx(L) - cplx(double(k)) - double(m) * base_sum) /
              (double(m) * dir_sum);
    if (std::abs(sk.imag()) > 1e-9) continue;
    auto f = [&](cplx s) { return canonical_trace(compose_chain(s)); };
    LaurentFit fit = laurent_fit(f, sk, opt.fit_radius, opt.fit_samples,
                                 opt.detect_threshold);
    PoleRecord rec;
    rec.location = sk;
    rec.refined = fit.pole_detected ? fit.pole : sk;
    rec.residue = fit.residue;
    rec.uncertainty = fit.uncertainty;
    rec.detected = fit.pole_detected;
    rec.simple = fit.simple;
    rec.tau = residue_trace(compose_chain(sk)).tau;
    rec.ratio = std::abs(rec.tau) > 0 ? rec.residue / rec.tau : cplx(0.0);
    rep.poles.push_back(rec);
  }
  return rep;
}

MeromorphicReport dimension_spectrum(const std::vector<ClassicalSymbol>& B,
                                     const TransverseSymbol& d_squared, int q,
                                     const ZetaOptions& opt) {
  MeromorphicReport rep;
  require(!B.empty(), "dimension_spectrum: empty algebra sample");
  require(std::abs(d_squared.order() - 2.0) < 1e-9,
          "dimension_spectrum: D^2 must have order 2");

  for (const auto& b : B) {
    // zeta_b(z) = TR(b (D^2)^{-z/2}), poles at integer z = k <= l_b + q
    const double l = b.order().real();
    int kmax = int(std::floor(l + q + 1e-9));
    int depth_needed = 0;
    for (int k = kmax; k >= 1 - 1; --k)
      depth_needed = std::max(depth_needed,
                              int(std::round(l + q - k)) + opt.extra_depth);
    for (int k = kmax; k >= 0; --k) {
      cplx zk(double(k), 0.0);
      auto f = [&](cplx z) {
        TransverseSymbol P = power_components(d_squared, -z / 2.0,
                                              depth_needed, opt.contour,
                                              opt.exact_weights);
        return canonical_trace(module_compose_right(b, P, depth_needed));
      };
      LaurentFit fit = laurent_fit(f, zk, opt.fit_radius, opt.fit_samples,
                                   opt.detect_threshold);
      PoleRecord rec;
      rec.location = zk;
      rec.refined = fit.pole_detected ? fit.pole : zk;
      rec.residue = fit.residue;
      rec.uncertainty = fit.uncertainty;
      rec.detected = fit.pole_detected;
      rec.simple = fit.simple;
      {
        TransverseSymbol Pk = power_components(d_squared, -zk / 2.0,
                                               depth_needed, opt.contour,
                                               opt.exact_weights);
        rec.tau = residue_trace(module_compose_right(b, Pk, depth_needed)).tau;
      }
      rec.ratio = std::abs(rec.tau) > 0 ? rec.residue / rec.tau : cplx(0.0);
      // merge into the report (unique by location)
      bool found = false;
      for (auto& p : rep.poles)
        if (std::abs(p.location - rec.location) < 1e-9) {
          found = true;
          if (rec.detected && std::abs(rec.residue) > std::abs(p.residue))
            p = rec;
        }
      if (!found) rep.poles.push_back(rec);
    }
  }
  for (const auto& p : rep.poles) {
    if (!p.detected) continue;
    if (std::abs(p.residue) <= std::max(10.0 * p.uncertainty,
                                        opt.detect_threshold))
      continue;
    int v = int(std::round(p.location.real()));
    rep.spectrum.push_back(v);
    if (v < 1 || v > q)
      rep.notes += "pole outside {1..q} at z=" + std::to_string(v) + "; ";
    if (!p.simple) rep.notes += "non-simple pole at z=" + std::to_string(v) + "; ";
  }
  std::sort(rep.spectrum.begin(), rep.spectrum.end());
  return rep;
}

}  // namespace tvc
