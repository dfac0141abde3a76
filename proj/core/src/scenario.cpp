#include "tvc/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "tvc/heat.hpp"
#include "tvc/model.hpp"
#include "tvc/report.hpp"
#include "tvc/sobolev.hpp"
#include "tvc/studies.hpp"
#include "tvc/zeta.hpp"

namespace tvc {

namespace {

using json = nlohmann::ordered_json;

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

struct Ctx {
  json cfg;
  ModelSpec mspec;
  std::uint64_t seed = 1;
  int leaf_trunc = 4;
  int trans_trunc = 128;
  int nx = 16, ny = 32;
  CutoffSpec cutoff{0.4, 0.8};
  ContourSpec contour;
  std::string op_name = "transverse_laplacian";
  std::string symbol_file;
  std::string out_dir = "out";
};

ModelSpec parse_model(const json& m) {
  ModelSpec spec;
  std::string kind = m.value("kind", "product");
  if (kind == "product")
    spec.kind = ModelSpec::Kind::Product;
  else if (kind == "kronecker")
    spec.kind = ModelSpec::Kind::Kronecker;
  else
    throw Error("model.kind: unknown kind '" + kind + "'");
  spec.p = m.value("p", 1);
  spec.q = m.value("q", 1);
  spec.circumference_x = m.value("circumference_x", 2.0 * pi);
  if (m.contains("circumference_y")) {
    spec.circumference_y.clear();
    for (const auto& v : m.at("circumference_y"))
      spec.circumference_y.push_back(v.get<double>());
  } else {
    spec.circumference_y.assign(spec.q, 2.0 * pi);
  }
  spec.slope = m.value("slope", 0.0);
  return spec;
}

Ctx parse_ctx(const json& cfg) {
  Ctx ctx;
  ctx.cfg = cfg;
  if (!cfg.contains("version") || cfg.at("version").get<int>() != 1)
    throw Error("version: expected 1");
  if (!cfg.contains("model")) throw Error("model: missing");
  ctx.mspec = parse_model(cfg.at("model"));
  ModelFoliation::build(ctx.mspec);  // validates (slope rationality etc.)
  ctx.seed = cfg.value("seed", 1);
  if (cfg.contains("numeric")) {
    const auto& n = cfg.at("numeric");
    ctx.leaf_trunc = n.value("leaf_trunc", ctx.leaf_trunc);
    ctx.trans_trunc = n.value("trans_trunc", ctx.trans_trunc);
    ctx.nx = n.value("nx", ctx.nx);
    ctx.ny = n.value("ny", ctx.ny);
    if (n.contains("cutoff")) {
      ctx.cutoff.r0 = n.at("cutoff").value("r0", ctx.cutoff.r0);
      ctx.cutoff.r1 = n.at("cutoff").value("r1", ctx.cutoff.r1);
      ctx.cutoff.validate();
    }
    if (n.contains("contour")) {
      const auto& c = n.at("contour");
      ctx.contour.alpha = c.value("alpha", ctx.contour.alpha);
      ctx.contour.rho = c.value("rho", ctx.contour.rho);
      ctx.contour.n_ray = c.value("n_ray", ctx.contour.n_ray);
      ctx.contour.n_arc = c.value("n_arc", ctx.contour.n_arc);
      ctx.contour.ray_cut = c.value("ray_cut", ctx.contour.ray_cut);
      ctx.contour.validate();
    }
  }
  if (cfg.contains("operator")) {
    const auto& op = cfg.at("operator");
    if (op.contains("name")) ctx.op_name = op.at("name").get<std::string>();
    if (op.contains("symbol_file"))
      ctx.symbol_file = op.at("symbol_file").get<std::string>();
    if (ctx.op_name != "transverse_laplacian" &&
        ctx.op_name != "transverse_signature" &&
        ctx.op_name != "first_order_dirac")
      throw Error("operator.name: unknown model operator '" + ctx.op_name +
                  "'");
  }
  if (cfg.contains("output"))
    ctx.out_dir = cfg.at("output").value("dir", ctx.out_dir);
  return ctx;
}

const std::vector<std::string> kTaskTypes = {
    "compose",      "parametrix",        "power",     "tr",
    "residue",      "zeta_table",        "heat",      "dimension_spectrum",
    "sobolev",      "seminorm",          "commutator_study",
    "schatten_study", "oracle"};

void validate_tasks(const json& cfg, const Ctx& ctx) {
  if (!cfg.contains("tasks")) throw Error("tasks: missing");
  int idx = 0;
  for (const auto& t : cfg.at("tasks")) {
    std::string path = "tasks[" + std::to_string(idx) + "]";
    if (!t.contains("type")) throw Error(path + ".type: missing");
    std::string type = t.at("type").get<std::string>();
    bool known = false;
    for (const auto& k : kTaskTypes) known = known || k == type;
    if (!known) throw Error(path + ".type: unknown task '" + type + "'");
    if (type == "zeta_table" || type == "dimension_spectrum" ||
        type == "heat" || type == "parametrix" || type == "power") {
      if (!ctx.mspec.p) throw Error(path + ": model required");
    }
    if (type == "zeta_table" && t.contains("window")) {
      auto w = t.at("window");
      if (!w.is_array() || w.size() != 2 ||
          w[0].get<double>() >= w[1].get<double>())
        throw Error(path + ".window: need [lo, hi] with lo < hi");
    }
    if (type == "seminorm" || type == "sobolev") {
      // weights must be finite numbers when supplied
      if (t.contains("s") && !t.at("s").is_number())
        throw Error(path + ".s: number expected");
    }
    if (type == "schatten_study" && ctx.mspec.kind != ModelSpec::Kind::Product)
      throw Error(path + ": schatten_study needs a product model");
    if (type == "oracle") {
      std::string task = t.value("task", "heat");
      if (task != "heat" && task != "zeta" && task != "paired_trace")
        throw Error(path + ".task: unknown oracle task '" + task + "'");
    }
    ++idx;
  }
}

ModeBasis make_basis(const ModelFoliation& M, const Ctx& ctx, int trans) {
  return M.is_product() ? ModeBasis::product(M, ctx.leaf_trunc, trans)
                        : ModeBasis::kronecker(M, trans);
}

/// Unit-weight order-0 symbol: leaf-constant projector kernel with unit
/// diagonal mass and transverse weight 1.
ClassicalSymbol unit_weight_symbol(const ModelFoliation& M, const Ctx& ctx,
                                   int depth = 0) {
  SpatialGrid g = M.chart(ctx.nx, ctx.ny);
  SphereGrid sg = SphereGrid::make(M.q(), M.q() == 1 ? 2 : 64);
  double lx = g.x.circumference;
  ClassicalSymbol s = ClassicalSymbol::separable(
      0.0, g, sg, ctx.cutoff,
      [lx](double, double) { return cplx(1.0 / lx); },
      [](const VectorXd&) { return cplx(1.0); },
      {{cplx(0.0), [](const VectorXd&) { return cplx(1.0); }}});
  return s.padded(depth);
}

TangentialKernel seeded_kernel(const Ctx& ctx, std::uint64_t salt,
                               int leaf_band = 3) {
  std::mt19937_64 rng(mix_seed(ctx.seed, salt));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> f(2 * leaf_band + 1);
  for (auto& v : f) v = cplx(unif(rng), unif(rng)) * 0.5;
  f[leaf_band] = 1.0;  // unit mass at the zero mode
  // hermitian leaf kernel: f(-m) = conj(f(m))
  for (int m = 1; m <= leaf_band; ++m)
    f[leaf_band - m] = std::conj(f[leaf_band + m]);
  double a1 = unif(rng), a2 = unif(rng);
  double ly = ctx.mspec.circumference_y.empty()
                  ? 2.0 * pi
                  : ctx.mspec.circumference_y[0];
  auto g = [a1, a2, ly](const VectorXd& y) -> cplx {
    double v = 1.0 + 0.5 * a1 * std::cos(2.0 * pi * y[0] / ly) +
               0.3 * a2 * std::sin(2.0 * pi * y[0] / ly);
    if (y.size() > 1) v *= 1.0 + 0.25 * a2 * std::cos(2.0 * pi * y[1] / ly);
    return v;
  };
  auto fh = [f, leaf_band](int m) -> cplx {
    return std::abs(m) <= leaf_band ? f[leaf_band + m] : cplx(0.0);
  };
  return TangentialKernel::separable(fh, leaf_band, g,
                                     ctx.mspec.circumference_x);
}

struct TaskOutput {
  json summary;
  std::vector<std::pair<std::string, CsvTable>> csvs;
};

TaskOutput task_heat(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, ctx.trans_trunc);
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  // unit-weight pairing: leaf-constant projector
  ClassicalSymbol b = unit_weight_symbol(M, ctx);
  QuantizedSymbol qb(b, basis);
  GridOperator R = qb.grid_operator("unit_weight");
  int L = t.value("L", 2);
  HeatReport rep = heat_coefficients(
      op.op, &R, op.symbol,
      [&](double, const VectorXd&) {
        return 1.0 / M.spec().circumference_x;
      },
      M.leaf_axis(ctx.nx), M.q(), 2, L, t.value("t_lo", 1e-4),
      t.value("t_hi", 1e-1), t.value("t_count", 25));
  TaskOutput out;
  out.summary["a0_formula"] = rep.a0_formula;
  out.summary["a0_fitted"] = rep.a0_fitted;
  out.summary["leading_exponent"] = rep.leading_exponent;
  out.summary["fit_error"] = rep.expansion.fit_error;
  out.summary["condition"] = rep.expansion.condition;
  json ladder = json::array();
  for (size_t i = 0; i < rep.expansion.exponents.size(); ++i)
    ladder.push_back({{"exponent", rep.expansion.exponents[i]},
                      {"coefficient", rep.expansion.coefficients[i]}});
  out.summary["heat"] = {{"exponents", json::array()},
                         {"coefficients", json::array()},
                         {"fit_error", rep.expansion.fit_error}};
  for (double e : rep.expansion.exponents)
    out.summary["heat"]["exponents"].push_back(e);
  for (double c : rep.expansion.coefficients)
    out.summary["heat"]["coefficients"].push_back(c);
  out.summary["ladder"] = ladder;
  out.csvs.push_back({"heat_samples", rep.samples});
  return out;
}

TaskOutput task_zeta(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, ctx.trans_trunc);
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  ClassicalSymbol Q = unit_weight_symbol(M, ctx);
  double wlo = -0.75, whi = 0.75;
  if (t.contains("window")) {
    wlo = t.at("window")[0].get<double>();
    whi = t.at("window")[1].get<double>();
  }
  ZetaOptions opt;
  opt.contour = ctx.contour;
  MeromorphicReport rep = zeta_pole_table(Q, op.symbol, wlo, whi, opt);

  // samples on the holomorphic half-plane: TR path, quantized path, oracle
  CsvTable samples;
  samples.header = {"z", "tr_path", "mode_path", "oracle"};
  double re_lo = t.value("re_lo", 1.0), re_hi = t.value("re_hi", 3.0);
  int count = t.value("re_count", 9);
  ClassicalSymbol bq = unit_weight_symbol(M, ctx);
  QuantizedSymbol qb(bq, basis);
  GridOperator R = qb.grid_operator("unit_weight");
  for (int i = 0; i < count; ++i) {
    double z = re_lo + (re_hi - re_lo) * i / std::max(1, count - 1);
    TransverseSymbol P =
        power_components(op.symbol, -cplx(z), 2, ctx.contour, false);
    ClassicalSymbol composed = module_compose_right(Q, P, 2);
    cplx tr_path = canonical_trace(composed);
    GridOperator QP = quantize_transverse(P, ctx.cutoff, basis);
    // paired trace tr(R * QP)
    cplx mode_path = (R.to_dense() * QP.to_dense()).trace();
    cplx oracle = eigen_oracle_zeta(op.op, cplx(z), &R);
    samples.rows.push_back({z, tr_path.real(), mode_path.real(),
                            oracle.real()});
  }
  TaskOutput out;
  json poles = json::array();
  for (const auto& p : rep.poles)
    poles.push_back({{"z_re", p.location.real()},
                     {"z_im", p.location.imag()},
                     {"refined_re", p.refined.real()},
                     {"refined_im", p.refined.imag()},
                     {"residue_re", p.residue.real()},
                     {"residue_im", p.residue.imag()},
                     {"tau_re", p.tau.real()},
                     {"tau_im", p.tau.imag()},
                     {"ratio_re", p.ratio.real()},
                     {"ratio_im", p.ratio.imag()},
                     {"uncertainty", p.uncertainty},
                     {"detected", p.detected},
                     {"simple", p.simple}});
  out.summary["poles"] = poles;
  out.csvs.push_back({"zeta_samples", samples});
  return out;
}

TaskOutput task_dimension_spectrum(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  // |D|^2 = transverse laplacian symbol
  ModeBasis basis = make_basis(M, ctx, 16);
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  ClassicalSymbol b = unit_weight_symbol(M, ctx, 2);
  std::vector<ClassicalSymbol> B = {b};
  if (t.value("iterate_depth", 1) > 0) {
    // delta(b) = [|D|, b] at symbol level, |D| = (D^2)^{1/2}
    TransverseSymbol absD =
        power_components(op.symbol, cplx(0.5), 2, ctx.contour, false);
    B.push_back(module_commutator(absD, b, 2));
  }
  ZetaOptions opt;
  opt.contour = ctx.contour;
  MeromorphicReport rep = dimension_spectrum(B, op.symbol, M.q(), opt);
  TaskOutput out;
  json poles = json::array();
  for (const auto& p : rep.poles)
    poles.push_back({{"z_re", p.location.real()},
                     {"residue_re", p.residue.real()},
                     {"residue_im", p.residue.imag()},
                     {"uncertainty", p.uncertainty},
                     {"detected", p.detected},
                     {"simple", p.simple}});
  out.summary["poles"] = poles;
  out.summary["spectrum"] = rep.spectrum;
  out.summary["notes"] = rep.notes;
  return out;
}

TaskOutput task_tr(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ClassicalSymbol A = [&]() {
    if (!ctx.symbol_file.empty()) {
      std::ifstream f(ctx.symbol_file);
      require(bool(f), "operator.symbol_file: cannot open " + ctx.symbol_file);
      std::stringstream ss;
      ss << f.rdbuf();
      return ClassicalSymbol::from_json(ss.str());
    }
    // built-in smooth test symbol of the requested order
    double order = t.value("order", -2.0);
    SpatialGrid g = M.chart(ctx.nx, ctx.ny);
    SphereGrid sg = SphereGrid::make(M.q(), M.q() == 1 ? 2 : 64);
    double lx = g.x.circumference;
    return ClassicalSymbol::separable(
        cplx(order), g, sg, ctx.cutoff,
        [lx](double, double) { return cplx(1.0 / lx); },
        [](const VectorXd&) { return cplx(1.0); },
        {{cplx(order), [](const VectorXd&) { return cplx(1.0); }}});
  }();
  TaskOutput out;
  cplx tr = canonical_trace(A);
  out.summary["TR"] = cplx_json(tr);
  CsvTable conv;
  conv.header = {"truncation", "grid_trace_re", "rel_err"};
  if (M.is_product() && A.order().real() < -M.q()) {
    for (int trunc : {64, 128, 256, 512}) {
      if (trunc > ctx.trans_trunc * 4) break;
      ModeBasis basis = make_basis(M, ctx, trunc);
      QuantizedSymbol qs(A, basis);
      cplx g = qs.trace();
      conv.rows.push_back(
          {double(trunc), g.real(),
           std::abs(g - tr) / std::max(1e-300, std::abs(tr))});
    }
  }
  out.csvs.push_back({"tr_convergence", conv});
  return out;
}

TaskOutput task_residue(const Ctx& ctx, const json& t) {
  (void)t;
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  SpatialGrid g = M.chart(ctx.nx, ctx.ny);
  SphereGrid sg = SphereGrid::make(M.q(), M.q() == 1 ? 2 : 64);
  double lx = g.x.circumference;
  // order -q symbol with a critical component
  ClassicalSymbol A = ClassicalSymbol::separable(
      cplx(-double(M.q())), g, sg, ctx.cutoff,
      [lx](double, double) { return cplx(1.0 / lx); },
      [](const VectorXd&) { return cplx(1.0); },
      {{cplx(-double(M.q())), [](const VectorXd&) { return cplx(1.0); }}});
  auto res = residue_trace(A);
  TaskOutput out;
  out.summary["tau"] = cplx_json(res.tau);
  out.csvs.push_back({"residue_form", res.form_samples});
  return out;
}

TaskOutput task_compose(const Ctx& ctx, const json& t) {
  (void)t;
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  SpatialGrid g = M.chart(ctx.nx, ctx.ny);
  SphereGrid sg = SphereGrid::make(M.q(), M.q() == 1 ? 2 : 64);
  std::mt19937_64 rng(mix_seed(ctx.seed, 101));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto trig = [&](std::uint64_t salt) {
    double a = unif(rng), b = unif(rng), c = unif(rng);
    (void)salt;
    return [a, b, c](double x, double xp) {
      return cplx(1.0 + 0.4 * a * std::cos(x) + 0.3 * b * std::sin(xp) +
                  0.2 * c * std::cos(x - xp));
    };
  };
  auto gy = [&]() {
    double a = unif(rng);
    return [a](const VectorXd& y) {
      return cplx(1.0 + 0.5 * a * std::cos(y[0]));
    };
  };
  ClassicalSymbol A = ClassicalSymbol::separable(
      cplx(-1.0), g, sg, ctx.cutoff, trig(1), gy(),
      {{cplx(-1.0), [](const VectorXd&) { return cplx(1.0); }},
       {cplx(-2.0), [](const VectorXd&) { return cplx(0.5); }}});
  ClassicalSymbol B = ClassicalSymbol::separable(
      cplx(-0.5), g, sg, ctx.cutoff, trig(2), gy(),
      {{cplx(-0.5), [](const VectorXd&) { return cplx(1.0); }},
       {cplx(-1.5), [](const VectorXd&) { return cplx(-0.25); }}});
  ClassicalSymbol C = compose(A, B);
  TaskOutput out;
  out.summary["order"] = cplx_json(C.order());
  CsvTable comps;
  comps.header = {"level", "degree_re", "max_norm"};
  for (int j = 0; j <= C.depth(); ++j) {
    double mn = 0.0;
    for (const auto& mtx : C.components()[j].data)
      mn = std::max(mn, mtx.cwiseAbs().maxCoeff());
    comps.rows.push_back({double(j), C.components()[j].degree.real(), mn});
  }
  out.csvs.push_back({"compose_components", comps});
  return out;
}

TaskOutput task_parametrix(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, std::min(ctx.trans_trunc, 128));
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  int N = t.value("depth", 2);
  ParametrixResult par = parametrix(op.symbol, N);
  GridOperator Qa = quantize_transverse(op.symbol.padded(N), ctx.cutoff, basis);
  GridOperator Qq = quantize_transverse(par.symbol, ctx.cutoff, basis);
  MatrixXcd defect = MatrixXcd::Identity(Qa.dim(), Qa.dim()) -
                     Qa.to_dense() * Qq.to_dense();
  CsvTable table;
  table.header = {"mode", "eta", "defect"};
  double max_cone = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    double eta = basis.at(i).eta.norm();
    double d = defect.row(i).cwiseAbs().maxCoeff();
    table.rows.push_back({double(i), eta, d});
    if (eta >= ctx.cutoff.r1) max_cone = std::max(max_cone, d);
  }
  TaskOutput out;
  out.summary["remainder_order"] = cplx_json(par.remainder_order);
  out.summary["max_defect_on_cone"] = max_cone;
  out.csvs.push_back({"parametrix_defect", table});
  return out;
}

TaskOutput task_power(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, 16);
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  cplx z(t.value("z_re", -0.5), t.value("z_im", 0.0));
  int depth = t.value("depth", 3);
  TransverseSymbol P = power_components(op.symbol, z, depth, ctx.contour);
  // group law defect
  TransverseSymbol Ph = power_components(op.symbol, z / 2.0, depth,
                                         ctx.contour);
  TransverseSymbol PP = compose(Ph, Ph);
  double group_defect = (PP - P).max_norm();
  // leading component vs (a_m)^z
  double lead_defect = 0.0;
  for (int i = 0; i < P.ny_total() * P.ns(); ++i) {
    cplx am = op.symbol.components()[0].data[i](0, 0);
    cplx expect = std::pow(am, z);
    lead_defect = std::max(lead_defect,
                           std::abs(P.components()[0].data[i](0, 0) - expect));
  }
  TaskOutput out;
  out.summary["order"] = cplx_json(P.order());
  out.summary["group_law_defect"] = group_defect;
  out.summary["leading_defect"] = lead_defect;
  return out;
}

TaskOutput task_sobolev(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, 32);
  double s = t.value("s", 1.0), k = t.value("k", 0.5);
  CsvTable table;
  table.header = {"mode", "xi", "eta", "norm"};
  VectorXcd u = VectorXcd::Zero(basis.dim());
  // constant function, single modes, and a seeded random vector
  u[basis.index(0, std::vector<int>(M.q(), 0))] = 1.0;
  table.rows.push_back({-1.0, 0.0, 0.0, sobolev_norm(u, basis, s, k)});
  std::mt19937_64 rng(mix_seed(ctx.seed, 301));
  std::normal_distribution<double> gauss;
  for (int i = 0; i < basis.dim(); ++i) u[i] = cplx(gauss(rng), gauss(rng));
  table.rows.push_back({-2.0, 0.0, 0.0, sobolev_norm(u, basis, s, k)});
  TaskOutput out;
  out.summary["s"] = s;
  out.summary["k"] = k;
  out.csvs.push_back({"sobolev", table});
  return out;
}

TaskOutput task_seminorm(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, std::min(ctx.trans_trunc, 128));
  TangentialKernel k = seeded_kernel(ctx, 401);
  LinearOp R = M.is_product() ? tangential_apply(M, k, basis, 1)
                              : tangential_operator(M, k, basis, 1).linear();
  double s = t.value("s", 1.0), tt = t.value("t", 1.0), l = t.value("l", 0.0);
  auto sem = operator_seminorm(R, basis, 1, s, tt, l);
  TaskOutput out;
  out.summary["seminorm"] = sem.value;
  out.summary["converged"] = sem.converged;
  return out;
}

FirstOrderModelOp make_first_order(const Ctx& ctx, const std::string& name) {
  FirstOrderModelOp D;
  D.rank = 1;
  if (name == "dirac") {
    D.build = [](const ModeBasis& b) {
      VectorXcd d(b.dim());
      for (int i = 0; i < b.dim(); ++i) d[i] = b.at(i).eta[0];
      auto g = GridOperator::diagonal(b, 1, std::move(d), "dirac");
      g.hermitian = true;
      return g;
    };
    D.sigma = [](double, const VectorXd&, const VectorXd& eta) {
      return MatrixXcd::Constant(1, 1, eta[0]);
    };
    D.transversally_elliptic = true;
  } else if (name == "leafwise") {
    // -i d/dx: transversal principal symbol vanishes identically
    D.build = [](const ModeBasis& b) {
      VectorXcd d(b.dim());
      for (int i = 0; i < b.dim(); ++i) d[i] = b.at(i).xi;
      auto g = GridOperator::diagonal(b, 1, std::move(d), "leafwise");
      g.hermitian = true;
      return g;
    };
    D.sigma = [](double, const VectorXd&, const VectorXd&) {
      return MatrixXcd::Zero(1, 1);
    };
    D.transversally_elliptic = false;
  } else if (name == "leaf_modulated") {
    // -i c(x) d/dy: transversal symbol c(x) eta depends on the leaf
    // coordinate, violating holonomy invariance
    double lx = ctx.mspec.circumference_x;
    D.build = [lx](const ModeBasis& b) {
      // dense: c(x) multiplication couples leaf modes
      const int dm = b.dim();
      MatrixXcd m = MatrixXcd::Zero(dm, dm);
      for (int col = 0; col < dm; ++col) {
        const auto& cp = b.at(col);
        // c(x) = 1 + cos(2 pi x / lx): chat(0)=1, chat(+-1)=1/2
        for (int dm_leaf : {-1, 0, 1}) {
          std::vector<int> n = cp.n;
          int row = b.index(cp.m + dm_leaf, n);
          if (row < 0) continue;
          double chat = dm_leaf == 0 ? 1.0 : 0.5;
          m(row, col) += chat * cp.eta[0];
        }
      }
      auto g = GridOperator::from_dense(b, 1, std::move(m), "leaf_modulated");
      g.hermitian = true;
      return g;
    };
    D.sigma = [lx](double x, const VectorXd&, const VectorXd& eta) {
      return MatrixXcd::Constant(1, 1,
                                 (1.0 + std::cos(2.0 * pi * x / lx)) * eta[0]);
    };
    D.transversally_elliptic = false;
  } else {
    throw Error("commutator_study.operator: unknown '" + name + "'");
  }
  return D;
}

TaskOutput task_commutator(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  std::vector<int> truncs = {64, 128, 256, 512};
  if (t.contains("truncations")) {
    truncs.clear();
    for (const auto& v : t.at("truncations")) truncs.push_back(v.get<int>());
  }
  FirstOrderModelOp D = make_first_order(ctx, t.value("operator", "dirac"));
  TangentialKernel k = seeded_kernel(ctx, t.value("kernel_seed", 501));
  CommutatorStudy study =
      commutator_norm_study(M, D, k, truncs, ctx.leaf_trunc);
  TaskOutput out;
  out.summary["drift"] = study.drift;
  out.summary["verdict"] =
      study.verdict == StudyVerdict::Bounded
          ? "bounded"
          : (study.verdict == StudyVerdict::Growing ? "growing"
                                                    : "inapplicable");
  out.summary["invariance_pass"] = study.invariance_pass;
  out.summary["invariance_defect"] = study.invariance_defect;
  out.csvs.push_back({"commutator_norms", study.table()});
  return out;
}

TaskOutput task_schatten(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  int trunc = t.value("truncation", M.q() == 1 ? 200 : 20);
  ModeBasis basis = ModeBasis::product(M, 1, trunc);
  // leaf-constant kernel keeps the dense SVD tractable
  TangentialKernel k = TangentialKernel::separable(
      [](int m) { return m == 0 ? cplx(1.0) : cplx(0.0); }, 0,
      [](const VectorXd&) { return cplx(1.0); }, M.spec().circumference_x);
  auto dop = model_operator(M, M.q() == 1
                                   ? ModelOperatorKind::FirstOrderDirac
                                   : ModelOperatorKind::TransverseLaplacian,
                            basis, ctx.ny);
  GridOperator D = dop.op;
  if (M.q() == 2) {
    // first-order |D| for the q=2 model: sqrt of the laplacian modes
    VectorXcd d(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) d[i] = basis.at(i).eta.norm();
    D = GridOperator::diagonal(basis, 1, std::move(d), "abs_dirac_q2");
    D.hermitian = true;
  }
  SchattenStudy study = singular_value_study(M, k, D);
  TaskOutput out;
  out.summary["exponent"] = study.exponent;
  out.summary["target"] = study.target;
  out.summary["verdict"] = study.verdict;
  out.summary["degenerate_fit"] = study.degenerate_fit;
  out.csvs.push_back({"singular_values", study.table()});
  return out;
}

TaskOutput task_oracle(const Ctx& ctx, const json& t) {
  ModelFoliation M = ModelFoliation::build(ctx.mspec);
  ModeBasis basis = make_basis(M, ctx, ctx.trans_trunc);
  auto op = model_operator(M, ModelOperatorKind::TransverseLaplacian, basis,
                           ctx.ny);
  std::string task = t.value("task", "heat");
  TaskOutput out;
  CsvTable table;
  if (task == "heat") {
    table.header = {"t", "value"};
    double tv = t.value("t", 0.01);
    cplx v = eigen_oracle_heat(op.op, tv);
    table.rows.push_back({tv, v.real()});
    out.summary["value"] = v.real();
  } else if (task == "zeta") {
    table.header = {"z", "value"};
    double z = t.value("z", 2.0);
    cplx v = eigen_oracle_zeta(op.op, cplx(z));
    table.rows.push_back({z, v.real()});
    out.summary["value"] = v.real();
  } else {
    ClassicalSymbol b = unit_weight_symbol(M, ctx);
    QuantizedSymbol qb(b, basis);
    GridOperator R = qb.grid_operator("unit_weight");
    double tv = t.value("t", 0.01);
    cplx v = eigen_oracle_heat(op.op, tv, &R);
    table.header = {"t", "value"};
    table.rows.push_back({tv, v.real()});
    out.summary["value"] = v.real();
  }
  out.csvs.push_back({"oracle", table});
  return out;
}

TaskOutput run_task(const Ctx& ctx, const json& t) {
  std::string type = t.at("type").get<std::string>();
  if (type == "heat") return task_heat(ctx, t);
  if (type == "zeta_table") return task_zeta(ctx, t);
  if (type == "dimension_spectrum") return task_dimension_spectrum(ctx, t);
  if (type == "tr") return task_tr(ctx, t);
  if (type == "residue") return task_residue(ctx, t);
  if (type == "compose") return task_compose(ctx, t);
  if (type == "parametrix") return task_parametrix(ctx, t);
  if (type == "power") return task_power(ctx, t);
  if (type == "sobolev") return task_sobolev(ctx, t);
  if (type == "seminorm") return task_seminorm(ctx, t);
  if (type == "commutator_study") return task_commutator(ctx, t);
  if (type == "schatten_study") return task_schatten(ctx, t);
  if (type == "oracle") return task_oracle(ctx, t);
  throw Error("unknown task type " + type);
}

}  // namespace

json validate_scenario_text_impl(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("scenario: invalid JSON: ") + e.what());
  }
  Ctx ctx = parse_ctx(cfg);
  validate_tasks(cfg, ctx);
  return cfg;
}

nlohmann::ordered_json validate_scenario_text(const std::string& text) {
  return validate_scenario_text_impl(text);
}

ScenarioResult run_scenario(const std::string& path,
                            const std::string& out_dir_override,
                            std::uint64_t seed_override,
                            bool has_seed_override, int threads,
                            const std::string& log_level) {
  (void)log_level;
  ScenarioResult result;
  json cfg;
  Ctx ctx;
  try {
    std::ifstream f(path);
    require(bool(f), "scenario: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    cfg = validate_scenario_text_impl(ss.str());
    ctx = parse_ctx(cfg);
    validate_tasks(cfg, ctx);
  } catch (const Error& e) {
    result.exit_code = 2;
    result.message = e.what();
    return result;
  }
  if (has_seed_override) ctx.seed = seed_override;
  if (!out_dir_override.empty()) ctx.out_dir = out_dir_override;

  std::filesystem::create_directories(ctx.out_dir);

  const auto& tasks = cfg.at("tasks");
  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<std::string> errors(tasks.size());

  auto worker = [&](size_t i) {
    try {
      outputs[i] = run_task(ctx, tasks[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (threads <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) worker(i);
  } else {
    std::vector<std::future<void>> futs;
    size_t next = 0;
    while (next < tasks.size()) {
      futs.clear();
      for (int t = 0; t < threads && next < tasks.size(); ++t, ++next)
        futs.push_back(std::async(std::launch::async, worker, next));
      for (auto& fu : futs) fu.get();
    }
  }

  json index;
  index["version"] = 1;
  index["seed"] = ctx.seed;
  index["tasks"] = json::array();
  bool failed = false;
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::string type = tasks[i].at("type").get<std::string>();
    std::string stem = std::to_string(i) + "_" + type;
    json entry;
    entry["type"] = type;
    entry["index"] = i;
    if (!errors[i].empty()) {
      entry["error"] = errors[i];
      failed = true;
    } else {
      std::string jpath = ctx.out_dir + "/" + stem + ".json";
      write_text_file(jpath, outputs[i].summary.dump(2) + "\n");
      entry["summary"] = stem + ".json";
      result.artifacts.push_back(jpath);
      json csvs = json::array();
      for (const auto& [name, table] : outputs[i].csvs) {
        std::string cpath = ctx.out_dir + "/" + stem + "_" + name + ".csv";
        write_text_file(cpath, table.to_string());
        csvs.push_back(stem + "_" + name + ".csv");
        result.artifacts.push_back(cpath);
      }
      entry["csv"] = csvs;
    }
    index["tasks"].push_back(entry);
  }
  std::string ipath = ctx.out_dir + "/index.json";
  write_text_file(ipath, index.dump(2) + "\n");
  result.artifacts.push_back(ipath);
  if (failed) {
    result.exit_code = 3;
    result.message = "one or more tasks failed (see index.json)";
  }
  return result;
}

std::string list_models() {
  return
      "product     T^p x T^q foliated by leaves T^p x {pt} (p=1, q in {1,2})\n"
      "kronecker   T^2 foliated by lines of irrational slope (p=q=1)\n"
      "operators   transverse_laplacian | transverse_signature | "
      "first_order_dirac\n";
}

}  // namespace tvc
