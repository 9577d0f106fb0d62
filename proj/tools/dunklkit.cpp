// dunklkit: command-line front end. Exit codes: 0 success, 1 check failure, 2 usage or config error.

#include "cli_support.hpp"

#include <dunklkit/intertwiner.hpp>
#include <dunklkit/kernels.hpp>
#include <dunklkit/motion_group.hpp>
#include <dunklkit/transform.hpp>
#include <dunklkit/verify.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace dunklkit;
using cli::JsonLine;
using cli::UsageError;

namespace {

void emit(const JsonLine& j) { std::cout << j.str() << '\n'; }

// ---------------------------------------------------------------------------
// op

struct OpArgs {
  std::string group, k = "0", xi, poly;
};

int run_op(const std::string& action, const OpArgs& a) {
  const auto rs = RootSystem<Rational>::build(a.group);
  const DunklOperators<Rational> ops(rs, rs.multiplicity(a.k));
  const auto p = parse_poly<Rational>(a.poly, rs.dim());
  Poly<Rational> out(rs.dim());
  JsonLine j;
  j.add("group", a.group).add("k", a.k).add("op", action);
  if (action == "apply") {
    if (a.xi.empty()) throw UsageError("op apply needs --xi");
    Vec<Rational> xi;
    std::stringstream ss(a.xi);
    std::string item;
    while (std::getline(ss, item, ',')) xi.push_back(parse_rational(item));
    if (xi.size() != rs.dim()) throw UsageError("--xi needs " + std::to_string(rs.dim()) + " components");
    out = ops.apply(xi, p);
    j.add("xi", a.xi);
  } else if (action == "laplacian") {
    out = ops.laplacian(p);
  } else {
    const Intertwiner<Rational> v(ops);
    out = action == "vk" ? v.vk(p) : v.wk(p);
  }
  j.add("input", to_text(p)).add("poly", to_text(out));
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------
// kernel

struct KernelArgs {
  std::string group, k = "0", kind = "exp", lambda, lambda_im, x;
  int series_n = -1;
};

std::vector<Complex> complex_vector(const std::string& re, const std::string& im) {
  const auto r = cli::parse_list(re, "--lambda");
  const auto i = im.empty() ? std::vector<double>(r.size(), 0.0) : cli::parse_list(im, "--lambda-im");
  if (i.size() != r.size()) throw UsageError("--lambda and --lambda-im differ in length");
  std::vector<Complex> out;
  for (std::size_t n = 0; n < r.size(); ++n) out.emplace_back(r[n], i[n]);
  return out;
}

template <class F>
int run_kernel_in(const KernelArgs& a) {
  const auto rs = RootSystem<F>::build(a.group);
  const KernelEvaluator<F> ev(rs, rs.multiplicity(a.k));
  const auto lambda = complex_vector(a.lambda, a.lambda_im);
  const auto x = cli::parse_list(a.x, "--x");
  if (lambda.size() != rs.dim() || x.size() != rs.dim())
    throw UsageError("--lambda and --x need " + std::to_string(rs.dim()) + " components for " + a.group);
  if (a.kind != "exp" && a.kind != "jg") throw UsageError("--kind must be exp or jg");
  const KernelValue kv = a.kind == "exp" ? ev.exp(lambda, x, a.series_n) : ev.jg(lambda, x, a.series_n);
  JsonLine j;
  j.add("group", a.group).add("k", a.k).add("kind", a.kind);
  j.add("value_re", kv.value.real()).add("value_im", kv.value.imag()).add("tail_bound", kv.abs_error_estimate);
  j.add("method", kv.method).add("terms", kv.terms);
  emit(j);
  return 0;
}

int run_kernel(const KernelArgs& a) {
  if (a.group.empty() || a.lambda.empty() || a.x.empty()) throw UsageError("kernel needs --group, --lambda and --x");
  try {
    return run_kernel_in<Rational>(a);
  } catch (const NotExact&) {
    return run_kernel_in<double>(a);
  }
}

struct LimitArgs {
  double k = 0.5, lambda_re = 1, lambda_im = 0, x = 1;
  std::string eps = "1e-1,1e-2,1e-3";
};

int run_limit(const LimitArgs& a) {
  const auto eps = cli::parse_list(a.eps, "--eps");
  const auto dev = limit_transition_check(Complex(a.lambda_re, a.lambda_im), a.k, a.x, eps);
  bool decreasing = true;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    emit(JsonLine().add("type", "row").add("eps", eps[i]).add("deviation", dev[i]));
    if (i && !(dev[i] < dev[i - 1])) decreasing = false;
  }
  JsonLine s;
  s.add("type", "summary").add("k", a.k).add("lambda_re", a.lambda_re).add("lambda_im", a.lambda_im).add("x", a.x);
  s.add("decreasing", decreasing).add("final", dev.back()).add("status", decreasing ? "pass" : "fail");
  emit(s);
  return decreasing ? 0 : 1;
}

// ---------------------------------------------------------------------------
// transform and pw-check

struct TransformArgs {
  std::string group = "z2", input = "bump:R=1", grid;
  double k = 0, imag = 0;
};

int run_transform(const TransformArgs& a) {
  if (RootSystem<Rational>::build(a.group).dim() != 1) throw UsageError("transform is implemented in rank one only");
  const auto f = cli::parse_input(a.input);
  const auto re = cli::parse_grid(a.grid);
  std::vector<Complex> lambdas;
  for (double r : re) lambdas.emplace_back(r, a.imag);
  const RankOneTransform t(a.k);
  const auto vals = t.forward(f, lambdas);
  double worst = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    JsonLine j;
    j.add("lambda_re", lambdas[i].real()).add("lambda_im", lambdas[i].imag());
    j.add("value_re", vals[i].value.real()).add("value_im", vals[i].value.imag()).add("est_err", vals[i].error);
    emit(j);
    worst = std::max(worst, vals[i].error);
  }
  emit(JsonLine().add("type", "summary").add("input", f.label).add("k", a.k).add("points", vals.size()).add("max_est_err", worst));
  return 0;
}

struct PWArgs {
  double k = 0, R = 1, delta = 0.1, x_max = 3;
  std::string orders = "0,1,2,3,4";
  PWGrid grid;
  int samples = 40;
};

int run_pw(const PWArgs& a) {
  std::vector<int> orders;
  for (double m : cli::parse_list(a.orders, "--orders")) {
    if (m < 0 || m != std::floor(m)) throw UsageError("--orders takes non-negative integers");
    orders.push_back(static_cast<int>(m));
  }
  const auto prof = pw_forward_profile(a.k, a.R, orders, a.grid);
  JsonLine p;
  p.add("type", "profile").add("k", prof.k).add("R", prof.R);
  p.add("re_max", prof.grid.re_max).add("im_max", prof.grid.im_max);
  std::vector<double> ord(orders.begin(), orders.end());
  p.add("orders", ord).add("gamma", prof.gamma).add("fitted_rate", prof.fitted_rate);
  p.add("max_quad_error", prof.max_quad_error).add("holds", prof.holds);
  if (prof.witness) p.add("witness_re", prof.witness->real()).add("witness_im", prof.witness->imag());
  emit(p);

  const auto sup = pw_inverse_support_check(a.k, a.R, a.delta, a.x_max, a.samples);
  const bool confined = sup.ratio() < 1e-6 && sup.sup_inside > 1e-3;
  JsonLine s;
  s.add("type", "support").add("k", sup.k).add("R", sup.R).add("delta", sup.delta).add("x_max", sup.x_max);
  s.add("sup_outside", sup.sup_outside).add("sup_input", sup.sup_input).add("sup_inside", sup.sup_inside);
  s.add("ratio", sup.ratio()).add("tolerance", 1e-6).add("cutoff", sup.cutoff).add("quad_error", sup.quad_error);
  s.add("holds", confined);
  emit(s);
  return prof.holds && confined ? 0 : 1;
}

// ---------------------------------------------------------------------------
// motion

struct MotionArgs {
  int dim = 3, power = 1;
  std::string check, input = "bump:R=1", grid = "lin:-20:20:41", xs;
  std::optional<double> tolerance;
};

std::vector<double> sample_points(const MotionArgs& a, double lo, double hi, int n) {
  if (!a.xs.empty()) return cli::parse_grid(a.xs);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

int report(JsonLine j, double residual, double tol) {
  const bool ok = residual < tol;
  j.add("residual", residual).add("tolerance", tol).add("status", ok ? "pass" : "fail");
  emit(j);
  return ok ? 0 : 1;
}

int run_motion(const MotionArgs& a) {
  const FlatModel m(a.dim);
  const auto f = cli::parse_input(a.input);
  JsonLine j;
  j.add("type", "report").add("check", a.check).add("dim", a.dim).add("input", f.label);
  const double reach = std::min(f.support, 3.0);
  if (a.check == "factorization") {
    const auto lambdas = cli::parse_grid(a.grid);
    const auto rep = factorization_check(m, f, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      JsonLine p;
      p.add("type", "point").add("lambda", lambdas[i]);
      p.add("direct_re", rep.direct[i].real()).add("direct_im", rep.direct[i].imag());
      p.add("dunkl_re", rep.dunkl[i].real()).add("dunkl_im", rep.dunkl[i].imag());
      p.add("abel_re", rep.abel[i].real()).add("abel_im", rep.abel[i].imag());
      emit(p);
    }
    const double measure = measure_identity(m, f).residual();
    j.add("measure_residual", measure);
    if (rep.witness) j.add("witness_lambda", *rep.witness);
    return report(j, std::max(rep.worst, measure), a.tolerance.value_or(1e-7));
  }
  if (a.check == "inversion") {
    if (!m.integer_k()) throw UsageError("Abel inversion by a differential operator needs odd --dim");
    return report(j, abel_round_trip(m, f, sample_points(a, 0.05, 1.2 * reach, 24)), a.tolerance.value_or(1e-6));
  }
  if (a.check == "radialpart") {
    if (f.poly) {
      const auto chk = radial_part_check(m, *f.poly, a.power);
      j.add("power", a.power).add("euclidean", to_text(chk.euclidean)).add("dunkl", to_text(chk.dunkl));
      return report(j, chk.holds() ? 0.0 : 1.0, a.tolerance.value_or(0.5));
    }
    return report(j, radial_part_residual(m, f, sample_points(a, 0.1, 0.8 * reach, 15)), a.tolerance.value_or(1e-7));
  }
  throw UsageError("--check must be factorization, inversion or radialpart");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite, config, filter;
  std::optional<std::string> seed;
  std::optional<unsigned> workers;
  bool json = false, timing = false;
};

int run_verify_cmd(const VerifyArgs& a) {
  cli::Config cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw UsageError("cannot open config file " + a.config);
    cfg = cli::parse_config(in, a.config);
  }
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite '" + a.suite + "' (exact, numeric, pw, motion, all)");
  const std::uint64_t seed = cli::resolve_seed(a.seed, std::getenv("DUNKLKIT_SEED"), cfg);
  const unsigned workers = a.workers ? *a.workers : cfg.workers.value_or(0);
  const bool timing = a.timing || cfg.timing.value_or(false);

  std::function<bool(const CheckDef&)> keep;
  if (!a.filter.empty()) keep = [&](const CheckDef& c) { return c.id.find(a.filter) != std::string::npos; };
  const VerifyReport rep = run_verify(a.suite, seed, workers, keep);
  if (a.json) {
    std::cout << cli::report_json(rep, timing);
  } else {
    for (const auto& c : rep.checks) {
      std::printf("%-4s  %-40s  residual %-12s  tol %-8s", to_string(c.status), c.id.c_str(),
                  JsonLine::number(c.residual).c_str(), JsonLine::number(c.tolerance).c_str());
      if (timing) std::printf("  %.0f ms", c.runtime_ms);
      if (c.status != CheckStatus::pass && !c.witness.empty()) std::printf("  [%s]", c.witness.c_str());
      std::printf("\n");
    }
    std::printf("%s: %zu checks, %zu pass, %zu fail, %zu skip (seed %llu)\n", rep.suite.c_str(), rep.checks.size(),
                rep.count(CheckStatus::pass), rep.count(CheckStatus::fail), rep.count(CheckStatus::skip),
                static_cast<unsigned long long>(rep.seed));
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dunklkit: rational Dunkl theory toolkit"};
  app.require_subcommand(1);
  int code = 0;
  std::function<int()> action;

  OpArgs op;
  auto* op_cmd = app.add_subcommand("op", "Dunkl operators and the intertwiner on exact polynomials");
  op_cmd->require_subcommand(1);
  for (const char* name : {"apply", "laplacian", "vk", "wk"}) {
    auto* sub = op_cmd->add_subcommand(name);
    sub->add_option("--group", op.group, "group tag, e.g. z2, a2, b2, a1xa1, bn:3")->required();
    sub->add_option("--k", op.k, "multiplicity, one value or one per orbit");
    sub->add_option("--poly", op.poly, "polynomial in x0, x1, ...")->required();
    if (std::string(name) == "apply") sub->add_option("--xi", op.xi, "direction, comma-separated")->required();
    sub->callback([&, name] { action = [&, name] { return run_op(name, op); }; });
  }

  KernelArgs ka;
  auto* kernel_cmd = app.add_subcommand("kernel", "Dunkl kernel Exp(λ, k, x) or generalized Bessel J(λ, k, x)");
  kernel_cmd->add_option("--group", ka.group);
  kernel_cmd->add_option("--k", ka.k);
  kernel_cmd->add_option("--kind", ka.kind, "exp or jg");
  kernel_cmd->add_option("--lambda,--lambda-re", ka.lambda, "real parts of λ, comma-separated");
  kernel_cmd->add_option("--lambda-im", ka.lambda_im, "imaginary parts of λ");
  kernel_cmd->add_option("--x", ka.x, "point, comma-separated");
  kernel_cmd->add_option("--series-n", ka.series_n, "series truncation degree");
  kernel_cmd->callback([&] {
    if (!action) action = [&] { return run_kernel(ka); };
  });
  LimitArgs la;
  auto* limit_cmd = kernel_cmd->add_subcommand("limit", "rank-one Cherednik to Dunkl limit transition");
  limit_cmd->add_option("--k", la.k);
  limit_cmd->add_option("--lambda-re", la.lambda_re);
  limit_cmd->add_option("--lambda-im", la.lambda_im);
  limit_cmd->add_option("--x", la.x);
  limit_cmd->add_option("--eps", la.eps, "comma-separated scales");
  limit_cmd->callback([&] { action = [&] { return run_limit(la); }; });

  TransformArgs ta;
  auto* transform_cmd = app.add_subcommand("transform", "rank-one Dunkl transform on a λ grid");
  transform_cmd->add_option("--group", ta.group);
  transform_cmd->add_option("--k", ta.k)->required();
  transform_cmd->add_option("--input", ta.input, "bump:R=1, gaussian or poly-gaussian:<p>");
  transform_cmd->add_option("--lambda-grid", ta.grid, "lin:a:b:n or a list")->required();
  transform_cmd->add_option("--imag", ta.imag, "imaginary part of λ");
  transform_cmd->callback([&] { action = [&] { return run_transform(ta); }; });

  PWArgs pa;
  auto* pw_cmd = app.add_subcommand("pw-check", "Paley–Wiener support and growth profile in rank one");
  pw_cmd->add_option("--k", pa.k)->required();
  pw_cmd->add_option("--R", pa.R);
  pw_cmd->add_option("--orders", pa.orders);
  pw_cmd->add_option("--re-max", pa.grid.re_max);
  pw_cmd->add_option("--im-max", pa.grid.im_max);
  pw_cmd->add_option("--n-re", pa.grid.n_re);
  pw_cmd->add_option("--n-im", pa.grid.n_im);
  pw_cmd->add_option("--delta", pa.delta);
  pw_cmd->add_option("--x-max", pa.x_max);
  pw_cmd->add_option("--samples", pa.samples);
  pw_cmd->callback([&] { action = [&] { return run_pw(pa); }; });

  MotionArgs ma;
  auto* motion_cmd = app.add_subcommand("motion", "flat symmetric space checks in dimension N");
  motion_cmd->add_option("--dim", ma.dim)->required();
  motion_cmd->add_option("--check", ma.check, "factorization, inversion or radialpart")->required();
  motion_cmd->add_option("--input", ma.input);
  motion_cmd->add_option("--lambda-grid", ma.grid);
  motion_cmd->add_option("--x-grid", ma.xs);
  motion_cmd->add_option("--power", ma.power, "Laplacian power for radialpart");
  motion_cmd->add_option("--tolerance", ma.tolerance);
  motion_cmd->callback([&] { action = [&] { return run_motion(ma); }; });

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  verify_cmd->add_option("suite", va.suite, "exact, numeric, pw, motion or all")->required();
  verify_cmd->add_flag("--json", va.json, "JSON lines output");
  verify_cmd->add_option("--seed", va.seed);
  verify_cmd->add_option("--config", va.config, "key = value file");
  verify_cmd->add_flag("--timing", va.timing, "report runtime_ms");
  verify_cmd->add_option("--workers", va.workers);
  verify_cmd->add_option("--filter", va.filter, "run only ids containing this text");
  verify_cmd->callback([&] { action = [&] { return run_verify_cmd(va); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    code = action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "dunklkit: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "dunklkit: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dunklkit: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dunklkit: " << e.what() << '\n';
    return 1;
  }
  return code;
}
