// Command-line front end: config + dotted overrides in, JSON/CSV artifacts out.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nsbox/bundle.hpp"
#include "nsbox/certify.hpp"
#include "nsbox/estimators.hpp"
#include "nsbox/field_io.hpp"
#include "nsbox/io_util.hpp"
#include "nsbox/ops.hpp"
#include "nsbox/solver.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace nsbox;

namespace {

ojson default_config() {
  ojson c;
  c["box"] = {{"L", kTwoPi}, {"nu", 1.0}, {"alpha", 0.5}};
  c["budget"] = ojson::object();  // absent keys fall back to the nu-derived defaults
  c["solver"] = {{"m", 8},
                 {"k0", 1},
                 {"dt", 1e-3},
                 {"t_end", 1.0},
                 {"adapt", 0.0},
                 {"oversample", 3},
                 {"sample_every", 10},
                 {"blowup_factor", 1e3},
                 {"store_snapshots", false},
                 {"disable_nonlinear", false}};
  c["constants"] = {{"table", ""}, {"budget", 2000}, {"seed", 1},
                    {"safety", 1.5}, {"variant", "sec12"}, {"oversample", 3}};
  c["output"] = {{"dir", "out"}};
  return c;
}

void deep_merge(ojson& base, const ojson& patch) {
  if (!patch.is_object() || !base.is_object()) {
    base = patch;
    return;
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it->is_object())
      deep_merge(base[it.key()], *it);
    else
      base[it.key()] = *it;
  }
}

void apply_override(ojson& cfg, const std::string& token) {
  std::string body = token;
  while (!body.empty() && body.front() == '-') body.erase(body.begin());
  const auto eq = body.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("override must look like --section.key=value: " + token);
  std::string path = "/" + body.substr(0, eq);
  for (auto& ch : path)
    if (ch == '.') ch = '/';
  const std::string raw = body.substr(eq + 1);
  ojson value;
  try {
    value = ojson::parse(raw);
  } catch (const nlohmann::json::exception&) {
    value = raw;  // unquoted strings (paths, names)
  }
  cfg[ojson::json_pointer(path)] = value;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Ctx {
  ojson cfg;
  fs::path outdir;
  std::string config_hash;
  std::string command;
  SobolevConstantTable table;
  std::string table_path;
  bool table_dirty = false;
  std::vector<std::string> emitted;
};

BoxSpec box_from(const Ctx& ctx) {
  const auto& b = ctx.cfg.at("box");
  BoxSpec box{b.at("L").get<double>(), b.at("nu").get<double>(),
              b.at("alpha").get<double>()};
  box.validate();
  return box;
}

EpsilonBudget budget_from(const Ctx& ctx, double nu) {
  EpsilonBudget e = EpsilonBudget::defaults(nu);
  const auto& b = ctx.cfg.at("budget");
  if (b.contains("nu_bar")) e.nu_bar = b.at("nu_bar").get<double>();
  if (b.contains("eps1")) e.eps1 = b.at("eps1").get<double>();
  if (b.contains("eps2")) e.eps2 = b.at("eps2").get<double>();
  if (b.contains("sigma")) e.sigma = b.at("sigma").get<double>();
  if (b.contains("delta")) e.delta = b.at("delta").get<double>();
  return e;
}

SolverConfig solver_from(const Ctx& ctx) {
  const auto& s = ctx.cfg.at("solver");
  SolverConfig c;
  c.truncation = s.at("m").get<int>();
  c.low_cutoff = s.at("k0").get<int>();
  c.dt = s.at("dt").get<double>();
  c.t_end = s.at("t_end").get<double>();
  c.adapt = s.at("adapt").get<double>();
  c.oversample = s.at("oversample").get<int>();
  c.sample_every = s.at("sample_every").get<int>();
  c.blowup_factor = s.at("blowup_factor").get<double>();
  c.store_snapshots = s.at("store_snapshots").get<bool>();
  c.disable_nonlinear = s.at("disable_nonlinear").get<bool>();
  c.validate();
  return c;
}

void load_table(Ctx& ctx) {
  std::string path = ctx.cfg.at("constants").at("table").get<std::string>();
  if (path.empty())
    if (const char* env = std::getenv("NSBOX_CONSTANTS")) path = env;
  if (path.empty()) path = (ctx.outdir / "constants.json").string();
  ctx.table_path = path;
  if (fs::exists(path)) ctx.table = SobolevConstantTable::load(path);
}

double ensure_cs(Ctx& ctx, double beta) {
  if (!ctx.table.has(beta)) {
    const auto& cc = ctx.cfg.at("constants");
    SobolevEntry e;
    e.estimate_lower = estimate_sobolev_constant(
        beta, cc.at("budget").get<int>(), cc.at("seed").get<std::uint64_t>(),
        cc.at("oversample").get<int>());
    e.safety_factor = cc.at("safety").get<double>();
    ctx.table.set(beta, e);
    ctx.table_dirty = true;
  }
  return ctx.table.effective(beta);
}

ConstantBundle bundle_from(Ctx& ctx, const BoxSpec& box, const EpsilonBudget& budget) {
  ensure_cs(ctx, 1.0 - box.alpha);
  ensure_cs(ctx, 1.0);
  ensure_cs(ctx, box.alpha - 0.5);
  const BundleVariant v =
      variant_from_name(ctx.cfg.at("constants").at("variant").get<std::string>());
  return assemble_bundle(box.alpha, box.length, budget.eps1, budget.eps2, ctx.table, v);
}

void save_table_if_dirty(Ctx& ctx) {
  if (!ctx.table_dirty) return;
  fs::create_directories(fs::path(ctx.table_path).parent_path().empty()
                             ? fs::path(".")
                             : fs::path(ctx.table_path).parent_path());
  ctx.table.save(ctx.table_path);
  ctx.table_dirty = false;
}

SpectralField load_datum(const Ctx& ctx, const ojson& blk, const char* key,
                         const BoxSpec& box, int fallback_m) {
  (void)ctx;
  if (!blk.contains(key) || blk.at(key).get<std::string>() == "zero")
    return SpectralField(box, fallback_m);
  const std::string path = blk.at(key).get<std::string>();
  if (!fs::exists(path))
    throw std::invalid_argument(std::string(key) + ": no such file: " + path);
  SpectralField f = load_field(path, box.viscosity, box.alpha);
  if (!f.box().same_geometry(box))
    throw std::invalid_argument(std::string(key) + ": snapshot box length " +
                                std::to_string(f.box().length) +
                                " does not match config");
  const std::string scale_key = std::string(key) + "_scale";
  if (blk.contains(scale_key)) f *= blk.at(scale_key).get<double>();
  return f;
}

SpectralField load_snapshot_path(const BoxSpec& box, const std::string& path) {
  if (!fs::exists(path)) throw std::invalid_argument("no such file: " + path);
  return load_field(path, box.viscosity, box.alpha);
}

Forcing forcing_from(const Ctx& ctx, const ojson& blk, const BoxSpec& box) {
  (void)ctx;
  if (blk.is_null()) return Forcing::zero();
  const std::string kind = blk.value("kind", std::string("zero"));
  if (kind == "zero") return Forcing::zero();
  if (kind == "constant") {
    SpectralField f = load_snapshot_path(box, blk.at("field").get<std::string>());
    if (blk.contains("scale")) f *= blk.at("scale").get<double>();
    return Forcing::constant(std::move(f));
  }
  if (kind == "poly") {
    std::vector<SpectralField> coeffs;
    for (const auto& p : blk.at("coeffs"))
      coeffs.push_back(load_snapshot_path(box, p.get<std::string>()));
    return Forcing::polynomial(std::move(coeffs), blk.value("t_scale", 1.0));
  }
  if (kind == "snapshots") {
    std::vector<double> times = blk.at("times").get<std::vector<double>>();
    std::vector<SpectralField> fields;
    for (const auto& p : blk.at("fields"))
      fields.push_back(load_snapshot_path(box, p.get<std::string>()));
    return Forcing::snapshots(std::move(times), std::move(fields));
  }
  throw std::invalid_argument("forcing.kind must be zero|constant|poly|snapshots");
}

void emit(Ctx& ctx, const std::string& name, const std::string& bytes) {
  fs::create_directories(ctx.outdir);
  atomic_write_file((ctx.outdir / name).string(), bytes);
  ctx.emitted.push_back(name);
}

void emit_json(Ctx& ctx, const std::string& name, const ojson& j) {
  emit(ctx, name, j.dump(2) + "\n");
}

ojson provenance(const Ctx& ctx) {
  return {{"command", ctx.command}, {"config_hash", ctx.config_hash},
          {"config", ctx.cfg}};
}

ojson decorated(const Ctx& ctx, const CertificateReport& r) {
  ojson j = r.to_json();
  j["provenance"] = provenance(ctx);
  return j;
}

// Timestamps live here and only here so the artifacts themselves rerun
// byte-identically.
void write_stamp(Ctx& ctx) {
  ojson s = {{"command", ctx.command},
             {"config_hash", ctx.config_hash},
             {"written_at", utc_now()},
             {"files", ctx.emitted}};
  fs::create_directories(ctx.outdir);
  atomic_write_file((ctx.outdir / "stamp.json").string(), s.dump(2) + "\n");
}

int finish(Ctx& ctx, int code) {
  save_table_if_dirty(ctx);
  write_stamp(ctx);
  return code;
}

const ojson& block(const Ctx& ctx, const char* name) {
  static const ojson empty = ojson::object();
  return ctx.cfg.contains(name) ? ctx.cfg.at(name) : empty;
}

// ---- commands --------------------------------------------------------------

int cmd_estimate_constants(Ctx& ctx, std::vector<double> betas, int budget_opt,
                           std::int64_t seed_opt, bool with_interp, double horizon_opt) {
  const BoxSpec box = box_from(ctx);
  auto& cc = ctx.cfg["constants"];
  if (budget_opt > 0) cc["budget"] = budget_opt;
  if (seed_opt >= 0) cc["seed"] = std::uint64_t(seed_opt);
  if (betas.empty()) betas = {1.0 - box.alpha, 1.0, box.alpha - 0.5};

  const int budget = cc.at("budget").get<int>();
  const std::uint64_t seed = cc.at("seed").get<std::uint64_t>();
  const int oversample = cc.at("oversample").get<int>();
  const double safety = cc.at("safety").get<double>();

  for (double beta : betas) {
    const double est = estimate_sobolev_constant(beta, budget, seed, oversample);
    if (ctx.table.has(beta)) {
      SobolevEntry e = ctx.table.entry(beta);
      e.estimate_lower = std::max(e.estimate_lower, est);
      ctx.table.set(beta, e);
    } else {
      SobolevEntry e;
      e.estimate_lower = est;
      e.safety_factor = safety;
      ctx.table.set(beta, e);
    }
    ctx.table_dirty = true;
    std::printf("beta=%g estimate_lower=%.17g effective=%.17g\n", beta, est,
                ctx.table.effective(beta));
  }
  if (with_interp) {
    const double horizon =
        horizon_opt > 0 ? horizon_opt : ctx.cfg.at("solver").at("t_end").get<double>();
    const double est = estimate_interp_constant(box.alpha, horizon, budget, seed,
                                                oversample);
    ojson j = {{"format", "interp-constant"},
               {"alpha", box.alpha},
               {"horizon", horizon},
               {"budget", budget},
               {"seed", seed},
               {"estimate_lower", est},
               {"safety_factor", safety},
               {"effective", est * safety},
               {"provenance", provenance(ctx)}};
    emit_json(ctx, "interp_constant.json", j);
    std::printf("c_i alpha=%g horizon=%g estimate_lower=%.17g effective=%.17g\n",
                box.alpha, horizon, est, est * safety);
  }
  save_table_if_dirty(ctx);
  std::printf("estimate-constants: %zu entries -> %s\n", ctx.table.entries().size(),
              ctx.table_path.c_str());
  return finish(ctx, 0);
}

int cmd_simulate(Ctx& ctx) {
  const BoxSpec box = box_from(ctx);
  const SolverConfig scfg = solver_from(ctx);
  const ojson& blk = block(ctx, "simulate");
  const SpectralField u0 = load_datum(ctx, blk, "u0", box, scfg.truncation);
  const Forcing f = forcing_from(ctx, blk.contains("forcing") ? blk.at("forcing")
                                                              : ojson(nullptr), box);

  const Trajectory traj = integrate(u0, f, scfg, box);

  fs::create_directories(ctx.outdir);
  write_trajectory_csv((ctx.outdir / "trajectory.csv").string(), traj);
  ctx.emitted.push_back("trajectory.csv");

  ojson manifest = trajectory_manifest(traj, ctx.table.to_json());
  manifest["provenance"] = provenance(ctx);
  emit_json(ctx, "run.json", manifest);

  if (scfg.store_snapshots && !traj.snapshots.empty()) {
    save_field((ctx.outdir / "final.nscf").string(), traj.snapshots.back());
    ctx.emitted.push_back("final.nscf");
  }

  std::printf("simulate: %s at t=%.17g, %zu samples -> %s\n",
              run_status_name(traj.status).c_str(), traj.stop_time,
              traj.samples.size(), (ctx.outdir / "trajectory.csv").c_str());
  return finish(ctx, traj.status == RunStatus::completed ? 0 : 3);
}

int verdict_exit(Ctx& ctx, const CertificateReport& r, const std::string& file) {
  std::printf("%s: %s lhs=%.17g rhs=%.17g margin=%.17g -> %s\n",
              criterion_name(r.criterion).c_str(), r.passed ? "PASS" : "FAIL", r.lhs,
              r.rhs, r.margin, (ctx.outdir / file).c_str());
  return finish(ctx, r.passed ? 0 : 1);
}

int cmd_certify_small(Ctx& ctx) {
  const BoxSpec box = box_from(ctx);
  const EpsilonBudget budget = budget_from(ctx, box.viscosity);
  const ConstantBundle bundle = bundle_from(ctx, box, budget);
  const ojson& blk = block(ctx, "certify");
  const double T = blk.value("T", ctx.cfg.at("solver").at("t_end").get<double>());
  const SpectralField u0 =
      load_datum(ctx, blk, "u0", box, ctx.cfg.at("solver").at("m").get<int>());
  const Forcing f = forcing_from(ctx, blk.contains("forcing") ? blk.at("forcing")
                                                              : ojson(nullptr), box);

  const CertificateReport r = check_smallness_A4(u0, f, T, bundle, budget, &ctx.table);
  emit_json(ctx, "certificate_A4.json", decorated(ctx, r));
  return verdict_exit(ctx, r, "certificate_A4.json");
}

int cmd_certify_stability(Ctx& ctx) {
  const BoxSpec box = box_from(ctx);
  const EpsilonBudget budget = budget_from(ctx, box.viscosity);
  ConstantBundle bundle = bundle_from(ctx, box, budget);
  const ojson& blk = block(ctx, "certify");
  SolverConfig scfg = solver_from(ctx);
  const double T = blk.value("T", scfg.t_end);
  scfg.t_end = std::max(scfg.t_end, T);
  scfg.store_snapshots = true;

  const SpectralField u0 = load_datum(ctx, blk, "u0", box, scfg.truncation);
  const SpectralField v0 = load_datum(ctx, blk, "v0", box, scfg.truncation);
  const Forcing f = forcing_from(ctx, blk.contains("forcing") ? blk.at("forcing")
                                                              : ojson(nullptr), box);
  const Forcing g =
      forcing_from(ctx, blk.contains("g") ? blk.at("g") : ojson(nullptr), box);

  const Trajectory traj_u = integrate(u0, f, scfg, box);
  if (traj_u.status != RunStatus::completed)
    throw std::runtime_error("reference run stopped early: " +
                             run_status_name(traj_u.status));

  const CertificateReport a1 =
      check_proximity_A1(traj_u, v0, g, T, bundle, budget, &ctx.table);
  emit_json(ctx, "certificate_A1.json", decorated(ctx, a1));

  bool have_a2 = false;
  CertificateReport a2;
  if (blk.contains("c_i")) {
    bundle.c_i = blk.at("c_i").get<double>();
    have_a2 = true;
  } else if (blk.value("estimate_ci", true)) {
    const auto& cc = ctx.cfg.at("constants");
    const double est = estimate_interp_constant(
        box.alpha, T, cc.at("budget").get<int>(), cc.at("seed").get<std::uint64_t>(),
        cc.at("oversample").get<int>());
    bundle.c_i = est * cc.at("safety").get<double>();
    have_a2 = true;
  }
  if (have_a2) {
    a2 = check_proximity_A2(traj_u, v0, g, T, bundle, budget, &ctx.table);
    emit_json(ctx, "certificate_A2.json", decorated(ctx, a2));
  }

  std::size_t violations = 0;
  bool p1_passed = true;
  if (blk.value("run_difference", true)) {
    const Trajectory traj_v = integrate(v0, g, scfg, box);
    const Trajectory diff = difference_trajectory(traj_u, traj_v);
    const EnvelopeReport env =
        gronwall_envelope(diff, bundle, budget, blk.value("tol", 0.05));
    violations = env.violations.size();

    std::string csv = "t,x,observed,envelope,violation\n";
    char line[200];
    for (std::size_t i = 0; i < diff.samples.size(); ++i) {
      const bool bad = std::find(env.violations.begin(), env.violations.end(), i) !=
                       env.violations.end();
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%d\n",
                    diff.samples[i].t, diff.samples[i].x, env.observed[i],
                    env.envelope[i], bad ? 1 : 0);
      csv += line;
    }
    emit(ctx, "envelope.csv", csv);

    const CertificateReport p1 = p1_check(diff, bundle, budget, &ctx.table);
    p1_passed = p1.passed;
    emit_json(ctx, "certificate_P1.json", decorated(ctx, p1));

    fs::create_directories(ctx.outdir);
    write_trajectory_csv((ctx.outdir / "difference_trajectory.csv").string(), diff);
    ctx.emitted.push_back("difference_trajectory.csv");
  }

  fs::create_directories(ctx.outdir);
  write_trajectory_csv((ctx.outdir / "reference_trajectory.csv").string(), traj_u);
  ctx.emitted.push_back("reference_trajectory.csv");

  std::printf("A1: %s margin=%.17g", a1.passed ? "PASS" : "FAIL", a1.margin);
  if (have_a2) std::printf(" | A2: %s margin=%.17g", a2.passed ? "PASS" : "FAIL", a2.margin);
  if (blk.value("run_difference", true))
    std::printf(" | P1: %s | envelope violations: %zu", p1_passed ? "PASS" : "FAIL",
                violations);
  std::printf(" -> %s\n", (ctx.outdir / "certificate_A1.json").c_str());
  return finish(ctx, a1.passed ? 0 : 1);
}

int cmd_certify_caloric(Ctx& ctx) {
  const BoxSpec box = box_from(ctx);
  const EpsilonBudget budget = budget_from(ctx, box.viscosity);
  const ConstantBundle bundle = bundle_from(ctx, box, budget);
  const ojson& blk = block(ctx, "certify");
  if (!blk.contains("u0"))
    throw std::invalid_argument("certify caloric: config certify.u0 is required");
  const SolverConfig scfg = solver_from(ctx);
  const SpectralField u0 = load_datum(ctx, blk, "u0", box, scfg.truncation);
  const int k0 = blk.value("k0", scfg.low_cutoff);
  const double t_max = blk.value("t_max", scfg.t_end);
  const int resolution = blk.value("resolution", 64);

  CaloricResult res =
      caloric_lower_bound(u0, k0, bundle, budget, t_max, resolution, &ctx.table);

  if (blk.value("verify_run", false) && res.t0 > 0.0) {
    SolverConfig run = scfg;
    run.t_end = res.t0;
    const Trajectory traj = integrate(u0, Forcing::zero(), run, box);
    const double dcoef =
        box.viscosity - budget.eps1 - budget.eps2 - budget.sigma * res.mu;
    const double rhs = std::pow(dcoef / bundle.k2, 2.0);
    double worst = 0.0, iy = 0.0;
    const auto& s = traj.samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) iy += 0.5 * (s[i - 1].y + s[i].y) * (s[i].t - s[i - 1].t);
      worst = std::max(worst, s[i].x + budget.sigma * iy);
    }
    res.report.inputs["moreover_check"] = {{"sup_lhs", worst},
                                           {"rhs", rhs},
                                           {"ok", worst <= rhs},
                                           {"status", run_status_name(traj.status)}};
  }

  emit_json(ctx, "certificate_A3.json", decorated(ctx, res.report));
  std::printf("A3: %s T0=%.17g k0=%d mu=%.17g -> %s\n",
              res.report.passed ? "PASS" : "FAIL", res.t0, res.k0_used, res.mu,
              (ctx.outdir / "certificate_A3.json").c_str());
  return finish(ctx, res.report.passed ? 0 : 1);
}

int cmd_certify_aposteriori(Ctx& ctx) {
  const BoxSpec box = box_from(ctx);
  const EpsilonBudget budget = budget_from(ctx, box.viscosity);
  const ConstantBundle bundle = bundle_from(ctx, box, budget);
  const ojson& blk = block(ctx, "certify");
  const SolverConfig scfg = solver_from(ctx);
  const double T = blk.value("T", scfg.t_end);
  const SpectralField u0 = load_datum(ctx, blk, "u0", box, scfg.truncation);
  const Forcing f = forcing_from(ctx, blk.contains("forcing") ? blk.at("forcing")
                                                              : ojson(nullptr), box);
  std::vector<int> schedule = {8, 16, 32};
  if (blk.contains("schedule")) schedule = blk.at("schedule").get<std::vector<int>>();

  const ConditionCResult res =
      verify_condition_C(u0, f, T, bundle, budget, schedule, scfg, &ctx.table);

  std::string csv = "n,residual_integral,lhs,rhs,passed\n";
  char line[200];
  for (std::size_t i = 0; i < res.reports.size(); ++i) {
    const auto& r = res.reports[i];
    char name[64];
    std::snprintf(name, sizeof(name), "certificate_C_n%d.json", schedule[i]);
    emit_json(ctx, name, decorated(ctx, r));
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%s\n", schedule[i],
                  res.residual_integrals[i], r.lhs, r.rhs,
                  r.passed ? "true" : "false");
    csv += line;
  }
  emit(ctx, "residual_vs_n.csv", csv);
  emit(ctx, "certificates_index.csv", certificates_index_csv(res.reports));

  if (res.granted_n)
    std::printf("C: PASS granted at n=%d -> %s\n", *res.granted_n,
                (ctx.outdir / "certificates_index.csv").c_str());
  else
    std::printf("C: FAIL no n in schedule passed -> %s\n",
                (ctx.outdir / "certificates_index.csv").c_str());
  return finish(ctx, res.granted_n ? 0 : 1);
}

int cmd_norms(Ctx& ctx, const std::string& snapshot, std::vector<double> svals) {
  const BoxSpec box = box_from(ctx);
  const SpectralField u = load_snapshot_path(box, snapshot);
  if (svals.empty()) svals = {box.alpha};
  for (double s : svals)
    std::printf("s=%g |u|_{s,L}=%.17g\n", s, hs_norm(u, s));
  std::printf("norms: m=%d L=%.17g max_divergence=%.3g\n", u.truncation(),
              u.box().length, max_divergence(u));
  return 0;  // read-only command, no artifacts or stamp
}

int cmd_report(Ctx& ctx, const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in)) {
        const std::string name = e.path().filename().string();
        if (e.path().extension() == ".json" && name.rfind("certificate_", 0) == 0)
          files.push_back(e.path().string());
      }
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("report: no certificate files given");

  std::vector<CertificateReport> reports;
  ojson merged = ojson::array();
  for (const auto& path : files) {
    if (!fs::exists(path)) throw std::invalid_argument("no such file: " + path);
    const ojson j = ojson::parse(read_file(path));
    CertificateReport r;
    const std::string cname = j.at("criterion").get<std::string>();
    bool found = false;
    for (Criterion c : {Criterion::A1, Criterion::A2, Criterion::A3, Criterion::A4,
                        Criterion::C, Criterion::P1})
      if (criterion_name(c) == cname) {
        r.criterion = c;
        found = true;
      }
    if (!found) throw std::invalid_argument("not a certificate file: " + path);
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.margin = j.at("margin").get<double>();
    r.passed = j.at("passed").get<bool>();
    reports.push_back(r);
    merged.push_back(j);
  }
  emit(ctx, "certificates_index.csv", certificates_index_csv(reports));
  emit_json(ctx, "certificates_merged.json",
            ojson{{"provenance", provenance(ctx)}, {"certificates", merged}});

  const std::size_t passed = std::size_t(
      std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.passed; }));
  std::printf("report: %zu certificates, %zu passed -> %s\n", reports.size(), passed,
              (ctx.outdir / "certificates_index.csv").c_str());
  return finish(ctx, passed == reports.size() ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic-box spectral Navier-Stokes: runs, constants, certificates"};
  app.allow_extras();
  std::string config_path, out_flag;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_flag, "output directory (overrides output.dir)");

  auto* est = app.add_subcommand("estimate-constants",
                                 "estimate embedding constants into the table");
  est->allow_extras()->fallthrough();
  std::vector<double> betas;
  int est_budget = -1;
  std::int64_t est_seed = -1;
  bool with_interp = false;
  double horizon = -1.0;
  est->add_option("--beta", betas, "beta values (default: the bundle's three)");
  est->add_option("--budget", est_budget, "evaluation budget");
  est->add_option("--seed", est_seed, "rng seed");
  est->add_flag("--interp", with_interp, "also estimate the interpolation constant");
  est->add_option("--horizon", horizon, "interpolation horizon (default solver.t_end)");

  auto* sim = app.add_subcommand("simulate", "integrate the truncated system");
  sim->allow_extras()->fallthrough();

  auto* cert = app.add_subcommand("certify", "evaluate a criterion");
  cert->require_subcommand(1);
  cert->fallthrough();
  auto* c_small = cert->add_subcommand("small", "data smallness");
  auto* c_stab = cert->add_subcommand("stability", "proximity to a reference run");
  auto* c_cal = cert->add_subcommand("caloric", "heat-flow lifetime lower bound");
  auto* c_apost = cert->add_subcommand("aposteriori", "Galerkin residual criterion");
  for (auto* c : {c_small, c_stab, c_cal, c_apost}) c->allow_extras()->fallthrough();

  auto* norms = app.add_subcommand("norms", "print Sobolev norms of a snapshot");
  norms->allow_extras()->fallthrough();
  std::string snapshot;
  std::vector<double> svals;
  norms->add_option("snapshot", snapshot, "snapshot file")->required();
  norms->add_option("--s", svals, "norm indices (default: alpha)");

  auto* rep = app.add_subcommand("report", "merge certificates into an index");
  rep->allow_extras()->fallthrough();
  std::vector<std::string> report_inputs;
  rep->add_option("files", report_inputs, "certificate files or directories");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Ctx ctx;
    ctx.cfg = default_config();
    if (!config_path.empty()) {
      if (!fs::exists(config_path))
        throw std::invalid_argument("no such config file: " + config_path);
      ojson file_cfg = ojson::parse(read_file(config_path));
      deep_merge(ctx.cfg, file_cfg);
    }
    for (const auto& extra : app.remaining(true)) {
      if (extra.rfind("--", 0) != 0)
        throw std::invalid_argument("unrecognized argument: " + extra);
      apply_override(ctx.cfg, extra);
    }
    if (!out_flag.empty()) ctx.cfg["output"]["dir"] = out_flag;
    ctx.outdir = ctx.cfg.at("output").at("dir").get<std::string>();
    ctx.config_hash = fnv1a_hex(ctx.cfg.dump());
    load_table(ctx);

    if (est->parsed()) {
      ctx.command = "estimate-constants";
      return cmd_estimate_constants(ctx, betas, est_budget, est_seed, with_interp,
                                    horizon);
    }
    if (sim->parsed()) {
      ctx.command = "simulate";
      return cmd_simulate(ctx);
    }
    if (cert->parsed()) {
      if (c_small->parsed()) {
        ctx.command = "certify small";
        return cmd_certify_small(ctx);
      }
      if (c_stab->parsed()) {
        ctx.command = "certify stability";
        return cmd_certify_stability(ctx);
      }
      if (c_cal->parsed()) {
        ctx.command = "certify caloric";
        return cmd_certify_caloric(ctx);
      }
      ctx.command = "certify aposteriori";
      return cmd_certify_aposteriori(ctx);
    }
    if (norms->parsed()) {
      ctx.command = "norms";
      return cmd_norms(ctx, snapshot, svals);
    }
    ctx.command = "report";
    return cmd_report(ctx, report_inputs);
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
