#include "lattice_flows/suites.hpp"

#include "lattice_flows/lax.hpp"
#include "lattice_flows/poisson.hpp"
#include "lattice_flows/sampling.hpp"
#include "lattice_flows/systems.hpp"
#include "lattice_flows/transforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace lattice_flows::suites {

namespace {

using sampling::Rng;
using StateMaker = std::function<State(Rng&)>;
using Residual = std::function<double(const State&)>;

constexpr double kLaxTol = 1e-10;
constexpr double kJacobiTol = 1e-6;
constexpr double kCasimirTol = 1e-10;
constexpr double kLenardTol = 1e-7;
constexpr double kFlowTol = 1e-8;
constexpr double kTransformTol = 1e-8;
constexpr double kMoserTol = 1e-12;
constexpr double kInvolutionTol = 1e-9;

struct Context {
  const Options& options;
  Rng rng;
  unsigned threads;
  std::vector<Record> records;

  Index count(Index fallback) const { return options.states.value_or(fallback); }

  void measure(std::string structure, std::string check, double tolerance, Index n_states,
               const StateMaker& make, const Residual& residual) {
    std::vector<State> states;
    states.reserve(static_cast<std::size_t>(n_states));
    for (Index i = 0; i < n_states; ++i) states.push_back(make(rng));
    const std::vector<double> values = evaluate_parallel(
        n_states, [&](Index i) { return residual(states[static_cast<std::size_t>(i)]); }, threads);
    double worst = 0.0;
    bool finite = true;
    for (double v : values) {
      if (!std::isfinite(v)) finite = false;
      worst = std::max(worst, v);
    }
    if (!finite) worst = std::numeric_limits<double>::infinity();
    records.push_back({std::move(structure), std::move(check), n_states, worst, tolerance,
                       finite && worst <= tolerance, {}});
  }
};

std::vector<Index> sizes(const std::optional<Index>& chosen, std::vector<Index> defaults) {
  if (chosen) return {*chosen};
  return defaults;
}

std::string sized(std::string_view check, char symbol, Index value) {
  return std::string(check) + "[" + symbol + "=" + std::to_string(value) + "]";
}

bool selected(const std::string& filter, std::string_view name) {
  return filter.empty() || filter == name;
}

// ---------------------------------------------------------------- lax

void lax_suite(Context& ctx) {
  const auto& o = ctx.options;
  const Index states = ctx.count(100);
  bool any = false;
  auto run = [&](lax::LaxKind kind, Index size, char symbol, const StateMaker& make,
                 const systems::Field& field) {
    any = true;
    ctx.measure(std::string(lax::lax_kind_name(kind)), sized("lax_residual", symbol, size), kLaxTol,
                states, make, [kind, field](const State& s) {
                  return lax::lax_residual(lax::build_lax(kind, s), field(s), s);
                });
  };
  if (selected(o.system, "km"))
    for (Index n : sizes(o.n, {2, 3, 4, 5, 6, 7, 8}))
      run(lax::LaxKind::km, n, 'n', [n](Rng& r) { return sampling::random_u(r, n); },
          systems::km_field);
  if (selected(o.system, "toda"))
    for (Index n : sizes(o.n, {2, 3, 4, 5, 6, 7, 8}))
      run(lax::LaxKind::toda, n, 'n', [n](Rng& r) { return sampling::random_toda_ab(r, n); },
          systems::toda_field);
  if (selected(o.system, "vd"))
    for (Index n : sizes(o.n, {5, 7, 9}))
      run(lax::LaxKind::vd, n, 'n', [n](Rng& r) { return sampling::random_v(r, n); },
          systems::vd_field);
  if (selected(o.system, "ab"))
    for (Index m : sizes(o.m, {2, 3, 4}))
      run(lax::LaxKind::ab, m, 'm', [m](Rng& r) { return sampling::random_ab(r, m, true); },
          systems::ab_field);
  if (!any) throw UnsupportedDimension("lax suite: unknown system " + o.system);
}

// ---------------------------------------------------------------- Poisson suites

struct StructureCase {
  poisson::StructureName name;
  char symbol;
  Index size;
  StateMaker make;
};

std::vector<StructureCase> structure_cases(const Options& o, bool include_c_bracket) {
  using poisson::StructureName;
  std::vector<StructureCase> cases;
  auto add_v = [&](StructureName name) {
    for (Index n : sizes(o.n, {5, 7, 9}))
      cases.push_back({name, 'n', n, [n](Rng& r) { return sampling::random_v(r, n); }});
  };
  auto add_ab = [&](StructureName name) {
    for (Index m : sizes(o.m, {2, 3, 4}))
      cases.push_back({name, 'm', m, [m](Rng& r) { return sampling::random_ab(r, m); }});
  };
  const std::string& f = o.structure;
  if (include_c_bracket && selected(f, "c-bracket"))
    for (Index r : sizes(o.n, {5, 6, 8}))
      cases.push_back({StructureName::c_bracket, 'r', r,
                       [r](Rng& g) { return sampling::random_c(g, r); }});
  if (selected(f, "pi1-v")) add_v(StructureName::pi1_v);
  if (selected(f, "pi3-v")) add_v(StructureName::pi3_v);
  if (selected(f, "pi1-ab")) add_ab(StructureName::pi1_ab);
  if (selected(f, "pi3-ab")) add_ab(StructureName::pi3_ab);
  if (cases.empty()) throw UnsupportedDimension("no structure named " + f);
  return cases;
}

void jacobi_suite(Context& ctx) {
  for (const auto& c : structure_cases(ctx.options, true)) {
    const auto name = c.name;
    ctx.measure(std::string(poisson::structure_name(name)), sized("jacobi", c.symbol, c.size),
                kJacobiTol, ctx.count(50), c.make,
                [name](const State& s) { return poisson::jacobi_residual(name, s); });
  }
}

void compat_suite(Context& ctx) {
  using poisson::StructureName;
  const auto& o = ctx.options;
  const std::vector<double> lambdas = o.lambdas.empty() ? std::vector<double>{1.0, 2.5} : o.lambdas;
  auto run = [&](StructureName first, StructureName second, const std::string& label, char symbol,
                 Index size, const StateMaker& make) {
    for (double lambda : lambdas) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ",lambda=%g]", lambda);
      std::string check = sized("compatibility", symbol, size);
      check.pop_back();
      check += buf;
      ctx.measure(label, check, kJacobiTol, ctx.count(50), make, [=](const State& s) {
        return poisson::compatibility_residual(first, second, lambda, s);
      });
    }
  };
  if (selected(o.chart, "v"))
    for (Index n : sizes(o.n, {5, 7, 9}))
      run(StructureName::pi1_v, StructureName::pi3_v, "pi1-v+pi3-v", 'n', n,
          [n](Rng& r) { return sampling::random_v(r, n); });
  if (selected(o.chart, "ab"))
    for (Index m : sizes(o.m, {2, 3, 4}))
      run(StructureName::pi1_ab, StructureName::pi3_ab, "pi1-ab+pi3-ab", 'm', m,
          [m](Rng& r) { return sampling::random_ab(r, m); });
}

void casimir_suite(Context& ctx) {
  using poisson::StructureName;
  const auto& o = ctx.options;
  if (selected(o.structure, "pi1-v"))
    for (Index n : sizes(o.n, {5, 7, 9}))
      ctx.measure("pi1-v", sized("casimir_F", 'n', n), kCasimirTol, ctx.count(50),
                  [n](Rng& r) { return sampling::random_v(r, n); },
                  [](const State& s) {
                    return poisson::casimir_residual(StructureName::pi1_v, lax::casimir_F_gradient, s);
                  });
  if (selected(o.structure, "pi1-ab"))
    for (Index m : sizes(o.m, {2, 3, 4}))
      ctx.measure("pi1-ab", sized("casimir_C", 'm', m), kCasimirTol, ctx.count(50),
                  [m](Rng& r) { return sampling::random_ab(r, m); },
                  [](const State& s) {
                    return poisson::casimir_residual(StructureName::pi1_ab, lax::casimir_C_gradient, s);
                  });
}

void lenard_suite(Context& ctx) {
  using poisson::StructureName;
  const auto& o = ctx.options;
  if (selected(o.chart, "v")) {
    for (Index n : sizes(o.n, {5, 7, 9})) {
      const StateMaker make = [n](Rng& r) { return sampling::random_v(r, n); };
      ctx.measure("pi3-v,pi1-v", sized("lenard", 'n', n), kLenardTol, ctx.count(50), make,
                  [](const State& s) { return poisson::lenard_residual(s); });
      ctx.measure("pi1-v", sized("hamiltonian_flow", 'n', n), kFlowTol, ctx.count(50), make,
                  [](const State& s) {
                    return poisson::hamiltonian_flow_check(StructureName::pi1_v,
                                                           lax::vd_hamiltonian_gradient,
                                                           systems::vd_field, s);
                  });
    }
  }
  if (selected(o.chart, "ab")) {
    for (Index m : sizes(o.m, {2, 3, 4})) {
      const StateMaker make = [m](Rng& r) { return sampling::random_ab(r, m); };
      ctx.measure("pi3-ab,pi1-ab", sized("lenard", 'm', m), kLenardTol, ctx.count(50), make,
                  [](const State& s) { return poisson::lenard_residual(s); });
      ctx.measure("pi1-ab", sized("hamiltonian_flow", 'm', m), kFlowTol, ctx.count(50), make,
                  [](const State& s) {
                    return poisson::hamiltonian_flow_check(StructureName::pi1_ab, lax::h2_ab_gradient,
                                                           systems::ab_field, s);
                  });
    }
  }
}

void involution_suite(Context& ctx) {
  const auto& o = ctx.options;
  for (Index m : sizes(o.m, {3, 4})) {
    for (int k : {4, 6}) {
      if (k > 2 * m) continue;
      const std::string check = "{H2,H" + std::to_string(k) + "}[m=" + std::to_string(m) + "]";
      ctx.measure("pi1-ab", check, kInvolutionTol, ctx.count(50),
                  [m](Rng& r) { return sampling::random_ab(r, m); },
                  [k](const State& s) {
                    const Vec g2 = lax::trace_gradient(lax::LaxKind::ab, s, 2);
                    const Vec gk = lax::trace_gradient(lax::LaxKind::ab, s, k);
                    const Mat P = poisson::poisson_matrix(poisson::StructureName::pi1_ab, s);
                    return std::abs((g2.transpose() * P * gk).value());
                  });
    }
  }
}

// ---------------------------------------------------------------- transforms

Mat henon_jacobi_matrix(const State& toda) {
  const Index nb = toda.size() - toda.split();
  Mat T = Mat::Zero(nb, nb);
  for (Index i = 0; i < nb; ++i) T(i, i) = toda[toda.split() + i];
  for (Index i = 0; i + 1 < nb; ++i) {
    T(i, i + 1) = -toda[i];
    T(i + 1, i) = -toda[i];
  }
  return T;
}

double relative(const Mat& got, const Mat& want) {
  return (got - want).norm() / std::max(want.norm(), 1.0);
}

void transform_suite(Context& ctx) {
  using transforms::pushforward_residual;
  const auto& o = ctx.options;
  const Index states = ctx.count(100);
  bool any = false;
  auto conj = [&](const std::string& name, const std::string& check, const StateMaker& make,
                  const transforms::Map& map, const systems::Field& source,
                  const systems::Field& target) {
    any = true;
    ctx.measure(name, check, kTransformTol, states, make,
                [=](const State& s) { return pushforward_residual(map, source, target, s); });
  };

  if (selected(o.map, "henon"))
    for (Index n : sizes(o.n, {4, 5, 6, 7}))
      conj("henon", sized("pushforward km->toda", 'n', n),
           [n](Rng& r) { return sampling::random_u(r, n); }, transforms::henon_map,
           systems::km_field, systems::toda_field);

  if (selected(o.map, "moser")) {
    for (Index n : sizes(o.n, {4, 5, 6, 7})) {
      any = true;
      ctx.measure("moser", sized("odd_submatrix_vs_henon_jacobi", 'n', n), kMoserTol, states,
                  [n](Rng& r) { return sampling::random_u(r, n); }, [](const State& u) {
                    const Mat R = transforms::moser_reduce(lax::build_lax(lax::LaxKind::km, u).L);
                    return (R - henon_jacobi_matrix(transforms::henon_map(u))).cwiseAbs().maxCoeff();
                  });
    }
  }

  if (selected(o.map, "d-map")) {
    for (Index m : sizes(o.m, {2, 3, 4})) {
      const Index n = 2 * m + 1;
      const StateMaker make = [n](Rng& r) { return sampling::random_v(r, n); };
      conj("d-map", sized("pushforward vd->ab", 'm', m), make, transforms::d_transform,
           systems::vd_field, systems::ab_field);
      ctx.measure("d-map", sized("pi1-v image vs pi1-ab (relative)", 'm', m), kTransformTol, states,
                  make, [](const State& v) {
                    const Mat J = transforms::d_transform_jacobian(v);
                    const Mat img = J * poisson::poisson_matrix(poisson::StructureName::pi1_v, v) * J.transpose();
                    return relative(poisson::kPi1AbImageScale * img,
                                    poisson::poisson_matrix(poisson::StructureName::pi1_ab,
                                                            transforms::d_transform(v)));
                  });
      ctx.measure("d-map", sized("pi3-v image vs pi3-ab (relative)", 'm', m), kTransformTol, states,
                  make, [](const State& v) {
                    const Mat J = transforms::d_transform_jacobian(v);
                    const Mat img = J * poisson::poisson_matrix(poisson::StructureName::pi3_v, v) * J.transpose();
                    return relative(img, poisson::poisson_matrix(poisson::StructureName::pi3_ab,
                                                                 transforms::d_transform(v)));
                  });
    }
  }

  if (selected(o.map, "flaschka-sklyanin"))
    for (Index m : sizes(o.m, {2, 3, 4}))
      conj("flaschka-sklyanin", sized("pushforward sklyanin->ab", 'm', m),
           [m](Rng& r) { return sampling::random_qp(r, m); }, transforms::sklyanin_flaschka,
           [](const State& s) { return systems::qp_field(systems::Hamiltonian::sklyanin, s); },
           systems::ab_field);

  if (selected(o.map, "flaschka-toda")) {
    for (Index n : sizes(o.n, {3, 4, 5})) {
      const rootdata::Spectrum spec = rootdata::a_type_spectrum(n);
      conj("flaschka-toda", sized("pushforward toda(qp)->toda(ab)", 'n', n),
           [n](Rng& r) { return sampling::random_qp(r, n); },
           [spec](const State& s) { return transforms::toda_flaschka(s, spec); },
           [](const State& s) { return systems::qp_field(systems::Hamiltonian::toda, s); },
           systems::toda_field);
    }
  }

  if (selected(o.map, "flaschka-general")) {
    const rootdata::Spectrum spec = o.spectrum ? *o.spectrum : rootdata::sklyanin_spectrum(o.n.value_or(3));
    const Index n = spec.dimension();
    conj("flaschka-general", sized("pushforward exponential->spectrum", 'n', n),
         [n](Rng& r) { return sampling::random_qp(r, n); },
         [spec](const State& s) { return transforms::generalized_flaschka(s, spec); },
         [spec](const State& s) { return systems::exponential_qp_field(spec, s); },
         [spec](const State& s) { return systems::spectrum_field(spec, s); });
  }

  if (selected(o.map, "c-to-v")) {
    for (Index n : sizes(o.n, {4, 5, 7})) {
      const StateMaker make = [n](Rng& r) { return sampling::random_c(r, n + 1); };
      conj("c-to-v", sized("pushforward c-d->vd", 'n', n), make, transforms::c_to_v,
           [](const State& c) { return systems::c_field(systems::Family::D, c); },
           systems::vd_field);
      ctx.measure("c-to-v", sized("c-bracket image vs pi3-v (relative)", 'n', n), kTransformTol,
                  states, make, [](const State& c) {
                    const Mat img = transforms::pushforward_tensor(
                        transforms::c_to_v, poisson::poisson_matrix(poisson::StructureName::c_bracket, c), c);
                    return relative(img, poisson::kCBracketToPi3Scale *
                                             poisson::poisson_matrix(poisson::StructureName::pi3_v,
                                                                     transforms::c_to_v(c)));
                  });
    }
  }
  if (!any) throw UnsupportedDimension("transform suite: unknown map " + o.map);
}

// ---------------------------------------------------------------- spectrum

double theorem1_residual(const rootdata::IntegrabilityReport& report) {
  double worst = 0.0;
  for (const auto& r : report.ratios) {
    const double d = r.ratio > 0.0 ? r.ratio : std::abs(r.ratio - std::round(r.ratio));
    worst = std::max(worst, d);
  }
  return worst;
}

void spectrum_suite(Context& ctx) {
  auto check = [&](const rootdata::Spectrum& spec, std::string name) {
    const auto report = rootdata::kozlov_treshchev_check(spec, rootdata::kIntegerTolerance);
    ctx.records.push_back({std::move(name), "theorem1[n=" + std::to_string(spec.dimension()) + "]", 1,
                           theorem1_residual(report), rootdata::kIntegerTolerance, report.pass,
                           report.ratios});
  };
  if (ctx.options.spectrum) {
    check(*ctx.options.spectrum, "spectrum");
    return;
  }
  for (Index n : sizes(ctx.options.n, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}))
    check(rootdata::sklyanin_spectrum(n), "sklyanin");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lax",       "jacobi",     "compat",
                                              "casimir",   "lenard",     "transform",
                                              "involution", "spectrum"};
  return names;
}

std::vector<Record> run_suite(std::string_view suite, const Options& options) {
  Context ctx{options, Rng(options.seed), options.threads ? options.threads : thread_limit(), {}};
  if (suite == "lax") lax_suite(ctx);
  else if (suite == "jacobi") jacobi_suite(ctx);
  else if (suite == "compat") compat_suite(ctx);
  else if (suite == "casimir") casimir_suite(ctx);
  else if (suite == "lenard") lenard_suite(ctx);
  else if (suite == "transform") transform_suite(ctx);
  else if (suite == "involution") involution_suite(ctx);
  else if (suite == "spectrum") spectrum_suite(ctx);
  else throw UnsupportedDimension("unknown suite: " + std::string(suite));
  return std::move(ctx.records);
}

std::string report_json(std::string_view suite, const Options& options,
                        const std::vector<Record>& records) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["rng"] = std::string(sampling::kGeneratorName);
  doc["seed"] = options.seed;
  doc["suite"] = std::string(suite);
  auto& list = doc["records"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["structure"] = r.structure;
    rec["check"] = r.check;
    rec["n_states"] = r.n_states;
    rec["max_residual"] = r.max_residual;
    rec["tolerance"] = r.tolerance;
    rec["pass"] = r.pass;
    if (!r.ratios.empty()) {
      auto& table = rec["ratios"] = nlohmann::ordered_json::array();
      for (const auto& v : r.ratios) table.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"ratio", v.ratio}});
    }
    all = all && r.pass;
    list.push_back(std::move(rec));
  }
  doc["pass"] = all && !records.empty();
  return doc.dump(2);
}

unsigned thread_limit() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LATTICE_FLOWS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<double> evaluate_parallel(Index count, const std::function<double(Index)>& residual,
                                      unsigned threads) {
  std::vector<double> out(static_cast<std::size_t>(count), 0.0);
  const unsigned workers = static_cast<unsigned>(
      std::clamp<Index>(count, 1, static_cast<Index>(std::max(1u, threads))));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = residual(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Index i = w; i < count; i += workers) {
        try {
          out[static_cast<std::size_t>(i)] = residual(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace lattice_flows::suites
