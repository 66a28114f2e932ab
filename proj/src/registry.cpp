#include "lattice_flows/registry.hpp"

#include "lattice_flows/lax.hpp"
#include "lattice_flows/transforms.hpp"

#include <cctype>
#include <cmath>

namespace lattice_flows::registry {

namespace {

using systems::LatticeSystem;
using systems::NamedInvariant;

NamedInvariant trace_invariant(lax::LaxKind kind, int order, std::string name) {
  return {std::move(name),
          [kind, order](const State& s) { return lax::trace_invariant(kind, s, order); }};
}

std::string h_name(int k) { return "H" + std::to_string(k); }

void require(bool ok, const std::string& message) {
  if (!ok) throw UnsupportedDimension(message);
}

LatticeSystem km_system(Index n) {
  require(n >= 1, "km needs n >= 1");
  LatticeSystem sys{"km", Chart::volterra_u, n, systems::km_field, true, {}};
  for (int k = 1; k <= n + 1; ++k) sys.invariants.push_back(trace_invariant(lax::LaxKind::km, k, h_name(k)));
  return sys;
}

LatticeSystem bv_system(systems::Family family, Index n) {
  require(n >= systems::bv_min_dimension(family), "bv system below its minimum size");
  std::string id = "bv-";
  id += static_cast<char>(std::tolower(systems::family_letter(family)));
  return {id, Chart::volterra_u, n,
          [family](const State& s) { return systems::bv_field(family, s); }, true, {}};
}

LatticeSystem c_system(systems::Family family, Index r) {
  require(r >= systems::c_min_rank(family), "c system below its minimum size");
  std::string id = "c-";
  id += static_cast<char>(std::tolower(systems::family_letter(family)));
  LatticeSystem sys{id, Chart::c_vars, r,
                    [family](const State& s) { return systems::c_field(family, s); }, false, {}};
  const RealVec k = systems::cartan_data(family, r).k;
  sys.invariants.push_back({"Hlog", [k](const State& s) {
                              Complex h = 0.0;
                              for (Index j = 0; j < s.size(); ++j) h += k(j) * std::log(s[j]);
                              return h;
                            }});
  return sys;
}

LatticeSystem vd_system(Index n) {
  require(n >= 4, "vd needs n >= 4");
  LatticeSystem sys{"vd", Chart::volterra_v, n, systems::vd_field, true, {}};
  for (int k = 2; k <= n - 1; k += 2)
    sys.invariants.push_back(trace_invariant(lax::LaxKind::vd, 2 * k, h_name(k)));
  sys.invariants.push_back({"F", lax::casimir_F});
  sys.invariants.push_back({"h", lax::vd_hamiltonian});
  return sys;
}

void add_ab_invariants(LatticeSystem& sys, Index m, const transforms::Map& to_ab) {
  auto through = [to_ab](systems::ScalarFunction f) -> systems::ScalarFunction {
    if (!to_ab) return f;
    return [to_ab, f](const State& s) { return f(to_ab(s)); };
  };
  for (int k = 1; k <= m; ++k) {
    const int order = 2 * k;
    sys.invariants.push_back(
        {h_name(order), through([order](const State& s) {
           return lax::trace_invariant(lax::LaxKind::ab, s, order);
         })});
  }
  sys.invariants.push_back({"C", through(lax::casimir_C)});
  sys.invariants.push_back({"h2", through(lax::h2_ab)});
}

LatticeSystem ab_system(Index m) {
  require(m >= 1, "ab needs m >= 1");
  LatticeSystem sys{"ab", Chart::flaschka_ab, 2 * m + 1, systems::ab_field, false, {}};
  add_ab_invariants(sys, m, nullptr);
  return sys;
}

LatticeSystem toda_system(Index n, Chart chart) {
  require(n >= 2, "toda needs n >= 2");
  if (chart == Chart::qp) {
    LatticeSystem sys{"toda", Chart::qp, 2 * n,
                      [](const State& s) { return systems::qp_field(systems::Hamiltonian::toda, s); },
                      false, {}};
    sys.invariants.push_back(
        {"H", [](const State& s) { return systems::hamiltonian_eval(systems::Hamiltonian::toda, s); }});
    return sys;
  }
  if (chart != Chart::flaschka_ab) throw ChartMismatch("toda runs in qp or flaschka_ab");
  LatticeSystem sys{"toda", Chart::flaschka_ab, 2 * n - 1, systems::toda_field, false, {}};
  for (int k = 1; k <= n; ++k) sys.invariants.push_back(trace_invariant(lax::LaxKind::toda, k, h_name(k)));
  return sys;
}

LatticeSystem sklyanin_system(Index m, bool full, const systems::SklyaninCouplings& couplings) {
  require(m >= (full ? 1 : 2), "sklyanin needs m >= 2");
  const auto kind = full ? systems::Hamiltonian::sklyanin_full : systems::Hamiltonian::sklyanin;
  LatticeSystem sys{full ? "sklyanin-full" : "sklyanin", Chart::qp, 2 * m,
                    [kind, couplings](const State& s) { return systems::qp_field(kind, s, couplings); },
                    false, {}};
  sys.invariants.push_back(
      {"H", [kind, couplings](const State& s) { return systems::hamiltonian_eval(kind, s, couplings); }});
  if (!full) add_ab_invariants(sys, m, transforms::sklyanin_flaschka);
  return sys;
}

LatticeSystem spectrum_system(const std::optional<rootdata::Spectrum>& spectrum) {
  if (!spectrum) throw UnsupportedDimension("spectrum system needs a spectrum");
  const rootdata::Spectrum spec = *spectrum;
  LatticeSystem sys{"spectrum", Chart::flaschka_ab, 2 * spec.size(),
                    [spec](const State& s) { return systems::spectrum_field(spec, s); }, false, {}};
  const auto kernel = rootdata::null_combination(spec);
  if (!kernel.empty()) {
    const RealVec lambda = kernel.front();
    sys.invariants.push_back(
        {"F1", [lambda](const State& s) { return systems::integrals_f1_f2(s, lambda).f1; }});
    sys.invariants.push_back(
        {"F2", [lambda](const State& s) { return systems::integrals_f1_f2(s, lambda).f2; }});
  }
  return sys;
}

}  // namespace

const std::vector<std::string>& system_ids() {
  static const std::vector<std::string> ids{"km",  "bv-a", "bv-b", "bv-c", "bv-d", "c-a",
                                            "c-b", "c-c",  "c-d",  "vd",   "ab",   "spectrum",
                                            "toda", "sklyanin", "sklyanin-full"};
  return ids;
}

LatticeSystem make_system(std::string_view id, const SystemParams& p) {
  if (id == "km") return km_system(p.n);
  if (id.size() == 4 && id.substr(0, 3) == "bv-")
    return bv_system(systems::family_from_letter(id[3]), p.n);
  if (id.size() == 3 && id.substr(0, 2) == "c-")
    return c_system(systems::family_from_letter(id[2]), p.n);
  if (id == "vd") return vd_system(p.n);
  if (id == "ab") return ab_system(p.m);
  if (id == "spectrum") return spectrum_system(p.spectrum);
  if (id == "toda") return toda_system(p.n, p.chart);
  if (id == "sklyanin") return sklyanin_system(p.m, false, p.couplings);
  if (id == "sklyanin-full") return sklyanin_system(p.m, true, p.couplings);
  throw UnsupportedDimension("unknown system id: " + std::string(id));
}

std::vector<NamedInvariant> select_invariants(const LatticeSystem& system,
                                              const std::vector<std::string>& names) {
  std::vector<NamedInvariant> out;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& inv : system.invariants) {
      if (inv.name == name) {
        out.push_back(inv);
        found = true;
        break;
      }
    }
    if (!found) throw DimensionError("system " + system.id + " has no invariant named " + name);
  }
  return out;
}

}  // namespace lattice_flows::registry
