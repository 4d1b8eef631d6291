#include "cli.hpp"

#include "table.hpp"

#include "pairzero/boson_bcs.hpp"
#include "pairzero/collapse_scan.hpp"
#include "pairzero/errors.hpp"
#include "pairzero/pairon_map.hpp"
#include "pairzero/phase_space.hpp"
#include "pairzero/spin_core.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace pairzero::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kMapTolerance = 1e-9;

struct RunConfig {
  std::string command;
  // LMG
  double j = 10;
  std::optional<double> gx, gy;
  double eps = 1.0;
  double line_sum = 10.0;
  bool diagonal = false;
  double from = 0.05, to = 9.95;
  int steps = 200;
  int state = 0;
  bool vectors = false;
  // boson model
  std::vector<double> levels;
  double gamma = 0.0;
  int n = 0;
  int slice = 1;
  int samples = 100;
  // shared
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  int threads = 1;
  double cluster_radius = kDefaultClusterRadius;
  double pairing_tol = 1e-6;
  double threshold = 5e-2;
};

struct Output {
  Table table;
  json config = json::object();
};

std::string join_flags(const std::vector<std::string>& f) {
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : "|") + x;
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

ModelParams point_params(const RunConfig& c) {
  if (!c.gx || !c.gy) throw std::invalid_argument("--gx and --gy are required");
  return ModelParams::from_control(c.j, *c.gx, *c.gy, c.eps);
}

ExtractOptions extract_options(const RunConfig& c) {
  if (!(c.cluster_radius > 0.0) || !(c.pairing_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  ExtractOptions o;
  o.cluster_radius = c.cluster_radius;
  o.pairing_tol = c.pairing_tol;
  return o;
}

void echo_point(const RunConfig& c, json& cfg) {
  cfg["j"] = c.j;
  cfg["gx"] = *c.gx;
  cfg["gy"] = *c.gy;
  cfg["eps"] = c.eps;
}

std::size_t nearest_cluster(const ZeroSet& zs, const SpherePoint& p) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    const double d = chordal_distance(zs.zeros[i].point, p);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

// round trip zeta^2 -> e -> zeta^2 for every emitted pair
void check_zero_pairon_map(const PaironExtraction& ex) {
  const double t = ex.diagnostics.t;
  for (std::size_t a = 0; a < ex.pairons.e.size(); ++a) {
    const SpherePoint w = pair_square_from_pairon(ex.pairons.e[a], t);
    const SpherePoint w0 = ex.pairing.representatives[a].squared();
    const double d = chordal_distance(w, w0);
    if (!(d <= kMapTolerance)) {
      std::ostringstream msg;
      msg << "zero-pairon map check failed for alpha " << a + 1 << " (chordal mismatch " << d << ")";
      throw InconsistencyError(msg.str());
    }
  }
}

const Eigenpair& select_level(const Spectrum& sp, int state) {
  if (state < 0 || state >= static_cast<int>(sp.levels.size()))
    throw std::invalid_argument("state index " + std::to_string(state) + " out of range [0, " +
                                std::to_string(sp.levels.size()) + ")");
  const Eigenpair& lv = sp.levels[static_cast<std::size_t>(state)];
  if (lv.degenerate)
    throw DegenerateStateError("eigenstate " + std::to_string(state) + " is degenerate within its parity sector");
  return lv;
}

// ---------------------------------------------------------------------------
// lmg

void lmg_spectrum(const RunConfig& c, Output& o) {
  const ModelParams p = point_params(c);
  echo_point(c, o.config);
  o.config["vectors"] = c.vectors;
  const Spectrum sp = diagonalize(build_hamiltonian(p));
  auto& t = o.table;
  t.columns = {"state_index", "energy", "parity", "sector_index", "flags"};
  if (c.vectors) t.columns.insert(t.columns.end(), {"m", "re_c", "im_c"});
  for (std::size_t i = 0; i < sp.levels.size(); ++i) {
    const auto& lv = sp.levels[i];
    std::vector<std::string> f;
    if (lv.degenerate) f.push_back("degenerate");
    if (lv.cross_parity_degenerate) f.push_back("cross_parity_degenerate");
    std::vector<Cell> row{static_cast<long long>(i), lv.energy, std::string(to_string(lv.parity)),
                          static_cast<long long>(lv.sector_index), join_flags(f)};
    if (!c.vectors) {
      t.add(row);
      continue;
    }
    const int j = lv.state.j();
    for (int m = -j; m <= j; ++m) {
      auto r = row;
      const Complex z = lv.state.coeff(m);
      r.insert(r.end(), {static_cast<long long>(m), z.real(), z.imag()});
      t.add(std::move(r));
    }
  }
}

void lmg_zeros(const RunConfig& c, Output& o) {
  const ModelParams p = point_params(c);
  echo_point(c, o.config);
  o.config["state"] = c.state;
  const ExtractOptions opts = extract_options(c);
  const Spectrum sp = diagonalize(build_hamiltonian(p));
  const Eigenpair& lv = select_level(sp, c.state);
  const ZeroSet zs = cluster_zeros(poly_roots(majorana_poly(lv.state), opts.roots), opts.cluster_radius);
  const ZeroPairing pr = pair_zeros(zs, opts.pairing_tol);

  // alpha of a cluster: first pair with a member in it; 0 if it only holds seniority zeros
  std::vector<int> alpha(zs.zeros.size(), 0), pair_units(zs.zeros.size(), 0);
  for (std::size_t a = pr.representatives.size(); a-- > 0;)
    for (const auto* q : {&pr.representatives[a], &pr.partners[a]}) {
      const std::size_t k = nearest_cluster(zs, *q);
      alpha[k] = static_cast<int>(a) + 1;
      ++pair_units[k];
    }
  struct Row {
    int alpha;
    const Zero* z;
    bool seniority;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < zs.zeros.size(); ++k)
    rows.push_back({alpha[k], &zs.zeros[k], zs.zeros[k].multiplicity > pair_units[k]});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.z->point.theta() != b.z->point.theta()) return a.z->point.theta() < b.z->point.theta();
    return a.z->point.phi() < b.z->point.phi();
  });

  auto& t = o.table;
  t.columns = {"gx", "gy", "state_index", "energy", "alpha", "theta", "phi", "re_zeta", "im_zeta", "multiplicity", "flags"};
  for (const auto& r : rows) {
    std::vector<std::string> f;
    const SpherePoint& z = r.z->point;
    if (z.is_pole()) f.push_back("pole");
    if (r.seniority) f.push_back("seniority");
    if (lv.cross_parity_degenerate) f.push_back("cross_parity_degenerate");
    Cell re, im;
    if (!z.is_infinite()) {
      re = z.value().real();
      im = z.value().imag();
    }
    t.add({*c.gx, *c.gy, static_cast<long long>(c.state), lv.energy, static_cast<long long>(r.alpha), z.theta(),
           z.phi(), re, im, static_cast<long long>(r.z->multiplicity), join_flags(f)});
  }
}

std::vector<std::string> pair_flags(const PaironExtraction& ex, const SpherePoint& z) {
  std::vector<std::string> f;
  if (z.is_pole()) f.push_back("pole");
  if (ex.diagnostics.sign_unverified) f.push_back("sign_unverified");
  if (ex.diagnostics.cross_parity_degenerate) f.push_back("cross_parity_degenerate");
  return f;
}

void lmg_pairons(const RunConfig& c, Output& o) {
  const ModelParams p = point_params(c);
  echo_point(c, o.config);
  o.config["state"] = c.state;
  const auto ex = extract_pairons(p, c.state, extract_options(c));
  check_zero_pairon_map(ex);
  std::vector<std::size_t> order(ex.pairons.e.size());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex x = ex.pairons.e[a], y = ex.pairons.e[b];
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  auto& t = o.table;
  t.columns = {"gx", "gy", "t", "state_index", "energy", "alpha", "re_e", "im_e", "theta", "phi", "flags"};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t a = order[i];
    const SpherePoint& z = ex.pairing.representatives[a];
    t.add({*c.gx, *c.gy, ex.diagnostics.t, static_cast<long long>(c.state), ex.diagnostics.energy,
           static_cast<long long>(i + 1), ex.pairons.e[a].real(), ex.pairons.e[a].imag(), z.theta(), z.phi(),
           join_flags(pair_flags(ex, z))});
  }
}

TrajectorySpec trajectory(const RunConfig& c) {
  TrajectorySpec s;
  s.kind = c.diagonal ? LineKind::diagonal : LineKind::sum;
  s.line_sum = c.line_sum;
  s.from = c.from;
  s.to = c.to;
  s.steps = c.steps;
  s.j = checked_spin(c.j);
  s.state_index = c.state;
  s.epsilon = c.eps;
  s.threads = c.threads;
  s.extract = extract_options(c);
  return s;
}

void echo_trajectory(const RunConfig& c, json& cfg) {
  cfg["j"] = c.j;
  cfg["line"] = c.diagonal ? "diagonal" : "sum";
  if (!c.diagonal) cfg["line_sum"] = c.line_sum;
  cfg["from"] = c.from;
  cfg["to"] = c.to;
  cfg["steps"] = c.steps;
  cfg["state"] = c.state;
  cfg["eps"] = c.eps;
}

Table scan_table(const ScanTable& st, std::ostream& err) {
  Table t;
  t.columns = {"gx", "gy", "t", "state_index", "energy", "alpha", "re_e", "im_e", "theta", "phi",
               "multiplicity", "branch_id", "flags"};
  const long long state = st.spec.state_index;
  for (const auto& s : st.samples) {
    if (!s.extraction) {
      err << "skipped gx=" << format_double(s.gamma_x) << ": " << s.skipped.value_or("no data") << '\n';
      t.add({s.gamma_x, s.gamma_y, {}, state, {}, {}, {}, {}, {}, {}, {}, {}, std::string("skipped")});
      continue;
    }
    const auto& ex = *s.extraction;
    check_zero_pairon_map(ex);
    const double energy = ex.diagnostics.energy;
    for (std::size_t a = 0; a < ex.pairons.e.size(); ++a) {
      const SpherePoint& z = s.branch_zero[a];
      const int mult = ex.zeros.zeros[nearest_cluster(ex.zeros, z)].multiplicity;
      t.add({s.gamma_x, s.gamma_y, ex.diagnostics.t, state, energy, static_cast<long long>(a + 1),
             ex.pairons.e[a].real(), ex.pairons.e[a].imag(), z.theta(), z.phi(), static_cast<long long>(mult),
             static_cast<long long>(s.branch_of[a]), join_flags(pair_flags(ex, z))});
    }
    if (ex.pairons.nu == 1) {
      // the unpaired zeros at the two poles
      for (const SpherePoint& z : {SpherePoint::finite(0.0), SpherePoint::infinity()}) {
        const int mult = ex.zeros.zeros[nearest_cluster(ex.zeros, z)].multiplicity;
        t.add({s.gamma_x, s.gamma_y, ex.diagnostics.t, state, energy, 0LL, {}, {}, z.theta(), z.phi(),
               static_cast<long long>(mult), {}, std::string("pole|seniority")});
      }
    }
  }
  return t;
}

void lmg_scan(const RunConfig& c, Output& o, std::ostream& err) {
  echo_trajectory(c, o.config);
  o.table = scan_table(scan_trajectory(trajectory(c)), err);
}

void lmg_collapse(const RunConfig& c, Output& o, std::ostream& err) {
  if (c.diagonal) throw std::invalid_argument("collapse needs a gamma_x + gamma_y = c line");
  if (!(c.threshold > 0.0)) throw std::invalid_argument("--threshold must be positive");
  echo_trajectory(c, o.config);
  o.config["threshold"] = c.threshold;
  const TrajectorySpec spec = trajectory(c);
  const ScanTable st = scan_trajectory(spec);
  for (const auto& s : st.samples)
    if (s.skipped) err << "skipped gx=" << format_double(s.gamma_x) << ": " << *s.skipped << '\n';
  const auto refiner = [&](double gx) {
    return dispersion_at(ModelParams::from_control(spec.j, gx, spec.gamma_y(gx), spec.epsilon), spec.state_index);
  };
  const auto found = detect_collapses(st, c.threshold, refiner);
  const auto analytic = collapse_points(spec.j, c.line_sum);

  auto& t = o.table;
  t.columns = {"k", "branch", "gx_analytic", "gx_detected", "delta", "dispersion", "tolerance", "detected_ok",
               "expected_pattern", "zero_pattern", "pairon_pattern", "pattern_ok", "flags"};
  std::vector<char> claimed(found.size(), 0);
  for (const auto& cp : analytic) {
    const CollapseVerification v = verify_collapse(spec.j, c.line_sum, cp, spec.state_index, spec.epsilon);
    const double tol = cp.k <= 3 ? 1e-3 : 5e-2;
    Cell det, delta, disp, ok;
    std::vector<std::string> f;
    if (cp.k == 0) {
      // a single pair of multiplicity two is the generic pattern: nothing coalesces
      f.push_back("no_coalescence");
    } else if (cp.gamma_x < c.from || cp.gamma_x > c.to) {
      f.push_back("outside_scan");
    } else {
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < found.size(); ++i)
        if (!best || std::abs(found[i].gamma_x - cp.gamma_x) < std::abs(found[*best].gamma_x - cp.gamma_x)) best = i;
      if (best && std::abs(found[*best].gamma_x - cp.gamma_x) <= 5e-2) {
        claimed[*best] = 1;
        det = found[*best].gamma_x;
        delta = found[*best].gamma_x - cp.gamma_x;
        disp = found[*best].dispersion;
        ok = std::string(std::abs(found[*best].gamma_x - cp.gamma_x) <= tol ? "true" : "false");
      } else {
        ok = std::string("false");
        f.push_back("not_detected");
      }
    }
    t.add({static_cast<long long>(cp.k), static_cast<long long>(cp.branch), cp.gamma_x, det, delta, disp, tol, ok,
           join_ints(v.expected), join_ints(v.zero_pattern), join_ints(v.pairon_pattern),
           std::string(v.ok ? "true" : "false"), join_flags(f)});
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    if (!claimed[i])
      t.add({{}, {}, {}, found[i].gamma_x, {}, found[i].dispersion, {}, {}, {}, {}, {}, {}, std::string("extra")});
}

void lmg_crossings(const RunConfig& c, Output& o) {
  o.config["j"] = c.j;
  o.config["eps"] = c.eps;
  const int j = checked_spin(c.j);
  auto& t = o.table;
  t.columns = {"k", "gx", "gy", "m", "m_prime", "gap", "pair_gap", "h_norm", "verified"};
  for (const auto& cp : crossing_points(j)) {
    const CrossingCheck r = verify_crossing(j, cp, c.eps);
    t.add({static_cast<long long>(cp.k), cp.gamma_x, cp.gamma_x, static_cast<long long>(cp.m),
           static_cast<long long>(cp.m_prime), r.gap, r.pair_gap, r.h_norm, std::string(r.ok ? "true" : "false")});
  }
}

// ---------------------------------------------------------------------------
// boson model

BosonModel boson_model(const RunConfig& c, json& cfg) {
  if (c.levels.size() < 2) throw std::invalid_argument("--levels needs at least two comma-separated energies");
  BosonModel m;
  m.L = static_cast<int>(c.levels.size()) - 1;
  m.levels = c.levels;
  m.gamma = c.gamma;
  m.N = c.n;
  m.validate();
  cfg["levels"] = c.levels;
  cfg["gamma"] = c.gamma;
  cfg["n"] = c.n;
  return m;
}

std::vector<std::string> nu_columns(int L) {
  std::vector<std::string> v;
  for (int l = 0; l <= L; ++l) v.push_back("nu_" + std::to_string(l));
  return v;
}

void append_nu(std::vector<Cell>& row, const std::vector<int>& nu) {
  for (int x : nu) row.emplace_back(static_cast<long long>(x));
}

void bcs_spectrum(const RunConfig& c, Output& o) {
  const BosonModel m = boson_model(c, o.config);
  const BosonSpectrum sp = diagonalize_bcs(m);
  auto& t = o.table;
  t.columns = {"state_index", "energy"};
  for (const auto& s : nu_columns(m.L)) t.columns.push_back(s);
  t.columns.push_back("flags");
  for (std::size_t i = 0; i < sp.levels.size(); ++i) {
    const auto& lv = sp.levels[i];
    std::vector<std::string> f;
    if (lv.degenerate) f.push_back("degenerate");
    if (lv.cross_block_degenerate) f.push_back("cross_block_degenerate");
    std::vector<Cell> row{static_cast<long long>(i), lv.energy};
    append_nu(row, lv.state.nu);
    row.emplace_back(join_flags(f));
    t.add(std::move(row));
  }
}

void bcs_pairons(const RunConfig& c, Output& o) {
  const BosonModel m = boson_model(c, o.config);
  o.config["state"] = c.state;
  o.config["slice"] = c.slice;
  const BosonExtraction ex = extract_boson_pairons(m, c.state, c.slice);
  const double sum_rule = std::abs(boson_energy(ex.pairons, m) - ex.energy);
  auto& t = o.table;
  t.columns = {"state_index", "energy", "alpha", "re_e", "im_e"};
  for (const auto& s : nu_columns(m.L)) t.columns.push_back(s);
  t.columns.insert(t.columns.end(), {"sum_rule_error", "flags"});
  for (std::size_t a = 0; a < ex.pairons.e.size(); ++a) {
    const Complex e = ex.pairons.e[a];
    std::vector<std::string> f;
    for (double lvl : m.levels)
      if (e == Complex(2.0 * lvl)) f.push_back("pole");
    std::vector<Cell> row{static_cast<long long>(c.state), ex.energy, static_cast<long long>(a + 1), e.real(), e.imag()};
    append_nu(row, ex.pairons.nu);
    row.emplace_back(sum_rule);
    row.emplace_back(join_flags(f));
    t.add(std::move(row));
  }
}

void bcs_ellipsoid(const RunConfig& c, Output& o) {
  const BosonModel m = boson_model(c, o.config);
  if (m.L < 2) throw std::invalid_argument("ellipsoid needs at least three levels");
  if (c.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  o.config["state"] = c.state;
  o.config["slice"] = c.slice;
  o.config["samples"] = c.samples;
  const BosonSpectrum sp = diagonalize_bcs(m);
  const BosonExtraction ex = extract_boson_pairons(m, sp, c.state, c.slice);
  const BosonState& state = sp.levels[static_cast<std::size_t>(c.state)].state;
  auto& t = o.table;
  t.columns = {"state_index", "alpha", "re_e", "im_e"};
  for (int l = 1; l <= m.L; ++l) {
    t.columns.push_back("re_xi2_" + std::to_string(l));
    t.columns.push_back("im_xi2_" + std::to_string(l));
  }
  t.columns.insert(t.columns.end(), {"points", "max_relative", "ok"});
  for (std::size_t a = 0; a < ex.pairons.e.size(); ++a) {
    BosonPaironSet one{ex.pairons.nu, {ex.pairons.e[a]}};
    // one stream per pairon, so the rows do not depend on each other
    const EllipsoidReport rep = verify_ellipsoid(one, state, m, c.samples, c.seed + a);
    std::vector<Cell> row{static_cast<long long>(c.state), static_cast<long long>(a + 1), ex.pairons.e[a].real(),
                          ex.pairons.e[a].imag()};
    for (const auto& x : one.axes_squared(m, 0)) {
      row.emplace_back(x.real());
      row.emplace_back(x.imag());
    }
    row.insert(row.end(), {static_cast<long long>(rep.points), rep.max_relative, std::string(rep.ok ? "true" : "false")});
    t.add(std::move(row));
  }
}

// ---------------------------------------------------------------------------

void add_common(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output file (default: standard output)");
  app.add_option("--threads", c.threads, "worker threads for sweeps")
      ->envname(kThreadsEnv)
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--state", c.state, "eigenstate index, ascending energy")->check(CLI::NonNegativeNumber);
  app.add_option("--cluster-radius", c.cluster_radius, "chordal radius for merging zeros");
  app.add_option("--pairing-tol", c.pairing_tol, "chordal tolerance for matching zeta with -zeta");
}

int emit(const RunConfig& c, const char* tool, const Output& o, std::ostream& out) {
  json meta;
  meta["tool"] = tool;
  meta["version"] = kToolVersion;
  meta["command"] = c.command;
  meta["config"] = o.config;
  meta["seed"] = c.seed;
  auto write = [&](std::ostream& s) {
    if (c.format == "json")
      write_json(o.table, meta, s);
    else
      write_csv(o.table, s);
  };
  if (c.out.empty()) {
    write(out);
    return kSuccess;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + c.out);
  write(f);
  if (!f) throw std::runtime_error("writing " + c.out + " failed");
  return kSuccess;
}

int run(CLI::App& app, RunConfig& c, const char* tool, const std::vector<std::string>& args,
        const std::function<void(Output&)>& dispatch, std::ostream& out, std::ostream& err) {
  std::vector<std::string> argv_s{tool};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_s) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kSuccess : kUsage;
  }
  try {
    Output o;
    dispatch(o);
    return emit(c, tool, o, out);
  } catch (const std::invalid_argument& e) {  // includes SingularPointError
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace

int run_lmg(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Lipkin-Meshkov-Glick model: spectra, Husimi zeros and pairing energies", "lmg"};
  app.require_subcommand(1, 1);
  add_common(app, c);
  app.add_option("--j", c.j, "quasispin j (integer >= 1)");
  app.add_option("--gx", c.gx, "gamma_x");
  app.add_option("--gy", c.gy, "gamma_y");
  app.add_option("--eps", c.eps, "single-particle splitting epsilon");
  app.add_option("--line-sum", c.line_sum, "c of the line gamma_x + gamma_y = c");
  app.add_flag("--diagonal", c.diagonal, "scan along gamma_x = gamma_y instead");
  app.add_option("--from", c.from, "first gamma_x of the scan");
  app.add_option("--to", c.to, "last gamma_x of the scan");
  app.add_option("--steps", c.steps, "number of samples")->check(CLI::PositiveNumber);
  app.add_flag("--vectors", c.vectors, "spectrum: also emit eigenvector coefficients");
  app.add_option("--threshold", c.threshold, "collapse: dispersion threshold for minima");

  const std::vector<std::pair<const char*, const char*>> subs{
      {"spectrum", "energies with parity labels"},
      {"zeros", "Husimi zeros of one eigenstate"},
      {"pairons", "pairing energies of one eigenstate"},
      {"scan", "zeros and pairing energies along a line"},
      {"collapse", "analytic versus detected collapse points"},
      {"crossings", "even-odd level crossings on gamma_x = gamma_y"}};
  for (const auto& [name, help] : subs) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&c, n = std::string(name)] { c.command = n; });
  }
  return run(
      app, c, "lmg", args,
      [&](Output& o) {
        if (c.command == "spectrum") lmg_spectrum(c, o);
        else if (c.command == "zeros") lmg_zeros(c, o);
        else if (c.command == "pairons") lmg_pairons(c, o);
        else if (c.command == "scan") lmg_scan(c, o, err);
        else if (c.command == "collapse") lmg_collapse(c, o, err);
        else lmg_crossings(c, o);
      },
      out, err);
}

int run_bcs(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Uniform-coupling bosonic pairing model: spectra, pairing energies, zero quadrics", "bcs"};
  app.require_subcommand(1, 1);
  add_common(app, c);
  app.add_option("--levels", c.levels, "ascending level energies, comma separated")->delimiter(',');
  app.add_option("--gamma", c.gamma, "uniform pairing coupling");
  app.add_option("--n", c.n, "boson number")->check(CLI::NonNegativeNumber);
  app.add_option("--slice", c.slice, "axis used for pairon extraction (1..L)");
  app.add_option("--samples", c.samples, "ellipsoid: points per pairon");

  const std::vector<std::pair<const char*, const char*>> subs{
      {"spectrum", "energies with per-level seniorities"},
      {"pairons", "pairing energies of one eigenstate"},
      {"ellipsoid", "check the zero quadric of every pairing energy"}};
  for (const auto& [name, help] : subs) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&c, n = std::string(name)] { c.command = n; });
  }
  return run(
      app, c, "bcs", args,
      [&](Output& o) {
        if (c.command == "spectrum") bcs_spectrum(c, o);
        else if (c.command == "pairons") bcs_pairons(c, o);
        else bcs_ellipsoid(c, o);
      },
      out, err);
}

}  // namespace pairzero::cli
