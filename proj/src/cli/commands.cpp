#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "platonic/cli.hpp"
#include "platonic/dispersion_grid.hpp"
#include "platonic/errors.hpp"
#include "platonic/format.hpp"
#include "platonic/greens.hpp"
#include "platonic/mode_matrix.hpp"
#include "platonic/scattering.hpp"
#include "platonic/steering.hpp"

namespace platonic::cli {

namespace {

using json = nlohmann::json;

constexpr double kDeg = kPi / 180.0;

struct Common {
  int n_self = 1000;
  int n_far = 20;
  double d = 1.0;
  std::string out;
  std::string format;
  bool no_timestamp = false;
  unsigned threads = 0;

  TruncationPolicy policy() const {
    TruncationPolicy p;
    p.n_self = n_self;
    p.n_far = n_far;
    p.validate();
    return p;
  }
};

struct Direction {
  std::optional<double> alpha0;
  std::optional<double> theta_deg;

  // alpha0 at a given beta; fixed angle re-derives it per beta.
  double alpha0_at(double beta) const { return theta_deg ? beta * std::sin(*theta_deg * kDeg) : alpha0.value_or(0.0); }
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format, std::vector<std::string> formats) {
  sub->add_option("--n-self", c.n_self, "Lattice-sum terms on the grating line (y = 0)")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  sub->add_option("--n-far", c.n_far, "Minimum lattice-sum terms off the grating line")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  sub->add_option("--d", c.d, "Grating period")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--out", c.out, "Output file (default: stdout); a .config.toml echo is written next to it");
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the '# generated' header line from CSV output");
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
}

void add_direction(CLI::App* sub, Direction& dir, bool required) {
  auto* a = sub->add_option("--alpha0", dir.alpha0, "Bloch parameter (held fixed while beta varies)");
  auto* t = sub->add_option("--theta", dir.theta_deg, "Angle of incidence in degrees (alpha0 = beta sin theta)")
                ->check(CLI::Range(0.0, 89.999999));
  a->excludes(t);
  t->excludes(a);
  if (required) sub->require_option(1, 0);
}

void check_direction(const Direction& dir) {
  if (!dir.alpha0 && !dir.theta_deg) throw CLI::ValidationError("--alpha0/--theta", "one of them is required");
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vec_json(const Vec3c& v) {
  json a = json::array();
  for (int i = 0; i < 3; ++i) a.push_back(cplx_json(v(i)));
  return a;
}

// Output stream that is either the --out file or stdout; the echo is written
// once the payload has been produced.
class Sink {
 public:
  explicit Sink(const std::string& out) {
    if (!out.empty()) {
      const auto parent = std::filesystem::path(out).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
      file_.open(out);
      if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot open output " + out);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void finish(const CLI::App& app, const Common& c) {
  if (!c.out.empty()) write_config_echo(app, c.out);
}

void csv_preamble(std::ostream& os, const Common& c) {
  if (!c.no_timestamp) os << timestamp_line() << '\n';
}

// ---------------------------------------------------------------- greens

struct GreensArgs {
  Common c;
  Direction dir;
  double beta = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::optional<int> n;
  bool no_tail = false;
};

int cmd_greens(const CLI::App& app, const GreensArgs& a) {
  check_direction(a.dir);
  const auto policy = a.c.policy();
  const SpectralPoint p{a.dir.alpha0_at(a.beta), a.beta, a.c.d};
  p.validate();
  const bool tail = !a.no_tail;
  GreensValue g;
  if (a.n) {
    g = greens_truncated(p, a.x * p.d, a.y * p.d, *a.n, policy.lightline_tol, tail);
  } else {
    TruncationPolicy pol = policy;
    pol.tail_correction = tail;
    g = greens(p, a.x * p.d, a.y * p.d, pol);
  }
  const int half = std::max(1, g.terms / 2);
  const auto coarse = greens_truncated(p, a.x * p.d, a.y * p.d, half, policy.lightline_tol, tail);
  const double estimate = std::max(std::abs(g.value - coarse.value),
                                   4.0 * std::numeric_limits<double>::epsilon() * std::abs(g.value));
  json out{{"alpha0", p.alpha0},
           {"beta", p.beta},
           {"d", p.d},
           {"x", a.x},
           {"y", a.y},
           {"value", cplx_json(g.value)},
           {"terms", g.terms},
           {"tail_corrected", g.tail_corrected},
           {"convergence_estimate", estimate},
           {"lightline_distance", lightline_distance(p)}};
  Sink sink(a.c.out);
  sink.os() << out.dump(2) << '\n';
  finish(app, a.c);
  return 0;
}

// ---------------------------------------------------------------- matrix

struct MatrixArgs {
  Common c;
  Direction dir;
  double beta = 0.0;
  double eta = 1.0;
  double xi = 0.0;
};

int cmd_matrix(const CLI::App& app, const MatrixArgs& a) {
  check_direction(a.dir);
  const SpectralPoint p{a.dir.alpha0_at(a.beta), a.beta, a.c.d};
  const StackGeometry g{a.eta, a.xi, a.c.d};
  const auto m = assemble(p, g, a.c.policy());
  const auto res = dispersion_residual(m);
  const auto co = coincidence_conditions(m);
  json out{{"alpha0", p.alpha0},
           {"beta", p.beta},
           {"eta", a.eta},
           {"xi", a.xi},
           {"M11", cplx_json(m.m11())},
           {"M12", cplx_json(m.m12())},
           {"M13", cplx_json(m.m13())},
           {"M21", cplx_json(m.m21())},
           {"residual_odd", cplx_json(res.odd)},
           {"residual_even", cplx_json(res.even)},
           {"log10_abs_odd", res.log10_abs_odd},
           {"log10_abs_even", res.log10_abs_even},
           {"coincidence",
            {{"even_even_diag", co.even_even_diag},
             {"even_even_coupling", co.even_even_coupling},
             {"even_odd", co.even_odd},
             {"odd", co.odd}}}};
  try {
    const auto es = eigensystem(m);
    out["eigen"] = {{"lambda1", cplx_json(es.lambda1)},
                    {"lambda_minus", cplx_json(es.lambda_minus)},
                    {"lambda_plus", cplx_json(es.lambda_plus)},
                    {"v_odd", vec_json(es.v_odd)},
                    {"v_e_minus", vec_json(es.v_e_minus)},
                    {"v_e_plus", vec_json(es.v_e_plus)}};
  } catch (const Error& e) {
    out["eigen"] = {{"status", e.what()}};
  }
  Sink sink(a.c.out);
  sink.os() << out.dump(2) << '\n';
  finish(app, a.c);
  return 0;
}

// ------------------------------------------------------- dispersion-grid

struct GridArgs {
  Common c;
  GridAxis alpha0{0.0, 0.0, 1};
  GridAxis beta{1.0, 1.0, 1};
  double eta = 1.0;
  double xi = 0.0;
  bool crossing = false;
};

int cmd_grid(const CLI::App& app, const GridArgs& a) {
  const StackGeometry g{a.eta, a.xi, a.c.d};
  const auto cells = dispersion_grid(a.alpha0, a.beta, g, a.c.policy(), a.c.threads);
  Sink sink(a.c.out);
  auto& os = sink.os();
  if (a.c.format == "json") {
    json rows = json::array();
    for (const auto& cell : cells) {
      rows.push_back({{"alpha0", cell.alpha0},
                      {"beta", cell.beta},
                      {"log10_abs_odd", std::isfinite(cell.log10_abs_odd) ? json(cell.log10_abs_odd) : json()},
                      {"log10_abs_even", std::isfinite(cell.log10_abs_even) ? json(cell.log10_abs_even) : json()},
                      {"status", cell.status}});
    }
    os << rows.dump(1) << '\n';
  } else {
    csv_preamble(os, a.c);
    write_dispersion_csv(os, cells);
  }
  if (a.crossing) {
    const auto est = locate_crossing(branch_minima(cells, a.alpha0, a.beta));
    json cj = est ? json{{"alpha0", est->alpha0}, {"beta", est->beta}} : json();
    (a.c.out.empty() ? std::cerr : std::cout) << json{{"crossing", cj}}.dump() << '\n';
  }
  finish(app, a.c);
  return 0;
}

// -------------------------------------------------------------- spectrum

struct SpectrumArgs {
  Common c;
  Direction dir;
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  int points = 201;
  bool refine = false;
  double refine_threshold = 0.1;
  int max_points = 200000;
  std::string stack = "triplet";
  double eta = 1.0;
  double xi = 0.0;
  std::string from = "above";
};

PinStack make_stack(const SpectrumArgs& a) {
  if (a.stack == "empty") return PinStack::empty(a.c.d);
  if (a.stack == "single") return PinStack::single(a.c.d);
  if (a.stack == "pair") return PinStack::pair(a.eta, a.c.d);
  StackGeometry g{a.eta, a.xi, a.c.d};
  g.validate();
  return PinStack::triplet(g);
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRecord>& recs) {
  os << "alpha0,beta,R,T,R0,T0,energy_residual,status\n";
  for (const auto& r : recs) {
    auto order0 = [](const std::map<int, double>& m) {
      const auto it = m.find(0);
      return it == m.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    };
    os << fmt_double(r.alpha0) << ',' << fmt_double(r.beta) << ',' << fmt_double(r.r) << ',' << fmt_double(r.t)
       << ',' << fmt_double(order0(r.r_orders)) << ',' << fmt_double(order0(r.t_orders)) << ','
       << fmt_double(r.energy_residual) << ',' << r.status << '\n';
  }
}

json spectrum_json(const std::vector<SpectrumRecord>& recs) {
  json rows = json::array();
  for (const auto& r : recs) {
    json ro = json::object();
    json to = json::object();
    for (const auto& [n, v] : r.r_orders) ro[std::to_string(n)] = v;
    for (const auto& [n, v] : r.t_orders) to[std::to_string(n)] = v;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(); };
    rows.push_back({{"alpha0", r.alpha0},
                    {"beta", r.beta},
                    {"R", num(r.r)},
                    {"T", num(r.t)},
                    {"R_orders", ro},
                    {"T_orders", to},
                    {"energy_residual", num(r.energy_residual)},
                    {"status", r.status}});
  }
  return rows;
}

int cmd_spectrum(const CLI::App& app, const SpectrumArgs& a) {
  check_direction(a.dir);
  if (!(a.beta_hi > a.beta_lo)) throw CLI::ValidationError("--beta-hi", "must exceed --beta-lo");
  ScanSpec spec;
  if (a.dir.theta_deg) {
    spec.mode = ScanMode::FixedAngle;
    spec.theta_i = *a.dir.theta_deg * kDeg;
  } else {
    spec.mode = ScanMode::FixedAlpha0;
    spec.alpha0 = *a.dir.alpha0;
  }
  spec.beta_lo = a.beta_lo;
  spec.beta_hi = a.beta_hi;
  spec.points = a.points;
  spec.refine = a.refine;
  spec.refine_threshold = a.refine_threshold;
  spec.max_points = a.max_points;
  spec.from = a.from == "below" ? Side::Below : Side::Above;
  spec.threads = a.c.threads;
  const auto recs = spectrum_scan(make_stack(a), spec, a.c.policy());
  Sink sink(a.c.out);
  if (a.c.format == "json") {
    sink.os() << spectrum_json(recs).dump(1) << '\n';
  } else {
    csv_preamble(sink.os(), a.c);
    write_spectrum_csv(sink.os(), recs);
  }
  finish(app, a.c);
  return 0;
}

// ----------------------------------------------------------------- steer

struct SteerArgs {
  Common c;
  std::vector<double> theta_deg;
  bool standard_angles = false;
  bool no_q = false;
  std::string dump_dir;
};

std::string opt_str(const std::optional<double>& v) { return v ? fmt_double(*v) : ""; }

void write_steer_csv(std::ostream& os, const std::vector<SteeringResult>& rs) {
  os << "theta_deg,beta_g,alpha0_g,one_minus_rg,eta_guess,eta_star,pair_transmittance,m_eff,eta_triplet,"
        "beta_odd,beta_even,edit_supported,xi_edit,beta_edit,q_notch,q_pair,q_outer_isolated,status\n";
  for (const auto& r : rs) {
    os << fmt_double(r.theta_i / kDeg) << ',' << fmt_double(r.beta_g) << ',' << fmt_double(r.alpha0_g) << ','
       << fmt_double(r.one_minus_rg) << ',' << fmt_double(r.eta_guess) << ',' << fmt_double(r.eta_star) << ','
       << fmt_double(r.pair_transmittance) << ',' << fmt_double(r.m_eff) << ',' << fmt_double(r.eta_triplet) << ','
       << fmt_double(r.beta_odd) << ',' << fmt_double(r.beta_even) << ',' << (r.edit_supported ? 1 : 0) << ','
       << opt_str(r.xi_edit) << ',' << opt_str(r.beta_edit) << ',' << opt_str(r.q_notch) << ','
       << opt_str(r.q_pair) << ',' << opt_str(r.q_outer_isolated) << ",\"" << r.status << "\"\n";
  }
}

json steer_json(const std::vector<SteeringResult>& rs) {
  json rows = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(); };
  for (const auto& r : rs) {
    rows.push_back({{"theta_deg", r.theta_i / kDeg},
                    {"beta_g", r.beta_g},
                    {"alpha0_g", r.alpha0_g},
                    {"one_minus_rg", r.one_minus_rg},
                    {"eta_guess", r.eta_guess},
                    {"eta_star", r.eta_star},
                    {"pair_transmittance", r.pair_transmittance},
                    {"m_eff", r.m_eff},
                    {"eta_triplet", r.eta_triplet},
                    {"beta_odd", r.beta_odd},
                    {"beta_even", r.beta_even},
                    {"edit_supported", r.edit_supported},
                    {"xi_edit", opt(r.xi_edit)},
                    {"beta_edit", opt(r.beta_edit)},
                    {"q_notch", opt(r.q_notch)},
                    {"q_pair", opt(r.q_pair)},
                    {"q_outer_isolated", opt(r.q_outer_isolated)},
                    {"status", r.status}});
  }
  return rows;
}

void print_steer_table(std::ostream& os, const std::vector<SteeringResult>& rs) {
  char line[256];
  std::snprintf(line, sizeof line, "%6s %12s %10s %12s %7s %12s %9s %12s %9s %9s  %s\n", "theta", "beta_g", "alpha0_g",
                "eta*", "m", "eta_trip", "xi_edit", "beta_edit", "Q_notch", "Q_pair", "status");
  os << line;
  for (const auto& r : rs) {
    auto q = [](const std::optional<double>& v) { return v ? *v : std::numeric_limits<double>::quiet_NaN(); };
    std::snprintf(line, sizeof line, "%6.2f %12.7f %10.6f %12.8f %7.4f %12.8f %9.6f %12.8f %9.3g %9.3g  %s\n",
                  r.theta_i / kDeg, r.beta_g, r.alpha0_g, r.eta_star, r.m_eff, r.eta_triplet, q(r.xi_edit),
                  q(r.beta_edit), q(r.q_notch), q(r.q_pair),
                  r.status == "ok" ? (r.edit_supported ? "ok" : "ok (EDIT unsupported at normal incidence)")
                                   : r.status.c_str());
    os << line;
  }
}

void dump_scans(const std::string& dir, const std::vector<SteeringResult>& rs, const TruncationPolicy& policy,
                const Common& c) {
  std::filesystem::create_directories(dir);
  for (const auto& r : rs) {
    if (!r.beta_edit || !r.xi_edit) continue;
    ScanSpec spec;
    spec.theta_i = r.theta_i;
    spec.beta_lo = *r.beta_edit * (1.0 - 2e-5);
    spec.beta_hi = *r.beta_edit * (1.0 + 2e-5);
    spec.points = 801;
    spec.refine = true;
    spec.anchors = {*r.beta_edit};
    spec.threads = c.threads;
    const auto recs = spectrum_scan(PinStack::triplet({r.eta_triplet, *r.xi_edit, c.d}), spec, policy);
    char name[64];
    std::snprintf(name, sizeof name, "theta_%05.2f.csv", r.theta_i / kDeg);
    std::ofstream os(std::filesystem::path(dir) / name);
    csv_preamble(os, c);
    write_spectrum_csv(os, recs);
  }
}

int cmd_steer(const CLI::App& app, const SteerArgs& a) {
  std::vector<double> thetas;
  if (a.standard_angles) {
    for (double deg : standard_angles_deg()) thetas.push_back(deg * kDeg);
  } else {
    for (double deg : a.theta_deg) thetas.push_back(deg * kDeg);
  }
  if (thetas.empty()) throw CLI::ValidationError("--theta", "give --theta values or --standard-angles");
  SteeringOptions opts;
  opts.measure_q = !a.no_q;
  opts.threads = a.c.threads;
  const auto policy = a.c.policy();
  const auto rs = steer(thetas, policy, opts);
  if (a.c.out.empty()) {
    if (a.c.format == "json") {
      std::cout << steer_json(rs).dump(1) << '\n';
    } else if (a.c.format == "csv") {
      csv_preamble(std::cout, a.c);
      write_steer_csv(std::cout, rs);
    } else {
      print_steer_table(std::cout, rs);
    }
  } else {
    Sink sink(a.c.out);
    if (a.c.format == "json") {
      sink.os() << steer_json(rs).dump(1) << '\n';
    } else {
      csv_preamble(sink.os(), a.c);
      write_steer_csv(sink.os(), rs);
    }
    print_steer_table(std::cout, rs);
  }
  if (!a.dump_dir.empty()) dump_scans(a.dump_dir, rs, policy, a.c);
  finish(app, a.c);
  for (const auto& r : rs) {
    if (r.status != "ok") return 3;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Pinned-grating stacks in a thin elastic plate: Green's functions, dispersion, spectra, EDIT steering"};
  app.set_config("--config", "", "Read options from a TOML file (e.g. a .config.toml echo)");
  app.require_subcommand(1);

  GreensArgs ga;
  auto* greens_cmd = app.add_subcommand("greens", "Evaluate the quasi-periodic Green's function at one point");
  greens_cmd->alias("greens-eval");
  add_common(greens_cmd, ga.c, "json", {"json"});
  add_direction(greens_cmd, ga.dir, false);
  greens_cmd->add_option("--beta", ga.beta, "Spectral parameter")->required()->check(CLI::PositiveNumber);
  greens_cmd->add_option("--x", ga.x, "x in units of d")->capture_default_str();
  greens_cmd->add_option("--y", ga.y, "y in units of d")->capture_default_str();
  greens_cmd->add_option("--n", ga.n, "Explicit number of lattice-sum terms")->check(CLI::Range(1, 10000000));
  greens_cmd->add_flag("--no-tail", ga.no_tail, "Disable the analytic tail correction on the grating line");

  MatrixArgs ma;
  auto* matrix_cmd = app.add_subcommand("matrix", "Triplet matrix, closed-form eigensystem and residuals");
  add_common(matrix_cmd, ma.c, "json", {"json"});
  add_direction(matrix_cmd, ma.dir, false);
  matrix_cmd->add_option("--beta", ma.beta, "Spectral parameter")->required()->check(CLI::PositiveNumber);
  matrix_cmd->add_option("--eta", ma.eta, "Grating spacing in units of d")->check(CLI::PositiveNumber)->capture_default_str();
  matrix_cmd->add_option("--xi", ma.xi, "Lateral shift of the central grating in units of d")->capture_default_str();

  GridArgs gr;
  auto* grid_cmd = app.add_subcommand("dispersion-grid", "log10 |odd| and |even| residuals over an (alpha0, beta) box");
  add_common(grid_cmd, gr.c, "csv", {"csv", "json"});
  grid_cmd->add_option("--alpha0-lo", gr.alpha0.lo)->required();
  grid_cmd->add_option("--alpha0-hi", gr.alpha0.hi)->required();
  grid_cmd->add_option("--alpha0-steps", gr.alpha0.steps)->check(CLI::Range(1, 100000))->capture_default_str();
  grid_cmd->add_option("--beta-lo", gr.beta.lo)->required()->check(CLI::PositiveNumber);
  grid_cmd->add_option("--beta-hi", gr.beta.hi)->required()->check(CLI::PositiveNumber);
  grid_cmd->add_option("--beta-steps", gr.beta.steps)->check(CLI::Range(1, 100000))->capture_default_str();
  grid_cmd->add_option("--eta", gr.eta)->check(CLI::PositiveNumber)->capture_default_str();
  grid_cmd->add_option("--xi", gr.xi)->capture_default_str();
  grid_cmd->add_flag("--crossing", gr.crossing, "Report the interpolated odd/even branch crossing as JSON");

  SpectrumArgs sa;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Reflectance/transmittance scan over beta");
  add_common(spectrum_cmd, sa.c, "csv", {"csv", "json"});
  add_direction(spectrum_cmd, sa.dir, false);
  spectrum_cmd->add_option("--beta-lo", sa.beta_lo)->required()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--beta-hi", sa.beta_hi)->required()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--points", sa.points)->check(CLI::Range(2, 10000000))->capture_default_str();
  spectrum_cmd->add_flag("--refine", sa.refine, "Bisect where T changes by more than --refine-threshold");
  spectrum_cmd->add_option("--refine-threshold", sa.refine_threshold)
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  spectrum_cmd->add_option("--max-points", sa.max_points)->check(CLI::Range(2, 100000000))->capture_default_str();
  spectrum_cmd->add_option("--stack", sa.stack, "empty | single | pair (separation --eta) | triplet")
      ->check(CLI::IsMember({"empty", "single", "pair", "triplet"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--eta", sa.eta)->check(CLI::PositiveNumber)->capture_default_str();
  spectrum_cmd->add_option("--xi", sa.xi)->capture_default_str();
  spectrum_cmd->add_option("--from", sa.from)->check(CLI::IsMember({"above", "below"}))->capture_default_str();

  SteerArgs st;
  auto* steer_cmd = app.add_subcommand("steer", "beta_g, eta*, xi_edit and Q-factors per angle of incidence");
  add_common(steer_cmd, st.c, "table", {"table", "csv", "json"});
  auto* th = steer_cmd->add_option("--theta", st.theta_deg, "Angles of incidence in degrees")
                 ->check(CLI::Range(0.0, 89.999999));
  auto* std_angles = steer_cmd->add_flag("--standard-angles", st.standard_angles, "The fifteen standard steering angles");
  th->excludes(std_angles);
  steer_cmd->add_flag("--no-q", st.no_q, "Skip the Q-factor scans");
  steer_cmd->add_option("--dump-dir", st.dump_dir, "Write the EDIT transmittance scan of every angle here");

  for (auto* sub : {greens_cmd, matrix_cmd, grid_cmd, spectrum_cmd, steer_cmd}) sub->configurable();

  try {
    app.parse(argc, argv);
    if (*greens_cmd) return cmd_greens(app, ga);
    if (*matrix_cmd) return cmd_matrix(app, ma);
    if (*grid_cmd) return cmd_grid(app, gr);
    if (*spectrum_cmd) return cmd_spectrum(app, sa);
    if (*steer_cmd) {
      if (st.c.format == "table" && !st.c.out.empty()) st.c.format = "csv";
      return cmd_steer(app, st);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace platonic::cli
