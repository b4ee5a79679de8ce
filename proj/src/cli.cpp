#include "unruh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace unruh::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

double rounded(double v) { return std::stod(format_number(v)); }

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::LogGaussian: return "log-gaussian";
    case Family::Gamma: return "gamma";
    case Family::Bessel: return "bessel";
    case Family::RapidityGaussian: return "rapidity-gaussian";
  }
  return "?";
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------

double SweepSpec::resolved_r_max() const {
  if (r_max) return *r_max;
  return model == Model::Boson ? 1.5 : std::numbers::pi / 4.0;
}

std::vector<double> SweepSpec::r_grid() const {
  const double hi = resolved_r_max();
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[i] = r_min + (hi - r_min) * i / (steps - 1);
  g.back() = hi;
  return g;
}

void SweepSpec::validate() const {
  if (q_abs.empty()) throw InvalidArgument("at least one --q value is required");
  for (double q : q_abs)
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("--q values must lie in [0, 1]");
  if (steps < 2) throw InvalidArgument("--steps must be >= 2");
  const double hi = resolved_r_max();
  if (!(r_min >= 0.0) || !(hi >= r_min) || !std::isfinite(hi)) throw InvalidArgument("r range must satisfy 0 <= r-min <= r-max");
  if (model == Model::Fermion && hi > std::numbers::pi / 4.0 + 1e-12)
    throw InvalidArgument("fermionic r-max must not exceed pi/4");
  if (model == Model::Boson && n_max < 1) throw InvalidArgument("--n-max must be >= 1");
}

void PacketSpec::validate() const {
  if (!(lambda > 0.0)) throw InvalidArgument("--lambda must be > 0");
  if (!(omega0 > 0.0)) throw InvalidArgument("--omega0 must be > 0");
  if (!(mass > 0.0)) throw InvalidArgument("--mass must be > 0");
  if (epsilon != 1 && epsilon != -1) throw InvalidArgument("--epsilon must be +1 or -1");
  if (!(leak_threshold > 0.0 && leak_threshold < 1.0)) throw InvalidArgument("--leak-threshold must lie in (0, 1)");
  if (samples < 2) throw InvalidArgument("--samples must be >= 2");
  const int overrides = (x_min ? 1 : 0) + (x_max ? 1 : 0) + (points ? 1 : 0);
  if (overrides != 0 && overrides != 3) throw InvalidArgument("grid override needs --x-min, --x-max and --points together");
  if (points && (*points < 4 || *points % 2 != 0)) throw InvalidArgument("--points must be even and >= 4");
  if (x_min && x_max && !(*x_max > *x_min)) throw InvalidArgument("--x-max must exceed --x-min");
}

// ---------------------------------------------------------------------------

BosonSweepResult run_boson_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto grid = spec.r_grid();
  BosonSweepResult res;
  bosonic::BosonSolverOptions opts;
  opts.n_max_cap = std::max(opts.n_max_cap, spec.n_max);
  for (double q : spec.q_abs) {
    auto rows = bosonic::bosonic_curve(q, grid, spec.n_max, opts);
    for (auto& row : rows) {
      res.all_converged = res.all_converged && row.convergence.converged;
      res.rows.push_back(row);
    }
  }
  return res;
}

std::string render_boson(const BosonSweepResult& result, Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "# schema=" << kSchemaVersion << " model=boson\n";
    os << "q_abs,r,N_AR,N_AAR,n_max_used,converged\n";
    for (const auto& r : result.rows)
      os << format_number(r.q_abs) << ',' << format_number(r.r) << ',' << format_number(r.alice_rob) << ','
         << format_number(r.alice_antirob) << ',' << r.convergence.n_max_used << ','
         << (r.convergence.converged ? "true" : "false") << '\n';
    return os.str();
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : result.rows)
    arr.push_back({{"schema", kSchemaVersion},
                   {"q_abs", rounded(r.q_abs)},
                   {"r", rounded(r.r)},
                   {"N_AR", rounded(r.alice_rob)},
                   {"N_AAR", rounded(r.alice_antirob)},
                   {"n_max_used", r.convergence.n_max_used},
                   {"converged", r.convergence.converged}});
  return arr.dump(2) + "\n";
}

FermionSweepResult run_fermion_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto grid = spec.r_grid();
  FermionSweepResult res;
  for (double q : spec.q_abs) {
    auto curve = fermionic::fermionic_curve(q, grid);
    res.rows.insert(res.rows.end(), curve.rows.begin(), curve.rows.end());
  }
  return res;
}

std::string render_fermion(const FermionSweepResult& result, Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "# schema=" << kSchemaVersion << " model=fermion\n";
    os << "q_abs,r,N_AR,N_AAR,method_agreement_residual\n";
    for (const auto& r : result.rows)
      os << format_number(r.q_abs) << ',' << format_number(r.r) << ',' << format_number(r.alice_rob) << ','
         << format_number(r.alice_antirob) << ',' << format_number(r.method_residual) << '\n';
    return os.str();
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : result.rows)
    arr.push_back({{"schema", kSchemaVersion},
                   {"q_abs", rounded(r.q_abs)},
                   {"r", rounded(r.r)},
                   {"N_AR", rounded(r.alice_rob)},
                   {"N_AAR", rounded(r.alice_antirob)},
                   {"method_agreement_residual", rounded(r.method_residual)}});
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

void fill_table(const wavepacket::UnruhSmearingPair& pair, const wavepacket::PeakingReport& rep, int samples,
                PacketResult& out) {
  const double hi = std::min(pair.omega(pair.size() - 1), rep.peak_omega + 8.0 * rep.delta_omega + 1.0);
  const auto last = static_cast<std::size_t>(std::lround(hi / pair.d_omega()));
  std::size_t prev = pair.size();
  for (int s = 0; s < samples; ++s) {
    const auto i = static_cast<std::size_t>(std::lround(static_cast<double>(last) * s / (samples - 1)));
    if (i == prev) continue;
    prev = i;
    out.omega.push_back(pair.omega(i));
    out.abs_g_R.push_back(std::abs(pair.g_R[i]));
    out.abs_g_L.push_back(std::abs(pair.g_L[i]));
  }
}

}  // namespace

PacketResult run_packet(const PacketSpec& spec) {
  spec.validate();
  wavepacket::GridOptions grid;
  if (spec.points) {
    const auto n = static_cast<std::size_t>(*spec.points);
    grid.fixed = wavepacket::UniformGrid{*spec.x_min, (*spec.x_max - *spec.x_min) / static_cast<double>(n - 1), n};
  }
  PacketResult res;
  if (spec.family == Family::RapidityGaussian) {
    const wavepacket::MassiveKernel kernel{spec.mass};
    const auto f = wavepacket::f_rapidity_gaussian({spec.lambda, spec.mu, spec.center}, kernel, grid);
    const auto pair = wavepacket::massive_g_from_f(f, kernel);
    res.report = wavepacket::peaking_report(f, kernel, spec.leak_threshold);
    res.round_trip_error = wavepacket::l2_distance(f, wavepacket::massive_f_from_g(pair, kernel));
    fill_table(pair, res.report, spec.samples, res);
    return res;
  }
  const wavepacket::BogoliubovKernel kernel{spec.epsilon, 1.0};
  const wavepacket::LogGaussianParams params{spec.lambda, spec.mu, spec.omega0};
  wavepacket::MinkowskiSmearing f;
  switch (spec.family) {
    case Family::LogGaussian:
      f = spec.mix == 0.0 ? wavepacket::f_log_gaussian(params, grid) : wavepacket::f_mixed_log_gaussian(params, spec.mix, grid);
      break;
    case Family::Gamma: f = wavepacket::alternate_packet(wavepacket::PacketFamily::Gamma, params, grid); break;
    case Family::Bessel: f = wavepacket::alternate_packet(wavepacket::PacketFamily::Bessel, params, grid); break;
    case Family::RapidityGaussian: break;
  }
  const auto pair = wavepacket::g_from_f(f, kernel);
  res.report = wavepacket::peaking_report(f, kernel, spec.leak_threshold);
  res.round_trip_error = wavepacket::l2_distance(f, wavepacket::f_from_g(pair, kernel));
  fill_table(pair, res.report, spec.samples, res);
  return res;
}

std::string render_packet_text(const PacketSpec& spec, const PacketResult& r) {
  std::ostringstream os;
  const auto& p = r.report;
  os << "packet family      " << family_name(spec.family) << "\n"
     << "lambda, mu         " << format_number(spec.lambda) << ", " << format_number(spec.mu) << "\n"
     << "peak Omega         " << format_number(p.peak_omega) << " (" << (p.dominant_is_R ? "R" : "L") << " sector)\n"
     << "Delta Omega        " << format_number(p.delta_omega) << "\n"
     << "Delta ln           " << format_number(p.delta_log) << "\n"
     << "uncertainty        " << format_number(p.uncertainty_product) << " (bound 0.5)\n"
     << "leakage            " << format_number(p.leakage) << "\n"
     << "sma_valid          " << (p.sma_valid ? "true" : "false") << " (threshold " << format_number(spec.leak_threshold)
     << ")\n"
     << "parseval residual  " << format_number(p.parseval_residual) << "\n"
     << "round-trip L2      " << format_number(r.round_trip_error) << "\n\n"
     << "Omega,abs_g_R,abs_g_L\n";
  for (std::size_t i = 0; i < r.omega.size(); ++i)
    os << format_number(r.omega[i]) << ',' << format_number(r.abs_g_R[i]) << ',' << format_number(r.abs_g_L[i]) << '\n';
  return os.str();
}

std::string render_packet_json(const PacketSpec& spec, const PacketResult& r) {
  const auto& p = r.report;
  ordered_json table = ordered_json::array();
  for (std::size_t i = 0; i < r.omega.size(); ++i)
    table.push_back({{"Omega", rounded(r.omega[i])}, {"abs_g_R", rounded(r.abs_g_R[i])}, {"abs_g_L", rounded(r.abs_g_L[i])}});
  ordered_json j = {{"schema", kSchemaVersion},
                    {"family", family_name(spec.family)},
                    {"lambda", rounded(spec.lambda)},
                    {"mu", rounded(spec.mu)},
                    {"peak_Omega", rounded(p.peak_omega)},
                    {"dominant_sector", p.dominant_is_R ? "R" : "L"},
                    {"delta_Omega", rounded(p.delta_omega)},
                    {"delta_ln", rounded(p.delta_log)},
                    {"uncertainty_product", rounded(p.uncertainty_product)},
                    {"leakage", rounded(p.leakage)},
                    {"sma_valid", p.sma_valid},
                    {"parseval_residual", rounded(p.parseval_residual)},
                    {"round_trip_error", rounded(r.round_trip_error)},
                    {"table", table}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

int cmd_boson(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  const BosonSweepResult res = run_boson_sweep(spec);
  write_output(spec.out, render_boson(res, spec.format), out);
  if (!res.all_converged) {
    err << "error: truncation did not converge for at least one row (see converged column)\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_fermion(const SweepSpec& spec, std::ostream& out, std::ostream&) {
  const FermionSweepResult res = run_fermion_sweep(spec);
  write_output(spec.out, render_fermion(res, spec.format), out);
  return kExitOk;
}

int cmd_packet(const PacketSpec& spec, std::ostream& out, std::ostream&) {
  const PacketResult res = run_packet(spec);
  if (spec.format == Format::Json)
    out << render_packet_json(spec, res);
  else
    out << render_packet_text(spec, res);
  if (!spec.out.empty()) write_output(spec.out, render_packet_json(spec, res), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Config entries go in front of the explicit flags, and only for keys the
// command line does not set itself.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::vector<std::string> merged{args[0], args[1]};
  for (const auto& [k, v] : read_config(path))
    if (!flag_given(args, k)) merged.push_back("--" + k + "=" + v);
  merged.insert(merged.end(), args.begin() + 2, args.end());
  return merged;
}

void add_sweep_flags(CLI::App* sub, SweepSpec& s, std::string& format, std::string& config) {
  sub->add_option("--q", s.q_abs, "|q_R| values")->delimiter(',');
  sub->add_option("--r-min", s.r_min, "smallest r");
  sub->add_option("--r-max", s.r_max, "largest r");
  sub->add_option("--steps", s.steps, "number of r grid points (>= 2)");
  sub->add_option("--out", s.out, "output file (default stdout)");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", config, "key=value config file, overridden by explicit flags");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inertial/accelerated entanglement beyond the single-mode approximation"};
  app.require_subcommand(1);

  SweepSpec boson, fermion;
  boson.model = Model::Boson;
  fermion.model = Model::Fermion;
  PacketSpec packet;
  std::string boson_fmt = "csv", fermion_fmt = "csv", packet_fmt = "text", config;
  std::string family = "log-gaussian";

  auto* b = app.add_subcommand("boson", "bosonic negativity sweep");
  add_sweep_flags(b, boson, boson_fmt, config);
  b->add_option("--n-max", boson.n_max, "initial Rindler truncation");

  auto* f = app.add_subcommand("fermion", "fermionic negativity sweep");
  add_sweep_flags(f, fermion, fermion_fmt, config);

  auto* p = app.add_subcommand("packet", "wave-packet diagnostics");
  p->add_option("--family", family, "packet family")
      ->check(CLI::IsMember({"log-gaussian", "gamma", "bessel", "rapidity-gaussian"}));
  p->add_option("--lambda", packet.lambda, "width parameter");
  p->add_option("--mu", packet.mu, "phase parameter");
  p->add_option("--omega0", packet.omega0, "central frequency (units of 1/l)");
  p->add_option("--mass", packet.mass, "field mass (rapidity-gaussian)");
  p->add_option("--center", packet.center, "central rapidity (rapidity-gaussian)");
  p->add_option("--epsilon", packet.epsilon, "+1 right movers, -1 left movers");
  p->add_option("--mix", packet.mix, "mixing angle with the conjugate packet (log-gaussian)");
  p->add_option("--leak-threshold", packet.leak_threshold, "single-mode validity threshold");
  p->add_option("--x-min", packet.x_min, "grid override: lower log-frequency bound");
  p->add_option("--x-max", packet.x_max, "grid override: upper log-frequency bound");
  p->add_option("--points", packet.points, "grid override: number of points (even)");
  p->add_option("--samples", packet.samples, "rows in the Omega table");
  p->add_option("--out", packet.out, "JSON report file");
  p->add_option("--format", packet_fmt, "text or json")->check(CLI::IsMember({"text", "json"}));
  p->add_option("--config", config, "key=value config file, overridden by explicit flags");

  try {
    const std::vector<std::string> args = merge_config(raw_args);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (b->parsed()) {
      boson.format = boson_fmt == "json" ? Format::Json : Format::Csv;
      boson.validate();
      return cmd_boson(boson, out, err);
    }
    if (f->parsed()) {
      fermion.format = fermion_fmt == "json" ? Format::Json : Format::Csv;
      fermion.validate();
      return cmd_fermion(fermion, out, err);
    }
    packet.format = packet_fmt == "json" ? Format::Json : Format::Csv;
    packet.family = family == "gamma"               ? Family::Gamma
                    : family == "bessel"            ? Family::Bessel
                    : family == "rapidity-gaussian" ? Family::RapidityGaussian
                                                    : Family::LogGaussian;
    packet.validate();
    return cmd_packet(packet, out, err);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace unruh::cli
