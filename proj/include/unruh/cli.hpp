#pragma once

// Command-line front end: boson / fermion negativity sweeps and wave-packet
// diagnostics. Output is deterministic for a fixed spec: rows in q order then
// r order, floats printed with 12 significant digits, schema version 1.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unruh/fermionic.hpp"
#include "unruh/bosonic.hpp"
#include "unruh/wavepacket.hpp"

namespace unruh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kSchemaVersion = 1;

enum class Model { Boson, Fermion };
enum class Format { Csv, Json };

struct SweepSpec {
  Model model = Model::Boson;
  std::vector<double> q_abs{1.0, 0.9, 0.8, 0.7};
  double r_min = 0.0;
  std::optional<double> r_max;  // defaults: 1.5 (boson), pi/4 (fermion)
  int steps = 31;
  int n_max = 30;  // boson only
  std::string out;  // empty: stdout
  Format format = Format::Csv;

  double resolved_r_max() const;
  std::vector<double> r_grid() const;
  /// Throws InvalidArgument on a malformed spec.
  void validate() const;
};

enum class Family { LogGaussian, Gamma, Bessel, RapidityGaussian };

struct PacketSpec {
  Family family = Family::LogGaussian;
  double lambda = 1.0;
  double mu = 8.0;
  double omega0 = 1.0;
  double mass = 1.0;
  double center = 0.0;        // rapidity-gaussian only
  int epsilon = 1;
  double mix = 0.0;           // log-gaussian: mixing angle with the conjugate packet
  double leak_threshold = wavepacket::kDefaultLeakageThreshold;
  std::optional<double> x_min, x_max;
  std::optional<int> points;
  int samples = 41;           // rows of the (Omega, |g_R|, |g_L|) table
  std::string out;            // JSON report path; empty: none
  Format format = Format::Csv;  // Csv selects the human-readable text report on stdout

  void validate() const;
};

/// 12-significant-digit rendering used for every emitted float.
std::string format_number(double v);

struct BosonSweepResult {
  std::vector<bosonic::BosonCurveRow> rows;
  bool all_converged = true;
};
BosonSweepResult run_boson_sweep(const SweepSpec& spec);
std::string render_boson(const BosonSweepResult& result, Format format);

struct FermionSweepResult {
  std::vector<fermionic::FermionCurveRow> rows;
};
FermionSweepResult run_fermion_sweep(const SweepSpec& spec);
std::string render_fermion(const FermionSweepResult& result, Format format);

struct PacketResult {
  wavepacket::PeakingReport report;
  double round_trip_error = 0.0;
  std::vector<double> omega;
  std::vector<double> abs_g_R;
  std::vector<double> abs_g_L;
};
PacketResult run_packet(const PacketSpec& spec);
std::string render_packet_text(const PacketSpec& spec, const PacketResult& result);
std::string render_packet_json(const PacketSpec& spec, const PacketResult& result);

/// Each command writes its output and returns an exit code; diagnostics go to `err`.
int cmd_boson(const SweepSpec& spec, std::ostream& out, std::ostream& err);
int cmd_fermion(const SweepSpec& spec, std::ostream& out, std::ostream& err);
int cmd_packet(const PacketSpec& spec, std::ostream& out, std::ostream& err);

/// Full command line: `unruh <boson|fermion|packet> [flags]`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unruh::cli
