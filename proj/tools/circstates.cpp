// Command-line front end for the circular-state lab.
//
// Exit codes: 0 success, 1 usage error, 2 degenerate/invalid state input,
// 3 zero-probability branch, 4 truncation too small, 5 reference-table
// policy failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "circ/harness.hpp"

namespace {

using circ::Complex;
using circ::Parity;

constexpr double kPi = std::numbers::pi;

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct GlobalOpts {
  double omega = 2.0 * kPi;       // rad/us
  double lambda = 0.2 * kPi;      // rad/us, Omega/10 by default
  double tail_tol = 1e-12;
  double overhead = 0.2;          // us per measurement
  std::string config;
  std::string out;
  std::string format = "csv";
};

// Config file supplies defaults; explicit flags win.
void apply_config(const GlobalOpts& opts, CLI::App& app, GlobalOpts& eff) {
  eff = opts;
  if (opts.config.empty()) return;
  std::ifstream file(opts.config);
  if (!file) throw circ::IoError("cannot open config " + opts.config);
  nlohmann::json j;
  file >> j;
  auto take = [&](const char* key, const char* flag, auto& slot) {
    if (j.contains(key) && app.count(flag) == 0)
      slot = j.at(key).template get<std::decay_t<decltype(slot)>>();
  };
  take("omega", "--omega", eff.omega);
  take("lambda", "--lambda", eff.lambda);
  take("tail_tol", "--tail-tol", eff.tail_tol);
  take("overhead", "--overhead", eff.overhead);
  take("format", "--format", eff.format);
}

void echo_effective(const GlobalOpts& eff) {
  std::cout << "# omega=" << fmt9(eff.omega) << " lambda=" << fmt9(eff.lambda)
            << " tail_tol=" << fmt9(eff.tail_tol) << " overhead=" << fmt9(eff.overhead)
            << "\n";
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw circ::IoError("cannot open " + out);
  file << text;
  if (!file) throw circ::IoError("write failed for " + out);
}

circ::TargetSpec parse_target(const std::string& s) {
  if (s == "vacuum") return circ::TargetSpec::vacuum();
  if (s.rfind("fock:", 0) == 0) return circ::TargetSpec::fock(std::stoi(s.substr(5)));
  if (s.rfind("two:", 0) == 0) {
    const auto comma = s.find(',', 4);
    if (comma == std::string::npos)
      throw CLI::ValidationError("--target", "two:<n1>,<n2> expected");
    return circ::TargetSpec::two_fock(std::stoi(s.substr(4, comma - 4)),
                                      std::stoi(s.substr(comma + 1)));
  }
  throw CLI::ValidationError("--target", "expected vacuum, fock:<n> or two:<n1>,<n2>");
}

const char* tag_name(circ::RegimeTag tag) {
  switch (tag) {
    case circ::RegimeTag::Vacuum: return "vacuum";
    case circ::RegimeTag::FockN: return "fock_N";
    case circ::RegimeTag::ZeroPlusN: return "zero_plus_N";
    case circ::RegimeTag::NPlus2N: return "N_plus_2N";
    case circ::RegimeTag::Mixed: return "mixed";
  }
  return "mixed";
}

int cmd_circular(const GlobalOpts& eff, int N, const std::string& parity_s, double a,
                 bool fock_dist, bool moments) {
  const Parity parity = (parity_s == "odd") ? Parity::Odd : Parity::Even;
  const double r = std::sqrt(a);
  circ::TruncationPolicy policy{eff.tail_tol, 16};
  const int dim = circ::choose_dim(r, policy);
  const circ::CircularSpec spec{N, parity, Complex(r, 0.0)};
  const circ::FockVector psi = circ::circular_state(spec, dim);

  std::ostringstream out;
  out << "N=" << N << " parity=" << (parity == Parity::Even ? "even" : "odd")
      << " a=" << fmt9(a) << " dim=" << dim << "\n";
  out << "lambda=" << fmt9(circ::lambda_norm(N, parity, a))
      << " partition=" << fmt9(circ::partition(N, parity, a)) << "\n";
  const circ::RegimeReport rep = circ::classify_regime(N, a);
  out << "regime=" << tag_name(rep.tag) << " x1=" << fmt9(rep.x1)
      << " x2=" << fmt9(rep.x2) << " x3=" << fmt9(rep.x3) << "\n";
  if (moments) {
    const double mean = circ::moments_from_partition(N, parity, a, 1);
    const double m2 = circ::moments_from_partition(N, parity, a, 2);
    out << "mean_n=" << fmt9(mean) << " var_n=" << fmt9(m2 - mean * mean) << "\n";
  }
  if (fock_dist) {
    out << "n,P_n\n";
    for (int n = 0; n < dim; ++n) {
      const double p = std::norm(psi[n]);
      if (p > 1e-14) out << n << ',' << fmt9(p) << "\n";
    }
  }
  write_text(eff.out, out.str());
  return 0;
}

int cmd_scheme(const GlobalOpts& eff, int id, int M, double r, const std::string& mode_s,
               const std::string& ham_s) {
  circ::PulseSequence plan;
  switch (id) {
    case 1: plan = circ::scheme1_plan(M, eff.omega); break;
    case 2: plan = circ::scheme2_plan(M, eff.omega, eff.lambda); break;
    case 3: plan = circ::scheme3_plan(M, eff.omega, eff.lambda); break;
    default: throw CLI::ValidationError("--id", "scheme id must be 1, 2 or 3");
  }
  const circ::RunMode mode =
      (mode_s == "dense") ? circ::RunMode::Dense : circ::RunMode::ClosedForm;
  const circ::HamiltonianKind ham = (ham_s == "carrier")
                                        ? circ::HamiltonianKind::Carrier
                                        : circ::HamiltonianKind::KerrApprox;
  circ::TruncationPolicy policy{eff.tail_tol, 16};
  const circ::RunResult res =
      circ::run_sequence(plan, Complex(r, 0.0), mode, ham, policy);
  const circ::TotalTime time = circ::total_time(plan, eff.overhead);

  std::ostringstream out;
  out << "scheme=" << id << " M=" << M << " r=" << fmt9(r) << " dim=" << res.dim
      << " eta=" << fmt9(plan.params.eta) << "\n";
  out << "cycle_probs=";
  for (size_t i = 0; i < res.cycle_probs.size(); ++i)
    out << (i ? "," : "") << fmt9(res.cycle_probs[i]);
  out << "\n";
  out << "joint_prob=" << fmt9(res.joint_prob)
      << " analytic_joint_prob=" << fmt9(res.analytic_joint_prob) << "\n";
  out << "fidelity_to_target=" << fmt9(res.fidelity_to_target)
      << " validity_metric=" << fmt9(res.validity_metric) << "\n";
  out << "total_time=" << fmt9(time.total)
      << " overhead_fraction=" << fmt9(time.overhead_fraction) << "\n";
  write_text(eff.out, out.str());
  return 0;
}

int cmd_table1(const GlobalOpts& eff) {
  const std::vector<circ::ResultRecord> records = circ::reproduce_table1();
  const circ::ExportFormat format =
      (eff.format == "json") ? circ::ExportFormat::Json : circ::ExportFormat::Csv;
  if (!eff.out.empty()) {
    circ::export_records(records, format, eff.out);
  } else {
    const std::string tmp = "/tmp/circstates_table1_stdout";
    circ::export_records(records, format, tmp);
    std::ifstream file(tmp);
    std::cout << file.rdbuf();
  }
  for (const circ::ResultRecord& rec : records) {
    for (const auto& [field, dev] : rec.deviations)
      std::cerr << "deviation " << rec.label << " a=" << fmt9(rec.a) << " " << field
                << ": reference=" << fmt9(dev.reference)
                << " computed=" << fmt9(dev.computed) << "\n";
  }
  return circ::table1_policy_satisfied(records) ? 0 : 5;
}

int cmd_sweep(const GlobalOpts& eff, int N, const std::string& parity_s,
              const std::string& target_s, const std::string& range) {
  const Parity parity = (parity_s == "odd") ? Parity::Odd : Parity::Even;
  double a_min = 0.0, a_max = 0.0;
  int steps = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(range);
  if (!(in >> a_min >> c1 >> a_max >> c2 >> steps) || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--a", "expected min:max:steps");
  const circ::SweepResult res =
      circ::sweep_radius(N, parity, parse_target(target_s), a_min, a_max, steps);

  std::ostringstream out;
  out << "a,overlap,p_up\n";
  for (const circ::SweepPoint& pt : res.grid)
    out << fmt9(pt.a) << ',' << fmt9(pt.overlap) << ',' << fmt9(pt.p_up) << "\n";
  out << "# best_a=" << fmt9(res.best_a) << " best_overlap=" << fmt9(res.best_overlap)
      << "\n";
  write_text(eff.out, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trapped-ion motional circular-state lab"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--omega", opts.omega, "carrier Rabi frequency, rad/us");
  app.add_option("--lambda", opts.lambda, "rotation-pulse rate, rad/us");
  app.add_option("--tail-tol", opts.tail_tol, "Poisson tail mass kept below this");
  app.add_option("--overhead", opts.overhead, "per-measurement overhead, us");
  app.add_option("--config", opts.config, "JSON config file (flags override)");
  app.add_option("--out", opts.out, "output file (default stdout)");
  app.add_option("--format", opts.format, "csv or json (table1 only)")
      ->check(CLI::IsMember({"csv", "json"}));

  int N = 8;
  std::string parity_s = "even";
  double a = 6.8;
  bool fock_dist = false, moments = false;
  CLI::App* circular = app.add_subcommand("circular", "analytic circular-state report");
  circular->fallthrough();
  circular->add_option("--N", N, "number of components")->required();
  circular->add_option("--parity", parity_s)->check(CLI::IsMember({"even", "odd"}));
  circular->add_option("--a", a, "squared radius r^2")->required();
  circular->add_flag("--fock-dist", fock_dist, "print the number distribution");
  circular->add_flag("--moments", moments, "print mean and variance");

  int id = 1, M = 3;
  double r = 2.6;
  std::string mode_s = "closed", ham_s = "kerr";
  CLI::App* scheme = app.add_subcommand("scheme", "run a pulse scheme");
  scheme->fallthrough();
  scheme->add_option("--id", id, "scheme 1, 2 or 3")->required();
  scheme->add_option("--M", M, "number of cycles")->required();
  scheme->add_option("--r", r, "initial coherent radius")->required();
  scheme->add_option("--mode", mode_s)->check(CLI::IsMember({"closed", "dense"}));
  scheme->add_option("--hamiltonian", ham_s)->check(CLI::IsMember({"kerr", "carrier"}));

  CLI::App* table1 = app.add_subcommand("table1", "reproduce the reference table");
  table1->fallthrough();

  int sweep_N = 8;
  std::string sweep_parity = "even", target_s = "fock:8", range = "4:10:61";
  CLI::App* sweep = app.add_subcommand("sweep", "overlap across a radius range");
  sweep->fallthrough();
  sweep->add_option("--N", sweep_N)->required();
  sweep->add_option("--parity", sweep_parity)->check(CLI::IsMember({"even", "odd"}));
  sweep->add_option("--target", target_s, "vacuum, fock:<n> or two:<n1>,<n2>")->required();
  sweep->add_option("--a", range, "min:max:steps")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    GlobalOpts eff;
    apply_config(opts, app, eff);
    echo_effective(eff);
    if (*circular) return cmd_circular(eff, N, parity_s, a, fock_dist, moments);
    if (*scheme) return cmd_scheme(eff, id, M, r, mode_s, ham_s);
    if (*table1) return cmd_table1(eff);
    if (*sweep) return cmd_sweep(eff, sweep_N, sweep_parity, target_s, range);
  } catch (const circ::ZeroProbabilityBranch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const circ::TruncationTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const circ::DegenerateState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
