#include "circ/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace circ {

namespace {

int log2_exact(int N) {
  int m = 0;
  while ((1 << m) < N) ++m;
  if ((1 << m) != N) throw DimensionMismatch("expected a power of two");
  return m;
}

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void note_deviation(ResultRecord& rec, const std::string& field, double reference,
                    double computed) {
  rec.deviations[field] = Deviation{reference, computed, computed - reference};
}

}  // namespace

const std::vector<Table1Row>& table1_reference() {
  static const std::vector<Table1Row> rows = {
      {"(|0>+|8>)/sqrt2", 8, 3.76, TargetSpec::two_fock(0, 8), 0.999960, 0.04635, 4.00322, 16.00497},
      {"|8>", 8, 6.80, TargetSpec::fock(8), 0.982674, 0.12851, 7.99994, 1.10908},
      {"(|8>+|16>)/sqrt2", 8, 12.17, TargetSpec::two_fock(8, 16), 0.991848, 0.12016, 11.94293, 16.99720},
      {"|16>", 8, 15.80, TargetSpec::fock(16), 0.79002, 0.12542, 15.99847, 13.62115},
      {"(|0>+|16>)/sqrt2", 16, 6.80, TargetSpec::two_fock(0, 16), 0.999999, 0.00261, 7.99560, 63.99998},
      {"|16>", 16, 12.80, TargetSpec::fock(16), 0.999918, 0.08564, 16.00001, 0.02088},
      {"(|16>+|32>)/sqrt2", 16, 24.10, TargetSpec::two_fock(16, 32), 0.999807, 0.04295, 24.12047, 64.05677},
      {"|32>", 16, 31.20, TargetSpec::fock(32), 0.96834, 0.07190, 32.02314, 8.10407},
  };
  return rows;
}

std::vector<ResultRecord> reproduce_table1(const Table1Tolerances& tol) {
  std::vector<ResultRecord> records;
  for (const Table1Row& row : table1_reference()) {
    ResultRecord rec;
    rec.label = row.label;
    rec.N = row.N;
    rec.a = row.a;
    const double r = std::sqrt(row.a);
    TruncationPolicy policy;
    rec.dim = std::max(choose_dim(r, policy),
                       std::max(row.target.n1, row.target.n2) + row.N);
    const CircularSpec spec{row.N, Parity::Even, r};
    rec.overlap = target_overlap(spec, row.target, rec.dim);
    rec.p_up = success_probability(Scheme::S1, log2_exact(row.N), row.a);
    rec.mean_n = moments_from_partition(row.N, Parity::Even, row.a, 1);
    rec.var_n = moments_from_partition(row.N, Parity::Even, row.a, 2) - rec.mean_n * rec.mean_n;

    const bool overlap_ok = std::abs(rec.overlap - row.overlap) <= tol.overlap_abs;
    const bool p_up_ok = std::abs(rec.p_up - row.p_up) <= tol.p_up_abs;
    const bool mean_ok = std::abs(rec.mean_n - row.mean_n) <= tol.moment_rel * std::abs(row.mean_n);
    const bool var_ok = std::abs(rec.var_n - row.var_n) <= tol.moment_rel * std::abs(row.var_n);

    if (!overlap_ok) note_deviation(rec, "overlap", row.overlap, rec.overlap);
    if (!p_up_ok) note_deviation(rec, "p_up", row.p_up, rec.p_up);
    if (!var_ok) note_deviation(rec, "var_n", row.var_n, rec.var_n);

    const bool mean_anomaly_row = (row.N == 8 && row.a == 3.76);
    if (!mean_ok || mean_anomaly_row) note_deviation(rec, "mean_n", row.mean_n, rec.mean_n);

    // The row (8, 3.76) mean number is known to disagree with the analytic
    // distribution; the row passes on the remaining columns.
    rec.passed = overlap_ok && p_up_ok && var_ok && (mean_ok || mean_anomaly_row);
    records.push_back(std::move(rec));
  }
  return records;
}

bool table1_policy_satisfied(const std::vector<ResultRecord>& records) {
  int passing = 0;
  for (const ResultRecord& rec : records) {
    if (rec.passed) {
      ++passing;
      continue;
    }
    // A failing row is only excused by the documented mean-number anomaly.
    for (const auto& [field, dev] : rec.deviations) {
      (void)dev;
      if (field != "mean_n") return false;
    }
  }
  return passing >= 7;
}

SweepResult sweep_radius(int N, Parity parity, const TargetSpec& target,
                         double a_min, double a_max, int steps) {
  if (!(a_min < a_max)) throw NonPositiveInput("sweep_radius: need a_min < a_max");
  if (steps < 2) throw NonPositiveInput("sweep_radius: need steps >= 2");
  SweepResult result;
  result.N = N;
  result.parity = parity;
  result.target = target;
  // Production probability for the scheme that reaches this N: scheme 1/3
  // when N is a power of two, otherwise scheme 2 (even family, M = N-1).
  const bool pow2 = (N & (N - 1)) == 0;
  if (!pow2 && parity == Parity::Odd)
    throw DimensionMismatch("sweep_radius: odd family needs N a power of two");
  const int M = pow2 ? log2_exact(N) : N - 1;
  const Scheme scheme = pow2 ? (parity == Parity::Even ? Scheme::S1 : Scheme::S3)
                             : Scheme::S2;
  for (int i = 0; i < steps; ++i) {
    const double a = a_min + (a_max - a_min) * i / (steps - 1);
    const double r = std::sqrt(a);
    const int dim = std::max(choose_dim(r), std::max(target.n1, target.n2) + N);
    SweepPoint pt;
    pt.a = a;
    pt.overlap = target_overlap(CircularSpec{N, parity, r}, target, dim);
    pt.p_up = success_probability(scheme, M, a);
    if (result.grid.empty() || pt.overlap > result.best_overlap) {
      result.best_a = pt.a;
      result.best_overlap = pt.overlap;
    }
    result.grid.push_back(pt);
  }
  return result;
}

ModeComparison compare_modes(const PulseSequence& plan, Complex alpha0,
                             HamiltonianKind hamiltonian) {
  const RunResult closed = run_sequence(plan, alpha0, RunMode::ClosedForm);
  PulseSequence dense_plan = plan;
  if (hamiltonian == HamiltonianKind::Carrier) {
    // The Kerr model's Omega is the carrier Rabi rate measured on the vacuum,
    // f0(0) = e^{-eta^2/2} times the bare laser rate.  Undo that calibration
    // factor so the comparison isolates the state-dependent remainder.
    const double eta = plan.params.eta;
    dense_plan.params.Omega *= std::exp(0.5 * eta * eta);
  }
  const RunResult dense = run_sequence(dense_plan, alpha0, RunMode::Dense, hamiltonian);
  ModeComparison cmp;
  cmp.validity_metric = closed.validity_metric;
  for (size_t i = 0; i < closed.cycle_probs.size(); ++i)
    cmp.max_prob_deviation = std::max(
        cmp.max_prob_deviation, std::abs(closed.cycle_probs[i] - dense.cycle_probs[i]));
  const double overlap =
      std::norm(inner_product(closed.final_motional, dense.final_motional));
  cmp.final_infidelity = std::max(0.0, 1.0 - overlap);
  return cmp;
}

void export_records(const std::vector<ResultRecord>& records, ExportFormat format,
                    const std::filesystem::path& path) {
  if (records.empty()) throw IoError("export: no records to write");
  std::ostringstream out;
  if (format == ExportFormat::Csv) {
    out << "label,N,a,overlap,p_up,mean_n,var_n,dim\n";
    for (const ResultRecord& r : records) {
      out << r.label << ',' << r.N << ',' << fmt9(r.a) << ',' << fmt9(r.overlap) << ','
          << fmt9(r.p_up) << ',' << fmt9(r.mean_n) << ',' << fmt9(r.var_n) << ','
          << r.dim << '\n';
    }
  } else {
    // Hand-rolled so numbers are printed with exactly 9 significant digits.
    out << "[\n";
    for (size_t i = 0; i < records.size(); ++i) {
      const ResultRecord& r = records[i];
      out << "  {\"label\": " << nlohmann::json(r.label).dump() << ", \"N\": " << r.N
          << ", \"a\": " << fmt9(r.a) << ", \"overlap\": " << fmt9(r.overlap)
          << ", \"p_up\": " << fmt9(r.p_up) << ", \"mean_n\": " << fmt9(r.mean_n)
          << ", \"var_n\": " << fmt9(r.var_n) << ", \"dim\": " << r.dim << "}"
          << (i + 1 < records.size() ? "," : "") << "\n";
    }
    out << "]\n";
  }
  std::ofstream file(path);
  if (!file) throw IoError("export: cannot open " + path.string());
  file << out.str();
  if (!file) throw IoError("export: write failed for " + path.string());
}

std::vector<ResultRecord> import_records_json(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("import: cannot open " + path.string());
  nlohmann::json j;
  file >> j;
  std::vector<ResultRecord> records;
  for (const auto& obj : j) {
    ResultRecord r;
    r.label = obj.at("label").get<std::string>();
    r.N = obj.at("N").get<int>();
    r.a = obj.at("a").get<double>();
    r.overlap = obj.at("overlap").get<double>();
    r.p_up = obj.at("p_up").get<double>();
    r.mean_n = obj.at("mean_n").get<double>();
    r.var_n = obj.at("var_n").get<double>();
    r.dim = obj.at("dim").get<int>();
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace circ
