// Copyright 2026 The qcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line frontend: reproducible simulation, estimation and
// certification runs with machine-readable outputs. Human summaries go to
// stdout; all machine output goes to files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qcert/certify.hpp"
#include "qcert/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcert;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

std::string default_out_dir() {
  const char* env = std::getenv("QCERT_OUT_DIR");
  return env && *env ? env : ".";
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path.string());
  f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open: " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

std::string file_hash_hex(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return "missing";
  std::ostringstream ss;
  ss << f.rdbuf();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(ss.str())));
  return buf;
}

SchmidtSpectrum lambda_from_file(const fs::path& path) {
  json j = read_json(path);
  std::vector<double> lam;
  try {
    if (j.is_array()) lam = j.get<std::vector<double>>();
    else if (j.contains("lambda")) lam = j.at("lambda").get<std::vector<double>>();
    else throw DataError("lambda file must be an array or contain a \"lambda\" key");
  } catch (const json::exception& e) {
    throw DataError("malformed lambda file " + path.string() + ": " + e.what());
  }
  return SchmidtSpectrum::normalized(std::move(lam));
}

std::vector<double> parse_eta(const std::string& csv, int d) {
  if (csv.empty()) return std::vector<double>(static_cast<size_t>(d), 1.0);
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse loss entry: " + item);
    }
  }
  if (static_cast<int>(out.size()) != d)
    throw ConfigError("loss vector needs exactly d entries");
  return out;
}

std::pair<int, int> parse_range(const std::string& spec) {
  try {
    const auto pos = spec.find("..");
    if (pos == std::string::npos) {
      const int v = std::stoi(spec);
      return {v, v};
    }
    return {std::stoi(spec.substr(0, pos)), std::stoi(spec.substr(pos + 2))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse range: " + spec + " (expected N or A..B)");
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string family = "phiplus";
  int d = 0;
  double p = 1.0;
  int k = 1;
  std::string lambda_file;
  int M = 1;
  double pair_rate = 1e6;
  double exposure = 1.0;
  double accidental = 0.0;
  std::string eta_a, eta_b;
  uint64_t seed = 0;
  std::string out_dir = default_out_dir();
  std::string format = "json";
  bool dump_bases = false;
};

DensityMatrix build_state(const SimulateOpts& o, SchmidtSpectrum& lambda_out) {
  if (o.family == "target") {
    if (o.lambda_file.empty()) throw ConfigError("--family target requires --lambda-file");
    lambda_out = lambda_from_file(o.lambda_file);
    return pure_target_state(lambda_out);
  }
  if (o.family == "dephased") {
    lambda_out = o.lambda_file.empty() ? SchmidtSpectrum::uniform(o.d)
                                       : lambda_from_file(o.lambda_file);
    return dephased_state(lambda_out, o.p);
  }
  if (o.d < 1) throw ConfigError("--d is required for family " + o.family);
  lambda_out = SchmidtSpectrum::uniform(o.d);
  if (o.family == "phiplus") return pure_target_state(lambda_out);
  if (o.family == "isotropic") return isotropic_state(o.d, o.p);
  if (o.family == "rank-k") return rank_k_mixture(o.d, o.k);
  throw ConfigError("unknown state family: " + o.family);
}

int run_simulate(const SimulateOpts& o) {
  SchmidtSpectrum lambda = SchmidtSpectrum::uniform(2);
  const DensityMatrix rho = build_state(o, lambda);
  const int d = lambda.dim();
  LossModel loss;
  loss.eta_a = parse_eta(o.eta_a, d);
  loss.eta_b = parse_eta(o.eta_b, d);

  std::vector<MeasurementSetting> settings;
  settings.push_back({correlation_setting(standard_basis(d)), "standard"});
  const std::string prefix = lambda.is_uniform() ? "mub" : "tilt";
  for (int k = 0; k < o.M; ++k)
    settings.push_back({correlation_setting(tilted_basis(lambda, k)), prefix + std::to_string(k)});

  const fs::path dir(o.out_dir);
  json manifest = {{"schema", 1},
                   {"command", "simulate"},
                   {"family", o.family},
                   {"d", d},
                   {"p", o.p},
                   {"k", o.k},
                   {"lambda", lambda.values()},
                   {"M", o.M},
                   {"pair_rate", o.pair_rate},
                   {"exposure", o.exposure},
                   {"accidental_rate", o.accidental},
                   {"eta_A", loss.eta_a},
                   {"eta_B", loss.eta_b},
                   {"seed", o.seed},
                   {"settings", json::array()}};
  for (const auto& s : settings) {
    const RMat probs = setting_probabilities(rho, s);
    CoincidenceTable t =
        sample_counts(probs, o.pair_rate, o.exposure, loss, o.accidental, o.seed, s.label);
    t.meta["kind"] = to_string(s.basis.basis_a.kind);
    t.meta["k"] = s.basis.basis_a.k;
    t.meta["lambda"] = lambda.values();
    const fs::path file = dir / (s.label + ".json");
    write_json(file, table_to_json(t));
    if (o.format == "csv") write_text(dir / (s.label + ".csv"), table_to_csv(t));
    manifest["settings"].push_back(s.label + ".json");
  }
  if (o.dump_bases) {
    json bases = json::array();
    for (const auto& s : settings) bases.push_back(basis_to_json(s.basis.basis_a));
    write_json(dir / "bases.json", json{{"schema", 1}, {"bases", bases}});
  }
  write_json(dir / "manifest.json", manifest);
  std::cout << "wrote " << settings.size() << " coincidence tables + manifest to " << dir.string()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- certify

struct CertifyOpts {
  std::string dir;
  std::string standard_file;
  std::vector<std::string> tilted_files;
  bool assume_uniform = false;
  bool loss_correct_std = false;
  bool loss_correct_all = false;
  int resamples = 1000;
  uint64_t seed = 1;
  std::string out_file;
};

struct LoadedTables {
  CoincidenceTable standard;
  std::vector<CoincidenceTable> tilted;  // sorted by k
  std::vector<fs::path> files;
};

int table_tilt_index(const CoincidenceTable& t) {
  if (t.meta.contains("k") && t.meta.at("k").is_number_integer())
    return t.meta.at("k").get<int>();
  const std::string& l = t.label;
  for (const char* prefix : {"tilt", "mub"})
    if (l.rfind(prefix, 0) == 0) {
      try {
        return std::stoi(l.substr(std::string(prefix).size()));
      } catch (const std::exception&) {
        break;
      }
    }
  throw DataError("cannot infer tilt index from label: " + l);
}

LoadedTables load_tables(const CertifyOpts& o) {
  LoadedTables lt;
  std::vector<fs::path> files;
  if (!o.dir.empty() && !o.standard_file.empty())
    throw ConfigError("--dir and --standard are mutually exclusive");
  if (!o.dir.empty()) {
    if (!fs::is_directory(o.dir)) throw ConfigError("--dir is not a directory: " + o.dir);
    for (const auto& e : fs::directory_iterator(o.dir))
      if (e.path().extension() == ".json" && e.path().filename() != "manifest.json" &&
          e.path().filename() != "report.json" && e.path().filename() != "bases.json")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    if (o.standard_file.empty())
      throw ConfigError("either --dir or --standard (plus --tilted) is required");
    files.emplace_back(o.standard_file);
    for (const auto& f : o.tilted_files) files.emplace_back(f);
  }

  auto load_one = [](const fs::path& f) {
    if (f.extension() == ".csv") {
      std::ifstream in(f, std::ios::binary);
      if (!in) throw DataError("cannot open: " + f.string());
      std::ostringstream ss;
      ss << in.rdbuf();
      return table_from_csv(f.stem().string(), ss.str());
    }
    return table_from_json(read_json(f));
  };

  bool have_std = false;
  std::vector<CoincidenceTable> tilted;
  for (const auto& f : files) {
    CoincidenceTable t = load_one(f);
    lt.files.push_back(f);
    if (t.label == "standard") {
      if (have_std) throw DataError("more than one standard table supplied");
      lt.standard = std::move(t);
      have_std = true;
    } else {
      tilted.push_back(std::move(t));
    }
  }
  if (!have_std) throw ConfigError("no table labeled \"standard\" was supplied");
  if (tilted.empty()) throw ConfigError("at least one tilted/mub table is required");
  std::sort(tilted.begin(), tilted.end(),
            [](const CoincidenceTable& a, const CoincidenceTable& b) {
              return table_tilt_index(a) < table_tilt_index(b);
            });
  // The multi-basis penalty coefficients assume the family k = 0..M-1.
  for (size_t i = 0; i < tilted.size(); ++i)
    if (table_tilt_index(tilted[i]) != static_cast<int>(i))
      throw DataError("tilted tables must cover basis indices 0..M-1 without gaps; found index " +
                      std::to_string(table_tilt_index(tilted[i])) + " at position " +
                      std::to_string(i));
  for (const auto& t : tilted)
    if (t.dim != lt.standard.dim)
      throw DimensionMismatch("table " + t.label + " has dimension " + std::to_string(t.dim) +
                              " but standard has " + std::to_string(lt.standard.dim));
  lt.tilted = std::move(tilted);
  return lt;
}

DiagonalEstimate standard_estimate(const CoincidenceTable& t, bool loss_corrected) {
  if (!loss_corrected) return estimate_standard(t);
  const LossCorrection lc = loss_correct(t);
  return DiagonalEstimate{t.label, lc.corrected, 1.0};
}

CertificationReport certify_tables(const CoincidenceTable& std_table,
                                   const std::vector<CoincidenceTable>& tilted_tables,
                                   const CertifyOpts& o,
                                   std::vector<DiagonalEstimate>* estimates_out = nullptr) {
  DiagonalEstimate std_est = standard_estimate(std_table, o.loss_correct_std || o.loss_correct_all);
  const SchmidtSpectrum lambda = o.assume_uniform
                                     ? SchmidtSpectrum::uniform(std_table.dim)
                                     : nominate_target(std_est);
  if (!o.assume_uniform) lambda.require_strictly_positive();
  std::vector<DiagonalEstimate> tilted;
  tilted.reserve(tilted_tables.size());
  for (const auto& t : tilted_tables) {
    if (o.loss_correct_all) {
      const LossCorrection lc = loss_correct(t);
      DiagonalEstimate e{t.label, lc.corrected * c_lambda(lambda, std_est.values),
                         c_lambda(lambda, std_est.values)};
      tilted.push_back(std::move(e));
    } else {
      tilted.push_back(estimate_tilted(t, lambda, std_est));
    }
  }
  if (estimates_out) {
    estimates_out->clear();
    estimates_out->push_back(std_est);
    for (const auto& e : tilted) estimates_out->push_back(e);
  }
  return certify(std_est, tilted, lambda);
}

int run_certify(const CertifyOpts& o) {
  LoadedTables lt = load_tables(o);
  std::vector<DiagonalEstimate> estimates;
  CertificationReport report = certify_tables(lt.standard, lt.tilted, o, &estimates);

  if (o.resamples > 0) {
    std::vector<CoincidenceTable> all;
    all.push_back(lt.standard);
    for (const auto& t : lt.tilted) all.push_back(t);
    PipelineFn pipeline = [&](const std::vector<CoincidenceTable>& tables) {
      std::vector<CoincidenceTable> tilts(tables.begin() + 1, tables.end());
      CertificationReport r = certify_tables(tables.front(), tilts, o);
      PipelineScalars s{{"f_tilde", r.f_tilde}, {"d_ent", double(r.d_ent)}};
      if (r.eof_bound_ebits) s["eof_bound"] = *r.eof_bound_ebits;
      const int k = r.d_ent;
      s["margin_lower"] = r.f_tilde - (k >= 2 ? r.thresholds[size_t(k - 2)] : 0.0);
      if (k < r.d) s["margin_upper"] = r.thresholds[size_t(k - 1)] - r.f_tilde;
      return s;
    };
    const ResampleSummary rs = resample_pipeline(all, {o.resamples, o.seed}, pipeline);
    if (rs.stats.count("f_tilde")) report.f_tilde_sigma = rs.stats.at("f_tilde").sigma;
    if (rs.stats.count("eof_bound")) report.eof_sigma = rs.stats.at("eof_bound").sigma;
    report.provenance["resamples"] = o.resamples;
    report.provenance["resample_seed"] = o.seed;
    report.provenance["resample_failures"] = rs.n_failed;
    if (rs.stats.count("d_ent")) {
      report.provenance["d_ent_resample_mean"] = rs.stats.at("d_ent").mean;
      report.provenance["d_ent_resample_sigma"] = rs.stats.at("d_ent").sigma;
    }
    for (const char* margin : {"margin_lower", "margin_upper"})
      if (rs.stats.count(margin))
        report.provenance[margin] = {{"mean", rs.stats.at(margin).mean},
                                     {"sigma", rs.stats.at(margin).sigma}};
  }

  json inputs = json::array();
  for (const auto& f : lt.files)
    inputs.push_back({{"path", f.string()}, {"hash_fnv1a64", file_hash_hex(f)}});
  report.provenance["inputs"] = inputs;
  report.provenance["assume_uniform"] = o.assume_uniform;
  report.provenance["loss_corrected"] = o.loss_correct_std || o.loss_correct_all;

  fs::path out = o.out_file.empty()
                     ? (o.dir.empty() ? fs::path("report.json") : fs::path(o.dir) / "report.json")
                     : fs::path(o.out_file);
  json report_json = report_to_json(report);
  report_json["estimates"] = json::array();
  for (const auto& e : estimates) report_json["estimates"].push_back(estimate_to_json(e));
  write_json(out, report_json);

  std::cout << "d = " << report.d << ", M = " << report.M
            << (o.assume_uniform ? " (maximally entangled target)" : " (nominated target)") << "\n";
  std::cout << "F~ = " << report.f_tilde;
  if (report.f_tilde_sigma) std::cout << " +/- " << *report.f_tilde_sigma;
  std::cout << "\nB_k:";
  for (size_t k = 0; k < report.thresholds.size(); ++k)
    std::cout << " B_" << (k + 1) << "=" << report.thresholds[k];
  std::cout << "\nd_ent = " << report.d_ent
            << (report.flags.entanglement_certified ? "  (entanglement certified)"
                                                    : "  (no entanglement certified)")
            << "\n";
  if (report.eof_bound_ebits) {
    std::cout << "EoF >= " << *report.eof_bound_ebits;
    if (report.eof_sigma) std::cout << " +/- " << *report.eof_sigma;
    std::cout << " ebits\n";
  }
  if (report.flags.nonprime_m_warning)
    std::cout << "note: M > 1 in non-prime dimension; improvement over M = 1 "
                 "is not guaranteed\n";
  std::cout << "report written to " << out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepOpts {
  std::string family = "isotropic";
  std::string d_spec = "3";
  std::string m_spec = "1";
  int grid = 101;
  std::string out_file;
};

int run_sweep(const SweepOpts& o) {
  const fs::path out = o.out_file.empty()
                           ? fs::path(default_out_dir()) / (o.family + "_sweep.csv")
                           : fs::path(o.out_file);
  fs::path thresholds_file = out;
  thresholds_file.replace_extension();
  thresholds_file += "_thresholds.json";

  const auto [d_lo, d_hi] = parse_range(o.d_spec);
  const auto [m_lo, m_hi] = parse_range(o.m_spec);
  std::ostringstream csv;

  if (o.family == "isotropic") {
    const int d = d_lo;
    const int M = m_lo;
    std::vector<double> grid;
    for (int i = 0; i < o.grid; ++i) grid.push_back(double(i) / double(o.grid - 1));
    csv << "p,f_tilde,d_ent,eof_bound\n";
    for (const auto& pt : isotropic_sweep(d, grid, M))
      csv << pt.x << "," << pt.f_tilde << "," << pt.d_ent << "," << *pt.eof_ebits << "\n";
    json th = {{"schema", 1}, {"family", "isotropic"}, {"d", d}, {"M", M}};
    th["p_k"] = isotropic_thresholds(d, M);
    th["eof_zero_crossing"] = eof_zero_crossing(d, M);
    write_json(thresholds_file, th);
  } else if (o.family == "rotation") {
    const int M = m_lo;
    std::vector<double> grid;
    for (int i = 0; i < o.grid; ++i)
      grid.push_back(std::numbers::pi / 2.0 * double(i) / double(o.grid - 1));
    csv << "theta,f_tilde,d_ent\n";
    for (const auto& pt : rotation_sweep(grid, M))
      csv << pt.x << "," << pt.f_tilde << "," << pt.d_ent << "\n";
    write_json(thresholds_file,
               json{{"schema", 1},
                    {"family", "rotation"},
                    {"M", M},
                    {"theta_max_full_dimensionality", rotation_full_rank_threshold(M)}});
  } else if (o.family == "m-compare") {
    const int d = d_lo;
    csv << "M,k,p_k\n";
    json th = {{"schema", 1}, {"family", "m-compare"}, {"d", d}, {"curves", json::object()}};
    for (int M = m_lo; M <= m_hi; ++M) {
      const auto pk = isotropic_thresholds(d, M);
      for (size_t k = 0; k < pk.size(); ++k) csv << M << "," << (k + 1) << "," << pk[k] << "\n";
      th["curves"][std::to_string(M)] = pk;
    }
    write_json(thresholds_file, th);
  } else if (o.family == "eof-crit") {
    csv << "d,M,p_crit,p_crit_formula,p_crit_bw\n";
    for (int d = d_lo; d <= d_hi; ++d)
      for (int M = m_lo; M <= m_hi; ++M)
        csv << d << "," << M << "," << eof_zero_crossing(d, M) << ","
            << critical_visibility(d, M) << "," << critical_visibility_bw(d) << "\n";
  } else {
    throw ConfigError("unknown sweep family: " + o.family);
  }

  write_text(out, csv.str());
  std::cout << "sweep written to " << out.string() << "\n";
  if (o.family != "eof-crit")
    std::cout << "thresholds written to " << thresholds_file.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- ghz

struct GhzOpts {
  int n = 3;
  int d = 2;
  double p = 1.0;
  std::string lambda_file;
  std::string rho_file;
  std::string out_file;
};

int run_ghz(const GhzOpts& o) {
  const SchmidtSpectrum lambda =
      o.lambda_file.empty() ? SchmidtSpectrum::uniform(o.d) : lambda_from_file(o.lambda_file);
  const int d = lambda.dim();
  const DensityMatrix target = ghz_state(lambda, o.n);

  DensityMatrix rho = target;
  if (!o.rho_file.empty()) {
    json j = read_json(o.rho_file);
    try {
      rho = DensityMatrix(j.at("dims").get<std::vector<int>>(), matrix_from_json(j.at("matrix")));
    } catch (const json::exception& e) {
      throw DataError("malformed state file " + o.rho_file + ": " + e.what());
    }
    rho.validate(1e-9, 1e-9, 1e-8);
  } else if (o.p < 1.0) {
    const Eigen::Index D = target.mat.rows();
    CMat m = o.p * target.mat + (1.0 - o.p) / double(D) * CMat::Identity(D, D);
    rho = DensityMatrix(rho.dims, std::move(m));
  }

  const double bound = ghz_fidelity_bound(rho, lambda, o.n);
  const double exact = exact_fidelity(rho, target);
  std::cout << "n = " << o.n << ", d = " << d << "\n";
  std::cout << "fidelity bound  = " << bound << "\n";
  std::cout << "exact fidelity  = " << exact << "\n";
  if (!o.out_file.empty())
    write_json(o.out_file, json{{"schema", 1},
                                {"n", o.n},
                                {"d", d},
                                {"lambda", lambda.values()},
                                {"p", o.p},
                                {"fidelity_bound", bound},
                                {"exact_fidelity", exact}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-dimensional entanglement certification from two-basis coincidence data"};
  app.require_subcommand(1);

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "synthesize coincidence tables for a model state");
  sim->add_option("--family", so.family, "phiplus|target|isotropic|dephased|rank-k");
  sim->add_option("--d", so.d, "local dimension");
  sim->add_option("--p", so.p, "visibility/mixing parameter");
  sim->add_option("--k", so.k, "rank parameter for rank-k");
  sim->add_option("--lambda-file", so.lambda_file, "JSON Schmidt coefficients");
  sim->add_option("--M", so.M, "number of tilted bases")->check(CLI::PositiveNumber);
  sim->add_option("--pair-rate", so.pair_rate, "produced pairs per time unit");
  sim->add_option("--exposure", so.exposure, "integration time per setting");
  sim->add_option("--accidental", so.accidental, "flat accidental rate per cell per time unit");
  sim->add_option("--eta-a", so.eta_a, "comma-separated per-mode efficiencies, arm A");
  sim->add_option("--eta-b", so.eta_b, "comma-separated per-mode efficiencies, arm B");
  sim->add_option("--seed", so.seed, "RNG seed");
  sim->add_option("--out", so.out_dir, "output directory");
  sim->add_option("--format", so.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sim->add_flag("--dump-bases", so.dump_bases, "also write the measurement bases as bases.json");

  CertifyOpts co;
  auto* cert = app.add_subcommand("certify", "run the two-basis witness on coincidence tables");
  cert->add_option("--dir", co.dir, "directory of table JSONs");
  cert->add_option("--standard", co.standard_file, "standard-basis table JSON");
  cert->add_option("--tilted", co.tilted_files, "tilted/MUB table JSONs");
  cert->add_flag("--assume-uniform", co.assume_uniform,
                 "certify against the maximally entangled target");
  cert->add_flag("--loss-correct", co.loss_correct_std,
                 "correct mode-dependent loss on the standard table (needs singles)");
  cert->add_flag("--loss-correct-all", co.loss_correct_all,
                 "correct mode-dependent loss on every table");
  cert->add_option("--resamples", co.resamples, "Monte-Carlo resamples for error bars (0 = off)");
  cert->add_option("--seed", co.seed, "resampling seed");
  cert->add_option("--out", co.out_file, "report JSON path");

  SweepOpts wo;
  auto* sweep = app.add_subcommand("sweep", "analytic parameter sweeps");
  sweep->add_option("--family", wo.family, "isotropic|rotation|m-compare|eof-crit");
  sweep->add_option("--d", wo.d_spec, "dimension or range a..b");
  sweep->add_option("--M", wo.m_spec, "bases count or range a..b");
  sweep->add_option("--grid", wo.grid, "grid points")->check(CLI::Range(2, 100000));
  sweep->add_option("--out", wo.out_file, "CSV output path");

  GhzOpts go;
  auto* ghz = app.add_subcommand("ghz", "multipartite GHZ-state fidelity bound");
  ghz->add_option("--n", go.n, "number of parties")->check(CLI::Range(2, 16));
  ghz->add_option("--d", go.d, "local dimension");
  ghz->add_option("--p", go.p, "visibility against white noise");
  ghz->add_option("--lambda-file", go.lambda_file, "JSON GHZ weights");
  ghz->add_option("--rho-file", go.rho_file, "serialized state JSON {dims, matrix}");
  ghz->add_option("--out", go.out_file, "report JSON path");

  try {
    app.parse(argc, argv);
    if (*sim) return run_simulate(so);
    if (*cert) return run_certify(co);
    if (*sweep) return run_sweep(wo);
    if (*ghz) return run_ghz(go);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
