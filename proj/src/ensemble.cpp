#include "levgas/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <thread>

#include <json.hpp>

#include "levgas/csv.hpp"
#include "levgas/rng.hpp"

namespace levgas {

namespace {

struct RealizationResult {
  bool ok = false;
  double j = 0.0;
  double t_fail = 0.0;
  std::string message;
  Trajectory trajectory;
};

RealizationResult run_one(const RunConfig& base, std::uint64_t master_seed, int index) {
  RunConfig config = base;
  config.seed = derive_seed(master_seed, static_cast<std::uint64_t>(index));
  RealizationResult result;
  result.j = resolve_coupling(config);
  try {
    result.trajectory = run_trajectory(config);
    result.ok = true;
  } catch (const DegenerateLevels& e) {
    result.t_fail = e.time;
    result.message = e.what();
  }
  return result;
}

}  // namespace

EnsembleStats run_ensemble(const RunConfig& config, int realizations,
                           std::uint64_t master_seed, int threads) {
  if (realizations < 1) {
    throw ConfigError("ensemble: at least one realization required");
  }
  validate_config(config);

  std::vector<RealizationResult> results(static_cast<std::size_t>(realizations));
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, realizations);

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (int index = w; index < realizations; index += threads) {
        results[static_cast<std::size_t>(index)] = run_one(config, master_seed, index);
      }
    });
  }
  for (std::thread& th : pool) th.join();

  EnsembleStats stats;
  stats.realizations = realizations;
  stats.master_seed = master_seed;

  const RealizationResult* first_ok = nullptr;
  for (const RealizationResult& r : results) {
    if (r.ok) {
      first_ok = &r;
      break;
    }
  }
  if (first_ok == nullptr) {
    for (int i = 0; i < realizations; ++i) {
      const RealizationResult& r = results[static_cast<std::size_t>(i)];
      stats.failures.push_back({i, r.j, r.t_fail, r.message});
    }
    return stats;
  }

  const std::size_t samples = first_ok->trajectory.samples.size();
  const int n = first_ok->trajectory.dim;
  stats.t.resize(samples);
  stats.lambda.resize(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    stats.t[s] = first_ok->trajectory.samples[s].t;
    stats.lambda[s] = first_ok->trajectory.samples[s].lambda;
  }
  stats.mean_occ = RealMatrix::Zero(static_cast<long>(samples), n);
  stats.std_occ = RealMatrix::Zero(static_cast<long>(samples), n);
  stats.mean_purity.assign(samples, 0.0);
  stats.std_purity.assign(samples, 0.0);
  stats.mean_rho_purity.assign(samples, 0.0);

  RealMatrix occ_sq = RealMatrix::Zero(static_cast<long>(samples), n);
  std::vector<double> purity_sq(samples, 0.0);
  std::vector<ComplexMatrix> rho_sum(samples, ComplexMatrix::Zero(n, n));

  // Sequential reduce in index order keeps the bytes deterministic.
  for (int i = 0; i < realizations; ++i) {
    const RealizationResult& r = results[static_cast<std::size_t>(i)];
    if (!r.ok) {
      stats.failures.push_back({i, r.j, r.t_fail, r.message});
      continue;
    }
    if (r.trajectory.samples.size() != samples) {
      throw Error("ensemble", "realization sample counts differ");
    }
    stats.j_values.push_back(r.j);
    ++stats.completed;
    for (std::size_t s = 0; s < samples; ++s) {
      const TrajectorySample& sample = r.trajectory.samples[s];
      for (int k = 0; k < n; ++k) {
        stats.mean_occ(static_cast<long>(s), k) += sample.occupations[k];
        occ_sq(static_cast<long>(s), k) += sample.occupations[k] * sample.occupations[k];
      }
      stats.mean_purity[s] += sample.purity;
      purity_sq[s] += sample.purity * sample.purity;
      rho_sum[s] += r.trajectory.rho_at(s);
    }
  }

  if (stats.completed == 0) return stats;
  const double inv = 1.0 / static_cast<double>(stats.completed);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int k = 0; k < n; ++k) {
      const double mean = stats.mean_occ(static_cast<long>(s), k) * inv;
      stats.mean_occ(static_cast<long>(s), k) = mean;
      const double var = std::max(0.0, occ_sq(static_cast<long>(s), k) * inv - mean * mean);
      stats.std_occ(static_cast<long>(s), k) = std::sqrt(var);
    }
    const double mean_p = stats.mean_purity[s] * inv;
    stats.mean_purity[s] = mean_p;
    stats.std_purity[s] = std::sqrt(std::max(0.0, purity_sq[s] * inv - mean_p * mean_p));
    stats.mean_rho_purity[s] = purity(ComplexMatrix(rho_sum[s] * inv));
  }
  return stats;
}

void write_ensemble_csv(const EnsembleStats& stats, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  const int n = static_cast<int>(stats.mean_occ.cols());
  out << "t,lambda";
  for (int i = 0; i < n; ++i) out << ",mean_occ_" << i;
  for (int i = 0; i < n; ++i) out << ",std_occ_" << i;
  out << ",mean_purity,std_purity,mean_rho_purity\n";
  for (std::size_t s = 0; s < stats.t.size(); ++s) {
    out << format_double(stats.t[s]) << ',' << format_double(stats.lambda[s]);
    for (int i = 0; i < n; ++i) {
      out << ',' << format_double(stats.mean_occ(static_cast<long>(s), i));
    }
    for (int i = 0; i < n; ++i) {
      out << ',' << format_double(stats.std_occ(static_cast<long>(s), i));
    }
    out << ',' << format_double(stats.mean_purity[s]) << ','
        << format_double(stats.std_purity[s]) << ','
        << format_double(stats.mean_rho_purity[s]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_ensemble_metadata(const EnsembleStats& stats, const RunConfig& config,
                             const std::string& path) {
  nlohmann::json j;
  j["realizations"] = stats.realizations;
  j["completed"] = stats.completed;
  j["master_seed"] = stats.master_seed;
  j["config_hash"] = config_hash(config);
  j["config"] = nlohmann::json::parse(serialize_config(config));
  j["j_values"] = stats.j_values;
  nlohmann::json failures = nlohmann::json::array();
  for (const EnsembleStats::Failure& f : stats.failures) {
    failures.push_back({{"index", f.index},
                        {"J", f.j},
                        {"t_fail", f.t_fail},
                        {"message", f.message}});
  }
  j["failures"] = failures;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace levgas
