#include "dfarpl/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dfarpl/engine.hpp"

namespace dfarpl {

void SweepSpec::validate() const {
  if (seeds.empty()) throw ConfigError("sweep: seeds must be nonempty");
  if (ratios.empty()) throw ConfigError("sweep: ratios must be nonempty");
  for (double r : ratios)
    if (r < 0.0 || r > 1.0) throw ConfigError("sweep: ratio outside [0,1]");
  base.validate();
}

namespace {

SweepRow run_point(const SweepSpec& spec, double ratio, std::uint64_t seed) {
  SweepRow row;
  row.ratio = ratio;
  row.seed = seed;
  row.detection = spec.detection_enabled;
  try {
    SimConfig cfg = spec.base;
    cfg.intruder_ratio = ratio;
    cfg.rng_seed = seed;
    cfg.detection_enabled = spec.detection_enabled;
    Simulation sim(cfg);
    sim.set_collect_trace(false);
    auto res = sim.run();
    row.pdr = res.metrics.pdr;
    row.dr = res.metrics.dr;
    row.fpr = res.metrics.fpr;
    row.fnr = res.metrics.fnr;
    row.sent = res.metrics.delivery.sent;
    row.received = res.metrics.delivery.received;
    row.tp = res.metrics.confusion.tp;
    row.fp = res.metrics.confusion.fp;
    row.tn = res.metrics.confusion.tn;
    row.fn = res.metrics.confusion.fn;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

} // namespace

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.ratios.size() * spec.seeds.size());
  for (double r : spec.ratios)
    for (std::uint64_t s : spec.seeds) rows.push_back(run_point(spec, r, s));
  return rows;
}

std::vector<SweepRow> run_sweep_parallel(const SweepSpec& spec) {
  spec.validate();
  const long n_r = static_cast<long>(spec.ratios.size());
  const long n_s = static_cast<long>(spec.seeds.size());
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_r * n_s));
  // runs are fully isolated; output index fixes (ratio, seed) order
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (long i = 0; i < n_r; ++i)
    for (long j = 0; j < n_s; ++j)
      rows[static_cast<std::size_t>(i * n_s + j)] =
          run_point(spec, spec.ratios[static_cast<std::size_t>(i)],
                    spec.seeds[static_cast<std::size_t>(j)]);
  return rows;
}

std::vector<AggRow> aggregate(const std::vector<SweepRow>& rows) {
  std::vector<AggRow> out;
  for (const auto& row : rows) {
    if (out.empty() || out.back().ratio != row.ratio)
      out.push_back({row.ratio, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  }

  auto mean_stdev = [](const std::vector<double>& xs, double& mean,
                       double& stdev) {
    mean = 0.0;
    stdev = 0.0;
    if (xs.empty()) return;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  };

  for (auto& agg : out) {
    std::vector<double> pdr, dr, fpr, fnr;
    for (const auto& row : rows) {
      if (row.ratio != agg.ratio || !row.error.empty()) continue;
      ++agg.n_runs;
      if (row.pdr) pdr.push_back(*row.pdr);
      if (row.dr) dr.push_back(*row.dr);
      if (row.fpr) fpr.push_back(*row.fpr);
      if (row.fnr) fnr.push_back(*row.fnr);
    }
    mean_stdev(pdr, agg.pdr_mean, agg.pdr_stdev);
    mean_stdev(dr, agg.dr_mean, agg.dr_stdev);
    mean_stdev(fpr, agg.fpr_mean, agg.fpr_stdev);
    mean_stdev(fnr, agg.fnr_mean, agg.fnr_stdev);
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : "na";
}

} // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "intruder_ratio,seed,detection,pdr,dr,fpr,fnr,sent,received,tp,fp,tn,fn,error\n";
  for (const auto& r : rows) {
    os << fmt(r.ratio) << ',' << r.seed << ',' << (r.detection ? 1 : 0) << ','
       << fmt(r.pdr) << ',' << fmt(r.dr) << ',' << fmt(r.fpr) << ','
       << fmt(r.fnr) << ',' << r.sent << ',' << r.received << ',' << r.tp
       << ',' << r.fp << ',' << r.tn << ',' << r.fn << ',' << r.error << '\n';
  }
  return os.str();
}

std::string agg_csv(const std::vector<AggRow>& rows) {
  std::ostringstream os;
  os << "intruder_ratio,n_runs,pdr_mean,pdr_stdev,dr_mean,dr_stdev,"
        "fpr_mean,fpr_stdev,fnr_mean,fnr_stdev\n";
  for (const auto& r : rows) {
    os << fmt(r.ratio) << ',' << r.n_runs << ',' << fmt(r.pdr_mean) << ','
       << fmt(r.pdr_stdev) << ',' << fmt(r.dr_mean) << ',' << fmt(r.dr_stdev)
       << ',' << fmt(r.fpr_mean) << ',' << fmt(r.fpr_stdev) << ','
       << fmt(r.fnr_mean) << ',' << fmt(r.fnr_stdev) << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

} // namespace

SweepSpec load_sweep_spec(const std::string& path, const SimConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep file: " + path);

  SweepSpec spec;
  spec.base = base;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);

    if (key == "ratios") {
      for (const auto& v : split(value, ','))
        spec.ratios.push_back(std::stod(v));
    } else if (key == "seeds") {
      for (const auto& v : split(value, ','))
        spec.seeds.push_back(std::stoull(v));
    } else if (key == "detection") {
      if (value == "on")
        spec.detection_enabled = true;
      else if (value == "off")
        spec.detection_enabled = false;
      else
        throw ConfigError("sweep: detection must be on|off");
    } else {
      apply_key_value(spec.base, key, value);
    }
  }
  spec.validate();
  return spec;
}

} // namespace dfarpl
