#include "semigrowth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "semigrowth/csv.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/grid.hpp"

namespace semigrowth {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string_view to_string(Verb v) {
  switch (v) {
    case Verb::check: return "check";
    case Verb::curve: return "curve";
    case Verb::certify: return "certify";
    case Verb::classify: return "classify";
  }
  return "check";
}

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const HypothesisError*>(&e)) return "hypothesis_unmet";
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  if (dynamic_cast<const RangeError*>(&e)) return "range_error";
  if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition_error";
  if (dynamic_cast<const SingularityError*>(&e)) return "singularity";
  if (dynamic_cast<const ModelError*>(&e)) return "model_error";
  return "error";
}

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& sink, std::string name)
      : sink_(sink), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    sink_.emplace_back(name_, std::chrono::duration<double>(dt).count());
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

GrowthCurve scaled(const GrowthCurve& c, double factor) {
  GrowthCurve out = c;
  for (auto& v : out.values) v *= factor;
  for (auto& v : out.truncation) v *= factor;
  return out;
}

const MonotoneFn& need_envelope(const RunReport& r) {
  if (!r.envelope) throw ModelError("resolvent envelope unavailable: " + r.envelope_error);
  return *r.envelope;
}

BoundReport run_check(const RunReport& rep, const SpectralModel& model, const CheckSpec& spec,
                      const std::vector<double>& s_grid, const std::vector<double>& eta_grid,
                      std::optional<Classification>& classification) {
  const GrowthCurve curve = spec.curve_scale ? scaled(*rep.curve, *spec.curve_scale) : *rep.curve;
  const auto c_grid = spec.c_grid.value_or(default_c_grid());
  switch (spec.id) {
    case CheckId::banach_upper: return check_banach_upper(curve, need_envelope(rep), c_grid);
    case CheckId::hilbert_upper: return check_hilbert_upper(curve, need_envelope(rep));
    case CheckId::lower_41b: return check_lower_41b(curve, need_envelope(rep), spec.c.value_or(0.5));
    case CheckId::resolvent_41a: return check_resolvent_41a(model, k_function(curve), c_grid, eta_grid);
    case CheckId::sandwich_62: return check_sandwich_62(curve, need_envelope(rep), spec.epsilon.value_or(0.1));
    case CheckId::yosida_log: return check_yosida_log(model, eta_grid);
    case CheckId::classical_cp: return check_classical(curve, need_envelope(rep), false);
    case CheckId::classical_eberhardt: return check_classical(curve, need_envelope(rep), true);
    case CheckId::holomorphic_classify: {
      ClassifyOptions opt;
      opt.s_grid = s_grid;
      opt.eta_grid = eta_grid;
      classification = classify_regularity(curve, model, opt);
      return classification->report;
    }
  }
  throw ConfigError("unknown check id");
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json bound_json(const BoundReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["fitted_c"] = r.fitted_c ? number_or_null(*r.fitted_c) : Json(nullptr);
  j["fitted_C"] = number_or_null(r.fitted_C);
  j["threshold_t0"] = r.threshold ? number_or_null(*r.threshold) : Json(nullptr);
  j["axis"] = r.x_label;
  j["window"] = {number_or_null(r.window_lo), number_or_null(r.window_hi)};
  Json sups = Json::array();
  for (double v : r.decade_sups) sups.push_back(number_or_null(v));
  j["decade_sups"] = sups;
  j["points"] = r.ratio_series.size();
  j["notes"] = r.notes;
  return j;
}

std::string csv_name(CheckId id) { return std::string(to_string(id)) + ".csv"; }

}  // namespace

int RunReport::exit_code() const {
  switch (verb) {
    case Verb::curve: return 0;
    case Verb::certify:
      return certificate && certificate->certificate && certificate->verification &&
                     certificate->verification->pass
                 ? 0
                 : 1;
    case Verb::check:
    case Verb::classify:
      for (const auto& c : checks) {
        if (c.verdict() != Verdict::pass) return 1;
      }
      return 0;
  }
  return 1;
}

RunReport run_pipeline(const RunConfig& config, Verb verb) {
  RunReport rep;
  rep.config = config;
  rep.verb = verb;
  Stopwatch total(rep.timing, "total");

  const SpectralModel model = build_model(config.model);
  const auto t_grid = log_grid_descending(config.t_grid.min, config.t_grid.max, config.t_grid.per_decade);
  const auto s_grid = log_grid(config.s_grid.min, config.s_grid.max, config.s_grid.per_decade);
  const auto eta_grid = log_grid(config.eta_grid.min, config.eta_grid.max, config.eta_grid.per_decade);

  if (verb != Verb::certify) {
    Stopwatch sw(rep.timing, "growth_curve");
    rep.curve = growth_curve(model, t_grid, config.model.type);
    rep.curve_certified = rep.curve->certified;
    for (std::size_t i = 0; i < rep.curve->t.size(); ++i) {
      rep.max_relative_truncation =
          std::max(rep.max_relative_truncation, rep.curve->truncation[i] / rep.curve->values[i]);
    }
  }
  {
    Stopwatch sw(rep.timing, "resolvent_envelope");
    try {
      rep.envelope = resolvent_envelope(model, s_grid);
    } catch (const Error& e) {
      rep.envelope_error = e.what();
    }
  }

  if (verb == Verb::certify || verb == Verb::check) {
    Stopwatch sw(rep.timing, "certificate");
    CertificateRecord rec;
    try {
      const auto& M = need_envelope(rep);
      rec.certificate = find_certificate(M);
      if (rec.certificate) {
        rec.verification = verify_certificate(M, *rec.certificate, 4096, config.seed);
        rec.polynomial_floor = polynomial_floor_check(M, *rec.certificate);
      }
    } catch (const Error& e) {
      rec.error = e.what();
    }
    rep.certificate = std::move(rec);
  }

  std::vector<CheckSpec> specs;
  if (verb == Verb::check) specs = config.checks;
  if (verb == Verb::classify) {
    CheckSpec c;
    c.id = CheckId::holomorphic_classify;
    specs.push_back(c);
  }
  for (const auto& spec : specs) {
    Stopwatch sw(rep.timing, std::string(to_string(spec.id)));
    CheckResult res;
    res.id = spec.id;
    try {
      res.report = run_check(rep, model, spec, s_grid, eta_grid, rep.classification);
    } catch (const Error& e) {
      res.error_kind = error_kind(e);
      res.error = e.what();
    }
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

std::string report_document(const RunReport& rep) {
  Json j;
  j["tool"] = "semigrowth";
  j["verb"] = std::string(to_string(rep.verb));
  j["config"] = echo_config(rep.config);
  j["big_o_rule"] =
      "decade-wise sup of the ratio non-increasing within 10% slack over at least two decades";
  if (rep.curve) {
    Json m;
    m["points"] = rep.curve->t.size();
    m["certified"] = rep.curve_certified;
    m["max_relative_truncation"] = number_or_null(rep.max_relative_truncation);
    j["growth_curve"] = m;
  }
  if (rep.envelope) {
    j["envelope"] = {{"points", rep.envelope->size()},
                     {"s_min", rep.envelope->domain_start()},
                     {"s_max", rep.envelope->domain_end()}};
  } else {
    j["envelope"] = {{"error", rep.envelope_error}};
  }
  if (rep.certificate) {
    Json c;
    if (rep.certificate->certificate) {
      const auto& cert = *rep.certificate->certificate;
      c["found"] = true;
      c["alpha"] = cert.alpha;
      c["c0"] = cert.c0;
      c["s0"] = cert.s0;
      if (rep.certificate->verification) {
        c["verified"] = rep.certificate->verification->pass;
        c["worst_ratio"] = number_or_null(rep.certificate->verification->worst_ratio);
        c["probes"] = rep.certificate->verification->probes;
        c["seed"] = rep.config.seed;
      }
      if (rep.certificate->polynomial_floor) c["polynomial_floor_c1"] = *rep.certificate->polynomial_floor;
    } else {
      c["found"] = false;
      if (!rep.certificate->error.empty()) c["error"] = rep.certificate->error;
    }
    j["certificate"] = c;
  }
  if (rep.classification) {
    const auto& cl = *rep.classification;
    Json c;
    c["class"] = std::string(to_string(cl.regularity));
    c["alpha"] = cl.alpha ? Json(*cl.alpha) : Json(nullptr);
    c["gevrey_beta_above"] = cl.gevrey_beta ? Json(*cl.gevrey_beta) : Json(nullptr);
    c["semigroup_bounded"] = cl.semigroup_side;
    c["resolvent_bounded"] = cl.resolvent_side;
    c["slopes"] = cl.slopes;
    j["classification"] = c;
  }
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json item;
    item["id"] = std::string(to_string(c.id));
    if (c.report) {
      item.update(bound_json(*c.report));
      item["csv"] = csv_name(c.id);
    } else {
      item["verdict"] = "error";
      item["error_kind"] = c.error_kind;
      item["error"] = c.error;
    }
    checks.push_back(item);
  }
  j["checks"] = checks;
  j["exit_code"] = rep.exit_code();
  return j.dump(2) + "\n";
}

std::string summary_text(const RunReport& rep) {
  std::ostringstream os;
  char line[256];
  os << "semigrowth " << to_string(rep.verb) << " (model: " << rep.config.model.type << ")\n";
  if (rep.certificate) {
    if (rep.certificate->certificate) {
      const auto& c = *rep.certificate->certificate;
      std::snprintf(line, sizeof line, "positive increase: alpha=%.4g c0=%.4g s0=%.4g verified=%s\n", c.alpha, c.c0,
                    c.s0, rep.certificate->verification && rep.certificate->verification->pass ? "yes" : "no");
      os << line;
    } else {
      os << "positive increase: no certificate\n";
    }
  }
  if (rep.classification) os << "class: " << to_string(rep.classification->regularity) << "\n";
  if (!rep.checks.empty()) {
    std::snprintf(line, sizeof line, "%-22s %-13s %-12s %-12s %s\n", "check", "verdict", "fitted_c", "fitted_C",
                  "window");
    os << line;
    for (const auto& c : rep.checks) {
      if (c.report) {
        const auto& r = *c.report;
        char fc_buf[32] = "-";
        if (r.fitted_c) std::snprintf(fc_buf, sizeof fc_buf, "%.6g", *r.fitted_c);
        const std::string fc = fc_buf;
        std::snprintf(line, sizeof line, "%-22s %-13s %-12s %-12.6g %s in [%.3g, %.3g]\n",
                      std::string(to_string(c.id)).c_str(), std::string(to_string(r.verdict)).c_str(), fc.c_str(),
                      r.fitted_C, r.x_label.c_str(), r.window_lo, r.window_hi);
      } else {
        std::snprintf(line, sizeof line, "%-22s %-13s %s\n", std::string(to_string(c.id)).c_str(), "error",
                      c.error_kind.c_str());
      }
      os << line;
    }
  }
  os << "exit code: " << rep.exit_code() << "\n";
  return os.str();
}

std::vector<fs::path> emit_outputs(const RunReport& rep, const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  if (rep.curve) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.curve->t.size(); ++i) {
      rows.push_back({rep.curve->t[i], rep.curve->values[i], rep.curve->truncation[i]});
    }
    files.emplace_back("growth.csv", csv_text({"t", "norm_AT", "truncation_bound"}, rows));
  }
  if (rep.envelope) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.envelope->size(); ++i) {
      rows.push_back({rep.envelope->grid()[i], rep.envelope->values()[i]});
    }
    files.emplace_back("envelope.csv", csv_text({"s", "M"}, rows));
  }
  if (rep.verb != Verb::curve) {
    for (const auto& c : rep.checks) {
      if (!c.report) continue;
      std::vector<std::vector<double>> rows;
      for (const auto& r : c.report->ratio_series) rows.push_back({r.x, r.lhs, r.envelope, r.ratio});
      files.emplace_back(csv_name(c.id), csv_text({c.report->x_label, "lhs", "envelope", "ratio"}, rows));
    }
    files.emplace_back("report.json", report_document(rep));
    files.emplace_back("summary.txt", summary_text(rep));
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir.string() + ": cannot create output directory");
  const fs::path staging = dir / ".staging";
  fs::remove_all(staging, ec);
  if (!fs::create_directory(staging, ec) || ec) {
    throw IoError(dir.string() + ": output directory is not writable");
  }
  try {
    for (const auto& [name, text] : files) {
      std::ofstream out(staging / name, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw IoError((staging / name).string() + ": write failed");
    }
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  std::vector<fs::path> written;
  for (const auto& [name, text] : files) {
    fs::rename(staging / name, dir / name, ec);
    if (ec) {
      fs::remove_all(staging, ec);
      throw IoError((dir / name).string() + ": cannot move staged file into place");
    }
    written.push_back(dir / name);
  }
  fs::remove_all(staging, ec);
  return written;
}

}  // namespace semigrowth
