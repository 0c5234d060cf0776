#include "mx3/report.hpp"

#include <sstream>

namespace mx3 {

Json to_json(const PipelineReport& r) {
  Json j;
  j["id"] = r.id;
  j["n_vars"] = r.n_vars;
  j["n_cons"] = r.n_cons;
  j["baseline"] = r.baseline;
  j["sdp1"] = r.sdp1;
  j["sdp2"] = r.sdp2;
  j["final"] = r.final_value;
  j["opt"] = r.opt ? Json(*r.opt) : Json(nullptr);
  j["margin"] = r.margin;
  j["consistency"] = r.consistency;
  j["seed"] = r.seed;
  j["ms"] = r.ms;
  j["ratio"] = (r.opt && *r.opt > 0.0) ? Json(r.final_value / *r.opt) : Json(nullptr);
  j["opt_source"] = r.opt_source.empty() ? Json(nullptr) : Json(r.opt_source);
  j["i3_at_opt"] = r.i3_at_opt ? Json(*r.i3_at_opt) : Json(nullptr);
  j["f1_minus"] = r.f1_minus;
  j["i3_terms"] = r.i3_terms;
  j["dropped_terms"] = r.dropped_terms;
  j["degenerate_cubic"] = r.degenerate_cubic;
  j["best_run"] = r.best_run;
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back(Json{{"seed", run.seed},
                        {"sdp1", run.sdp1},
                        {"round1", run.round1},
                        {"sdp2", run.sdp2},
                        {"round2", run.round2},
                        {"final", run.final_value},
                        {"consistency", run.consistency},
                        {"sweeps1", run.sweeps1},
                        {"sweeps2", run.sweeps2}});
  }
  j["runs"] = std::move(runs);
  return j;
}

Json to_json(const ExperimentRow& row) {
  if (row.error) return Json{{"id", row.report.id}, {"error", *row.error}};
  Json j = to_json(row.report);
  if (row.dictator) j["dictator"] = *row.dictator;
  return j;
}

Json to_json(const ExperimentAggregate& a) {
  return Json{{"rows", a.rows},
              {"errors", a.errors},
              {"mean_final", a.mean_final},
              {"mean_opt", a.opt_rows ? Json(a.mean_opt) : Json(nullptr)},
              {"opt_rows", a.opt_rows},
              {"mean_baseline", a.mean_baseline},
              {"mean_margin", a.mean_margin},
              {"min_margin", a.min_margin},
              {"mean_ratio", a.opt_rows ? Json(a.mean_ratio) : Json(nullptr)},
              {"mean_consistency", a.mean_consistency}};
}

Json to_json(const SdpConfig& cfg) {
  return Json{{"rank", cfg.rank},
              {"max_sweeps", cfg.max_sweeps},
              {"tol", cfg.tol},
              {"t_grid", cfg.t_grid},
              {"trials", cfg.trials},
              {"seed", cfg.seed}};
}

Json to_json(const PipelineConfig& cfg) {
  return Json{{"seed", cfg.seed},
              {"restarts", cfg.restarts},
              {"baseline_trials", cfg.baseline_trials},
              {"oracle", cfg.oracle},
              {"sdp", to_json(cfg.sdp)}};
}

Json to_json(const FamilySpec& f) {
  Json j{{"family", to_string(f.family)}, {"count", f.count}};
  if (f.family == Family::kGadget) {
    j["R"] = f.R;
    j["d"] = f.d;
    j["nU"] = f.n_u;
    j["nV"] = f.n_v;
    j["degree"] = f.degree;
    j["eta"] = f.eta;
    j["mode"] = f.mode == ComposeMode::kEnumerate ? "enumerate" : "sample";
    j["budget"] = f.budget;
  } else {
    j["sizes"] = {f.sizes[0], f.sizes[1], f.sizes[2]};
    j["constraints"] = f.constraints;
    if (f.family == Family::kPlanted) j["eps"] = f.eps;
  }
  return j;
}

std::string csv_header() { return "id,n_vars,n_cons,baseline,sdp1,sdp2,final,opt,margin,consistency,seed"; }

std::string to_csv(const ExperimentRow& row) {
  std::ostringstream out;
  out.precision(17);
  const auto& r = row.report;
  out << r.id << ',';
  if (row.error) {
    out << ",,,,,,,,,";
    return out.str();
  }
  out << r.n_vars << ',' << r.n_cons << ',' << r.baseline << ',' << r.sdp1 << ',' << r.sdp2 << ','
      << r.final_value << ',';
  if (r.opt) out << *r.opt;
  out << ',' << r.margin << ',' << r.consistency << ',' << r.seed;
  return out.str();
}

}  // namespace mx3
