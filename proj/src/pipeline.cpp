#include "mx3/pipeline.hpp"

#include "mx3/error.hpp"
#include "mx3/families.hpp"
#include "mx3/oracle.hpp"
#include "mx3/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace mx3 {

namespace {

std::string monomial_name(const Monomial& m) {
  std::string out;
  for (const Var& v : m.vars()) out += (out.empty() ? "" : "*") + var_name(v);
  return out.empty() ? "1" : out;
}

bool tripartite(const Monomial& m) {
  const auto& v = m.vars();
  return v.size() == 3 && v[0].block == 1 && v[1].block == 2 && v[2].block == 3;
}

}  // namespace

BilinearizedProgram bilinearize(const MultilinearPoly& i3) {
  BilinearizedProgram out;
  for (const auto& [m, c] : i3.terms()) {
    if (!tripartite(m)) {
      throw ValidationError("bilinearize needs one variable per block, got '" + monomial_name(m) + "'");
    }
    const auto key = std::make_pair(m.vars()[1].index, m.vars()[2].index);
    auto [it, fresh] = out.pair_index.try_emplace(key, static_cast<std::uint32_t>(out.pairs.size() + 1));
    if (fresh) out.pairs.push_back(key);
    out.i2.add(Monomial({m.vars()[0], Var{kProductBlock, it->second}}), c);
  }
  return out;
}

MultilinearPoly condition(const MultilinearPoly& i3, std::span<const Sign> f1) {
  MultilinearPoly out;
  for (const auto& [m, c] : i3.terms()) {
    if (!tripartite(m)) {
      throw ValidationError("condition needs one variable per block, got '" + monomial_name(m) + "'");
    }
    const std::uint32_t i = m.vars()[0].index;
    if (i < 1 || i > f1.size()) throw ValidationError("no block-1 value for " + var_name(m.vars()[0]));
    const Monomial rest({m.vars()[1], m.vars()[2]});
    out.add(rest, f1[i - 1] > 0 ? c : Rational(-c));
  }
  return out;
}

namespace {

struct RoundOutcome {
  GramFactor gram;
  RoundingResult rounding;
  double relaxation = 0.0;
};

RoundOutcome solve_and_round(const QuadraticObjective& q, SdpConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  RoundOutcome out;
  out.gram = solve_relaxation(q, cfg);
  out.relaxation = relaxation_value(out.gram, q);
  out.rounding = cw_round(out.gram, q, cfg);
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::pair<Assignment, PipelineReport> two_round(const Instance& inst, const PipelineConfig& cfg,
                                                const std::string& id) {
  validate(cfg.sdp);
  if (cfg.restarts < 1) throw ValidationError("pipeline needs restarts >= 1");
  const auto start = std::chrono::steady_clock::now();

  PipelineReport rep;
  rep.id = id;
  rep.n_vars = inst.num_vars();
  rep.n_cons = inst.constraints().size();
  rep.seed = cfg.seed;

  const MultilinearPoly objective = instance_objective(inst);
  const MultilinearPoly i3 = degree_slice(objective, 3);
  rep.i3_terms = i3.size();
  rep.dropped_terms = degree_slice(objective, 1).size() + degree_slice(objective, 2).size();
  rep.degenerate_cubic = i3.empty();

  const auto& sizes = inst.sizes();
  Assignment best = Assignment::all_plus(sizes);
  double best_final = -1.0;

  if (rep.degenerate_cubic) {
    best_final = evaluate(inst, best);
    PipelineRun run;
    run.seed = cfg.seed;
    run.final_value = best_final;
    rep.runs.push_back(run);
  } else {
    const BilinearizedProgram bil = bilinearize(i3);
    const IndexedObjective first = from_bilinear_poly(bil.i2);
    for (int r = 0; r < cfg.restarts; ++r) {
      PipelineRun run;
      run.seed = derive_seed(cfg.seed, {0x2f, static_cast<std::uint64_t>(r)});

      // Round 1 on I2 over x1 and the product variables.
      const RoundOutcome one = solve_and_round(first.objective, cfg.sdp, derive_seed(run.seed, {1}));
      run.sdp1 = one.relaxation;
      run.round1 = one.rounding.achieved;
      run.sweeps1 = one.gram.sweeps;
      Assignment f = Assignment::all_plus(sizes);
      std::vector<Sign> product_values(bil.pairs.size(), Sign{1});
      for (std::uint32_t k = 0; k < first.vars.size(); ++k) {
        const Var& v = first.vars[k];
        if (v.block == 1) {
          f.at(1, v.index) = one.rounding.signs[k];
        } else {
          product_values[v.index - 1] = one.rounding.signs[k];
        }
      }

      // Round 2 on I3 with x1 fixed; round-1 product values are dropped.
      const MultilinearPoly conditioned = condition(i3, f.values[0]);
      double round2 = 0.0;
      if (!conditioned.empty()) {
        const IndexedObjective second = from_bilinear_poly(conditioned);
        const RoundOutcome two = solve_and_round(second.objective, cfg.sdp, derive_seed(run.seed, {2}));
        run.sdp2 = two.relaxation;
        run.sweeps2 = two.gram.sweeps;
        round2 = two.rounding.achieved;
        for (std::uint32_t k = 0; k < second.vars.size(); ++k) {
          f.at(second.vars[k].block, second.vars[k].index) = two.rounding.signs[k];
        }
      }
      run.round2 = round2;
      run.final_value = evaluate(inst, f);

      // Cross-checks: full-objective polynomial agrees with evaluate, and for
      // XOR-only instances final = 1/2 + conditioned value.
      const double poly_value = eval_poly(objective, f);
      if (std::abs(poly_value - run.final_value) > 1e-9) {
        throw NumericalError("final value " + std::to_string(run.final_value) +
                             " disagrees with objective polynomial " + std::to_string(poly_value));
      }
      if (inst.xor_only() && std::abs(run.final_value - (0.5 + round2)) > 1e-9) {
        throw NumericalError("XOR cross-check failed: final " + std::to_string(run.final_value) +
                             " != 1/2 + " + std::to_string(round2));
      }

      std::size_t agree = 0;
      for (std::size_t k = 0; k < bil.pairs.size(); ++k) {
        const auto [j, l] = bil.pairs[k];
        if (product_values[k] == f.at(2, j) * f.at(3, l)) ++agree;
      }
      run.consistency = bil.pairs.empty() ? 1.0 : static_cast<double>(agree) / static_cast<double>(bil.pairs.size());

      if (run.final_value > best_final) {
        best_final = run.final_value;
        best = f;
        rep.best_run = rep.runs.size();
      }
      rep.runs.push_back(run);
    }
  }

  const PipelineRun& chosen = rep.runs[rep.best_run];
  rep.sdp1 = chosen.sdp1;
  rep.sdp2 = chosen.sdp2;
  rep.consistency = chosen.consistency;
  rep.final_value = best_final;
  rep.margin = best_final - 0.5;
  rep.f1_minus = static_cast<std::size_t>(std::count(best.values[0].begin(), best.values[0].end(), Sign{-1}));
  rep.baseline = random_baseline(inst, cfg.baseline_trials, derive_seed(cfg.seed, {0xba5e}));

  if (cfg.oracle && inst.num_vars() <= kMaxOracleVars) {
    const OracleResult opt = brute_force(inst, cfg.jobs);
    rep.opt = opt.optimum;
    rep.opt_source = "brute";
    rep.i3_at_opt = eval_poly(i3, opt.assignment);
    if (rep.final_value > opt.optimum + 1e-9) {
      throw NumericalError("pipeline value " + std::to_string(rep.final_value) + " exceeds optimum " +
                           std::to_string(opt.optimum));
    }
  }
  rep.ms = elapsed_ms(start);
  return {std::move(best), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Experiments

const char* to_string(Family f) {
  switch (f) {
    case Family::kPlanted: return "planted";
    case Family::kRandom: return "random";
    case Family::kGadget: return "gadget";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "planted") return Family::kPlanted;
  if (name == "random" || name == "random-uniform") return Family::kRandom;
  if (name == "gadget" || name == "composed-gadget") return Family::kGadget;
  throw ValidationError("unknown family '" + name + "' (planted, random, gadget)");
}

FamilyMember family_member(const FamilySpec& family, std::uint64_t seed, std::size_t k) {
  const std::uint64_t s = derive_seed(seed, {0xfa11, static_cast<std::uint64_t>(family.family), k});
  switch (family.family) {
    case Family::kPlanted:
      return {planted_instance(family.sizes, family.constraints, family.eps, s).instance, std::nullopt};
    case Family::kRandom:
      return {random_instance(family.sizes, family.constraints, s), std::nullopt};
    case Family::kGadget: {
      LabelCoverInstance lc = make_label_cover(family.R, family.d, family.n_u, family.n_v, family.degree, s);
      ComposeOptions opts;
      opts.eta = family.eta;
      opts.mode = family.mode;
      opts.per_edge_budget = family.budget;
      opts.seed = derive_seed(s, {0xc0});
      const auto phi = uniform_over(3, xor_support());
      Instance inst = compose(lc, phi, opts);
      return {std::move(inst), std::move(lc)};
    }
  }
  throw ValidationError("unknown family");
}

ExperimentResult gap_experiment(const FamilySpec& family, const PipelineConfig& cfg, unsigned jobs) {
  if (family.count < 1) throw ValidationError("experiment needs count >= 1");
  ExperimentResult result;
  result.rows.resize(family.count);

  auto run_one = [&](std::size_t k) {
    ExperimentRow& row = result.rows[k];
    row.report.id = std::string(to_string(family.family)) + "-" + std::to_string(k);
    try {
      FamilyMember member = family_member(family, cfg.seed, k);
      PipelineConfig local = cfg;
      local.seed = derive_seed(cfg.seed, {0x9193, k});
      local.jobs = 1;
      auto [assignment, report] = two_round(member.instance, local, row.report.id);
      if (member.label_cover && member.label_cover->planted()) {
        row.dictator = evaluate(member.instance, dictator_assignment(*member.label_cover, member.instance));
        if (!report.opt && cfg.oracle) {
          report.opt = row.dictator;
          report.opt_source = "dictator";
        }
      }
      row.report = std::move(report);
    } catch (const Error& e) {
      row.error = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t k = 0; k < family.count; ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, family.count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < family.count; k = next++) run_one(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  ExperimentAggregate& agg = result.aggregate;
  double ratio_sum = 0.0;
  bool first = true;
  for (const auto& row : result.rows) {
    if (row.error) {
      ++agg.errors;
      continue;
    }
    const auto& r = row.report;
    ++agg.rows;
    agg.mean_final += r.final_value;
    agg.mean_baseline += r.baseline;
    agg.mean_margin += r.margin;
    agg.mean_consistency += r.consistency;
    agg.min_margin = first ? r.margin : std::min(agg.min_margin, r.margin);
    first = false;
    if (r.opt) {
      ++agg.opt_rows;
      agg.mean_opt += *r.opt;
      ratio_sum += *r.opt > 0.0 ? r.final_value / *r.opt : 0.0;
    }
  }
  if (agg.rows > 0) {
    const auto n = static_cast<double>(agg.rows);
    agg.mean_final /= n;
    agg.mean_baseline /= n;
    agg.mean_margin /= n;
    agg.mean_consistency /= n;
  }
  if (agg.opt_rows > 0) {
    agg.mean_opt /= static_cast<double>(agg.opt_rows);
    agg.mean_ratio = ratio_sum / static_cast<double>(agg.opt_rows);
  }
  return result;
}

}  // namespace mx3
