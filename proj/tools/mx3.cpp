// Command-line driver: generate instance families, compose gadgets, run the
// two-round pipeline, the brute-force oracle and whole experiments.

#include "mx3/distributions.hpp"
#include "mx3/error.hpp"
#include "mx3/families.hpp"
#include "mx3/fourier.hpp"
#include "mx3/gadget.hpp"
#include "mx3/instance.hpp"
#include "mx3/oracle.hpp"
#include "mx3/pipeline.hpp"
#include "mx3/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using mx3::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mx3::ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Single writer for all report output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw mx3::ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void line(const Json& j) { stream() << j.dump() << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SdpOptions {
  mx3::PipelineConfig pipeline;
  std::vector<double> grid;
};

void add_sdp_options(CLI::App* cmd, SdpOptions& o) {
  cmd->add_option("--restarts", o.pipeline.restarts, "Pipeline seeds, best-of")->capture_default_str();
  cmd->add_option("--rank", o.pipeline.sdp.rank, "Relaxation rank (0 = auto)")->capture_default_str();
  cmd->add_option("--sweeps", o.pipeline.sdp.max_sweeps, "Max ascent sweeps")->capture_default_str();
  cmd->add_option("--tol", o.pipeline.sdp.tol, "Relative ascent tolerance")->capture_default_str();
  cmd->add_option("--trials", o.pipeline.sdp.trials, "Rounding trials")->capture_default_str();
  cmd->add_option("--grid", o.grid, "Truncation thresholds T (0 = sign rounding)");
  cmd->add_option("--baseline-trials", o.pipeline.baseline_trials, "Monte Carlo baseline trials")
      ->capture_default_str();
  cmd->add_flag("--oracle", o.pipeline.oracle, "Run the brute-force oracle when feasible");
}

void finish_sdp_options(SdpOptions& o, std::uint64_t seed, unsigned jobs) {
  if (!o.grid.empty()) o.pipeline.sdp.t_grid = o.grid;
  o.pipeline.seed = seed;
  o.pipeline.jobs = jobs;
  mx3::validate(o.pipeline.sdp);
}

mx3::ComposeMode parse_mode(const std::string& s) {
  if (s == "enumerate") return mx3::ComposeMode::kEnumerate;
  if (s == "sample") return mx3::ComposeMode::kSample;
  throw mx3::ValidationError("mode must be enumerate or sample");
}

std::string numbered_path(const std::string& out, std::size_t k, std::size_t count) {
  if (count == 1) return out;
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? out.substr(0, dot) : out;
  const std::string ext = has_ext ? out.substr(dot) : ".mx3";
  return stem + "_" + std::to_string(k) + ext;
}

Json pairwise_json(const mx3::PairwiseCheck& check) {
  Json singles = Json::array();
  for (const auto& s : check.singles) singles.push_back(mx3::to_string(s));
  Json pairs = Json::array();
  for (std::size_t i = 0; i < check.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < check.pairs.size(); ++j) {
      pairs.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"p", mx3::to_string(check.pairs[i][j])}});
    }
  }
  Json j{{"holds", check.holds}, {"singles", singles}, {"pairs", pairs}};
  if (!check.holds) {
    j["witness"] = check.witness;
    j["observed"] = mx3::to_string(check.observed);
    j["expected"] = mx3::to_string(check.expected);
  }
  return j;
}

mx3::TupleDistribution builtin_distribution(const std::string& name) {
  using mx3::Rational;
  const auto g3 = mx3::tuples_with_plus_count(3);
  const auto g1 = mx3::tuples_with_plus_count(1);
  if (name == "uniform-c") return mx3::uniform_over(3, mx3::xor_support());
  if (name == "disguise") {
    return mx3::disguise({{{Rational(1, 4), mx3::uniform_over(3, g3)}, {Rational(3, 4), mx3::uniform_over(3, g1)}}});
  }
  if (name == "disguise-literal") {
    return mx3::disguise({{{Rational(3, 4), mx3::uniform_over(3, g3)}, {Rational(1, 4), mx3::uniform_over(3, g1)}}});
  }
  if (name == "point") return mx3::point_mass(3, 0);
  throw mx3::ValidationError("unknown builtin '" + name + "' (uniform-c, disguise, disguise-literal, point)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-3-XOR gap instances, gadget composition and the two-round SDP pipeline"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_path;
  bool csv = false;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate planted or random XOR instance files");
  std::string gen_family = "planted";
  std::vector<std::uint32_t> gen_sizes{6, 6, 6};
  std::size_t gen_m = 40, gen_count = 1;
  double gen_eps = 0.1;
  gen->add_option("--family", gen_family, "planted | random")->capture_default_str();
  gen->add_option("--sizes", gen_sizes, "Block sizes M N2 N3")->expected(3);
  gen->add_option("--constraints,-m", gen_m, "Constraints per instance")->capture_default_str();
  gen->add_option("--eps", gen_eps, "Corrupted fraction (planted)")->capture_default_str();
  gen->add_option("--count", gen_count, "Number of instances")->capture_default_str();
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("--out,-o", out_path, "Output file (numbered when count > 1)")->required();

  // compose
  auto* comp = app.add_subcommand("compose", "Compose the dictatorship test with a Label-Cover instance");
  std::string lc_in, lc_out, comp_mode = "enumerate", report_path;
  int R = 1, d = 1;
  std::uint32_t n_u = 1, n_v = 1, degree = 1;
  double eta = 0.0;
  std::uint64_t budget = 1U << 16;
  comp->add_option("--lc", lc_in, "Label-Cover file (otherwise generated)");
  comp->add_option("--R", R, "Small alphabet")->capture_default_str();
  comp->add_option("--d", d, "Projection multiplicity")->capture_default_str();
  comp->add_option("--nU", n_u, "U vertices")->capture_default_str();
  comp->add_option("--nV", n_v, "V vertices")->capture_default_str();
  comp->add_option("--degree", degree, "U degree")->capture_default_str();
  comp->add_option("--eta", eta, "Noise rate")->capture_default_str();
  comp->add_option("--budget", budget, "Per-edge support cap / samples")->capture_default_str();
  comp->add_option("--mode", comp_mode, "enumerate | sample")->capture_default_str();
  comp->add_option("--seed", seed, "Seed")->required();
  comp->add_option("--out,-o", out_path, "Composed instance file")->required();
  comp->add_option("--lc-out", lc_out, "Write the (generated) Label-Cover instance");
  comp->add_option("--report", report_path, "JSON report (default stdout)");

  // verify-dist
  auto* vd = app.add_subcommand("verify-dist", "Check pairwise independence of a distribution over G^k");
  std::string dist_file, builtin, gamma_text = "1/2", tol_text = "0";
  auto* file_opt = vd->add_option("--file", dist_file, "Distribution file ('<tuple> <num>/<den>' lines)");
  vd->add_option("--builtin", builtin, "uniform-c | disguise | disguise-literal | point")->excludes(file_opt);
  vd->add_option("--gamma", gamma_text, "Bias gamma")->capture_default_str();
  vd->add_option("--tol", tol_text, "Tolerance")->capture_default_str();

  // fourier
  auto* fo = app.add_subcommand("fourier", "Dump the Fourier expansion of a predicate or instance");
  int mask = -1;
  std::string fo_instance;
  int fo_degree = -1;
  auto* mask_opt = fo->add_option("--mask", mask, "Predicate mask 0..255");
  fo->add_option("--instance", fo_instance, "Instance file")->excludes(mask_opt);
  fo->add_option("--degree", fo_degree, "Keep only this degree");

  // solve
  auto* solve = app.add_subcommand("solve", "Run the two-round pipeline on an instance");
  std::string instance_path;
  SdpOptions solve_opts;
  solve->add_option("--instance,-i", instance_path, "Instance file")->required();
  solve->add_option("--seed", seed, "Seed")->required();
  solve->add_option("--out,-o", out_path, "JSON-lines report (default stdout)");
  solve->add_option("--jobs", jobs, "Oracle worker threads")->capture_default_str();
  add_sdp_options(solve, solve_opts);

  // brute
  auto* brute = app.add_subcommand("brute", "Exact optimum by exhaustive enumeration");
  brute->add_option("--instance,-i", instance_path, "Instance file")->required();
  brute->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  brute->add_option("--out,-o", out_path, "JSON report (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run the pipeline over a generated family");
  mx3::FamilySpec fam;
  std::string exp_family = "random", exp_mode = "enumerate";
  std::vector<std::uint32_t> exp_sizes{6, 6, 6};
  SdpOptions exp_opts;
  exp->add_option("--family", exp_family, "planted | random | gadget")->capture_default_str();
  exp->add_option("--count", fam.count, "Instances")->capture_default_str();
  exp->add_option("--sizes", exp_sizes, "Block sizes M N2 N3")->expected(3);
  exp->add_option("--constraints,-m", fam.constraints, "Constraints per instance")->capture_default_str();
  exp->add_option("--eps", fam.eps, "Corrupted fraction (planted)")->capture_default_str();
  exp->add_option("--R", fam.R, "Gadget small alphabet")->capture_default_str();
  exp->add_option("--d", fam.d, "Gadget multiplicity")->capture_default_str();
  exp->add_option("--nU", fam.n_u, "Gadget U vertices")->capture_default_str();
  exp->add_option("--nV", fam.n_v, "Gadget V vertices")->capture_default_str();
  exp->add_option("--degree", fam.degree, "Gadget U degree")->capture_default_str();
  exp->add_option("--eta", fam.eta, "Gadget noise")->capture_default_str();
  exp->add_option("--mode", exp_mode, "Gadget compose mode")->capture_default_str();
  exp->add_option("--budget", fam.budget, "Gadget per-edge budget")->capture_default_str();
  exp->add_option("--seed", seed, "Seed")->required();
  exp->add_option("--jobs", jobs, "Parallel instances")->capture_default_str();
  exp->add_option("--out,-o", out_path, "JSON-lines report (default stdout)");
  exp->add_flag("--csv", csv, "Flat CSV of the numeric columns instead of JSON lines");
  add_sdp_options(exp, exp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      const mx3::BlockSizes sizes{gen_sizes[0], gen_sizes[1], gen_sizes[2]};
      const auto family = mx3::parse_family(gen_family);
      if (family == mx3::Family::kGadget) throw mx3::ValidationError("use 'compose' for gadget instances");
      for (std::size_t k = 0; k < gen_count; ++k) {
        const std::uint64_t s = mx3::derive_seed(seed, {k});
        const std::string path = numbered_path(out_path, k, gen_count);
        std::vector<std::string> meta{"family=" + gen_family, "seed=" + std::to_string(seed),
                                      "index=" + std::to_string(k)};
        Json row{{"file", path}, {"family", gen_family}, {"seed", seed}, {"index", k}};
        if (family == mx3::Family::kPlanted) {
          const auto p = mx3::planted_instance(sizes, gen_m, gen_eps, s);
          const double value = mx3::evaluate(p.instance, p.planted);
          meta.push_back("eps=" + mx3::format_weight(gen_eps));
          meta.push_back("corrupted=" + std::to_string(p.corrupted));
          meta.push_back("planted_value=" + mx3::format_weight(value));
          std::string plant;
          for (const auto& block : p.planted.values) {
            for (auto v : block) plant += v > 0 ? '+' : '-';
            plant += ' ';
          }
          meta.push_back("planted " + plant.substr(0, plant.size() - 1));
          mx3::write_instance_file(path, p.instance, meta);
          row["planted_value"] = value;
          row["corrupted"] = p.corrupted;
        } else {
          mx3::write_instance_file(path, mx3::random_instance(sizes, gen_m, s), meta);
        }
        std::cout << row.dump() << '\n';
      }
      return 0;
    }

    if (*comp) {
      const mx3::LabelCoverInstance lc =
          lc_in.empty() ? mx3::make_label_cover(R, d, n_u, n_v, degree, seed)
                        : mx3::parse_label_cover(read_file(lc_in));
      if (!lc_out.empty()) {
        std::ofstream f(lc_out, std::ios::binary);
        if (!f) throw mx3::ValidationError("cannot write '" + lc_out + "'");
        f << mx3::serialize(lc);
      }
      mx3::ComposeOptions opts;
      opts.eta = eta;
      opts.per_edge_budget = budget;
      opts.mode = parse_mode(comp_mode);
      opts.seed = seed;
      const auto phi = mx3::uniform_over(3, mx3::xor_support());
      const mx3::Instance inst = mx3::compose(lc, phi, opts);
      mx3::write_instance_file(out_path, inst,
                               std::vector<std::string>{"composed R=" + std::to_string(lc.small_alphabet()) +
                                                        " d=" + std::to_string(lc.multiplicity()) +
                                                        " eta=" + mx3::format_weight(eta) + " mode=" + comp_mode +
                                                        " seed=" + std::to_string(seed)});
      Json rep{{"config", Json{{"command", "compose"},
                               {"R", lc.small_alphabet()},
                               {"d", lc.multiplicity()},
                               {"nU", lc.num_u()},
                               {"nV", lc.num_v()},
                               {"edges", lc.edges().size()},
                               {"eta", eta},
                               {"budget", budget},
                               {"mode", comp_mode},
                               {"seed", seed}}},
               {"sizes", {inst.sizes()[0], inst.sizes()[1], inst.sizes()[2]}},
               {"n_cons", inst.constraints().size()},
               {"dictator", lc.planted() ? Json(mx3::evaluate(inst, mx3::dictator_assignment(lc, inst)))
                                         : Json(nullptr)}};
      Output(report_path).line(rep);
      return 0;
    }

    if (*vd) {
      if (dist_file.empty() && builtin.empty()) throw mx3::ValidationError("give --file or --builtin");
      const auto dist = dist_file.empty() ? builtin_distribution(builtin)
                                          : mx3::parse_distribution(read_file(dist_file));
      const auto gamma = mx3::parse_rational(gamma_text);
      const auto tol = mx3::parse_rational(tol_text);
      const auto check = mx3::check_pairwise_independent(dist, gamma, tol);
      std::cout << "ground:";
      for (auto c : mx3::ground(dist)) std::cout << ' ' << mx3::tuple_string(c, dist.arity());
      std::cout << "\n";
      for (std::size_t i = 0; i < check.singles.size(); ++i) {
        std::cout << "P[z" << i + 1 << "=1] = " << mx3::to_string(check.singles[i]) << '\n';
      }
      for (std::size_t i = 0; i < check.pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < check.pairs.size(); ++j) {
          std::cout << "P[z" << i + 1 << "=1,z" << j + 1 << "=1] = " << mx3::to_string(check.pairs[i][j]) << '\n';
        }
      }
      Json verdict = pairwise_json(check);
      verdict["gamma"] = mx3::to_string(gamma);
      verdict["tol"] = mx3::to_string(tol);
      std::cout << (check.holds ? "holds" : "fails") << '\n' << verdict.dump() << '\n';
      return 0;
    }

    if (*fo) {
      mx3::MultilinearPoly p;
      if (mask >= 0) {
        if (mask > 255) throw mx3::ValidationError("mask must lie in 0..255");
        p = mx3::predicate_fourier(mx3::Predicate3{static_cast<std::uint8_t>(mask)});
      } else if (!fo_instance.empty()) {
        p = mx3::instance_objective(mx3::read_instance_file(fo_instance));
      } else {
        throw mx3::ValidationError("give --mask or --instance");
      }
      if (fo_degree >= 0) p = mx3::degree_slice(p, static_cast<std::size_t>(fo_degree));
      std::cout << mx3::dump(p);
      return 0;
    }

    if (*solve) {
      finish_sdp_options(solve_opts, seed, jobs);
      const mx3::Instance inst = mx3::read_instance_file(instance_path);
      auto [assignment, report] = mx3::two_round(inst, solve_opts.pipeline, instance_path);
      Output out(out_path);
      Json cfg = mx3::to_json(solve_opts.pipeline);
      cfg["command"] = "solve";
      cfg["instance"] = instance_path;
      out.line(Json{{"config", cfg}});
      out.line(mx3::to_json(report));
      return 0;
    }

    if (*brute) {
      const mx3::Instance inst = mx3::read_instance_file(instance_path);
      const auto r = mx3::brute_force(inst, jobs);
      Json blocks = Json::array();
      for (const auto& block : r.assignment.values) {
        std::string s;
        for (auto v : block) s += v > 0 ? '+' : '-';
        blocks.push_back(s);
      }
      Output(out_path).line(Json{{"instance", instance_path},
                                 {"n_vars", inst.num_vars()},
                                 {"optimum", r.optimum},
                                 {"optimal_count", r.optimal_count},
                                 {"assignment", blocks}});
      return 0;
    }

    if (*exp) {
      fam.family = mx3::parse_family(exp_family);
      fam.sizes = {exp_sizes[0], exp_sizes[1], exp_sizes[2]};
      fam.mode = parse_mode(exp_mode);
      finish_sdp_options(exp_opts, seed, 1);
      const auto result = mx3::gap_experiment(fam, exp_opts.pipeline, jobs);
      Output out(out_path);
      if (csv) {
        out.stream() << mx3::csv_header() << '\n';
        for (const auto& row : result.rows) out.stream() << mx3::to_csv(row) << '\n';
        return 0;
      }
      Json cfg = mx3::to_json(exp_opts.pipeline);
      cfg["command"] = "experiment";
      cfg["family"] = mx3::to_json(fam);
      out.line(Json{{"config", cfg}});
      for (const auto& row : result.rows) out.line(mx3::to_json(row));
      out.line(Json{{"aggregate", mx3::to_json(result.aggregate)}});
      return 0;
    }
  } catch (const mx3::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
