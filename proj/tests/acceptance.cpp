// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-mx3-cli> [scratch-dir]

#include "mx3/distributions.hpp"
#include "mx3/families.hpp"
#include "mx3/fourier.hpp"
#include "mx3/gadget.hpp"
#include "mx3/oracle.hpp"
#include "mx3/pipeline.hpp"
#include "mx3/report.hpp"
#include "mx3/sdp.hpp"
#include "support.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace mx3;
using namespace mx3::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void run(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) out.require(false, "runtime " + std::to_string(secs) + "s over budget");
  if (!out.pass) ++failures;
  std::printf("[%s] %d %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", number, title.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

Json strip_ms(Json j) {
  if (j.is_object()) {
    j.erase("ms");
    for (auto& [k, v] : j.items()) v = strip_ms(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_ms(v);
  }
  return j;
}

// Report body with every "ms" field removed; non-JSON lines kept verbatim.
std::string normalize(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto j = Json::parse(line, nullptr, false);
    out += (j.is_discarded() ? line : strip_ms(j).dump()) + "\n";
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CommandResult {
  int status = -1;
  std::string out;
};

CommandResult shell(const std::string& cmd) {
  CommandResult r;
  FILE* pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Outcome fourier_identity() {
  Outcome o;
  const auto p = predicate_fourier(kXorPredicate);
  MultilinearPoly expect;
  expect.add(Monomial(), Rational(1, 2));
  expect.add(Monomial({Var{1, 1}, Var{2, 1}, Var{3, 1}}), Rational(1, 2));
  o.require(p == expect, "C expansion differs: " + dump(p));
  for (unsigned mask = 0; mask < 256; ++mask) {
    const Predicate3 pred{static_cast<std::uint8_t>(mask)};
    o.require(exhaustive_poly_check(pred), "inversion fails at mask " + std::to_string(mask));
    const auto poly = predicate_fourier(pred);
    for (const auto& [m, c] : poly.terms()) {
      o.require(denominator(Rational(c * 8)) == 1, "coefficient not a multiple of 1/8 at mask " + std::to_string(mask));
    }
  }
  return o;
}

Outcome probability_table() {
  Outcome o;
  const auto c = uniform_over(3, xor_support());
  for (TupleCode t = 0; t < 8; ++t) {
    int prod = 1;
    for (int i = 0; i < 3; ++i) prod *= tuple_coordinate(t, 3, i);
    const Rational want = prod == 1 ? Rational(1, 4) : Rational(0);
    o.require(c.prob(t) == want, "P[" + tuple_string(t, 3) + "] = " + to_string(c.prob(t)));
  }
  o.require(check_pairwise_independent(c, Rational(1, 2), Rational(0)).holds, "not pairwise independent");
  return o;
}

Outcome disguise_erratum() {
  Outcome o;
  const auto g3 = uniform_over(3, tuples_with_plus_count(3));
  const auto g1 = uniform_over(3, tuples_with_plus_count(1));
  const auto working = disguise({{{Rational(1, 4), g3}, {Rational(3, 4), g1}}});
  const auto literal = disguise({{{Rational(3, 4), g3}, {Rational(1, 4), g1}}});
  const auto wcheck = check_pairwise_independent(working, Rational(1, 2));
  const auto lcheck = check_pairwise_independent(literal, Rational(1, 2));
  std::printf("    working order (1/4 on G3, 3/4 on G1): %s\n", wcheck.holds ? "pairwise independent" : "fails");
  std::printf("    literal order (3/4 on G3, 1/4 on G1): %s, P[z%d=+1] = %s\n",
              lcheck.holds ? "pairwise independent" : "fails",
              lcheck.witness.empty() ? 0 : lcheck.witness[0], to_string(lcheck.observed).c_str());
  o.require(working == uniform_over(3, xor_support()), "working order is not uniform over C");
  o.require(wcheck.holds, "working order fails the check");
  o.require(!lcheck.holds, "literal order passes");
  o.require(lcheck.witness == std::vector<int>{1}, "literal witness is not a single coordinate");
  o.require(lcheck.observed == Rational(5, 6), "literal marginal is " + to_string(lcheck.observed));
  return o;
}

Outcome random_baseline_check() {
  Outcome o;
  int close = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto inst = random_instance({8, 8, 8}, 60, derive_seed(2024, {k}));
    const double b = random_baseline(inst, 100000, derive_seed(7, {k}));
    close += std::abs(b - 0.5) <= 0.01;
  }
  o.require(close >= 19, std::to_string(close) + "/20 within 0.01");
  o.detail = o.pass ? std::to_string(close) + "/20 within 0.01 of 1/2" : o.detail;
  return o;
}

Outcome gadget_completeness() {
  Outcome o;
  const auto phi = uniform_over(3, xor_support());
  for (int R = 1; R <= 2; ++R) {
    for (int d = 1; d <= 2; ++d) {
      const auto lc = make_label_cover(R, d, 2, 2, 2, derive_seed(5, {static_cast<std::uint64_t>(R), static_cast<std::uint64_t>(d)}));
      const auto inst = compose(lc, phi, {});
      const double v = evaluate(inst, dictator_assignment(lc, inst));
      o.require(v == 1.0, "eta=0 dictator value " + fmt(v) + " at R=" + std::to_string(R) + " d=" + std::to_string(d));
    }
  }
  const auto lc = make_label_cover(2, 2, 2, 2, 2, 99);
  const auto noisy = compose(lc, phi, {0.05, 10000, ComposeMode::kSample, 17});
  const double v = evaluate(noisy, dictator_assignment(lc, noisy));
  o.require(v >= 0.85, "eta=0.05 dictator value " + fmt(v));
  if (o.pass) o.detail = "eta=0.05 Monte Carlo value " + fmt(v);
  return o;
}

Outcome test_distribution_structure() {
  Outcome o;
  const auto phi = uniform_over(3, xor_support());
  const std::vector<int> first{0};
  for (int d = 1; d <= 3; ++d) {
    const auto row = row_distribution(phi, d);
    o.require(marginal(row, first) == uniform_over(1, std::vector<TupleCode>{0, 1}),
              "column-1 marginal not uniform at d=" + std::to_string(d));
  }
  const auto row = row_distribution(phi, 1);
  for (const auto& cols : {std::vector<int>{0, 1}, std::vector<int>{0, 2}, std::vector<int>{1, 2}}) {
    o.require(check_pairwise_independent(marginal(row, cols), Rational(1, 2)).holds,
              "pair marginal not pairwise independent");
  }
  return o;
}

Outcome sdp_sanity() {
  Outcome o;
  for (double c : {1.0, -1.0}) {
    QuadraticObjective q(2);
    q.add(0, 1, c);
    SdpConfig cfg;
    cfg.seed = 1;
    const auto g = solve_relaxation(q, cfg);
    o.require(std::abs(relaxation_value(g, q) - 1.0) <= 1e-6, "two-variable relaxation value off");
    const auto r = cw_round(g, q, cfg);
    o.require(r.achieved == exhaustive_quadratic_max(q), "two-variable rounding misses the optimum");
  }
  double worst = 1e300;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(s % 15);
    const auto q = random_objective(n, 0.5, derive_seed(31, {s}));
    SdpConfig cfg;
    cfg.seed = s;
    const double relax = relaxation_value(solve_relaxation(q, cfg), q);
    const double opt = exhaustive_quadratic_max(q);
    worst = std::min(worst, relax - opt);
    o.require(relax >= opt - 1e-6, "dominance fails on objective " + std::to_string(s));
  }
  if (o.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "min(relaxation - optimum) = %.3g", worst);
    o.detail = buf;
  }
  return o;
}

Outcome pipeline_self_consistency() {
  Outcome o;
  auto check = [&](const Instance& inst, const Assignment& a) {
    const auto i3 = degree_slice(instance_objective(inst), 3);
    const auto prog = bilinearize(i3);
    Assignment ext = a;
    std::vector<Sign> prod;
    for (const auto& [j, l] : prog.pairs) prod.push_back(static_cast<Sign>(a.at(2, j) * a.at(3, l)));
    ext.values.push_back(prod);
    const Rational want = eval_poly_exact(i3, a);
    o.require(eval_poly_exact(prog.i2, ext) == want, "bilinearize changes the value");
    Assignment rest = a;
    rest.values[0].assign(rest.values[0].size(), Sign{1});
    o.require(eval_poly_exact(condition(i3, a.values[0]), rest) == want, "condition does not commute with eval");
    o.require(std::abs(eval_poly(instance_objective(inst), a) - evaluate(inst, a)) <= 1e-9,
              "objective polynomial disagrees with evaluate");
  };
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto inst = random_test_instance({2, 2, 2}, 8, derive_seed(40, {s}));
    for (std::uint64_t code = 0; code < 64; ++code) check(inst, assignment_from_bits(inst.sizes(), code));
  }
  Rng rng(41);
  for (int t = 0; t < 1000; ++t) {
    const BlockSizes sizes{3 + static_cast<std::uint32_t>(rng.below(8)), 3 + static_cast<std::uint32_t>(rng.below(8)),
                           3 + static_cast<std::uint32_t>(rng.below(8))};
    const auto inst = random_test_instance(sizes, 10 + rng.below(40), rng.next());
    Assignment a = Assignment::all_plus(sizes);
    for (auto& block : a.values) {
      for (auto& v : block) v = static_cast<Sign>(rng.sign());
    }
    check(inst, a);
  }
  return o;
}

Outcome headline_measurement() {
  Outcome o;
  PipelineConfig cfg;
  cfg.seed = 20261018;
  cfg.oracle = true;
  cfg.baseline_trials = 10000;
  const unsigned jobs = 4;

  std::vector<FamilySpec> specs;
  for (Family f : {Family::kPlanted, Family::kRandom}) {
    for (std::uint32_t n : {6U, 7U, 8U}) {
      FamilySpec s;
      s.family = f;
      s.count = 4;
      s.sizes = {n, n, n};
      s.constraints = 7 * n;
      s.eps = 0.1;
      specs.push_back(s);
    }
  }

  std::printf("    %-9s %-8s %4s %4s %8s %8s %8s %8s %8s %8s %8s %6s\n", "family", "sizes", "n", "m", "baseline",
              "sdp1", "sdp2", "final", "opt", "margin", "ratio", "cons");
  std::size_t rows = 0;
  for (const auto& spec : specs) {
    const auto first = gap_experiment(spec, cfg, jobs);
    const auto second = gap_experiment(spec, cfg, jobs);
    std::string a, b;
    for (const auto& row : first.rows) a += strip_ms(to_json(row)).dump() + "\n";
    for (const auto& row : second.rows) b += strip_ms(to_json(row)).dump() + "\n";
    a += to_json(first.aggregate).dump();
    b += to_json(second.aggregate).dump();
    o.require(a == b, "table not deterministic for " + std::string(to_string(spec.family)));

    for (std::size_t k = 0; k < first.rows.size(); ++k) {
      const auto& row = first.rows[k];
      const auto& r = row.report;
      o.require(!row.error, "row error: " + row.error.value_or(""));
      if (row.error) continue;
      ++rows;
      o.require(r.opt.has_value() && r.opt_source == "brute", "row " + r.id + " lacks a brute-force optimum");
      if (!r.opt) continue;
      o.require(r.final_value <= *r.opt + 1e-9, "row " + r.id + " exceeds the optimum");

      // Recompute the final value from the returned assignment.
      const auto member = family_member(spec, cfg.seed, k);
      PipelineConfig local = cfg;
      local.seed = derive_seed(cfg.seed, {0x9193, k});
      local.oracle = false;
      const auto [assign, again] = two_round(member.instance, local, r.id);
      o.require(evaluate(member.instance, assign) == r.final_value, "row " + r.id + " final value not reproduced");
      o.require(std::abs(direct_value(member.instance, assign) - r.final_value) <= 1e-9,
                "row " + r.id + " final value disagrees with direct recount");

      const std::string sizes = std::to_string(spec.sizes[0]) + "^3";
      std::printf("    %-9s %-8s %4zu %4zu %8s %8s %8s %8s %8s %8s %8s %6s\n", to_string(spec.family), sizes.c_str(),
                  r.n_vars, r.n_cons, fmt(r.baseline).c_str(), fmt(r.sdp1).c_str(), fmt(r.sdp2).c_str(),
                  fmt(r.final_value).c_str(), fmt(*r.opt).c_str(), fmt(r.margin).c_str(),
                  fmt(*r.opt > 0 ? r.final_value / *r.opt : 0.0).c_str(), fmt(r.consistency).c_str());
    }
  }
  if (o.pass) o.detail = std::to_string(rows) + " rows, deterministic, all cross-checks hold";
  return o;
}

Outcome cli_determinism(const std::string& cli, const fs::path& scratch) {
  Outcome o;
  fs::create_directories(scratch);
  const std::string dir = scratch.string();
  const std::string inst = dir + "/inst.cnf";
  if (shell(cli + " gen --family planted --sizes 6 6 6 -m 40 --eps 0.1 --seed 3 -o " + inst).status != 0) {
    o.require(false, "gen failed");
    return o;
  }
  struct Case {
    std::string name;
    std::string args;
    std::string file;  // output file compared in addition to stdout
  };
  const std::vector<Case> cases{
      {"gen", "gen --family random --sizes 5 6 7 -m 30 --seed 11 -o " + dir + "/gen.cnf", dir + "/gen.cnf"},
      {"compose", "compose --R 2 --d 2 --nU 2 --nV 2 --degree 2 --eta 0.05 --mode sample --budget 2000 --seed 5 -o " +
                      dir + "/comp.cnf",
       dir + "/comp.cnf"},
      {"verify-dist", "verify-dist --builtin disguise-literal", ""},
      {"fourier", "fourier --instance " + inst + " --degree 3", ""},
      {"solve", "solve -i " + inst + " --seed 9 --oracle", ""},
      {"brute", "brute -i " + inst, ""},
      {"experiment", "experiment --family random --count 3 --sizes 5 5 5 -m 30 --seed 4 --oracle --jobs 2", ""},
      {"experiment-csv", "experiment --family planted --count 3 --sizes 5 5 5 -m 30 --seed 4 --csv", ""},
  };
  auto expand = [](std::string s, int run) {
    const auto pos = s.find("{}");
    if (pos != std::string::npos) s.replace(pos, 2, std::to_string(run));
    return s;
  };
  for (const auto& c : cases) {
    std::string bodies[2];
    int status[2];
    for (int run = 0; run < 2; ++run) {
      const auto r = shell(cli + " " + expand(c.args, run));
      status[run] = r.status;
      bodies[run] = normalize(r.out);
      if (!c.file.empty()) bodies[run] += read_file(expand(c.file, run));
    }
    o.require(status[0] == status[1], c.name + " exit status differs");
    o.require(c.name == "verify-dist" || status[0] == 0, c.name + " exited with " + std::to_string(status[0]));
    o.require(bodies[0] == bodies[1], c.name + " output differs between runs");
    o.require(!bodies[0].empty(), c.name + " produced no output");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " commands byte-identical modulo ms";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "mx3";
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "mx3_acceptance";

  run(1, "Fourier identity and 256-mask inversion", 1.0, fourier_identity);
  run(2, "uniform-over-C probability table", 1.0, probability_table);
  run(3, "disguise order measurement", 1.0, disguise_erratum);
  run(4, "random baseline near 1/2", 30.0, random_baseline_check);
  run(5, "gadget completeness", 60.0, gadget_completeness);
  run(6, "test-distribution structure", 1.0, test_distribution_structure);
  run(7, "relaxation sanity and dominance", 120.0, sdp_sanity);
  run(8, "pipeline self-consistency", 60.0, pipeline_self_consistency);
  run(9, "measured gap table (planted and random families)", 600.0, headline_measurement);
  run(10, "CLI determinism", 120.0, [&] { return cli_determinism(cli, scratch); });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
