#include "rqc/cli_app.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "rqc/circuit.hpp"
#include "rqc/csv.hpp"
#include "rqc/decoupler.hpp"
#include "rqc/errors.hpp"
#include "rqc/gambler.hpp"
#include "rqc/string_chain.hpp"
#include "rqc/weight_chain.hpp"

namespace rqc {

namespace {

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path, std::ios::binary);  // '\n' line ends on every platform
      if (!file) throw domain_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

GateEnsemble parse_ensemble(const std::string& name) {
  if (name == "haar") return GateEnsemble::Haar;
  if (name == "clifford") return GateEnsemble::Clifford;
  throw domain_error("ensemble must be 'haar' or 'clifford'");
}

int cmd_weight_evolve(int n, int start, std::int64_t t, std::uint64_t seed,
                      const std::string& out) {
  const WeightChain chain = WeightChain::build(n);
  const auto dist = chain.evolve_exact(start, t);
  Output o(out);
  o.stream() << "# config: weight-evolve n=" << n << " start=" << start
             << " t=" << t << " seed=" << seed << "\n";
  csv_row(o.stream(), "k", "prob");
  for (int k = 0; k <= n; ++k)
    if (dist[static_cast<std::size_t>(k)] != 0.0)
      csv_row(o.stream(), k, dist[static_cast<std::size_t>(k)]);
  return 0;
}

int cmd_hitting_time(int n, int start, int target, std::uint64_t trials,
                     std::int64_t t_max, std::uint64_t seed, int threads,
                     const std::string& out, const std::string& hist_out) {
  const WeightChain chain = WeightChain::build(n);
  const std::uint64_t deadline = t_max > 0
                                     ? static_cast<std::uint64_t>(t_max)
                                     : default_hitting_deadline(n);
  const HittingStats st =
      hitting_time_mc(chain, start, target, trials, deadline, seed, threads);
  Output o(out);
  o.stream() << "# config: hitting-time n=" << n << " start=" << start
             << " target=" << target << " trials=" << trials
             << " t-max=" << deadline << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "start", "target", "trial_count", "censored", "p50",
          "p90", "p99", "mean");
  csv_row(o.stream(), st.start, st.target, st.trials, st.censored,
          st.times.quantile(0.5), st.times.quantile(0.9),
          st.times.quantile(0.99), st.times.mean());
  if (!hist_out.empty()) {
    Output h(hist_out);
    h.stream() << "# config: hitting-time-histogram n=" << n
               << " start=" << start << " target=" << target
               << " trials=" << trials << " t-max=" << deadline
               << " seed=" << seed << "\n";
    csv_row(h.stream(), "t", "count");
    for (std::size_t v = 0; v < st.times.counts.size(); ++v)
      if (st.times.counts[v]) csv_row(h.stream(), v, st.times.counts[v]);
  }
  return 0;
}

int cmd_string_shells(int n, int start_weight, std::int64_t t,
                      std::uint64_t trials, std::uint64_t seed, int threads,
                      const std::string& out) {
  if (start_weight < 1 || start_weight > n)
    throw domain_error("string-shells: start weight outside [1,n]");
  PauliString mu(n);
  for (int i = 0; i < start_weight; ++i) mu.set_site(i, 1);
  const auto reports = empirical_uniformity(mu, t, trials, seed, threads);
  Output o(out);
  o.stream() << "# config: string-shells n=" << n << " start=" << start_weight
             << " t=" << t << " trials=" << trials << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "k", "shell_size", "chi2", "dof", "pvalue");
  for (const auto& r : reports)
    csv_row(o.stream(), r.k, r.shell_size, r.chi2, r.dof, r.pvalue);
  return 0;
}

int cmd_gambler(int a, double p, double p_minus, std::uint64_t trials,
                std::uint64_t seed, int threads, const std::string& out) {
  RuinInstance inst;
  inst.a = a;
  inst.p_minus = p_minus > 0.0 ? p_minus : p;
  inst.p_plus.assign(static_cast<std::size_t>(a > 0 ? a - 1 : 0), p);
  const double exact = ruin_probability(inst);
  const double linear = ruin_exact_linear(inst);
  const RuinEstimate mc = ruin_mc(inst, trials, seed, threads);
  Output o(out);
  o.stream() << "# config: gambler a=" << a << " p=" << format_double(p)
             << " p-minus=" << format_double(inst.p_minus)
             << " trials=" << trials << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "a", "p", "exact", "linear", "mc", "mc_stderr", "trials");
  csv_row(o.stream(), a, p, exact, linear, mc.estimate, mc.stderr_est,
          mc.trials);
  return 0;
}

int cmd_depth(int n, std::int64_t t, int d, std::uint64_t trials,
              std::uint64_t seed, int threads, const std::string& out) {
  Output o(out);
  o.stream() << "# config: depth n=" << n << " t=" << t << " d=" << d
             << " trials=" << trials << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "n", "t", "trial", "depth", "rejections");
  // Per-trial rows must come out in trial order, so sample serially here;
  // the histogram-only path (no per-trial output) is the parallel one.
  (void)threads;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_stream(seed, trial);
    if (d > 0) {
      const RqcTd r = sample_rqc_td(n, t, d, rng);
      csv_row(o.stream(), n, t, trial, r.levels.depth(), r.rejections);
    } else {
      const Circuit c = sample_sequential(n, t, rng);
      csv_row(o.stream(), n, t, trial, parallelize(c).depth(), 0);
    }
  }
  return 0;
}

int cmd_coverage(int n, std::int64_t t, std::uint64_t trials,
                 std::uint64_t seed, int threads, const std::string& out) {
  const CoverageResult res = coverage_probability(n, t, trials, seed, threads);
  Output o(out);
  o.stream() << "# config: coverage n=" << n << " t=" << t
             << " trials=" << trials << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "n", "t", "trials", "covered", "bound");
  csv_row(o.stream(), n, t, res.trials, res.covered, res.union_bound);
  return 0;
}

int cmd_decouple(int n, int e, int ent, int s, std::vector<std::int64_t> grid,
                 const std::string& ensemble, const std::string& rest,
                 std::uint64_t trials, std::uint64_t seed, int threads,
                 const std::string& out) {
  if (s < 0 || s > n) throw domain_error("decouple: s outside [0,n]");
  if (rest != "zero" && rest != "mixed")
    throw domain_error("decouple: --rest must be 'zero' or 'mixed'");
  const DensityMatrix rho =
      DensityMatrix::entangled_with_env(n, e, ent, rest == "mixed");
  std::vector<int> keep(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) keep[static_cast<std::size_t>(i)] = i;
  std::sort(grid.begin(), grid.end());
  const auto points = decoupling_sweep(rho, keep, grid, parse_ensemble(ensemble),
                                       trials, seed, threads);
  Output o(out);
  o.stream() << "# config: decouple n=" << n << " e=" << e << " ent=" << ent
             << " s=" << s << " ensemble=" << ensemble << " rest=" << rest
             << " trials=" << trials << " seed=" << seed
             << " threads=" << threads << "\n";
  csv_row(o.stream(), "n", "e_qubits", "s", "t", "trials", "mean", "stderr");
  for (const auto& p : points)
    csv_row(o.stream(), n, e, s, p.t, p.error.count, p.error.mean(),
            p.error.stderr_mean());
  return 0;
}

int cmd_moment_check(int n, int start_weight, std::int64_t t,
                     const std::string& ensemble, std::uint64_t trials,
                     std::uint64_t seed, int threads, const std::string& out) {
  if (start_weight < 1 || start_weight > n)
    throw domain_error("moment-check: start weight outside [1,n]");
  PauliString mu(n);
  for (int i = 0; i < start_weight; ++i) mu.set_site(i, 1);
  const MomentCheck mc =
      moment_consistency(mu, t, trials, parse_ensemble(ensemble), seed, threads);
  Output o(out);
  o.stream() << "# config: moment-check n=" << n << " start=" << start_weight
             << " t=" << t << " ensemble=" << ensemble << " trials=" << trials
             << " seed=" << seed << " threads=" << threads << "\n";
  csv_row(o.stream(), "nu", "empirical", "exact", "z");
  for (std::size_t nu = 0; nu < mc.empirical.size(); ++nu)
    csv_row(o.stream(), PauliString::from_index(n, nu).str(), mc.empirical[nu],
            mc.exact_row[nu], mc.z[nu]);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Random-circuit decoupling laboratory"};
  app.require_subcommand(1);

  int n = 2;
  std::int64_t t = 0;
  int d = 0;
  int start = 1;
  int target = 1;
  int k = 1;
  std::uint64_t trials = 1000;
  double delta = 0.05;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string hist_out;
  std::int64_t t_max = 0;
  int a = 2;
  double p = 2.0 / 3.0;
  double p_minus = 0.0;
  int e = 2;
  int ent = 2;
  int s = 1;
  std::vector<std::int64_t> t_grid;
  std::string ensemble = "haar";
  std::string rest = "zero";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed (recorded in the output)");
    sub->add_option("--threads", threads, "worker cap; 0 = all cores");
    sub->add_option("--out", out, "output CSV path ('-' = stdout)");
  };

  auto* we = app.add_subcommand("weight-evolve", "exact weight-chain distribution after t steps");
  we->add_option("--n", n)->required();
  we->add_option("--start", start)->required();
  we->add_option("--t", t)->required();
  add_common(we);

  auto* ht = app.add_subcommand("hitting-time", "Monte Carlo weight-chain hitting times");
  ht->add_option("--n", n)->required();
  ht->add_option("--start", start)->required();
  ht->add_option("--target", target)->required();
  ht->add_option("--trials", trials);
  ht->add_option("--t-max", t_max, "censoring deadline; 0 = 50 n log2(n)^2");
  ht->add_option("--hist", hist_out, "optional full-histogram CSV path");
  add_common(ht);

  auto* ss = app.add_subcommand("string-shells", "per-shell uniformity of the string chain");
  ss->add_option("--n", n)->required();
  ss->add_option("--start", start, "weight of the initial string");
  ss->add_option("--t", t)->required();
  ss->add_option("--trials", trials);
  add_common(ss);

  auto* ga = app.add_subcommand("gambler", "ruin probability: closed form vs linear solve vs MC");
  ga->add_option("--a", a)->required();
  ga->add_option("--p", p, "forward probability at interior sites")->required();
  ga->add_option("--p-minus", p_minus, "forward probability at sites <= 0 (default: --p)");
  ga->add_option("--trials", trials);
  add_common(ga);

  auto* dp = app.add_subcommand("depth", "greedy parallelization depth per sampled circuit");
  dp->add_option("--n", n)->required();
  dp->add_option("--t", t)->required();
  dp->add_option("--d", d, "depth budget; rejection-sample when > 0");
  dp->add_option("--trials", trials);
  add_common(dp);

  auto* cv = app.add_subcommand("coverage", "frequency that t gates touch every qubit");
  cv->add_option("--n", n)->required();
  cv->add_option("--t", t)->required();
  cv->add_option("--trials", trials);
  add_common(cv);

  auto* dc = app.add_subcommand("decouple", "trace-distance decoupling error sweep");
  dc->add_option("--n", n)->required();
  dc->add_option("--e", e, "environment qubits");
  dc->add_option("--ent", ent, "A-qubits maximally entangled with E");
  dc->add_option("--s", s, "kept qubits (the first s)");
  dc->add_option("--t", t_grid, "gate-count grid")->required()->delimiter(',');
  dc->add_option("--ensemble", ensemble, "haar | clifford");
  dc->add_option("--rest", rest, "non-entangled A-qubit fill: zero | mixed");
  dc->add_option("--trials", trials);
  add_common(dc);

  auto* mo = app.add_subcommand("moment-check", "gate-level second moments vs exact chain row");
  mo->add_option("--n", n)->required();
  mo->add_option("--start", start, "weight of the initial string");
  mo->add_option("--t", t)->required();
  mo->add_option("--ensemble", ensemble, "haar | clifford");
  mo->add_option("--trials", trials);
  add_common(mo);

  // Accepted everywhere for interface uniformity even where unused.
  app.add_option("--k", k, "generic shell/weight parameter");
  app.add_option("--delta", delta, "reference-point offset");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::endl;
      return 0;
    }
    std::cerr << "parameter error: " << err.what() << std::endl;
    return 2;
  }

  try {
    if (we->parsed()) return cmd_weight_evolve(n, start, t, seed, out);
    if (ht->parsed())
      return cmd_hitting_time(n, start, target, trials, t_max, seed, threads,
                              out, hist_out);
    if (ss->parsed())
      return cmd_string_shells(n, start, t, trials, seed, threads, out);
    if (ga->parsed())
      return cmd_gambler(a, p, p_minus, trials, seed, threads, out);
    if (dp->parsed()) return cmd_depth(n, t, d, trials, seed, threads, out);
    if (cv->parsed()) return cmd_coverage(n, t, trials, seed, threads, out);
    if (dc->parsed())
      return cmd_decouple(n, e, ent, s, t_grid, ensemble, rest, trials, seed,
                          threads, out);
    if (mo->parsed())
      return cmd_moment_check(n, start, t, ensemble, trials, seed, threads, out);
    std::cerr << "parameter error: no subcommand" << std::endl;
    return 2;
  } catch (const capacity_error& err) {
    std::cerr << "guard violation: " << err.what() << std::endl;
    return 3;
  } catch (const rejection_cap_error& err) {
    std::cerr << "rejection cap exhausted: " << err.what() << std::endl;
    return 4;
  } catch (const domain_error& err) {
    std::cerr << "parameter error: " << err.what() << std::endl;
    return 2;
  }
}

}  // namespace rqc
