// SPDX-License-Identifier: MIT
// Command-line front end: Bellman values, depth sweeps, random verification
// campaigns, the brute-force rearrangement oracle and tree dumps.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/bellman.hpp"
#include "dyadic/campaign.hpp"
#include "dyadic/extremal.hpp"
#include "dyadic/rearrange.hpp"
#include "dyadic/tree_io.hpp"

namespace {

using dyadic::format17;

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format17(values[i]);
  return out;
}

int bellman_eval(double q, double f, double h) {
  const auto p = dyadic::BellmanPoint::make(q, f, h);
  const double c = dyadic::hq_inverse(q, p.z());
  std::cout << "{\"z\": " << format17(p.z()) << ", \"c\": " << format17(c) << ", \"omega\": "
            << format17(std::pow(c, q)) << ", \"B\": " << format17(dyadic::bellman_value(p)) << "}\n";
  return 0;
}

int bellman_curve(double q, int samples, double z_max) {
  if (samples < 2) throw std::invalid_argument("--samples must be at least 2");
  if (!(z_max > 1.0)) throw std::invalid_argument("--z-max must exceed 1");
  std::cout << "z,omega\n";
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 + (z_max - 1.0) * i / (samples - 1);
    std::cout << format17(z) << ',' << format17(dyadic::omega_q(q, z)) << '\n';
  }
  return 0;
}

int extremal_sweep(double q, double f, double h, int min_depth, int max_depth, const std::string& rule,
                   int verify_depth, const std::string& out) {
  const auto p = dyadic::BellmanPoint::make(q, f, h);
  std::vector<int> depths(std::max(0, max_depth - min_depth + 1));
  std::iota(depths.begin(), depths.end(), min_depth);
  const auto reports = dyadic::convergence_study(p, depths, dyadic::parse_spike_rule(rule), verify_depth);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << dyadic::residual_csv_header() << '\n';
  for (const auto& r : reports) os << dyadic::to_csv_row(r) << '\n';
  return 0;
}

int oracle_search(int depth, const std::string& values, double q) {
  const auto tree = dyadic::Tree::dyadic(depth);
  const auto multiset = parse_values(values);
  const auto r = dyadic::rearrangement_search(tree, multiset, q);
  std::cout << "{\"best_value\": " << format17(r.best_value) << ", \"best_arrangement\": [" << join(r.best_arrangement)
            << "], \"left_arranged_value\": " << format17(r.left_arranged_value)
            << ", \"hardy_bound\": " << format17(r.hardy_bound) << ", \"permutations\": " << r.permutations
            << ", \"holds\": " << (r.holds ? "true" : "false") << "}\n";
  return r.holds ? 0 : 1;
}

int tree_dump(int depth, const std::string& values) {
  auto tree = dyadic::make_dyadic_tree(depth);
  if (values.empty()) {
    std::cout << dyadic::serialize_tree(*tree);
  } else {
    std::cout << dyadic::serialize_step_function(dyadic::StepFunction(tree, parse_values(values)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic maximal operator: Bellman function, extremal sequences and inequality checks"};
  // "--h" is a parameter name here, so help is reachable through --help only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  int status = 0;

  // bellman
  auto* bellman = app.add_subcommand("bellman", "H_q, omega_q and the Bellman value");
  bellman->require_subcommand(1);
  double q = 0.5;
  double f = 1.0;
  double h = 0.8;
  auto* eval = bellman->add_subcommand("eval", "Print z, c, omega and B for one point");
  eval->add_option("--q", q, "Exponent in [0.01, 0.99]")->required();
  eval->add_option("--f", f, "Integral of phi")->required();
  eval->add_option("--h", h, "Integral of phi^q, 0 < h <= f^q")->required();
  eval->callback([&] { status = bellman_eval(q, f, h); });

  int samples = 100;
  double z_max = 100.0;
  auto* curve = bellman->add_subcommand("curve", "CSV of (z, omega_q(z)) on [1, z-max]");
  curve->add_option("--q", q, "Exponent in [0.01, 0.99]")->required();
  curve->add_option("--samples", samples, "Number of equally spaced z values")->capture_default_str();
  curve->add_option("--z-max", z_max, "Largest z")->capture_default_str();
  curve->callback([&] { status = bellman_curve(q, samples, z_max); });

  // extremal
  auto* extremal = app.add_subcommand("extremal", "Near-extremal sequences on the dyadic tree");
  extremal->require_subcommand(1);
  int min_depth = 2;
  int max_depth = 24;
  int verify_depth = dyadic::kDefaultVerifyDepth;
  std::string rule = "eigen-chain";
  std::string out;
  auto* sweep = extremal->add_subcommand("sweep", "CSV of I_m, B, ratio and residuals per depth");
  sweep->add_option("--q", q)->required();
  sweep->add_option("--f", f)->required();
  sweep->add_option("--h", h)->required();
  sweep->add_option("--min-depth", min_depth)->capture_default_str();
  sweep->add_option("--max-depth", max_depth)->capture_default_str();
  sweep->add_option("--rule", rule, "eigen-chain or prefix-cells")->capture_default_str();
  sweep->add_option("--verify-depth", verify_depth, "Cross-check closed forms up to this depth")->capture_default_str();
  sweep->add_option("--out", out, "Write the CSV here instead of stdout");
  sweep->callback([&] { status = extremal_sweep(q, f, h, min_depth, max_depth, rule, verify_depth, out); });

  // verify
  auto* verify = app.add_subcommand("verify", "Random property campaigns");
  verify->require_subcommand(1);
  dyadic::CampaignConfig config;
  std::string config_path;
  int depth = 0;
  auto* all = verify->add_subcommand("all", "Run every check; exit status 1 on any violation");
  all->add_option("--seed", config.seed)->capture_default_str();
  all->add_option("--trials", config.trials, "Random functions per (q, depth) cell")->capture_default_str();
  all->add_option("--q", config.qs, "Exponents (repeatable)")->capture_default_str();
  all->add_option("--depth", depth, "Run a single depth");
  all->add_option("--max-depth", config.max_depth)->capture_default_str();
  all->add_flag("--exact,!--float", config.exact, "Exact rational evaluation (default) or float mode");
  all->add_option("--out", config.out, "CSV path (default $DYADIC_OUT_DIR/campaign.csv)");
  all->add_option("--config", config_path, "key = value file; its entries override flags");
  all->add_option("--threads", config.threads, "Worker threads, 0 = hardware")->capture_default_str();
  all->callback([&] {
    if (depth > 0) config.min_depth = config.max_depth = depth;
    if (!config_path.empty()) dyadic::apply_config_file(config, config_path);
    const auto summary = dyadic::run_verification_campaign(config, std::cerr);
    std::cout << "functions=" << summary.functions << " rows=" << summary.rows << " violations=" << summary.violations
              << " out=" << dyadic::resolve_output_path(config) << '\n';
    for (const auto& [check, n] : summary.rows_by_check) {
      const auto it = summary.violations_by_check.find(check);
      std::cout << "  " << check << ": rows=" << n << " violations=" << (it == summary.violations_by_check.end() ? 0 : it->second)
                << '\n';
    }
    status = summary.ok() ? 0 : 1;
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  int oracle_depth = 3;
  std::string values;
  double oracle_q = 0.5;
  auto* search = oracle->add_subcommand("search", "Best placement of a multiset on equal leaves");
  search->add_option("--depth", oracle_depth)->capture_default_str();
  search->add_option("--values", values, "Comma-separated multiset, one value per leaf")->required();
  search->add_option("--q", oracle_q)->capture_default_str();
  search->callback([&] { status = oracle_search(oracle_depth, values, oracle_q); });

  // tree
  auto* tree = app.add_subcommand("tree", "Tree serialization");
  tree->require_subcommand(1);
  int tree_depth = 2;
  std::string tree_values;
  auto* dump = tree->add_subcommand("dump", "Nested JSON records of a dyadic tree or step function");
  dump->add_option("--depth", tree_depth)->capture_default_str();
  dump->add_option("--values", tree_values, "Comma-separated leaf values");
  dump->callback([&] { status = tree_dump(tree_depth, tree_values); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
