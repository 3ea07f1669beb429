// SPDX-License-Identifier: MIT
#include "dyadic/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dyadic/bellman.hpp"
#include "dyadic/extremal.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/rearrange.hpp"

namespace dyadic {

namespace {

constexpr double kValueQuantum = 1.0 / 1024.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
  return x;
}

long long parse_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw std::invalid_argument("config key '" + key + "': not an integer: '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: '" + v + "'");
}

struct Cell {
  double q = 0.5;
  int depth = 1;
  int index = 0;
};

struct CellOutput {
  std::string csv;
  std::vector<std::string> violations;
  CampaignSummary summary;
};

class CellRunner {
 public:
  CellRunner(const CampaignConfig& config, const Cell& cell) : config_(config), cell_(cell) {}

  CellOutput run() {
    // Independent stream per cell: output never depends on scheduling.
    std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                      static_cast<std::uint32_t>(cell_.index)};
    std::mt19937_64 rng(seq);
    const TreePtr tree = make_dyadic_tree(cell_.depth);
    const Arithmetic mode = config_.exact ? Arithmetic::kExact : Arithmetic::kFloat;
    const double q = cell_.q;
    for (trial_ = 0; trial_ < config_.trials; ++trial_) {
      const StepFunction phi = random_campaign_function(tree, rng);
      const MaximalResult m = maximal_operator(phi, mode);
      ++out_.summary.functions;

      item_ = 0;
      const UpperBoundReport ub = upper_bound_check(q, m, mode);
      emit("upper_bound", ub.report());

      const ChainReport chain = intermediate_chain_check(q, m, mode);
      emit("chain_covering", chain.covering);
      emit("chain_holder", chain.holder);

      double top = 0.0;
      for (double v : m.maximal.values()) top = std::max(top, v);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::uniform_int_distribution<std::size_t> pick(0, phi.size() - 1);
      for (item_ = 0; item_ < config_.lambdas; ++item_) {
        // Some thresholds sit exactly on a value of M_T phi to exercise ties.
        double lambda = unit(rng) < 0.3 ? m.maximal.value(pick(rng)) : 1.25 * top * unit(rng);
        if (!(lambda > 0.0)) lambda = 0.5 * top;
        const LevelSet kind = item_ % 2 == 0 ? LevelSet::kStrict : LevelSet::kNonStrict;
        emit("weak_type", weak_type_check(m, lambda, kind, mode));
      }

      std::vector<std::size_t> subset;
      for (item_ = 0; item_ < config_.subsets; ++item_) {
        subset.clear();
        const double p = 0.05 + 0.95 * unit(rng);
        for (std::size_t i = 0; i < phi.size(); ++i) {
          if (unit(rng) < p) subset.push_back(i);
        }
        if (subset.empty()) subset.push_back(pick(rng));
        emit("kolmogorov", kolmogorov_check(q, m, subset, mode));
      }

      item_ = 0;
      const SymmetrizationReport sym = symmetrization_check(m, config_.grid, mode);
      emit("symmetrization", {sym.worst.lhs, sym.worst.rhs, sym.holds()}, sym.holds());

      // Quadruple for the two-term split; one in four is proportional by construction.
      const double t = std::ldexp(std::floor(1024.0 * unit(rng)) + 1.0, -10);
      const double s = std::ldexp(std::floor(1024.0 * unit(rng)) + 1.0, -10);
      double t2 = std::ldexp(std::floor(1024.0 * unit(rng)), -10);
      double s2 = std::ldexp(std::floor(1024.0 * unit(rng)), -10);
      if (unit(rng) < 0.25) {
        const int shift = static_cast<int>(std::floor(8.0 * unit(rng))) - 4;
        t2 = std::ldexp(t, shift);
        s2 = std::ldexp(s, shift);
      }
      const HolderSplitReport split = holder_split_check(t, t2, s, s2, q);
      emit("holder_split", split.report, split.report.holds && (!split.proportional || split.equality));

      const StepFunction psi = random_campaign_function(tree, rng);
      emit("holder_specialization", holder_specialization_check(q, phi, psi));
    }
    return std::move(out_);
  }

 private:
  void emit(const char* check, const Report& r) {
    emit(check, r, config_.exact ? r.holds : holds_with_tolerance(r.lhs, r.rhs, config_.tolerance));
  }

  void emit(const char* check, const Report& r, bool holds) {
    out_.csv += check;
    out_.csv += ',';
    out_.csv += format17(cell_.q);
    out_.csv += ',';
    out_.csv += std::to_string(cell_.depth);
    out_.csv += ',';
    out_.csv += format17(r.lhs);
    out_.csv += ',';
    out_.csv += format17(r.rhs);
    out_.csv += ',';
    out_.csv += format17(r.rhs - r.lhs);
    out_.csv += holds ? ",true\n" : ",false\n";
    ++out_.summary.rows;
    ++out_.summary.rows_by_check[check];
    if (!holds) {
      ++out_.summary.violations;
      ++out_.summary.violations_by_check[check];
      char buf[320];
      std::snprintf(buf, sizeof buf,
                    "violation: check=%s seed=%" PRIu64 " cell=%d q=%.17g depth=%d trial=%d item=%d lhs=%.17g rhs=%.17g",
                    check, config_.seed, cell_.index, cell_.q, cell_.depth, trial_, item_, r.lhs, r.rhs);
      out_.violations.emplace_back(buf);
    }
  }

  const CampaignConfig& config_;
  Cell cell_;
  CellOutput out_;
  int trial_ = 0;
  int item_ = 0;
};

}  // namespace

StepFunction random_campaign_function(const TreePtr& tree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = tree->leaf_count();
  const int family = static_cast<int>(std::floor(3.0 * unit(rng)));
  const std::size_t spike = std::min(n - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(n)));
  std::vector<double> values(n, 0.0);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool zero = unit(rng) < 0.25;
    double x = 0.0;
    switch (family) {
      case 0:  // uniform on [0, 16)
        x = 16.0 * unit(rng);
        break;
      case 1:  // Pareto(1.2) with scale 0.1, capped at 2^20
        x = std::min(0.1 * std::pow(1.0 - unit(rng), -1.0 / 1.2), 1048576.0);
        break;
      default:  // one tall spike over a low floor
        x = i == spike ? std::ldexp(1.0, 8 + static_cast<int>(6.0 * unit(rng))) : unit(rng);
        break;
    }
    if (zero) continue;
    values[i] = std::round(x / kValueQuantum) * kValueQuantum;
    any = any || values[i] > 0.0;
  }
  if (!any) values[spike] = 1.0;
  return {tree, std::move(values)};
}

void validate(const CampaignConfig& c) {
  if (c.trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (c.qs.empty()) throw std::invalid_argument("at least one q is required");
  for (double q : c.qs) validate_q(q);
  if (c.min_depth < 1 || c.max_depth < c.min_depth || c.max_depth > 16) {
    throw std::invalid_argument("depth range must satisfy 1 <= min_depth <= max_depth <= 16");
  }
  if (!(c.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (c.lambdas < 0 || c.subsets < 0) throw std::invalid_argument("lambdas and subsets must be >= 0");
  if (c.grid < 1) throw std::invalid_argument("grid must be positive");
  if (c.exact && (c.grid & (c.grid - 1)) != 0) throw std::invalid_argument("exact mode needs a power-of-two grid");
  if (c.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

void apply_config_text(CampaignConfig& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key == "seed") {
      c.seed = std::stoull(v);
    } else if (key == "trials") {
      c.trials = static_cast<int>(parse_integer(key, v));
    } else if (key == "qs") {
      c.qs.clear();
      std::istringstream list(v);
      std::string item;
      while (std::getline(list, item, ',')) c.qs.push_back(parse_double(key, trim(item)));
    } else if (key == "min_depth") {
      c.min_depth = static_cast<int>(parse_integer(key, v));
    } else if (key == "max_depth") {
      c.max_depth = static_cast<int>(parse_integer(key, v));
    } else if (key == "depth") {
      c.min_depth = c.max_depth = static_cast<int>(parse_integer(key, v));
    } else if (key == "tolerance") {
      c.tolerance = parse_double(key, v);
    } else if (key == "exact") {
      c.exact = parse_bool(key, v);
    } else if (key == "out") {
      c.out = v;
    } else if (key == "lambdas") {
      c.lambdas = static_cast<int>(parse_integer(key, v));
    } else if (key == "subsets") {
      c.subsets = static_cast<int>(parse_integer(key, v));
    } else if (key == "grid") {
      c.grid = static_cast<int>(parse_integer(key, v));
    } else if (key == "threads") {
      c.threads = static_cast<int>(parse_integer(key, v));
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(CampaignConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(c, text.str());
}

std::string resolve_output_path(const CampaignConfig& c) {
  if (!c.out.empty()) return c.out;
  const char* dir = std::getenv("DYADIC_OUT_DIR");
  return (std::filesystem::path(dir != nullptr && *dir != '\0' ? dir : ".") / "campaign.csv").string();
}

CampaignSummary run_verification_campaign(const CampaignConfig& config, std::ostream& csv, std::ostream& log) {
  validate(config);
  std::vector<Cell> cells;
  for (double q : config.qs) {
    for (int depth = config.min_depth; depth <= config.max_depth; ++depth) {
      cells.push_back({q, depth, static_cast<int>(cells.size())});
    }
  }
  std::vector<CellOutput> outputs(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        outputs[i] = CellRunner(config, cells[i]).run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t count = std::min<std::size_t>(cells.size(), config.threads > 0 ? config.threads : hw);
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CampaignSummary total;
  csv << kCampaignCsvHeader << '\n';
  for (const CellOutput& o : outputs) {
    csv << o.csv;
    for (const std::string& v : o.violations) log << v << '\n';
    total.functions += o.summary.functions;
    total.rows += o.summary.rows;
    total.violations += o.summary.violations;
    for (const auto& [k, n] : o.summary.rows_by_check) total.rows_by_check[k] += n;
    for (const auto& [k, n] : o.summary.violations_by_check) total.violations_by_check[k] += n;
  }
  return total;
}

CampaignSummary run_verification_campaign(const CampaignConfig& config, std::ostream& log) {
  const std::string path = resolve_output_path(config);
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open campaign output " + path);
  CampaignSummary s = run_verification_campaign(config, csv, log);
  csv.flush();
  if (!csv) throw std::runtime_error("failed writing campaign output " + path);
  return s;
}

}  // namespace dyadic
