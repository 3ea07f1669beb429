// SPDX-License-Identifier: MIT
#include "dyadic/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dyadic/hardy.hpp"
#include "dyadic/quadrature.hpp"
#include "dyadic/rearrange.hpp"

namespace dyadic {

namespace {

// |M - c phi|^q on a block where M = c phi up to rounding: a gap of 1e-16 would
// contribute 1e-8 at q = 1/2, so gaps at rounding level count as zero.
long double eigen_gap(long double maximal, long double scaled) {
  const long double gap = std::abs(maximal - scaled);
  return gap <= kFloatTolerance * std::max(maximal, scaled) ? 0.0L : gap;
}

// ---------------------------------------------------------------------------
// Eigen-chain layout.
//
// A node with average lam and r levels below it is either constant lam, or it
// is split along its left spine: for some d in 1..r the pieces
// L_k = [1 - 2^-(k-1), 1 - 2^-k), k = 1..d (dyadic nodes of relative measure
// 2^-k) become "hot" nodes with average rho_d lam, and the remaining rightmost
// node of relative measure 2^-d is constant lam / c. The choice of rho_d keeps
// the node average at lam. Every ancestor of a hot node averages at most the
// hot node's own lam, so M_T phi = lam on the constant-lam/c piece: there
// M_T phi = c phi holds exactly. Only the truncated constant blocks miss it.
//
// With S(r) the integral of (M_T phi)^q per unit lam^q and unit measure,
//   S(0) = 1,  S(r) = max(1, max_d [2^-d + rho_d^q sum_k 2^-k S(r-k)]),
// and d(r) is the first maximizer that strictly beats the constant block.
// Because the choice at r-1 stays available at r, S is non-decreasing in r.
// ---------------------------------------------------------------------------

struct ChainPlan {
  double c = 1.0;
  std::vector<int> choice;  // choice[r] = d(r), 0 for a constant block

  [[nodiscard]] double rho(int d) const {
    const double tail = std::ldexp(1.0, -d);
    return (1.0 - tail / c) / (1.0 - tail);
  }
};

ChainPlan plan_chain(double q, double c, int depth) {
  ChainPlan plan{c, std::vector<int>(depth + 1, 0)};
  std::vector<double> S(depth + 1, 1.0);
  for (int r = 1; r <= depth; ++r) {
    double best = 1.0;
    for (int d = 1; d <= r; ++d) {
      double hot = 0.0;
      for (int k = 1; k <= d; ++k) hot += std::ldexp(S[r - k], -k);
      const double v = std::ldexp(1.0, -d) + std::pow(plan.rho(d), q) * hot;
      if (v > best) {
        best = v;
        plan.choice[r] = d;
      }
    }
    S[r] = best;
  }
  return plan;
}

enum class ChainKind { kRest, kConstant };

// Leaf classes of a node with r levels below it, relative to lam = 1 and unit
// measure, keyed by how many hot steps of each type lead to them.
using ChainKey = std::pair<std::vector<int>, ChainKind>;
using ChainClasses = std::map<ChainKey, double>;

std::vector<SpikeClass> eigen_chain_classes(const BellmanPoint& p, double c, int depth) {
  const ChainPlan plan = plan_chain(p.q, c, depth);
  std::vector<ChainClasses> memo(depth + 1);
  const std::vector<int> zero(depth + 1, 0);
  for (int r = 0; r <= depth; ++r) {
    const int d = plan.choice[r];
    if (d == 0) {
      memo[r][{zero, ChainKind::kConstant}] = 1.0;
      continue;
    }
    for (int k = 1; k <= d; ++k) {
      for (const auto& [key, mu] : memo[r - k]) {
        ChainKey shifted = key;
        ++shifted.first[d];
        memo[r][shifted] += std::ldexp(mu, -k);
      }
    }
    memo[r][{zero, ChainKind::kRest}] += std::ldexp(1.0, -d);
  }
  std::vector<SpikeClass> out;
  out.reserve(memo[depth].size());
  for (const auto& [key, mu] : memo[depth]) {
    double lam = p.f;
    for (int d = 1; d <= depth; ++d) {
      if (key.first[d] != 0) lam *= std::pow(plan.rho(d), key.first[d]);
    }
    out.push_back({key.second == ChainKind::kRest ? lam / c : lam, lam, mu});
  }
  return out;
}

void fill_chain(const ChainPlan& plan, double lam, int r, double* out) {
  const std::size_t n = std::size_t{1} << r;
  const int d = plan.choice[r];
  if (d == 0) {
    std::fill(out, out + n, lam);
    return;
  }
  const double hot = lam * plan.rho(d);
  std::size_t pos = 0;
  for (int k = 1; k <= d; ++k) {
    fill_chain(plan, hot, r - k, out + pos);
    pos += std::size_t{1} << (r - k);
  }
  std::fill(out + pos, out + n, lam / plan.c);
}

// ---------------------------------------------------------------------------
// Prefix-cell layout: cells C_k = [2^-(k+1), 2^-k), k = 0..m-1, and the tail
// [0, 2^-m), each carrying the average of g(t) = K t^(-1+1/c). With
// G(t) = f t^(1/c) the primitive of g, the value on C_k is
// 2^(k+1) (G(2^-k) - G(2^-(k+1))), the tail value is 2^m G(2^-m), and M_T phi on
// C_k is the prefix average 2^k G(2^-k) = f 2^(k(1-1/c)).
// ---------------------------------------------------------------------------

double cell_value(double f, double c, int k) {
  // 2^(k+1) * f * 2^(-k/c) * (1 - 2^(-1/c)), written to avoid cancellation.
  return f * std::exp2(k + 1 - k / c) * -std::expm1(-std::numbers::ln2 / c);
}

double prefix_average(double f, double c, int k) { return f * std::exp2(k * (1.0 - 1.0 / c)); }

std::vector<SpikeClass> prefix_cell_classes(const BellmanPoint& p, double c, int depth) {
  std::vector<SpikeClass> out;
  out.reserve(depth + 1);
  for (int k = 0; k < depth; ++k) out.push_back({cell_value(p.f, c, k), prefix_average(p.f, c, k), std::ldexp(1.0, -(k + 1))});
  const double tail = prefix_average(p.f, c, depth);
  out.push_back({tail, tail, std::ldexp(1.0, -depth)});
  return out;
}

void check_depth(int depth) {
  if (depth < 2) throw std::invalid_argument("spike sequences need depth >= 2");
  if (depth > kMaxSpikeDepth) throw std::invalid_argument("spike depth exceeds " + std::to_string(kMaxSpikeDepth));
}

// A crossing within rounding distance of a piece end is moved onto it; the
// sliver left otherwise carries no mass but defeats the quadrature error estimate.
double snap_crossing(double crossing, double a, double b) {
  if (std::abs(crossing - a) <= kFloatTolerance * b) return a;
  if (std::abs(crossing - b) <= kFloatTolerance * b) return b;
  return crossing;
}

// Integral over [a, b] of |y - f t^-beta|^q, the power profile's Hardy transform being f t^-beta.
// Both parts are integrated in the distance from the crossing, with integrands
// written as sums of non-negative terms so nothing cancels near the kink.
double power_piece(double q, double y, double f, double beta, double a, double b) {
  if (!(b > a)) return 0.0;
  if (beta == 0.0) return std::pow(std::abs(y - f), q) * (b - a);
  const double crossing = snap_crossing(std::pow(f / y, 1.0 / beta), a, b);
  double sum = 0.0;
  const double upper = std::min(b, crossing);
  if (upper > a) {
    // Where f t^-beta >= y substitute s = t^e, e = 1 - beta q: the integrand
    // f^q t^(-beta q) (1 - y t^beta / f)^q becomes bounded in s. With
    // v = upper^e - s, 1 - y t^beta / f = d + r (1 - (1 - v/upper^e)^(beta/e)).
    const double e = 1.0 - beta * q;
    const double top = std::pow(upper, e);
    const double r = y * std::pow(upper, beta) / f;
    const double d = std::max(0.0, 1.0 - r);
    const auto integrand = [&](double v) {
      return std::pow(d - r * std::expm1(beta / e * std::log1p(-v / top)), q);
    };
    sum += std::pow(f, q) / e * quad::endpoint_singular(integrand, 0.0, top - std::pow(a, e));
  }
  const double lower = std::max(a, crossing);
  if (b > lower) {
    // t = lower + u: y - f t^-beta = d + r (1 - (1 + u/lower)^-beta).
    const double r = f * std::pow(lower, -beta);
    const double d = std::max(0.0, y - r);
    sum += quad::endpoint_singular(
        [&](double u) { return std::pow(d - r * std::expm1(-beta * std::log1p(u / lower)), q); }, 0.0, b - lower);
  }
  return sum;
}

// Integral over [a, b] of |y - A - B/t|^q, a > 0 whenever B > 0; integrated in
// the distance from the crossing t = B / (y - A) as above.
double step_piece(double q, double y, double A, double B, double a, double b) {
  if (!(b > a)) return 0.0;
  if (B == 0.0) return std::pow(std::abs(y - A), q) * (b - a);
  const double crossing = y > A ? snap_crossing(B / (y - A), a, b) : INFINITY;
  double sum = 0.0;
  const double upper = std::min(b, crossing);
  if (upper > a) {
    // t = upper - v: A + B/t - y = d + B v / (t upper).
    const double d = std::max(0.0, A + B / upper - y);
    sum += quad::endpoint_singular(
        [&](double v) { return std::pow(d + B * v / ((upper - v) * upper), q); }, 0.0, upper - a);
  }
  const double lower = std::max(a, crossing);
  if (b > lower) {
    // t = lower + u: y - A - B/t = d + B u / (t lower).
    const double d = std::max(0.0, y - A - B / lower);
    sum += quad::endpoint_singular(
        [&](double u) { return std::pow(d + B * u / ((lower + u) * lower), q); }, 0.0, b - lower);
  }
  return sum;
}

struct ClassTotals {
  long double I = 0.0L;
  long double h = 0.0L;
  long double f = 0.0L;
  long double eigen = 0.0L;
};

ClassTotals totals(double q, double c, std::span<const SpikeClass> classes) {
  ClassTotals t;
  const long double lq = q;
  for (const SpikeClass& s : classes) {
    t.I += std::pow(static_cast<long double>(s.maximal), lq) * s.measure;
    if (s.phi > 0.0) t.h += std::pow(static_cast<long double>(s.phi), lq) * s.measure;
    t.f += static_cast<long double>(s.phi) * s.measure;
    const long double gap = eigen_gap(s.maximal, c * static_cast<long double>(s.phi));
    if (gap > 0.0L) t.eigen += std::pow(gap, lq) * s.measure;
  }
  return t;
}

MonotoneProfile maximal_rearrangement(std::span<const SpikeClass> classes) {
  std::vector<double> values;
  std::vector<double> measures;
  values.reserve(classes.size());
  measures.reserve(classes.size());
  for (const SpikeClass& s : classes) {
    values.push_back(s.maximal);
    measures.push_back(s.measure);
  }
  return decreasing_rearrangement(values, measures);
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string to_string(SpikeRule rule) { return rule == SpikeRule::kEigenChain ? "eigen-chain" : "prefix-cells"; }

SpikeRule parse_spike_rule(const std::string& text) {
  if (text == "eigen-chain") return SpikeRule::kEigenChain;
  if (text == "prefix-cells") return SpikeRule::kPrefixCells;
  throw std::invalid_argument("unknown spike rule '" + text + "' (expected eigen-chain or prefix-cells)");
}

std::vector<SpikeClass> spike_classes(const SpikeSequenceParams& params) {
  check_depth(params.depth);
  const double c = hq_inverse(params.point.q, params.point.z());
  return params.rule == SpikeRule::kEigenChain ? eigen_chain_classes(params.point, c, params.depth)
                                               : prefix_cell_classes(params.point, c, params.depth);
}

StepFunction build_spike_sequence(const SpikeSequenceParams& params) {
  check_depth(params.depth);
  const int m = params.depth;
  const double f = params.point.f;
  const double c = hq_inverse(params.point.q, params.point.z());
  TreePtr tree = make_dyadic_tree(m);  // validates the materialization cap
  std::vector<double> values(std::size_t{1} << m);
  if (params.rule == SpikeRule::kEigenChain) {
    fill_chain(plan_chain(params.point.q, c, m), f, m, values.data());
  } else {
    values[0] = prefix_average(f, c, m);
    for (std::size_t j = 1; j < values.size(); ++j) {
      // Leaf j starts at j 2^-m, inside C_k with k = m - bit_width(j).
      values[j] = cell_value(f, c, m - static_cast<int>(std::bit_width(j)));
    }
  }
  return {std::move(tree), std::move(values)};
}

std::string residual_csv_header() {
  return "depth,I_m,B,ratio,eigen_residual,rearranged_residual,h_m,B_m,ratio_m";
}

std::string to_csv_row(const ResidualReport& r) {
  return std::to_string(r.depth) + "," + format17(r.I) + "," + format17(r.B) + "," + format17(r.ratio) + "," +
         format17(r.eigen_residual) + "," + format17(r.rearranged_residual) + "," + format17(r.h_m) + "," +
         format17(r.B_m) + "," + format17(r.ratio_m);
}

std::vector<ResidualReport> convergence_study(const BellmanPoint& point, std::span<const int> depths, SpikeRule rule,
                                              int verify_depth) {
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (depths[i] <= depths[i - 1]) throw std::invalid_argument("depths must be strictly increasing");
  }
  const double q = point.q;
  const double B = bellman_value(point);
  const PowerProfile g = extremal_profile(point);
  const double c = g.c();
  std::vector<ResidualReport> out;
  out.reserve(depths.size());
  for (int m : depths) {
    const SpikeSequenceParams params{point, m, rule};
    const std::vector<SpikeClass> classes = spike_classes(params);
    const ClassTotals t = totals(q, c, classes);
    ResidualReport r;
    r.depth = m;
    r.I = static_cast<double>(t.I);
    r.B = B;
    r.ratio = r.I / B;
    r.h_m = static_cast<double>(t.h);
    r.B_m = bellman_value(BellmanPoint::make(q, point.f, r.h_m));
    r.ratio_m = r.I / r.B_m;
    r.eigen_residual = static_cast<double>(t.eigen);
    r.rearranged_residual = rearranged_residual(q, maximal_rearrangement(classes), g);
    if (m <= std::min(verify_depth, kMaxDyadicDepth)) {
      const StepFunction phi = build_spike_sequence(params);
      const MaximalResult mr = maximal_operator(phi);
      double I = 0.0;
      for (std::size_t i = 0; i < phi.size(); ++i) I += std::pow(mr.maximal.value(i), q);
      I = std::ldexp(I, -m);
      const double eigen = eigenfunction_residual(q, mr, c);
      const double h = integrate(phi, q);
      if (!close(I, r.I, 1e-10) || !close(h, r.h_m, 1e-10) ||
          std::abs(eigen - r.eigen_residual) > 1e-10 * std::max(1.0, r.eigen_residual)) {
        throw std::logic_error("closed-form spike integrals disagree with the maximal operator at depth " +
                               std::to_string(m));
      }
      r.cross_checked = true;
    }
    out.push_back(r);
  }
  return out;
}

double eigenfunction_residual(double q, const MaximalResult& m, double c) {
  validate_q(q);
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  const Tree& t = m.input.tree();
  long double sum = 0.0L;
  for (std::size_t i = 0; i < m.input.size(); ++i) {
    const long double gap = eigen_gap(m.maximal.value(i), c * static_cast<long double>(m.input.value(i)));
    if (gap > 0.0L) sum += std::pow(gap, static_cast<long double>(q)) * t.leaf_measure(i);
  }
  return static_cast<double>(sum);
}

double eigenfunction_residual(double q, const StepFunction& phi, double c) {
  return eigenfunction_residual(q, maximal_operator(phi), c);
}

double rearranged_residual(double q, const MonotoneProfile& star, const PowerProfile& g) {
  validate_q(q);
  const double beta = 1.0 - 1.0 / g.c();
  const auto t = star.breakpoints();
  const auto v = star.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += power_piece(q, v[i], g.mass(), beta, t[i], t[i + 1]);
  return sum;
}

double rearranged_residual(double q, const MonotoneProfile& star, const MonotoneProfile& g) {
  validate_q(q);
  const HardyTransform hardy(g);
  const auto pieces = hardy.pieces();
  const auto t = star.breakpoints();
  const auto v = star.values();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double a = 0.0;
  while (i < v.size() && j < pieces.size()) {
    const double b = std::min(t[i + 1], pieces[j].end);
    sum += step_piece(q, v[i], pieces[j].A, pieces[j].B, a, b);
    a = b;
    if (t[i + 1] <= b) ++i;
    if (pieces[j].end <= b) ++j;
  }
  return sum;
}

double rearranged_residual(double q, const StepFunction& phi, const PowerProfile& g) {
  return rearranged_residual(q, decreasing_rearrangement(maximal_operator(phi).maximal), g);
}

double rearranged_residual(double q, const StepFunction& phi, const MonotoneProfile& g) {
  return rearranged_residual(q, decreasing_rearrangement(maximal_operator(phi).maximal), g);
}

HolderSplitReport holder_split_check(double t, double t_prime, double s, double s_prime, double q) {
  validate_q(q);
  for (double x : {t, t_prime, s, s_prime}) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("split inputs must be finite and >= 0");
  }
  if (!(t + t_prime > 0.0) || !(s + s_prime > 0.0)) throw std::invalid_argument("t + t' and s + s' must be positive");
  const long double lq = q;
  auto term = [&](long double x, long double y) {
    return (x == 0.0L || y == 0.0L) ? 0.0L : std::pow(x, lq) * std::pow(y, 1.0L - lq);
  };
  const long double lhs = term(t, s) + term(t_prime, s_prime);
  const long double rhs = term(static_cast<long double>(t) + t_prime, static_cast<long double>(s) + s_prime);
  HolderSplitReport r;
  r.report = {static_cast<double>(lhs), static_cast<double>(rhs), holds_with_tolerance(static_cast<double>(lhs), static_cast<double>(rhs), kFloatTolerance)};
  r.proportional = DyadicRational::from_double(t) * DyadicRational::from_double(s_prime) ==
                   DyadicRational::from_double(s) * DyadicRational::from_double(t_prime);
  r.equality = rhs - lhs <= kSplitEqualityTolerance * rhs;
  return r;
}

Report elementary_power_check(double x, double y, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  if (!(x > y && y > 0.0) || !std::isfinite(x)) throw std::invalid_argument("need x > y > 0");
  const long double lq = q;
  const long double lhs = std::pow(static_cast<long double>(x), lq) - std::pow(static_cast<long double>(y), lq);
  const long double rhs = std::pow(static_cast<long double>(x) - y, lq);
  const double l = static_cast<double>(lhs);
  const double r = static_cast<double>(rhs);
  return {l, r, lhs > 0.0L && holds_with_tolerance(l, r, kFloatTolerance)};
}

Report power_gap_check(double q, const StepFunction& w_n, const StepFunction& w, std::span<const std::size_t> leaves) {
  validate_q(q);
  if (w_n.size() != w.size()) throw std::invalid_argument("both functions must live on the same tree");
  const Tree& t = w.tree();
  const long double lq = q;
  long double lhs = 0.0L;
  long double gap = 0.0L;
  long double mass = 0.0L;
  for (std::size_t i : leaves) {
    if (i >= w.size()) throw std::out_of_range("leaf index out of range");
    const long double a = w_n.value(i);
    const long double b = w.value(i);
    if (a < b) throw std::invalid_argument("w_n must dominate w on the chosen leaves");
    const long double mu = t.leaf_measure(i);
    if (a > b) lhs += std::pow(a - b, lq) * mu;
    const long double za = a > 0.0L ? std::pow(a, lq) : 0.0L;
    const long double zb = b > 0.0L ? std::pow(b, lq) : 0.0L;
    gap += (za - zb) * mu;
    mass += za * mu;
  }
  const long double rhs = std::pow(1.0L / lq, lq) * std::pow(std::max(gap, 0.0L), lq) * std::pow(mass, 1.0L - lq);
  const double l = static_cast<double>(lhs);
  const double r = static_cast<double>(rhs);
  return {l, r, holds_with_tolerance(l, r, kFloatTolerance)};
}

SmallKReport small_k_limit_check(const BellmanPoint& point, std::span<const int> depths,
                                 std::span<const double> k_values, double threshold, SpikeRule rule) {
  if (depths.empty() || k_values.empty()) throw std::invalid_argument("need at least one depth and one k");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (!(k_values[i] > 0.0 && k_values[i] <= 1.0)) throw std::invalid_argument("k values must lie in (0,1]");
    if (i > 0 && !(k_values[i] < k_values[i - 1])) throw std::invalid_argument("k values must decrease strictly");
  }
  const double q = point.q;
  const HardyTransform hardy(extremal_profile(point));
  SmallKReport report;
  report.threshold = threshold;
  report.rows.resize(k_values.size());
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    SmallKRow& row = report.rows[i];
    row.k = k_values[i];
    row.hardy_value = hardy.power_integral(q, row.k);
    row.kolmogorov_bound = std::pow(row.k, 1.0 - q) * std::pow(point.f, q) / (1.0 - q);
  }
  for (int m : depths) {
    const MonotoneProfile star = maximal_rearrangement(spike_classes({point, m, rule}));
    for (SmallKRow& row : report.rows) {
      const double v = restricted_integral(star, q, row.k);
      if (v > row.sup_value) {
        row.sup_value = v;
        row.argmax_depth = m;
      }
    }
  }
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const SmallKRow& row = report.rows[i];
    if (!holds_with_tolerance(row.sup_value, row.kolmogorov_bound, kFloatTolerance)) report.bounded = false;
    if (i > 0 && row.sup_value > report.rows[i - 1].sup_value) report.monotone = false;
  }
  report.below_threshold = report.rows.back().sup_value <= threshold;
  return report;
}

}  // namespace dyadic
