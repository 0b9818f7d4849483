#include "delayed_spt/key_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace dspt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDelayRelTol = 1e-10;

struct Moments {
  double mean = 0.0;
  double mean_sq = 0.0;
};

Moments clamped_moments(double makespan, const AvailabilityProfile& profile) {
  const auto& a = profile.availability;
  if (a.empty()) throw std::invalid_argument("availability profile is empty");
  Moments mo;
  for (double v : a) {
    double c = std::min(std::max(v, profile.release), makespan);
    mo.mean += c;
    mo.mean_sq += c * c;
  }
  mo.mean /= static_cast<double>(a.size());
  mo.mean_sq /= static_cast<double>(a.size());
  return mo;
}

void check_profile(const AvailabilityProfile& profile) {
  if (profile.availability.empty()) throw std::invalid_argument("availability profile is empty");
  if (!std::isfinite(profile.release) || profile.release < 0.0)
    throw std::invalid_argument("release must be finite and >= 0");
  for (double v : profile.availability)
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("availabilities must be finite and >= 0");
}

// Scan of the piecewise ratio over an ascending, clamped availability
// sequence. With l machines below the makespan C, x = l*C - S1 is the burst
// work and
//   f(x) = m * (x^2 + 2*S1*x - v) / (l * x * (x + 2*r*m)),  v = l*S2 - S1^2.
// f' has the sign of -(A x^2 - v x - v c) with A = S1 - c, c = r*m, so each
// piece peaks at the positive root of that quadratic (clamped to the piece).
WorstCase scan(std::span<const double> a, double r) {
  const std::size_t m = a.size();
  const double md = static_cast<double>(m);
  WorstCase best{1.0, r};

  const double a0 = a.front();
  if (a0 > r) {
    best = {r > 0.0 ? a0 / r : kInf, a0};
  } else if (r == 0.0) {
    std::size_t ties = 1;
    while (ties < m && a[ties] == a0) ++ties;
    best = {md / static_cast<double>(ties), 0.0};
  }

  double s1 = 0.0, mean = 0.0, m2 = 0.0;  // Welford for v = l * M2
  double x_lo = 0.0;
  const double c = r * md;
  for (std::size_t l = 1; l <= m; ++l) {
    const double v_new = a[l - 1];
    s1 += v_new;
    const double delta = v_new - mean;
    mean += delta / static_cast<double>(l);
    m2 += delta * (v_new - mean);

    const double ld = static_cast<double>(l);
    const double x_hi = (l < m) ? x_lo + ld * (a[l] - a[l - 1]) : kInf;
    if (x_hi > x_lo) {
      const double v = std::max(0.0, ld * m2);
      const double big_a = s1 - c;
      double root = kInf;
      if (big_a > 0.0) root = (v + std::sqrt(v * v + 4.0 * big_a * v * c)) / (2.0 * big_a);
      const double x = std::clamp(root, x_lo, x_hi);
      if (std::isinf(x)) {
        const double f = md / ld;
        if (f > best.ratio) best = {f, kInf};
      } else if (x > 0.0) {
        const double num = std::max(0.0, x * x + 2.0 * s1 * x - v);
        const double f = md * num / (ld * x * (x + 2.0 * c));
        if (f > best.ratio) best = {f, (x + s1) / ld};
      }
    }
    x_lo = x_hi;
  }
  return best;
}

}  // namespace

double pattern_ratio_at(double makespan, const AvailabilityProfile& profile) {
  check_profile(profile);
  const Moments mo = clamped_moments(makespan, profile);
  const double gap = makespan - mo.mean;
  if (!(gap > 0.0)) throw std::domain_error("makespan must exceed the mean clamped availability");
  const double r = profile.release;
  return (makespan * makespan - mo.mean_sq) / (gap * gap + 2.0 * r * gap);
}

double makespan_ratio_at(double makespan, const AvailabilityProfile& profile) {
  check_profile(profile);
  const Moments mo = clamped_moments(makespan, profile);
  const double denom = makespan - mo.mean + profile.release;
  if (!(denom > 0.0)) throw std::domain_error("optimal burst makespan must be positive");
  return makespan / denom;
}

double worst_case_ratio_sorted(std::span<const double> sorted, double release) {
  return scan(sorted, release).ratio;
}

WorstCase worst_case_ratio(const AvailabilityProfile& profile) {
  check_profile(profile);
  const double r = profile.release;
  std::vector<double> a;
  a.reserve(profile.availability.size());
  bool any_busy = false;
  for (double v : profile.availability) {
    a.push_back(std::max(v, r));
    any_busy = any_busy || v > r;
  }
  if (!any_busy && r > 0.0) return {1.0, r};
  std::sort(a.begin(), a.end());
  return scan(a, r);
}

double solve_release_closed_form(std::span<const double> profile, double target) {
  if (profile.empty()) throw std::domain_error("profile is empty");
  if (!(target > 1.0)) throw std::domain_error("target ratio must exceed 1");
  const double n = static_cast<double>(profile.size());
  double mean = 0.0, mean_sq = 0.0;
  for (double v : profile) {
    mean += v;
    mean_sq += v * v;
  }
  mean /= n;
  mean_sq /= n;
  const double disc = (target - 1.0) * (mean_sq - mean * mean);
  if (disc < -1e-15 * std::max(1.0, mean_sq)) throw std::domain_error("target unreachable: negative discriminant");
  return (mean - std::sqrt(std::max(0.0, disc))) / target;
}

double critical_delay(const DelayQuery& query) {
  if (!(query.target > 1.0)) throw std::invalid_argument("target ratio must exceed 1");
  if (!std::isfinite(query.p) || query.p < 0.0) throw std::invalid_argument("processing time must be >= 0");
  if (!std::isfinite(query.floor) || query.floor < 0.0) throw std::invalid_argument("floor must be >= 0");
  if (query.idle_count < 0) throw std::invalid_argument("idle count must be >= 0");

  std::vector<double> fixed = query.fixed;
  for (double f : fixed)
    if (!std::isfinite(f) || f < 0.0) throw std::invalid_argument("busy completion times must be finite and >= 0");
  std::sort(fixed.begin(), fixed.end());

  const std::size_t m = static_cast<std::size_t>(query.machines());
  const std::size_t idle = static_cast<std::size_t>(query.idle_count);
  std::vector<double> buf(m);

  auto within_target = [&](double r) {
    // max(f, r) keeps `fixed` ascending; idle machines sit at r below all of it
    std::fill_n(buf.begin(), idle, r);
    const double own = r + query.p;
    std::size_t out = idle;
    bool placed = false;
    for (double f : fixed) {
      const double v = std::max(f, r);
      if (!placed && own <= v) {
        buf[out++] = own;
        placed = true;
      }
      buf[out++] = v;
    }
    if (!placed) buf[out++] = own;
    return scan(buf, r).ratio <= query.target;
  };

  if (within_target(query.floor)) return query.floor;

  const double top = fixed.empty() ? query.floor : std::max(fixed.back(), query.floor);
  const double scale = std::max({top, query.p, query.floor});
  const double tol = kDelayRelTol * scale;

  double lo = query.floor;
  double hi = top + query.p * query.target;
  while (!within_target(hi)) {
    lo = hi;
    hi = query.floor + 2.0 * (hi - query.floor);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (within_target(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

TwoMachineCoefficients two_machine_coefficients(double ratio) {
  if (!(ratio > 1.0 && ratio < 2.0)) throw std::domain_error("two-machine ratio must lie in (1, 2)");
  const double s = std::sqrt(ratio - 1.0);
  const double lo = 2.0 * ratio - 1.0 - s;
  const double hi = 2.0 * ratio - 1.0 + s;
  return {(1.0 + s) / lo, (1.0 - s) / lo, (1.0 - s) / hi, (1.0 + s) / hi, 1.0 - 1.0 / ratio};
}

double two_machine_delay_closed_form(double p, double m1, double ratio) {
  if (!(p > 0.0)) throw std::invalid_argument("processing time must be > 0");
  if (!(m1 >= 0.0)) throw std::invalid_argument("busy machine completion must be >= 0");
  const TwoMachineCoefficients k = two_machine_coefficients(ratio);
  const double r = (p <= k.branch_fraction * m1) ? k.early_p * p + k.early_m1 * m1 : k.late_p * p + k.late_m1 * m1;
  if (r >= m1) throw std::domain_error("closed form needs a start before the busy machine completes");
  return r;
}

PatternTotals discrete_pattern_totals(const AvailabilityProfile& profile, const PatternSpec& spec) {
  check_profile(profile);
  if (!(spec.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (spec.k < 1) throw std::invalid_argument("k must be >= 1");

  auto list_total = [&](auto&& start_of) {
    using Slot = std::pair<double, std::size_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> free;
    for (std::size_t i = 0; i < profile.availability.size(); ++i) free.emplace(start_of(i), i);
    double total = 0.0;
    for (long j = 0; j < spec.k; ++j) {
      auto [t, i] = free.top();
      free.pop();
      const double done = t + spec.delta;
      total += done;
      free.emplace(done, i);
    }
    return total;
  };

  const double r = profile.release;
  PatternTotals out;
  out.restricted_total = list_total([&](std::size_t i) { return std::max(profile.availability[i], r); });
  out.optimal_total = list_total([&](std::size_t) { return r; });
  return out;
}

}  // namespace dspt
