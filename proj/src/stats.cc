// Copyright 2026 The csvkg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csvkg/stats.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "csvkg/error.h"
#include "csvkg/parallel.h"
#include "csvkg/prng.h"

namespace csvkg {
namespace {

double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double SampleSd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = Mean(v), acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / (v.size() - 1));
}

Interval PercentileInterval(std::vector<double> stats, double level) {
  std::sort(stats.begin(), stats.end());
  double alpha = (1.0 - level) / 2.0;
  return {percentile_sorted(stats, alpha), percentile_sorted(stats, 1 - alpha)};
}

// Resampled index multiset for replicate b (facts or clusters).
std::vector<std::size_t> ResampleIndices(
    std::size_t n, const std::vector<std::vector<std::size_t>>& cluster_members,
    Rng& rng) {
  std::vector<std::size_t> idx;
  if (cluster_members.empty()) {
    idx.resize(n);
    for (auto& i : idx) i = static_cast<std::size_t>(rng.Below(n));
    return idx;
  }
  const std::size_t k = cluster_members.size();
  for (std::size_t j = 0; j < k; ++j) {
    const auto& members = cluster_members[rng.Below(k)];
    idx.insert(idx.end(), members.begin(), members.end());
  }
  return idx;
}

std::vector<std::vector<std::size_t>> ClusterMembers(
    const std::vector<std::size_t>& clusters, std::size_t n) {
  std::vector<std::vector<std::size_t>> members;
  if (clusters.empty()) return members;
  if (clusters.size() != n)
    throw InvalidArgument("cluster ids must match the number of facts");
  std::vector<std::size_t> ids(clusters);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  members.resize(ids.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto pos = std::lower_bound(ids.begin(), ids.end(), clusters[i]) -
               ids.begin();
    members[pos].push_back(i);
  }
  return members;
}

void CheckLevel(const BootstrapOptions& o) {
  if (o.n_resamples == 0) throw InvalidArgument("n_resamples must be > 0");
  if (!(o.level > 0.0 && o.level < 1.0))
    throw InvalidArgument("confidence level must lie in (0, 1)");
}

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kBaseline: return "baseline";
    case Condition::kSerialOnly: return "serial_only";
    case Condition::kSchemaOnly: return "schema_only";
    case Condition::kFull: return "full";
  }
  return "baseline";
}

Condition parse_condition(const std::string& s) {
  for (Condition c : all_conditions())
    if (to_string(c) == s) return c;
  throw InvalidArgument("unknown factorial condition: " + s);
}

const std::array<Condition, 4>& all_conditions() {
  static const std::array<Condition, 4> all = {
      Condition::kBaseline, Condition::kSerialOnly, Condition::kSchemaOnly,
      Condition::kFull};
  return all;
}

double interaction_term(double full, double serial_only, double schema_only,
                        double baseline) {
  return full - serial_only - schema_only + baseline;
}

double interaction_term(const std::vector<FactorialCell>& cells) {
  std::array<const FactorialCell*, 4> by{};
  for (const auto& c : cells) by[static_cast<int>(c.condition)] = &c;
  for (Condition c : all_conditions())
    if (!by[static_cast<int>(c)])
      throw InvalidArgument("missing factorial condition: " + to_string(c));
  return interaction_term(by[3]->fc, by[1]->fc, by[2]->fc, by[0]->fc);
}

double percentile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) throw InvalidArgument("percentile of empty data");
  double h = (s.size() - 1) * q;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - lo) * (s[hi] - s[lo]);
}

Interval bootstrap_ci(const std::vector<double>& full,
                      const std::vector<double>& serial_only,
                      const std::vector<double>& schema_only,
                      const std::vector<double>& baseline,
                      const BootstrapOptions& o) {
  CheckLevel(o);
  const std::size_t n = full.size();
  if (n == 0) throw InvalidArgument("bootstrap requires non-empty vectors");
  if (serial_only.size() != n || schema_only.size() != n ||
      baseline.size() != n)
    throw InvalidArgument("per-fact vectors must have equal length");
  const auto members = ClusterMembers(o.clusters, n);
  std::vector<double> stats(o.n_resamples);
  parallel_for(o.n_resamples, o.jobs, [&](std::size_t b) {
    Rng rng = Rng::Substream(o.seed, b);
    auto idx = ResampleIndices(n, members, rng);
    double f = 0, s = 0, c = 0, z = 0;
    for (std::size_t i : idx) {
      f += full[i];
      s += serial_only[i];
      c += schema_only[i];
      z += baseline[i];
    }
    const double m = static_cast<double>(idx.size());
    stats[b] = (f - s - c + z) / m;
  });
  return PercentileInterval(std::move(stats), o.level);
}

Interval bootstrap_mean_ci(const std::vector<double>& values,
                           const BootstrapOptions& o) {
  CheckLevel(o);
  const std::size_t n = values.size();
  if (n == 0) throw InvalidArgument("bootstrap requires non-empty vectors");
  const auto members = ClusterMembers(o.clusters, n);
  std::vector<double> stats(o.n_resamples);
  parallel_for(o.n_resamples, o.jobs, [&](std::size_t b) {
    Rng rng = Rng::Substream(o.seed, b);
    auto idx = ResampleIndices(n, members, rng);
    double acc = 0;
    for (std::size_t i : idx) acc += values[i];
    stats[b] = acc / static_cast<double>(idx.size());
  });
  return PercentileInterval(std::move(stats), o.level);
}

InteractionResult interaction_with_ci(const std::vector<FactorialCell>& cells,
                                      const BootstrapOptions& o) {
  InteractionResult r;
  r.delta_int = interaction_term(cells);
  std::array<const FactorialCell*, 4> by{};
  for (const auto& c : cells) by[static_cast<int>(c.condition)] = &c;
  Interval ci = bootstrap_ci(by[3]->per_fact, by[1]->per_fact, by[2]->per_fact,
                             by[0]->per_fact, o);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.n_resamples = o.n_resamples;
  r.seed = o.seed;
  r.method = o.clusters.empty() ? "percentile-fact" : "percentile-cluster";
  return r;
}

PermutationResult permutation_test(const std::vector<double>& d,
                                   const PermutationOptions& o) {
  PermutationResult r;
  r.n = d.size();
  r.observed = Mean(d);
  bool all_zero = std::all_of(d.begin(), d.end(),
                              [](double x) { return x == 0.0; });
  if (d.empty() || all_zero) {
    r.p = 1.0;
    r.effect_r = 0.0;
    return r;
  }
  const double obs = std::fabs(r.observed);
  const double eps = 1e-12 * std::max(1.0, obs);
  std::vector<double> perm;
  if (d.size() <= o.exact_max_n) {
    r.exact = true;
    const std::size_t total = std::size_t{1} << d.size();
    perm.resize(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      double acc = 0;
      for (std::size_t i = 0; i < d.size(); ++i)
        acc += (mask >> i) & 1 ? -d[i] : d[i];
      perm[mask] = acc / d.size();
    }
    std::size_t extreme = 0;
    for (double s : perm) extreme += std::fabs(s) >= obs - eps;
    r.n_perm = total;
    r.p = static_cast<double>(extreme) / total;
  } else {
    if (o.n_perm == 0) throw InvalidArgument("n_perm must be > 0");
    perm.resize(o.n_perm);
    parallel_for(o.n_perm, o.jobs, [&](std::size_t b) {
      Rng rng = Rng::Substream(o.seed, b);
      double acc = 0;
      for (double x : d) acc += rng.Coin() ? -x : x;
      perm[b] = acc / d.size();
    });
    std::size_t extreme = 0;
    for (double s : perm) extreme += std::fabs(s) >= obs - eps;
    r.n_perm = o.n_perm;
    r.p = (1.0 + extreme) / (o.n_perm + 1.0);
  }
  double sd = SampleSd(perm);
  r.effect_r = sd > 0 ? r.observed / sd : 0.0;
  return r;
}

double bonferroni(double p, std::size_t k) {
  return std::min(1.0, p * static_cast<double>(std::max<std::size_t>(k, 1)));
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    std::size_t k) {
  if (x.size() != y.size())
    throw InvalidArgument("paired vectors must have equal length");
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] - y[i] != 0.0) d.push_back(x[i] - y[i]);
  if (d.empty()) throw InvalidArgument("all paired differences are zero");
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(d[a]) < std::fabs(d[b]);
  });
  std::vector<double> rank(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]]))
      ++j;
    double avg = (i + j + 2) / 2.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  WilcoxonResult r;
  r.n = n;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] > 0) r.w_plus += rank[i];
  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1) / 4.0;
  const double var = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
  r.z = var > 0 ? (r.w_plus - mean) / std::sqrt(var) : 0.0;
  r.p_two_sided = std::erfc(std::fabs(r.z) / std::sqrt(2.0));
  r.p_adjusted = bonferroni(r.p_two_sided, k);
  r.effect_r = std::fabs(r.z) / std::sqrt(nn);
  return r;
}

double mcnemar(std::uint64_t b, std::uint64_t c, bool continuity) {
  if (b + c == 0) throw InvalidArgument("McNemar requires b + c > 0");
  double diff = std::fabs(static_cast<double>(b) - static_cast<double>(c));
  if (continuity) diff = std::max(0.0, diff - 1.0);
  return diff * diff / static_cast<double>(b + c);
}

double chi_square_sf_even(double x, std::size_t df) {
  if (df == 0 || df % 2) throw InvalidArgument("df must be even and positive");
  if (x <= 0) return 1.0;
  const double m = x / 2.0;
  double term = 1.0, sum = 1.0;
  for (std::size_t i = 1; i < df / 2; ++i) {
    term *= m / static_cast<double>(i);
    sum += term;
  }
  return std::min(1.0, std::exp(-m) * sum);
}

FisherResult fisher_combined(const std::vector<double>& ps, bool clamp_zero) {
  if (ps.empty()) throw InvalidArgument("Fisher combination needs p-values");
  FisherResult r;
  for (double p : ps) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
      throw InvalidArgument("p-values must lie in (0, 1]");
    if (p == 0.0) {
      if (!clamp_zero)
        throw InvalidArgument("p = 0 is not allowed without the clamp flag");
      p = DBL_MIN;
    }
    r.chi_square += -2.0 * std::log(p);
  }
  r.df = 2 * ps.size();
  r.p = chi_square_sf_even(r.chi_square, r.df);
  return r;
}

}  // namespace csvkg
