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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace csvkg {

enum class Condition { kBaseline, kSerialOnly, kSchemaOnly, kFull };

std::string to_string(Condition c);
Condition parse_condition(const std::string& s);
const std::array<Condition, 4>& all_conditions();

struct FactorialCell {
  Condition condition = Condition::kBaseline;
  double fc = 0.0;
  std::vector<double> per_fact;  // 0/1 coverage per gold fact
  std::vector<double> per_entity;  // mean coverage per entity
};

// FC(f,s) - FC(f,s0) - FC(f0,s) + FC(f0,s0)
double interaction_term(double full, double serial_only, double schema_only,
                        double baseline);
// Throws InvalidArgument if any condition is missing.
double interaction_term(const std::vector<FactorialCell>& cells);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct BootstrapOptions {
  std::size_t n_resamples = 1000;
  std::uint64_t seed = 42;
  double level = 0.95;
  std::size_t jobs = 1;
  // Optional cluster id per fact; when set, clusters are resampled.
  std::vector<std::size_t> clusters;
};

// Percentile CI of the interaction statistic over paired fact resamples.
// Vectors are indexed by fact and must share one length.
Interval bootstrap_ci(const std::vector<double>& full,
                      const std::vector<double>& serial_only,
                      const std::vector<double>& schema_only,
                      const std::vector<double>& baseline,
                      const BootstrapOptions& options = {});

// Percentile CI of the mean of one vector.
Interval bootstrap_mean_ci(const std::vector<double>& values,
                           const BootstrapOptions& options = {});

struct InteractionResult {
  double delta_int = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_resamples = 0;
  std::uint64_t seed = 0;
  std::string method;
};

InteractionResult interaction_with_ci(const std::vector<FactorialCell>& cells,
                                      const BootstrapOptions& options = {});

// Linear-interpolation percentile (q in [0,1]) of sorted data.
double percentile_sorted(const std::vector<double>& sorted, double q);

struct PermutationOptions {
  std::size_t n_perm = 10000;
  std::uint64_t seed = 42;
  // Use exhaustive enumeration when n <= exact_max_n.
  std::size_t exact_max_n = 10;
  std::size_t jobs = 1;
};

struct PermutationResult {
  double p = 1.0;
  double effect_r = 0.0;
  double observed = 0.0;
  std::size_t n = 0;
  std::size_t n_perm = 0;
  bool exact = false;
};

// Two-sided sign-flip test on paired differences; statistic = mean.
PermutationResult permutation_test(const std::vector<double>& differences,
                                   const PermutationOptions& options = {});

struct WilcoxonResult {
  double w_plus = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  double p_adjusted = 1.0;
  double effect_r = 0.0;
  std::size_t n = 0;  // non-zero pairs
};

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    std::size_t bonferroni_k = 1);

double bonferroni(double p, std::size_t k);

double mcnemar(std::uint64_t b, std::uint64_t c, bool continuity = false);

struct FisherResult {
  double chi_square = 0.0;
  std::size_t df = 0;
  double p = 1.0;
};

FisherResult fisher_combined(const std::vector<double>& p_values,
                             bool clamp_zero = false);

// Upper tail of the chi-square distribution for even df.
double chi_square_sf_even(double x, std::size_t df);

}  // namespace csvkg
