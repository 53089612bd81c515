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

#include "csvkg/moderators.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "csvkg/error.h"
#include "csvkg/text.h"
#include "csvkg/tokenizer.h"

namespace csvkg {

CdsResult cds_from_components(double scf, double mean_entity_len,
                              double normalizer) {
  if (normalizer <= 0) throw InvalidArgument("normalizer must be positive");
  if (scf < 0 || scf > 1) throw InvalidArgument("SCF must lie in [0, 1]");
  CdsResult r;
  r.scf = scf;
  r.mean_entity_len = std::max(0.0, mean_entity_len);
  r.evr = std::min(1.0, r.mean_entity_len / normalizer);
  r.cds = r.scf * r.evr;
  return r;
}

CdsResult compute_cds(const CsvTable& table,
                      const std::vector<std::string>& subject_cols,
                      double normalizer) {
  if (table.n_cols() == 0) throw InvalidArgument("table has zero columns");
  std::set<std::size_t> cols;
  for (const auto& label : subject_cols) {
    std::size_t c = table.column_index(label);
    if (c == CsvTable::npos)
      throw InvalidArgument("unknown subject column: " + label);
    cols.insert(c);
  }
  std::size_t total_len = 0, n = 0;
  for (std::size_t c : cols) {
    for (const auto& row : table.rows) {
      std::string_view v = text::Trim(row[c]);
      if (v.empty()) continue;
      total_len += text::Utf8Length(v);
      ++n;
    }
  }
  double scf = static_cast<double>(cols.size()) / table.n_cols();
  double mean = n ? static_cast<double>(total_len) / n : 0.0;
  return cds_from_components(scf, mean, normalizer);
}

double compute_ttf(const ChunkSet& chunks, double presence_threshold) {
  if (chunks.chunks.empty()) throw InvalidArgument("TTF needs >= 1 chunk");
  if (!(presence_threshold > 0 && presence_threshold <= 1))
    throw InvalidArgument("presence threshold must lie in (0, 1]");
  std::vector<std::vector<std::string>> toks;
  std::unordered_map<std::string, std::size_t> presence;
  for (const auto& c : chunks.chunks) {
    toks.push_back(tokenize(c.text));
    std::set<std::string> uniq(toks.back().begin(), toks.back().end());
    for (const auto& t : uniq) ++presence[t];
  }
  const double n = static_cast<double>(chunks.chunks.size());
  double acc = 0.0;
  std::size_t scored = 0;
  for (const auto& ts : toks) {
    if (ts.empty()) continue;
    std::size_t tmpl = 0;
    for (const auto& t : ts)
      if (presence[t] / n >= presence_threshold - 1e-12) ++tmpl;
    acc += static_cast<double>(tmpl) / ts.size();
    ++scored;
  }
  return scored ? acc / scored : 0.0;
}

}  // namespace csvkg
