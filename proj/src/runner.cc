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

#include "csvkg/runner.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <set>

#include "csvkg/error.h"
#include "csvkg/gold.h"
#include "csvkg/parallel.h"
#include "csvkg/schema.h"
#include "csvkg/serialization.h"
#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace csvkg {
namespace {

namespace fs = std::filesystem;

std::uint64_t Fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string NowUtc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Resolve(const std::string& base, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute() || base.empty()) return path.string();
  return (fs::path(base) / path).lexically_normal().string();
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Signed(double v, int digits) {
  return (v >= 0 ? "+" : "") + Fixed(v, digits);
}

}  // namespace

Manifest parse_manifest_text(const std::string& text,
                             const std::string& base_dir) {
  ojson j = parse_json(text, "manifest");
  if (!j.is_object() || !j.contains("datasets") || !j["datasets"].is_array())
    throw ParseError("manifest must be an object with a datasets array", 0);
  Manifest m;
  std::set<std::string> ids;
  try {
    for (const auto& d : j["datasets"]) {
      DatasetManifest ds;
      ds.raw = d;
      ds.dataset_id = d.at("dataset_id").get<std::string>();
      if (!ids.insert(ds.dataset_id).second)
        throw InvalidArgument("duplicate dataset_id: " + ds.dataset_id);
      ds.csv_path = Resolve(base_dir, d.at("csv").get<std::string>());
      ds.subject_col = d.at("subject_col").get<std::string>();
      ds.seed = d.value("seed", std::uint64_t{42});
      if (d.contains("gold")) {
        const ojson& g = d["gold"];
        if (g.is_string()) {
          ds.gold_path = Resolve(base_dir, g.get<std::string>());
        } else {
          ds.gold_gen.n_entities = g.value("n_entities", std::size_t{25});
          ds.gold_gen.years = g.value("years", std::vector<std::string>{});
          ds.gold_gen.seed = g.value("seed", ds.seed);
        }
      } else {
        ds.gold_gen.seed = ds.seed;
      }
      if (d.contains("topology_override")) {
        const ojson& o = d["topology_override"];
        ds.topology_override = parse_topology_tag(o.at("tag").get<std::string>());
        ds.override_reason = o.value("reason", "");
      }
      if (d.contains("conditions")) {
        for (const auto& c : d["conditions"])
          ds.conditions.push_back(parse_condition(c.get<std::string>()));
      } else {
        ds.conditions.assign(all_conditions().begin(), all_conditions().end());
      }
      if (d.contains("schema_only_mode"))
        ds.schema_only_mode = parse_surrogate_mode(d["schema_only_mode"]);
      if (d.contains("full_mode"))
        ds.full_mode = parse_surrogate_mode(d["full_mode"]);
      m.datasets.push_back(std::move(ds));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest entry: ") + e.what(), 0);
  }
  return m;
}

Manifest parse_manifest(const std::string& path) {
  Manifest m = parse_manifest_text(read_text_file(path),
                                   fs::path(path).parent_path().string());
  m.path = path;
  return m;
}

std::string config_hash(const DatasetManifest& ds, const RunnerOptions& o) {
  ojson j;
  j["dataset"] = ds.raw;
  j["n_boot"] = o.n_boot;
  j["n_perm"] = o.n_perm;
  j["theta"] = o.theta;
  j["budget"] = o.budget;
  j["dialect"] = to_string(o.dialect);
  std::uint64_t h = Fnv1a(j.dump());
  std::error_code ec;
  if (fs::exists(ds.csv_path, ec)) h = Fnv1a(read_text_file(ds.csv_path), h);
  if (ds.gold_path && fs::exists(*ds.gold_path, ec))
    h = Fnv1a(read_text_file(*ds.gold_path), h);
  return Hex(h);
}

DatasetResult run_dataset(const DatasetManifest& ds, const RunnerOptions& o) {
  DatasetResult out;
  out.dataset_id = ds.dataset_id;
  out.config_hash = config_hash(ds, o);

  CsvTable table = parse_csv(ds.csv_path);
  ColumnFeatures features = extract_features(table);
  Topology topo = classify_table(table, features);
  if (ds.topology_override)
    topo = apply_override(topo, *ds.topology_override,
                          ds.override_reason.empty() ? "manifest override"
                                                     : ds.override_reason);
  out.topology = to_string(topo.tag);
  MetaSchema schema = induce_schema(table, topo, features);

  GoldSet gold;
  if (ds.gold_path) {
    gold = read_gold(*ds.gold_path);
  } else {
    std::vector<std::string> years = ds.gold_gen.years;
    if (years.empty())
      for (std::size_t c : features.time_cols) years.push_back(table.header[c]);
    gold = generate_gold(table, ds.subject_col, ds.gold_gen.n_entities, years,
                         ds.gold_gen.seed, ds.dataset_id);
  }
  std::vector<std::string> subjects = gold_subjects(gold);

  GuardConfig guard;
  guard.theta = o.theta;
  validate(guard);

  std::vector<FactorialCell> cells;
  for (Condition c : ds.conditions) {
    RunRecord rec;
    rec.dataset_id = ds.dataset_id;
    rec.condition = c;
    rec.config_hash = out.config_hash;
    if (o.timestamps) rec.started_at = NowUtc();

    PipelineConfig pc;
    pc.guard = guard;
    pc.dialect = o.dialect;
    pc.apply_fallback = false;
    pc.condition_label = to_string(c);
    pc.serialize.budget = o.budget;
    bool with_schema = c == Condition::kSchemaOnly || c == Condition::kFull;
    pc.serialize.format = (c == Condition::kSerialOnly || c == Condition::kFull)
                              ? Format::kSge
                              : Format::kNaive;
    pc.surrogate.mode =
        c == Condition::kFull ? ds.full_mode : ds.schema_only_mode;
    PipelineResult pr =
        run_pipeline(table, topo, with_schema ? &schema : nullptr, pc);

    rec.fidelity = evaluate(pr.graph, gold);
    rec.metrics = pr.metrics;
    rec.guard_decision = pr.guard_decision;
    rec.provenance = pr.provenance;
    if (o.timestamps) rec.finished_at = NowUtc();

    FactorialCell cell;
    cell.condition = c;
    cell.fc = rec.fidelity.fc;
    for (const auto& oc : rec.fidelity.outcomes)
      cell.per_fact.push_back(oc.covered ? 1.0 : 0.0);
    for (const auto& s : subjects) {
      double hit = 0, n = 0;
      for (const auto& oc : rec.fidelity.outcomes)
        if (oc.fact.subject == s) {
          hit += oc.covered ? 1.0 : 0.0;
          n += 1;
        }
      cell.per_entity.push_back(n > 0 ? hit / n : 0.0);
    }
    cells.push_back(std::move(cell));
    out.records.push_back(std::move(rec));
  }

  std::set<Condition> present;
  for (const auto& c : cells) present.insert(c.condition);
  if (present.size() == 4) {
    BootstrapOptions bo;
    bo.n_resamples = o.n_boot;
    bo.seed = ds.seed;
    out.interaction = interaction_with_ci(cells, bo);
  }
  if (present.count(Condition::kFull) && present.count(Condition::kBaseline)) {
    const FactorialCell* full = nullptr;
    const FactorialCell* base = nullptr;
    for (const auto& c : cells) {
      if (c.condition == Condition::kFull) full = &c;
      if (c.condition == Condition::kBaseline) base = &c;
    }
    std::vector<double> diff;
    for (std::size_t i = 0; i < full->per_entity.size(); ++i)
      diff.push_back(full->per_entity[i] - base->per_entity[i]);
    PermutationOptions po;
    po.n_perm = o.n_perm;
    po.seed = ds.seed;
    out.permutation = permutation_test(diff, po);
  }
  return out;
}

FactorialResult run_factorial(const Manifest& m, const RunnerOptions& o) {
  FactorialResult r;
  r.datasets.resize(m.datasets.size());
  parallel_for(m.datasets.size(), o.jobs, [&](std::size_t i) {
    const DatasetManifest& ds = m.datasets[i];
    try {
      r.datasets[i] = run_dataset(ds, o);
    } catch (const std::exception& e) {
      DatasetResult failed;
      failed.dataset_id = ds.dataset_id;
      failed.error = e.what();
      r.datasets[i] = std::move(failed);
    }
  });
  std::vector<double> ps;
  for (const auto& d : r.datasets) {
    if (!d.error.empty()) r.any_error = true;
    if (d.permutation) ps.push_back(d.permutation->p);
  }
  r.fisher_inputs = ps.size();
  if (!ps.empty()) r.fisher = fisher_combined(ps, true);
  return r;
}

ojson to_json(const RunRecord& r) {
  ojson j;
  j["dataset_id"] = r.dataset_id;
  j["condition"] = to_string(r.condition);
  j["config_hash"] = r.config_hash;
  j["fidelity"] = to_json(r.fidelity, false);
  j["metrics"] = to_json(r.metrics);
  j["guard_decision"] = to_string(r.guard_decision);
  j["provenance"] = to_json(r.provenance);
  if (!r.started_at.empty()) {
    j["started_at"] = r.started_at;
    j["finished_at"] = r.finished_at;
  }
  return j;
}

ojson to_json(const FactorialResult& r) {
  ojson j;
  j["datasets"] = ojson::array();
  for (const auto& d : r.datasets) {
    ojson o;
    o["dataset_id"] = d.dataset_id;
    if (!d.error.empty()) {
      o["error"] = d.error;
      j["datasets"].push_back(o);
      continue;
    }
    o["topology"] = d.topology;
    o["config_hash"] = d.config_hash;
    o["records"] = ojson::array();
    for (const auto& rec : d.records) o["records"].push_back(to_json(rec));
    o["interaction"] = d.interaction ? to_json(*d.interaction) : ojson(nullptr);
    o["permutation"] = d.permutation ? to_json(*d.permutation) : ojson(nullptr);
    j["datasets"].push_back(o);
  }
  j["fisher"] = r.fisher ? to_json(*r.fisher) : ojson(nullptr);
  j["fisher_inputs"] = r.fisher_inputs;
  j["any_error"] = r.any_error;
  return j;
}

std::string render_report(const ojson& f) {
  if (!f.is_object() || !f.contains("datasets") || !f["datasets"].is_array())
    throw ParseError("report input is not a factorial result", 0);
  std::string md = "# Factorial report\n\n## Fact coverage\n\n";
  md += "| Dataset | Topology | Base FC | Serial FC | Schema FC | Full FC | Ratio |\n";
  md += "|---|---|---|---|---|---|---|\n";
  auto find = [](const ojson& d, const std::string& cond) -> const ojson* {
    if (!d.contains("records")) return nullptr;
    for (const auto& r : d["records"])
      if (r.value("condition", "") == cond) return &r;
    return nullptr;
  };
  auto cell = [](const ojson* r) -> std::string {
    if (!r) return "-";
    if ((*r)["guard_decision"] == "fallback") return "*degraded*";
    return Fixed((*r)["fidelity"]["fc"].get<double>(), 3);
  };
  for (const auto& d : f["datasets"]) {
    const std::string id = d.value("dataset_id", "");
    if (d.contains("error")) {
      md += "| " + id + " | error | - | - | - | - | - |\n";
      continue;
    }
    const ojson* base = find(d, "baseline");
    const ojson* full = find(d, "full");
    std::string ratio = "-";
    if (base && full) {
      double b = (*base)["fidelity"]["fc"].get<double>();
      double s = (*full)["fidelity"]["fc"].get<double>();
      ratio = b == 0.0 ? "N/A" : Fixed(s / b, 2) + "x";
      if ((*full)["guard_decision"] == "fallback") ratio = "*degraded*";
    }
    md += "| " + id + " | " + d.value("topology", "") + " | " + cell(base) +
          " | " + cell(find(d, "serial_only")) + " | " +
          cell(find(d, "schema_only")) + " | " + cell(full) + " | " + ratio +
          " |\n";
  }

  md += "\n## Factorial interaction\n\n";
  md += "| Dataset | Delta_int | 95% CI | Permutation p | r |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& d : f["datasets"]) {
    if (d.contains("error")) continue;
    std::string di = "-", ci = "-", p = "-", r = "-";
    if (d.contains("interaction") && !d["interaction"].is_null()) {
      const ojson& x = d["interaction"];
      di = Signed(x["delta_int"].get<double>(), 3);
      ci = "[" + Signed(x["ci_low"].get<double>(), 3) + ", " +
           Signed(x["ci_high"].get<double>(), 3) + "]";
    }
    if (d.contains("permutation") && !d["permutation"].is_null()) {
      const ojson& x = d["permutation"];
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3g", x["p"].get<double>());
      p = buf;
      r = Fixed(x["effect_r"].get<double>(), 2);
    }
    md += "| " + d.value("dataset_id", "") + " | " + di + " | " + ci + " | " +
          p + " | " + r + " |\n";
  }
  if (f.contains("fisher") && !f["fisher"].is_null()) {
    const ojson& x = f["fisher"];
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "\nFisher combined: chi2 = %.3f, df = %zu, p = %.3g "
                  "(%zu datasets)\n",
                  x["chi_square"].get<double>(), x["df"].get<std::size_t>(),
                  x["p"].get<double>(), f.value("fisher_inputs", std::size_t{0}));
    md += buf;
  }

  md += "\n## Error taxonomy\n\n| Dataset | Condition | Covered";
  for (ErrorClass e : error_classes()) md += " | " + to_string(e);
  md += " |\n|---|---|---";
  for (std::size_t i = 0; i < error_classes().size(); ++i) md += "|---";
  md += "|\n";
  for (const auto& d : f["datasets"]) {
    if (!d.contains("records")) continue;
    for (const auto& r : d["records"]) {
      const ojson& fid = r["fidelity"];
      double n = fid.value("n_facts", 0.0);
      std::size_t covered =
          static_cast<std::size_t>(fid.value("fc", 0.0) * n + 0.5);
      const ojson tax = fid.value("taxonomy", ojson::object());
      md += "| " + d.value("dataset_id", "") + " | " +
            r.value("condition", "") + " | " + std::to_string(covered);
      for (ErrorClass e : error_classes())
        md += " | " + std::to_string(tax.value(to_string(e), 0));
      md += " |\n";
    }
  }

  bool header = false;
  for (const auto& d : f["datasets"]) {
    if (!d.contains("error")) continue;
    if (!header) md += "\n## Failed datasets\n\n";
    header = true;
    md += "- " + d.value("dataset_id", "") + ": " + d["error"].get<std::string>() + "\n";
  }
  return md;
}

}  // namespace csvkg
