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

// csvkg command-line entry point.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csvkg/error.h"
#include "csvkg/fidelity.h"
#include "csvkg/gold.h"
#include "csvkg/graph.h"
#include "csvkg/host.h"
#include "csvkg/json_io.h"
#include "csvkg/moderators.h"
#include "csvkg/probe.h"
#include "csvkg/runner.h"
#include "csvkg/schema.h"
#include "csvkg/serialization.h"
#include "csvkg/stats.h"
#include "csvkg/table.h"
#include "csvkg/text.h"
#include "csvkg/topology.h"

namespace {

using namespace csvkg;

struct Common {
  std::string out;
  std::size_t jobs = 1;
  std::uint64_t seed = 42;
};

void Emit(const std::string& data, const std::string& out) {
  if (out.empty()) {
    std::fwrite(data.data(), 1, data.size(), stdout);
    std::fflush(stdout);
  } else {
    write_text_file(out, data);
  }
}

void EmitJson(const ojson& j, const std::string& out) { Emit(j.dump(2) + "\n", out); }

void Summary(const std::string& line) { std::cerr << line << "\n"; }

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (auto& part : text::Split(s, ",")) out.emplace_back(text::Trim(part));
  return out;
}

std::vector<double> NumberList(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : SplitList(s)) {
    auto v = text::ParseNumber(t);
    if (!v) throw InvalidArgument("non-numeric entry in " + what + ": " + t);
    out.push_back(*v);
  }
  return out;
}

// Numbers from a JSON array file or an inline comma list.
std::vector<double> NumbersFrom(const std::string& inline_list,
                                const std::string& file,
                                const std::string& what) {
  if (!file.empty()) {
    ojson j = parse_json(read_text_file(file), file);
    if (!j.is_array()) throw ParseError(file + " must hold a JSON array", 0);
    return j.get<std::vector<double>>();
  }
  return NumberList(inline_list, what);
}

struct TableArgs {
  std::string path;
  std::string delimiter = ",";
  std::string encoding = "utf-8";
};

void AddTableArgs(CLI::App* sub, TableArgs& t) {
  sub->add_option("csv", t.path, "Input CSV file")->required();
  sub->add_option("--delimiter", t.delimiter, "Field delimiter")
      ->capture_default_str();
  sub->add_option("--encoding", t.encoding, "utf-8 or latin-1")
      ->check(CLI::IsMember({"utf-8", "latin-1"}))
      ->capture_default_str();
}

CsvTable LoadTable(const TableArgs& t) {
  if (t.delimiter.size() != 1)
    throw InvalidArgument("delimiter must be a single byte");
  CsvOptions o;
  o.delimiter = t.delimiter[0];
  o.encoding = t.encoding;
  return parse_csv(t.path, o);
}

struct TopologyArgs {
  bool legacy = false;
  bool cardinality = false;
  std::string override_tag;
  std::string reason;
  ClassifierConfig config;
};

void AddTopologyArgs(CLI::App* sub, TopologyArgs& a) {
  sub->add_flag("--legacy", a.legacy, "Disable the fiscal and transposition guards");
  sub->add_flag("--cardinality", a.cardinality, "Report identifier-like key columns");
  sub->add_option("--override", a.override_tag, "Manual tag: TypeI, TypeII or TypeIII");
  sub->add_option("--reason", a.reason, "Reason recorded with --override");
  sub->add_option("--few-time-cols-max", a.config.few_time_cols_max)->capture_default_str();
  sub->add_option("--deep-hierarchy-min", a.config.deep_hierarchy_min)->capture_default_str();
  sub->add_option("--key-cols-min", a.config.key_cols_min)->capture_default_str();
}

Topology Classify(const CsvTable& table, const ColumnFeatures& f,
                  const TopologyArgs& a) {
  ClassifierConfig cfg = a.config;
  cfg.legacy = a.legacy;
  cfg.cardinality_diagnostic = a.cardinality;
  Topology t = classify_table(table, f, cfg);
  if (!a.override_tag.empty())
    t = apply_override(t, parse_topology_tag(a.override_tag), a.reason);
  return t;
}

KnowledgeGraph LoadGraph(const std::string& path) {
  return ingest_graph(path, GraphDialect::kNativeJsonl);
}

std::string GraphSummary(const KnowledgeGraph& g) {
  return std::to_string(g.nodes().size()) + " nodes, " +
         std::to_string(g.edges().size()) + " edges";
}

int Run(int argc, char** argv) {
  CLI::App app{"csvkg: CSV to knowledge-graph transport fidelity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out,-o", common.out, "Write output here instead of stdout");
  int exit_code = 0;

  // classify
  TableArgs classify_t;
  TopologyArgs classify_a;
  auto* classify = app.add_subcommand("classify", "Classify table topology");
  AddTableArgs(classify, classify_t);
  AddTopologyArgs(classify, classify_a);
  classify->callback([&] {
    CsvTable table = LoadTable(classify_t);
    ColumnFeatures f = extract_features(table);
    Topology t = Classify(table, f, classify_a);
    ojson j = to_json(t);
    j["features"] = to_json(f, table);
    j["n_rows"] = table.n_rows();
    j["n_cols"] = table.n_cols();
    EmitJson(j, common.out);
    Summary(classify_t.path + ": " + to_string(t.tag) + " (" + t.rule_fired + ")");
  });

  // induce
  TableArgs induce_t;
  TopologyArgs induce_a;
  auto* induce = app.add_subcommand("induce", "Induce a meta-schema from a table");
  AddTableArgs(induce, induce_t);
  AddTopologyArgs(induce, induce_a);
  induce->callback([&] {
    CsvTable table = LoadTable(induce_t);
    ColumnFeatures f = extract_features(table);
    Topology t = Classify(table, f, induce_a);
    MetaSchema s = induce_schema(table, t, f);
    EmitJson(to_json(s), common.out);
    Summary("schema: " + std::to_string(s.entity_types.size()) + " entity types, scs=" +
            text::FormatNumber(compute_scs(s, table)));
  });

  // perturb-schema
  std::string pert_schema, pert_cond, pert_value, pert_value2, pert_csv;
  std::uint64_t pert_seed = 42;
  auto* perturb = app.add_subcommand("perturb-schema", "Apply a schema perturbation");
  perturb->add_option("schema", pert_schema, "Schema JSON")->required();
  perturb->add_option("--condition", pert_cond, "BX-1, AY-3d, C1, D1, ...")->required();
  perturb->add_option("--value", pert_value, "Condition-specific value");
  perturb->add_option("--value2", pert_value2, "Second value (BY description)");
  perturb->add_option("--csv", pert_csv, "Source table, required for AY-3 checks");
  perturb->add_option("--seed", pert_seed)->capture_default_str();
  perturb->callback([&] {
    MetaSchema s = schema_from_json(parse_json(read_text_file(pert_schema), pert_schema));
    std::vector<std::string> header;
    if (!pert_csv.empty()) header = parse_csv(pert_csv).header;
    SchemaPerturbation p{parse_perturbation(pert_cond), pert_value, pert_value2, pert_seed};
    EmitJson(to_json(perturb_schema(s, p, header)), common.out);
    Summary("perturbation " + pert_cond + " applied");
  });

  // serialize
  TableArgs ser_t;
  TopologyArgs ser_a;
  std::string ser_format = "sge";
  SerializeOptions ser_o;
  auto* ser = app.add_subcommand("serialize", "Serialize a table into chunks (JSONL)");
  AddTableArgs(ser, ser_t);
  AddTopologyArgs(ser, ser_a);
  ser->add_option("--format", ser_format, "sge, markdown, json-records, row-local, naive")
      ->capture_default_str();
  ser->add_option("--budget", ser_o.budget, "Chunk token budget")->capture_default_str();
  ser->add_flag("--one-row-per-chunk", ser_o.one_row_per_chunk);
  ser->add_flag("--prose", ser_o.prose, "sge prose sub-style");
  ser->add_option("--stem", ser_o.prose_stem)->capture_default_str();
  ser->add_option("--unit", ser_o.prose_unit);
  ser->add_flag("--drop-row-delimiters", ser_o.drop_row_delimiters);
  ser->callback([&] {
    CsvTable table = LoadTable(ser_t);
    Topology t = Classify(table, extract_features(table), ser_a);
    ser_o.format = parse_format(ser_format);
    ChunkSet cs = serialize(table, t, ser_o);
    Emit(chunks_to_jsonl(cs), common.out);
    Summary(std::to_string(cs.chunks.size()) + " chunks (" + ser_format + ")");
  });

  // ablate
  std::string abl_chunks, abl_cond, abl_csv, abl_subject;
  std::uint64_t abl_seed = 42;
  auto* abl = app.add_subcommand("ablate", "Apply an information-channel ablation");
  abl->add_option("chunks", abl_chunks, "Chunk JSONL")->required();
  abl->add_option("--condition", abl_cond, "M0..M6")->required();
  abl->add_option("--csv", abl_csv, "Source table (labels and entity names)");
  abl->add_option("--subject-col", abl_subject, "Entity column in --csv");
  abl->add_option("--seed", abl_seed)->capture_default_str();
  abl->callback([&] {
    ChunkSet cs = chunks_from_jsonl(read_text_file(abl_chunks));
    std::vector<std::string> labels, entities;
    if (!abl_csv.empty()) {
      CsvTable table = parse_csv(abl_csv);
      labels = table.header;
      if (!abl_subject.empty()) {
        std::size_t col = table.column_index(abl_subject);
        if (col == CsvTable::npos) throw InvalidArgument("unknown column: " + abl_subject);
        entities = column_values(table, col);
      }
    }
    ChunkSet out = ablate(cs, {parse_ablation(abl_cond), abl_seed}, labels, entities);
    Emit(chunks_to_jsonl(out), common.out);
    Summary("ablation " + abl_cond + " over " + std::to_string(out.chunks.size()) + " chunks");
  });

  // gold
  auto* gold = app.add_subcommand("gold", "Gold-standard facts");
  gold->require_subcommand(1);
  TableArgs gold_t;
  std::string gold_subject, gold_years, gold_id;
  std::size_t gold_n = 25;
  std::uint64_t gold_seed = 42;
  auto* gold_gen = gold->add_subcommand("gen", "Sample gold facts from a table");
  AddTableArgs(gold_gen, gold_t);
  gold_gen->add_option("--subject-col", gold_subject)->required();
  gold_gen->add_option("--n", gold_n, "Entities to sample")->capture_default_str();
  gold_gen->add_option("--years", gold_years, "Comma-separated year labels")->required();
  gold_gen->add_option("--seed", gold_seed)->capture_default_str();
  gold_gen->add_option("--dataset-id", gold_id);
  gold_gen->callback([&] {
    CsvTable table = LoadTable(gold_t);
    GoldSet g = generate_gold(table, gold_subject, gold_n, SplitList(gold_years),
                              gold_seed, gold_id);
    Emit(gold_to_jsonl(g), common.out);
    Summary(std::to_string(g.facts.size()) + " gold facts");
  });
  std::string disp_value, disp_conv = "floor2";
  auto* gold_disp = gold->add_subcommand("display", "Render a gold value under a rounding convention");
  gold_disp->add_option("value", disp_value)->required();
  gold_disp->add_option("--convention", disp_conv, "none or floor2")->capture_default_str();
  gold_disp->callback([&] {
    DisplayValue d = round_value_for_display(disp_value, parse_rounding(disp_conv));
    ojson j{{"value", disp_value}, {"display", d.text}};
    if (!d.warning.empty()) j["warning"] = d.warning;
    EmitJson(j, common.out);
  });

  // detparse
  TableArgs det_t;
  std::string det_subject, det_times;
  auto* det = app.add_subcommand("detparse", "Deterministic lossless table-to-graph parse");
  AddTableArgs(det, det_t);
  det->add_option("--subject-col", det_subject)->required();
  det->add_option("--time-cols", det_times, "Comma-separated; default all year columns");
  det->callback([&] {
    CsvTable table = LoadTable(det_t);
    std::vector<std::string> times = SplitList(det_times);
    if (times.empty())
      for (std::size_t c : extract_features(table).time_cols) times.push_back(table.header[c]);
    KnowledgeGraph g = deterministic_parse(table, det_subject, times);
    Emit(export_native(g), common.out);
    Summary(GraphSummary(g));
  });

  // extract
  TableArgs ext_t;
  TopologyArgs ext_a;
  std::string ext_host = "surrogate", ext_schema, ext_format = "sge", ext_mode = "faithful",
              ext_anchor = "exact_token", ext_dialect = "lightrag-style", ext_export,
              ext_manifest, ext_responses, ext_provenance, ext_condition = "full";
  std::size_t ext_budget = 600, ext_jobs = 1;
  double ext_theta = 0.90;
  bool ext_no_fallback = false;
  auto* ext = app.add_subcommand("extract", "Run extraction through a host");
  ext->add_option("csv", ext_t.path, "Input CSV (surrogate host or export)");
  ext->add_option("--host", ext_host, "surrogate or files")
      ->check(CLI::IsMember({"surrogate", "files"}))->capture_default_str();
  ext->add_option("--schema", ext_schema, "Schema JSON; omit for the default prompt");
  ext->add_option("--format", ext_format)->capture_default_str();
  ext->add_option("--budget", ext_budget)->capture_default_str();
  ext->add_option("--mode", ext_mode, "faithful, proliferate, refuse, relation_drop")
      ->capture_default_str();
  ext->add_option("--anchor-match", ext_anchor, "exact_token or none")->capture_default_str();
  ext->add_option("--dialect", ext_dialect, "lightrag-style or graphrag-style")
      ->capture_default_str();
  ext->add_option("--condition", ext_condition, "Condition label")->capture_default_str();
  ext->add_option("--theta", ext_theta, "Degradation threshold")->capture_default_str();
  ext->add_flag("--no-fallback", ext_no_fallback, "Record but do not apply fallback");
  ext->add_option("--export-dir", ext_export, "files host: write prompt bundle here");
  ext->add_option("--manifest", ext_manifest, "files host: prompt manifest to import");
  ext->add_option("--responses", ext_responses, "files host: response directory");
  ext->add_option("--provenance", ext_provenance, "Write provenance JSON here");
  ext->add_option("--jobs", ext_jobs, "Worker threads")->capture_default_str();
  AddTopologyArgs(ext, ext_a);
  ext->callback([&] {
    std::optional<MetaSchema> schema;
    if (!ext_schema.empty())
      schema = schema_from_json(parse_json(read_text_file(ext_schema), ext_schema));
    HostDialect dialect = parse_dialect(ext_dialect);
    if (ext_host == "files" && !ext_manifest.empty()) {
      if (ext_responses.empty()) throw InvalidArgument("--responses is required with --manifest");
      ExtractionResult r = import_responses(ext_manifest, ext_responses);
      Emit(export_native(r.graph), common.out);
      ojson p{{"refusals", r.refusals}, {"malformed", r.malformed},
              {"metrics", to_json(structural_metrics(r.graph))}, {"events", ojson::array()}};
      for (const auto& e : r.events) p["events"].push_back(to_json(e));
      if (!ext_provenance.empty()) EmitJson(p, ext_provenance);
      Summary(GraphSummary(r.graph) + ", " + std::to_string(r.refusals) + " refusals, " +
              std::to_string(r.malformed) + " malformed");
      return;
    }
    if (ext_t.path.empty()) throw InvalidArgument("csv input is required");
    CsvTable table = LoadTable(ext_t);
    Topology topo = Classify(table, extract_features(table), ext_a);
    if (ext_host == "files") {
      if (ext_export.empty()) throw InvalidArgument("--export-dir or --manifest is required");
      SerializeOptions so;
      so.format = parse_format(ext_format);
      so.budget = ext_budget;
      ExtractionJob job;
      job.chunks = serialize(table, topo, so);
      job.dialect = dialect;
      job.condition_label = ext_condition;
      job.prompt = schema ? render_schema_prompt(*schema, dialect) : render_default_prompt(dialect);
      export_job(job, ext_export);
      Summary(std::to_string(job.chunks.chunks.size()) + " prompts written to " + ext_export);
      return;
    }
    PipelineConfig pc;
    pc.surrogate.mode = parse_surrogate_mode(ext_mode);
    pc.surrogate.anchor_match = parse_anchor_match(ext_anchor);
    pc.surrogate.jobs = ext_jobs;
    pc.serialize.format = parse_format(ext_format);
    pc.serialize.budget = ext_budget;
    pc.guard.theta = ext_theta;
    validate(pc.guard);
    pc.dialect = dialect;
    pc.apply_fallback = !ext_no_fallback;
    pc.condition_label = ext_condition;
    PipelineResult r = run_pipeline(table, topo, schema ? &*schema : nullptr, pc);
    Emit(export_native(r.graph), common.out);
    ojson p = to_json(r.provenance);
    p["metrics"] = to_json(r.metrics);
    p["events"] = ojson::array();
    for (const auto& e : r.events) p["events"].push_back(to_json(e));
    if (!ext_provenance.empty()) EmitJson(p, ext_provenance);
    Summary(GraphSummary(r.graph) + ", guard " + to_string(r.guard_decision));
  });

  // guard
  std::string guard_graph, guard_topo = "TypeII";
  std::size_t guard_rows = 0;
  double guard_theta = 0.90, guard_ratio = -1;
  auto* guardc = app.add_subcommand("guard", "Degradation guard decision");
  guardc->add_option("graph", guard_graph, "Native graph JSONL");
  guardc->add_option("--ratio", guard_ratio, "Edge/node ratio instead of a graph");
  guardc->add_option("--topology", guard_topo)->capture_default_str();
  guardc->add_option("--rows", guard_rows, "Table rows for the pre-extraction check");
  guardc->add_option("--theta", guard_theta)->capture_default_str();
  guardc->callback([&] {
    GuardConfig cfg;
    cfg.theta = guard_theta;
    validate(cfg);
    TopologyTag tag = parse_topology_tag(guard_topo);
    ojson j;
    GuardDecision d;
    if (!guard_graph.empty()) {
      StructuralMetrics m = structural_metrics(LoadGraph(guard_graph));
      j["metrics"] = to_json(m);
      d = degradation_guard(m, tag, guard_rows, cfg);
    } else if (guard_ratio >= 0) {
      j["edge_node_ratio"] = guard_ratio;
      d = pre_extraction_guard(tag, guard_rows, cfg);
      if (d == GuardDecision::kProceed) d = degradation_guard(guard_ratio, cfg.theta);
    } else if (guard_rows > 0) {
      d = pre_extraction_guard(tag, guard_rows, cfg);
    } else {
      throw InvalidArgument("one of graph, --ratio or --rows is required");
    }
    j["theta"] = cfg.theta;
    j["topology"] = guard_topo;
    j["decision"] = to_string(d);
    EmitJson(j, common.out);
    Summary("guard: " + to_string(d));
  });

  // ingest-graph
  std::string ing_path, ing_dialect = "native-jsonl";
  auto* ing = app.add_subcommand("ingest-graph", "Normalize a host graph export");
  ing->add_option("path", ing_path)->required();
  ing->add_option("--dialect", ing_dialect, "native-jsonl, lightrag-export, graphrag-export")
      ->capture_default_str();
  ing->callback([&] {
    KnowledgeGraph g = ingest_graph(ing_path, parse_graph_dialect(ing_dialect));
    Emit(export_native(g), common.out);
    Summary(GraphSummary(g));
  });

  // eval
  std::string eval_graph, eval_gold;
  MatchOptions eval_o;
  bool eval_outcomes = false;
  auto* ev = app.add_subcommand("eval", "Transport-fidelity evaluation");
  ev->add_option("graph", eval_graph, "Native graph JSONL")->required();
  ev->add_option("gold", eval_gold, "Gold JSONL")->required();
  ev->add_option("--rel-tol", eval_o.rel_tol)->capture_default_str();
  ev->add_flag("--accept-floor2", eval_o.accept_floor2);
  ev->add_option("--hops", eval_o.hops)->capture_default_str();
  ev->add_flag("--outcomes", eval_outcomes, "Include per-fact outcomes");
  ev->callback([&] {
    FidelityReport r = evaluate(LoadGraph(eval_graph), read_gold(eval_gold), eval_o);
    EmitJson(to_json(r, eval_outcomes), common.out);
    Summary("FC=" + text::FormatNumber(r.fc) + " EC=" + text::FormatNumber(r.ec));
  });

  // probe
  std::string probe_graph, probe_queries;
  auto* pr = app.add_subcommand("probe", "Run downstream probe queries");
  pr->add_option("graph", probe_graph)->required();
  pr->add_option("queries", probe_queries, "Probe JSONL")->required();
  pr->callback([&] {
    KnowledgeGraph g = LoadGraph(probe_graph);
    auto qs = probe_queries_from_jsonl(read_text_file(probe_queries));
    ojson j;
    j["results"] = ojson::array();
    std::size_t correct = 0, unreachable = 0;
    for (const auto& q : qs) {
      ProbeResult r = run_probe(g, q);
      correct += r.correct;
      unreachable += r.unreachable;
      j["results"].push_back(to_json(r));
    }
    j["n"] = qs.size();
    j["correct"] = correct;
    j["unreachable"] = unreachable;
    EmitJson(j, common.out);
    Summary(std::to_string(correct) + "/" + std::to_string(qs.size()) + " correct");
  });

  // metrics
  auto* met = app.add_subcommand("metrics", "Moderator and structural metrics");
  met->require_subcommand(1);
  TableArgs cds_t;
  std::string cds_cols;
  double cds_norm = 20.0, cds_scf = -1, cds_len = -1;
  auto* cds = met->add_subcommand("cds", "Column Descriptiveness Score");
  cds->add_option("csv", cds_t.path);
  cds->add_option("--subject-cols", cds_cols, "Comma-separated subject columns");
  cds->add_option("--scf", cds_scf, "Subject-column fraction (component mode)");
  cds->add_option("--mean-len", cds_len, "Mean entity length (component mode)");
  cds->add_option("--normalizer", cds_norm)->capture_default_str();
  cds->callback([&] {
    CdsResult r;
    if (cds_scf >= 0 && cds_len >= 0) {
      r = cds_from_components(cds_scf, cds_len, cds_norm);
    } else {
      if (cds_t.path.empty()) throw InvalidArgument("csv or --scf/--mean-len required");
      r = compute_cds(LoadTable(cds_t), SplitList(cds_cols), cds_norm);
    }
    EmitJson({{"cds", r.cds}, {"scf", r.scf}, {"evr", r.evr},
              {"mean_entity_len", r.mean_entity_len}}, common.out);
    Summary("CDS=" + text::FormatNumber(r.cds));
  });
  std::string ttf_chunks;
  double ttf_threshold = 0.8;
  auto* ttf = met->add_subcommand("ttf", "Template Token Fraction");
  ttf->add_option("chunks", ttf_chunks)->required();
  ttf->add_option("--threshold", ttf_threshold)->capture_default_str();
  ttf->callback([&] {
    double v = compute_ttf(chunks_from_jsonl(read_text_file(ttf_chunks)), ttf_threshold);
    EmitJson({{"ttf", v}, {"threshold", ttf_threshold}}, common.out);
    Summary("TTF=" + text::FormatNumber(v));
  });
  std::string scs_schema;
  TableArgs scs_t;
  auto* scs = met->add_subcommand("scs", "Schema Completeness Score");
  scs->add_option("schema", scs_schema)->required();
  scs->add_option("csv", scs_t.path)->required();
  scs->callback([&] {
    MetaSchema s = schema_from_json(parse_json(read_text_file(scs_schema), scs_schema));
    double v = compute_scs(s, LoadTable(scs_t));
    EmitJson({{"scs", v}}, common.out);
    Summary("SCS=" + text::FormatNumber(v));
  });
  std::string st_graph;
  auto* st = met->add_subcommand("structure", "Structural graph metrics");
  st->add_option("graph", st_graph)->required();
  st->callback([&] {
    StructuralMetrics m = structural_metrics(LoadGraph(st_graph));
    EmitJson(to_json(m), common.out);
    Summary("e/n=" + text::FormatNumber(m.edge_node_ratio));
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Statistical tests");
  stats->require_subcommand(1);
  std::uint64_t mc_b = 0, mc_c = 0;
  bool mc_cont = false;
  auto* mc = stats->add_subcommand("mcnemar", "McNemar chi-square");
  mc->add_option("--b", mc_b)->required();
  mc->add_option("--c", mc_c)->required();
  mc->add_flag("--continuity", mc_cont);
  mc->callback([&] {
    double chi = mcnemar(mc_b, mc_c, mc_cont);
    ojson j{{"b", mc_b}, {"c", mc_c}, {"continuity", mc_cont}, {"chi_square", chi}, {"df", 1}};
    EmitJson(j, common.out);
    char buf[64];
    std::snprintf(buf, sizeof buf, "chi2 = %.2f", chi);
    Summary(buf);
  });
  std::string fi_p, fi_file;
  bool fi_clamp = false;
  auto* fi = stats->add_subcommand("fisher", "Fisher's combined probability");
  fi->add_option("--p", fi_p, "Comma-separated p-values");
  fi->add_option("--input", fi_file, "JSON array of p-values");
  fi->add_flag("--clamp-zero", fi_clamp, "Replace p=0 with the smallest positive double");
  fi->callback([&] {
    FisherResult r = fisher_combined(NumbersFrom(fi_p, fi_file, "--p"), fi_clamp);
    EmitJson(to_json(r), common.out);
    Summary("Fisher p = " + text::FormatNumber(r.p));
  });
  std::string in_fc, in_cells;
  std::size_t in_boot = 1000, in_jobs = 1;
  std::uint64_t in_seed = 42;
  auto* in = stats->add_subcommand("interaction", "Factorial interaction term");
  in->add_option("--fc", in_fc, "full,serial_only,schema_only,baseline");
  in->add_option("--cells", in_cells, "JSON object of per-fact 0/1 vectors per condition");
  in->add_option("--n-boot", in_boot)->capture_default_str();
  in->add_option("--seed", in_seed)->capture_default_str();
  in->add_option("--jobs", in_jobs)->capture_default_str();
  in->callback([&] {
    if (!in_cells.empty()) {
      ojson j = parse_json(read_text_file(in_cells), in_cells);
      std::vector<FactorialCell> cells;
      for (Condition c : all_conditions()) {
        if (!j.contains(to_string(c))) throw InvalidArgument("missing condition " + to_string(c));
        FactorialCell cell;
        cell.condition = c;
        cell.per_fact = j[to_string(c)].get<std::vector<double>>();
        double s = 0;
        for (double v : cell.per_fact) s += v;
        cell.fc = cell.per_fact.empty() ? 0.0 : s / cell.per_fact.size();
        cells.push_back(std::move(cell));
      }
      BootstrapOptions bo;
      bo.n_resamples = in_boot;
      bo.seed = in_seed;
      bo.jobs = in_jobs;
      InteractionResult r = interaction_with_ci(cells, bo);
      EmitJson(to_json(r), common.out);
      Summary("delta_int = " + text::FormatNumber(r.delta_int));
      return;
    }
    auto v = NumberList(in_fc, "--fc");
    if (v.size() != 4) throw InvalidArgument("--fc needs four values");
    double d = interaction_term(v[0], v[1], v[2], v[3]);
    EmitJson({{"delta_int", d}, {"full", v[0]}, {"serial_only", v[1]},
              {"schema_only", v[2]}, {"baseline", v[3]}}, common.out);
    Summary("delta_int = " + text::FormatNumber(d));
  });
  std::string pe_d, pe_file;
  PermutationOptions pe_o;
  auto* pe = stats->add_subcommand("permutation", "Paired sign-flip permutation test");
  pe->add_option("--diffs", pe_d, "Comma-separated paired differences");
  pe->add_option("--input", pe_file, "JSON array of paired differences");
  pe->add_option("--n-perm", pe_o.n_perm)->capture_default_str();
  pe->add_option("--seed", pe_o.seed)->capture_default_str();
  pe->add_option("--jobs", pe_o.jobs)->capture_default_str();
  pe->callback([&] {
    PermutationResult r = permutation_test(NumbersFrom(pe_d, pe_file, "--diffs"), pe_o);
    ojson j = to_json(r);
    j["seed"] = pe_o.seed;
    j["method"] = r.exact ? "exact sign-flip enumeration" : "sampled sign-flip";
    EmitJson(j, common.out);
    Summary("p = " + text::FormatNumber(r.p));
  });
  std::string bs_v, bs_file;
  BootstrapOptions bs_o;
  auto* bs = stats->add_subcommand("bootstrap", "Percentile bootstrap CI of a mean");
  bs->add_option("--values", bs_v, "Comma-separated values");
  bs->add_option("--input", bs_file, "JSON array of values");
  bs->add_option("--n-boot", bs_o.n_resamples)->capture_default_str();
  bs->add_option("--seed", bs_o.seed)->capture_default_str();
  bs->add_option("--level", bs_o.level)->capture_default_str();
  bs->add_option("--jobs", bs_o.jobs)->capture_default_str();
  bs->callback([&] {
    auto v = NumbersFrom(bs_v, bs_file, "--values");
    Interval ci = bootstrap_mean_ci(v, bs_o);
    double s = 0;
    for (double x : v) s += x;
    EmitJson({{"mean", v.empty() ? 0.0 : s / v.size()}, {"ci_low", ci.low},
              {"ci_high", ci.high}, {"n_resamples", bs_o.n_resamples},
              {"seed", bs_o.seed}, {"level", bs_o.level},
              {"method", "percentile bootstrap"}}, common.out);
    Summary("CI [" + text::FormatNumber(ci.low) + ", " + text::FormatNumber(ci.high) + "]");
  });
  std::string wx_x, wx_y;
  std::size_t wx_k = 1;
  auto* wx = stats->add_subcommand("wilcoxon", "Wilcoxon signed-rank test (normal approximation)");
  wx->add_option("--x", wx_x)->required();
  wx->add_option("--y", wx_y)->required();
  wx->add_option("--k", wx_k, "Bonferroni comparisons")->capture_default_str();
  wx->callback([&] {
    WilcoxonResult r = wilcoxon_signed_rank(NumberList(wx_x, "--x"), NumberList(wx_y, "--y"), wx_k);
    EmitJson(to_json(r), common.out);
    Summary("z = " + text::FormatNumber(r.z) + ", p = " + text::FormatNumber(r.p_two_sided));
  });

  // factorial
  std::string fac_manifest, fac_report;
  RunnerOptions fac_o;
  std::string fac_dialect = "lightrag-style";
  auto* fac = app.add_subcommand("factorial", "Run the 2x2 factorial over a manifest");
  fac->add_option("manifest", fac_manifest)->required();
  fac->add_option("--jobs", fac_o.jobs, "Datasets processed in parallel")->capture_default_str();
  fac->add_option("--n-boot", fac_o.n_boot)->capture_default_str();
  fac->add_option("--n-perm", fac_o.n_perm)->capture_default_str();
  fac->add_option("--theta", fac_o.theta)->capture_default_str();
  fac->add_option("--budget", fac_o.budget)->capture_default_str();
  fac->add_option("--dialect", fac_dialect)->capture_default_str();
  fac->add_flag("--timestamps", fac_o.timestamps, "Record wall-clock timestamps");
  fac->add_option("--report", fac_report, "Also write the markdown report here");
  fac->callback([&] {
    fac_o.dialect = parse_dialect(fac_dialect);
    FactorialResult r = run_factorial(parse_manifest(fac_manifest), fac_o);
    ojson j = to_json(r);
    EmitJson(j, common.out);
    if (!fac_report.empty()) write_text_file(fac_report, render_report(j));
    for (const auto& d : r.datasets) {
      if (!d.error.empty()) {
        Summary(d.dataset_id + ": error: " + d.error);
      } else if (d.interaction) {
        Summary(d.dataset_id + ": delta_int = " + text::FormatNumber(d.interaction->delta_int));
      }
    }
    if (r.any_error) exit_code = 1;
  });

  // report
  std::string rep_in;
  auto* rep = app.add_subcommand("report", "Render a markdown report from factorial JSON");
  rep->add_option("factorial", rep_in)->required();
  rep->callback([&] {
    Emit(render_report(parse_json(read_text_file(rep_in), rep_in)), common.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}

void ReportError(const std::string& kind, const std::string& message) {
  ojson j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const csvkg::InvalidArgument& e) {
    ReportError(e.kind(), e.what());
    return 2;
  } catch (const csvkg::Error& e) {
    ReportError(e.kind(), e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    ReportError("parse_error", e.what());
    return 1;
  } catch (const std::exception& e) {
    ReportError("internal_error", e.what());
    return 1;
  }
}
