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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csvkg/error.h"
#include "csvkg/fidelity.h"
#include "csvkg/gold.h"
#include "csvkg/graph.h"
#include "csvkg/host.h"
#include "csvkg/json_io.h"
#include "csvkg/moderators.h"
#include "csvkg/runner.h"
#include "csvkg/schema.h"
#include "csvkg/serialization.h"
#include "csvkg/stats.h"
#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace py = pybind11;
using namespace csvkg;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
std::string Dump(const ojson& j) { return j.dump(); }

Topology ClassifyTable(const CsvTable& t) {
  return classify_table(t, extract_features(t));
}

std::vector<FactorialCell> CellsFromJson(const std::string& text) {
  ojson j = parse_json(text, "cells");
  std::vector<FactorialCell> cells;
  for (Condition c : all_conditions()) {
    const std::string k = to_string(c);
    if (!j.contains(k)) throw InvalidArgument("missing condition " + k);
    FactorialCell cell;
    cell.condition = c;
    cell.per_fact = j[k].get<std::vector<double>>();
    double sum = 0;
    for (double v : cell.per_fact) sum += v;
    cell.fc = cell.per_fact.empty() ? 0.0 : sum / cell.per_fact.size();
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace

PYBIND11_MODULE(_csvkg, m) {
  m.doc() = "Native core of the csvkg package";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<UnsupportedTopology>(m, "UnsupportedTopology", base.ptr());
  py::register_exception<GraphError>(m, "GraphError", base.ptr());

  py::class_<CsvTable>(m, "Table")
      .def_readonly("header", &CsvTable::header)
      .def_readonly("rows", &CsvTable::rows)
      .def_readonly("source_path", &CsvTable::source_path)
      .def_property_readonly("n_rows", &CsvTable::n_rows)
      .def_property_readonly("n_cols", &CsvTable::n_cols)
      .def("to_csv", [](const CsvTable& t) { return to_csv_text(t); });

  m.def("read_csv",
        [](const std::string& path, const std::string& delimiter, const std::string& encoding) {
          if (delimiter.size() != 1) throw InvalidArgument("delimiter must be one byte");
          return parse_csv(path, {delimiter[0], encoding});
        },
        py::arg("path"), py::arg("delimiter") = ",", py::arg("encoding") = "utf-8");
  m.def("parse_csv_text",
        [](const std::string& text, const std::string& delimiter) {
          if (delimiter.size() != 1) throw InvalidArgument("delimiter must be one byte");
          return parse_csv_text(text, {delimiter[0], "utf-8"});
        },
        py::arg("text"), py::arg("delimiter") = ",");

  m.def("classify_json", [](const CsvTable& t) {
    ojson j = to_json(ClassifyTable(t));
    j["features"] = to_json(extract_features(t), t);
    return Dump(j);
  });
  m.def("induce_schema_json", [](const CsvTable& t) {
    return Dump(to_json(induce_schema(t, ClassifyTable(t))));
  });
  m.def("scs", [](const std::string& schema_json, const CsvTable& t) {
    return compute_scs(schema_from_json(parse_json(schema_json, "schema")), t);
  });
  m.def("render_schema_prompt",
        [](const std::string& schema_json, const std::string& dialect) {
          return render_schema_prompt(schema_from_json(parse_json(schema_json, "schema")),
                                      parse_dialect(dialect));
        },
        py::arg("schema_json"), py::arg("dialect") = "lightrag");

  m.def("serialize_jsonl",
        [](const CsvTable& t, const std::string& format, std::size_t budget) {
          SerializeOptions o;
          o.format = parse_format(format);
          o.budget = budget;
          return chunks_to_jsonl(serialize(t, ClassifyTable(t), o));
        },
        py::arg("table"), py::arg("format") = "sge", py::arg("budget") = 600);

  py::class_<GoldSet>(m, "GoldSet")
      .def("__len__", [](const GoldSet& g) { return g.facts.size(); })
      .def("to_jsonl", [](const GoldSet& g) { return gold_to_jsonl(g); })
      .def("subjects", [](const GoldSet& g) { return gold_subjects(g); });
  m.def("generate_gold", &generate_gold, py::arg("table"), py::arg("subject_col"),
        py::arg("n_entities"), py::arg("years"), py::arg("seed") = 42,
        py::arg("dataset_id") = "");
  m.def("gold_from_jsonl", &gold_from_jsonl);

  py::class_<KnowledgeGraph>(m, "Graph")
      .def_property_readonly("n_nodes", [](const KnowledgeGraph& g) { return g.nodes().size(); })
      .def_property_readonly("n_edges", [](const KnowledgeGraph& g) { return g.edges().size(); })
      .def("to_jsonl", [](const KnowledgeGraph& g) { return export_native(g); })
      .def("metrics_json", [](const KnowledgeGraph& g) {
        return Dump(to_json(structural_metrics(g)));
      });
  m.def("ingest_graph", [](const std::string& path, const std::string& dialect) {
    return ingest_graph(path, parse_graph_dialect(dialect));
  }, py::arg("path"), py::arg("dialect") = "native-jsonl");
  m.def("ingest_graph_text", [](const std::string& text, const std::string& dialect) {
    return ingest_graph_text(text, parse_graph_dialect(dialect));
  }, py::arg("text"), py::arg("dialect") = "native-jsonl");
  m.def("deterministic_parse", &deterministic_parse);

  m.def("extract_json",
        [](const CsvTable& t, const std::optional<std::string>& schema_json,
           const std::string& format, const std::string& mode, bool apply_fallback,
           double theta, std::size_t jobs) {
          PipelineConfig pc;
          pc.serialize.format = parse_format(format);
          pc.surrogate.mode = parse_surrogate_mode(mode);
          pc.surrogate.jobs = jobs;
          pc.apply_fallback = apply_fallback;
          pc.guard.theta = theta;
          std::optional<MetaSchema> s;
          if (schema_json) s = schema_from_json(parse_json(*schema_json, "schema"));
          PipelineResult r = run_pipeline(t, ClassifyTable(t), s ? &*s : nullptr, pc);
          ojson j;
          j["provenance"] = to_json(r.provenance);
          j["metrics"] = to_json(r.metrics);
          return std::make_pair(std::move(r.graph), Dump(j));
        },
        py::arg("table"), py::arg("schema_json") = std::nullopt, py::arg("format") = "sge",
        py::arg("mode") = "faithful", py::arg("apply_fallback") = true,
        py::arg("theta") = 0.90, py::arg("jobs") = 1);

  m.def("evaluate_json",
        [](const KnowledgeGraph& g, const GoldSet& gold, double rel_tol, bool accept_floor2,
           std::size_t hops, bool outcomes) {
          MatchOptions o{rel_tol, accept_floor2, hops};
          return Dump(to_json(evaluate(g, gold, o), outcomes));
        },
        py::arg("graph"), py::arg("gold"), py::arg("rel_tol") = 1e-9,
        py::arg("accept_floor2") = false, py::arg("hops") = 2, py::arg("outcomes") = false);

  m.def("interaction_term",
        py::overload_cast<double, double, double, double>(&interaction_term),
        py::arg("full"), py::arg("serial_only"), py::arg("schema_only"), py::arg("baseline"));
  m.def("interaction_ci_json",
        [](const std::string& cells_json, std::size_t n_boot, std::uint64_t seed,
           std::size_t jobs) {
          BootstrapOptions o;
          o.n_resamples = n_boot;
          o.seed = seed;
          o.jobs = jobs;
          return Dump(to_json(interaction_with_ci(CellsFromJson(cells_json), o)));
        },
        py::arg("cells_json"), py::arg("n_boot") = 1000, py::arg("seed") = 42,
        py::arg("jobs") = 1);
  m.def("permutation_json",
        [](const std::vector<double>& d, std::size_t n_perm, std::uint64_t seed) {
          PermutationOptions o;
          o.n_perm = n_perm;
          o.seed = seed;
          return Dump(to_json(permutation_test(d, o)));
        },
        py::arg("differences"), py::arg("n_perm") = 10000, py::arg("seed") = 42);
  m.def("wilcoxon_json",
        [](const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
          return Dump(to_json(wilcoxon_signed_rank(x, y, k)));
        },
        py::arg("x"), py::arg("y"), py::arg("bonferroni_k") = 1);
  m.def("mcnemar", &mcnemar, py::arg("b"), py::arg("c"), py::arg("continuity") = false);
  m.def("fisher_json", [](const std::vector<double>& ps, bool clamp) {
    return Dump(to_json(fisher_combined(ps, clamp)));
  }, py::arg("p_values"), py::arg("clamp_zero") = false);
  m.def("cds_from_components",
        [](double scf, double len, double norm) { return cds_from_components(scf, len, norm).cds; },
        py::arg("scf"), py::arg("mean_entity_len"), py::arg("normalizer") = 20.0);

  m.def("run_factorial_json",
        [](const std::string& manifest_path, std::size_t jobs, std::size_t n_boot,
           std::size_t n_perm, double theta) {
          RunnerOptions o;
          o.jobs = jobs;
          o.n_boot = n_boot;
          o.n_perm = n_perm;
          o.theta = theta;
          FactorialResult r;
          {
            py::gil_scoped_release release;
            r = run_factorial(parse_manifest(manifest_path), o);
          }
          return Dump(to_json(r));
        },
        py::arg("manifest_path"), py::arg("jobs") = 1, py::arg("n_boot") = 1000,
        py::arg("n_perm") = 10000, py::arg("theta") = 0.90);
  m.def("render_report", [](const std::string& factorial_json) {
    return render_report(parse_json(factorial_json, "factorial result"));
  });
}
