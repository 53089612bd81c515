# Copyright 2026 The csvkg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python interface to the csvkg table-to-knowledge-graph toolkit."""

import json as _json

from . import _csvkg
from ._csvkg import (
    Error,
    GoldSet,
    Graph,
    GraphError,
    InvalidArgument,
    IoError,
    ParseError,
    Table,
    UnsupportedTopology,
    cds_from_components,
    deterministic_parse,
    generate_gold,
    gold_from_jsonl,
    ingest_graph,
    ingest_graph_text,
    interaction_term,
    mcnemar,
    parse_csv_text,
    read_csv,
)

__all__ = [
    "Error", "GoldSet", "Graph", "GraphError", "InvalidArgument", "IoError",
    "ParseError", "Table", "UnsupportedTopology", "cds_from_components",
    "classify", "deterministic_parse", "evaluate", "extract", "fisher",
    "generate_gold", "gold_from_jsonl", "induce_schema", "ingest_graph",
    "ingest_graph_text", "interaction_ci", "interaction_term", "mcnemar",
    "parse_csv_text", "permutation", "read_csv", "render_report",
    "render_schema_prompt", "run_factorial", "scs", "serialize", "wilcoxon",
]


def classify(table):
    """Topology tag, fired rule, guard trace and column features."""
    return _json.loads(_csvkg.classify_json(table))


def induce_schema(table):
    return _json.loads(_csvkg.induce_schema_json(table))


def scs(schema, table):
    return _csvkg.scs(_json.dumps(schema), table)


def render_schema_prompt(schema, dialect="lightrag"):
    return _csvkg.render_schema_prompt(_json.dumps(schema), dialect)


def serialize(table, format="sge", budget=600):
    """List of chunk dicts with id, format, text and row_span."""
    text = _csvkg.serialize_jsonl(table, format, budget)
    return [_json.loads(line) for line in text.splitlines() if line]


def extract(table, schema=None, format="sge", mode="faithful",
            apply_fallback=True, theta=0.90, jobs=1):
    """Runs the surrogate host pipeline; returns (Graph, info dict)."""
    schema_json = None if schema is None else _json.dumps(schema)
    graph, info = _csvkg.extract_json(table, schema_json, format, mode,
                                      apply_fallback, theta, jobs)
    return graph, _json.loads(info)


def evaluate(graph, gold, rel_tol=1e-9, accept_floor2=False, hops=2,
             outcomes=False):
    return _json.loads(_csvkg.evaluate_json(graph, gold, rel_tol,
                                            accept_floor2, hops, outcomes))


def interaction_ci(cells, n_boot=1000, seed=42, jobs=1):
    """`cells` maps each condition name to its 0/1 per-fact vector."""
    return _json.loads(_csvkg.interaction_ci_json(_json.dumps(cells), n_boot,
                                                  seed, jobs))


def permutation(differences, n_perm=10000, seed=42):
    return _json.loads(_csvkg.permutation_json(list(differences), n_perm, seed))


def wilcoxon(x, y, bonferroni_k=1):
    return _json.loads(_csvkg.wilcoxon_json(list(x), list(y), bonferroni_k))


def fisher(p_values, clamp_zero=False):
    return _json.loads(_csvkg.fisher_json(list(p_values), clamp_zero))


def run_factorial(manifest_path, jobs=1, n_boot=1000, n_perm=10000,
                  theta=0.90):
    return _json.loads(_csvkg.run_factorial_json(str(manifest_path), jobs,
                                                 n_boot, n_perm, theta))


def render_report(factorial):
    return _csvkg.render_report(_json.dumps(factorial))
