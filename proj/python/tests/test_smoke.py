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

import csv
import io
import json
import pathlib
import random

import pytest

import csvkg

SCHEMAS = pathlib.Path(__file__).resolve().parents[2] / "docs" / "schemas"
YEARS = ["2000", "2005", "2010", "2015", "2019", "2021"]


def wide_csv(n=40, seed=3):
    rng = random.Random(seed)
    syll = ["ka", "lo", "mi", "ru", "te", "sa", "no", "vi", "de", "pu", "zo", "ha"]
    names = set()
    while len(names) < n:
        names.add("".join(rng.choice(syll) for _ in range(3)).capitalize() + "ria")
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["Country Name", "Country Code", "Population, total", "SP.POP.TOTL"]
               + [str(y) for y in range(2000, 2022)])
    for i, name in enumerate(sorted(names)):
        w.writerow([name, "C%02d" % i, "Population, total", "SP.POP.TOTL"]
                   + ["%d.%02d" % (rng.randint(10, 1899), rng.randint(1, 99))
                      for _ in range(22)])
    return out.getvalue()


@pytest.fixture(scope="module")
def text():
    return wide_csv()


@pytest.fixture(scope="module")
def table(text):
    return csvkg.parse_csv_text(text)


def test_table_and_topology(table):
    assert table.n_rows == 40
    assert table.header[2] == "Population, total"
    topo = csvkg.classify(table)
    assert topo["tag"] == "TypeII"
    schema = csvkg.induce_schema(table)
    assert csvkg.scs(schema, table) == pytest.approx(1.0)
    assert "Country_Name" in csvkg.render_schema_prompt(schema)


def test_gold_matches_independent_csv_lookup(text, table):
    gold = csvkg.generate_gold(table, "Country Name", 25, YEARS, 42)
    assert len(gold) == 150
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    lookup = {r[0]: r for r in body}
    for line in gold.to_jsonl().splitlines():
        f = json.loads(line)
        assert lookup[f["subject"]][header.index(f["time"])] == f["value"]
    assert len(set(gold.subjects())) == 25


def test_serialize_and_pipeline(table):
    chunks = csvkg.serialize(table, "sge")
    assert chunks[0]["id"] == "chunk-0000"
    assert chunks[-1]["row_span"][1] == 40
    gold = csvkg.generate_gold(table, "Country Name", 25, YEARS, 42)
    schema = csvkg.induce_schema(table)
    graph, info = csvkg.extract(table, schema, format="sge")
    assert info["provenance"]["schema_used"]
    assert csvkg.evaluate(graph, gold)["fc"] == pytest.approx(1.0)
    base, _ = csvkg.extract(table, None, format="naive")
    assert csvkg.evaluate(base, gold)["fc"] < 1.0
    _, degraded = csvkg.extract(table, schema, format="naive", mode="proliferate")
    assert degraded["provenance"]["guard_decision"] == "fallback"
    assert degraded["provenance"]["fallback_applied"]


def test_graph_round_trip(table):
    g = csvkg.deterministic_parse(table, "Country Name", YEARS)
    back = csvkg.ingest_graph_text(g.to_jsonl())
    assert (back.n_nodes, back.n_edges) == (g.n_nodes, g.n_edges)
    assert json.loads(g.metrics_json())["n_edges"] == 240


def test_statistics():
    assert csvkg.mcnemar(35, 1) == pytest.approx(32.11, abs=0.01)
    assert csvkg.interaction_term(1.0, 0.033, 0.363, 0.170) == pytest.approx(0.774)
    assert csvkg.cds_from_components(0.038, 10.5) == pytest.approx(0.020, abs=5e-4)
    cells = {"full": [1] * 300, "serial_only": [0] * 300,
             "schema_only": [0] * 40 + [1] * 7 + [0] * 253,
             "baseline": [1] * 40 + [0] * 260}
    ci = csvkg.interaction_ci(cells, n_boot=1000)
    assert ci["ci_low"] < ci["delta_int"] < ci["ci_high"]
    assert csvkg.fisher([0.05])["p"] == pytest.approx(0.05)
    p = csvkg.permutation([0.5, 0.25, -0.1, 0.3])
    assert p["exact"] and 0 < p["p"] <= 1


def test_wilcoxon_agrees_with_scipy():
    stats = pytest.importorskip("scipy.stats")
    x = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30, 0.75]
    y = [0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06, 3.14, 1.29, 0.80]
    ours = csvkg.wilcoxon(x, y)
    ref = stats.wilcoxon(x, y, correction=False, method="approx")
    assert ours["p_two_sided"] == pytest.approx(ref.pvalue, rel=1e-9)


def test_errors_map_to_exceptions(tmp_path):
    with pytest.raises(csvkg.IoError):
        csvkg.read_csv(str(tmp_path / "missing.csv"))
    with pytest.raises(csvkg.ParseError):
        csvkg.parse_csv_text('a,"b\n1,2\n')
    with pytest.raises(csvkg.InvalidArgument):
        csvkg.mcnemar(0, 0)
    assert issubclass(csvkg.GraphError, csvkg.Error)


def test_factorial(tmp_path, text):
    (tmp_path / "wide.csv").write_text(text)
    (tmp_path / "m.json").write_text(json.dumps({"datasets": [
        {"dataset_id": "w", "csv": "wide.csv", "subject_col": "Country Name",
         "gold": {"n_entities": 10, "years": YEARS}}]}))
    res = csvkg.run_factorial(tmp_path / "m.json", n_boot=200, n_perm=500)
    assert not res["any_error"]
    assert len(res["datasets"][0]["records"]) == 4
    assert "Fact coverage" in csvkg.render_report(res)


def test_outputs_match_documented_schemas(table, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")

    def check(name, obj):
        schema = json.loads((SCHEMAS / name).read_text())
        jsonschema.validate(obj, schema)

    schema = csvkg.induce_schema(table)
    check("meta-schema.schema.json", schema)
    for chunk in csvkg.serialize(table, "row-local")[:3]:
        check("chunk-record.schema.json", chunk)
    gold = csvkg.generate_gold(table, "Country Name", 5, YEARS, 1)
    for line in gold.to_jsonl().splitlines():
        check("gold-record.schema.json", json.loads(line))
    graph = csvkg.deterministic_parse(table, "Country Name", YEARS[:2])
    for line in graph.to_jsonl().splitlines():
        check("graph-record.schema.json", json.loads(line))
    check("manifest.schema.json", {"datasets": [
        {"dataset_id": "w", "csv": "wide.csv", "subject_col": "Country Name",
         "gold": {"n_entities": 10, "years": YEARS}, "conditions": ["baseline", "full"],
         "topology_override": {"tag": "TypeII", "reason": "manual"}}]})
    with pytest.raises(jsonschema.ValidationError):
        check("manifest.schema.json", {"datasets": [{"dataset_id": "w"}]})
