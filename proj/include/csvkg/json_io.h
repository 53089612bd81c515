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

#include <string>

#include "json.hpp"

#include "csvkg/fidelity.h"
#include "csvkg/graph.h"
#include "csvkg/host.h"
#include "csvkg/probe.h"
#include "csvkg/schema.h"
#include "csvkg/stats.h"
#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace csvkg {

using ojson = nlohmann::ordered_json;

ojson to_json(const ColumnFeatures& f, const CsvTable& table);
ojson to_json(const Topology& t);
Topology topology_from_json(const ojson& j);

ojson to_json(const MetaSchema& s);
MetaSchema schema_from_json(const ojson& j);

ojson to_json(const StructuralMetrics& m);
// Outcomes are included only when `with_outcomes` is set.
ojson to_json(const FidelityReport& r, bool with_outcomes);
ojson to_json(const TripleScores& t);
ojson to_json(const InteractionResult& r);
ojson to_json(const PermutationResult& r);
ojson to_json(const WilcoxonResult& r);
ojson to_json(const FisherResult& r);
ojson to_json(const Provenance& p);
ojson to_json(const ExtractionEvent& e);
ojson to_json(const ProbeResult& r);

// Reads a whole file; throws IoError.
std::string read_text_file(const std::string& path);
// Writes atomically enough for CLI use; throws IoError.
void write_text_file(const std::string& path, const std::string& data);
// Parses JSON text; throws ParseError.
ojson parse_json(const std::string& text, const std::string& what);

}  // namespace csvkg
