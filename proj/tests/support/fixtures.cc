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

#include "support/fixtures.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "csvkg/prng.h"
#include "csvkg/text.h"

namespace csvkg::testing {
namespace {

namespace fs = std::filesystem;

const char* const kSyllables[] = {"ka", "ven", "lor", "mi", "dra", "tus", "bel",
                                  "qua", "ris", "zo",  "pen", "gal", "thi", "mor",
                                  "sel", "vra", "nok", "ul",  "fen", "cor"};

std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  return "\"" + text::ReplaceAll(s, "\"", "\"\"") + "\"";
}

}  // namespace

std::vector<std::string> distinct_names(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out;
  std::size_t guard = 0;
  while (out.size() < n) {
    if (++guard > n * 1000) throw std::runtime_error("name space exhausted");
    std::string name;
    for (int i = 0; i < 3; ++i) name += kSyllables[rng.Below(20)];
    name[0] = static_cast<char>(name[0] - 'a' + 'A');
    bool ok = true;
    for (const auto& other : out) {
      if (text::IContains(other, name) || text::IContains(name, other)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(name);
  }
  return out;
}

std::string wide_matrix_csv(std::size_t n_entities, std::uint64_t seed,
                            int first_year, int last_year) {
  Rng rng(seed ^ 0x5eedULL);
  auto names = distinct_names(n_entities, seed);
  std::string csv = "Country Name,Country Code,Indicator Name,Indicator Code";
  for (int y = first_year; y <= last_year; ++y) csv += "," + std::to_string(y);
  csv += "\n";
  std::set<std::string> codes;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string code;
    do {
      code.clear();
      for (int k = 0; k < 3; ++k)
        code.push_back(static_cast<char>('A' + rng.Below(26)));
    } while (!codes.insert(code).second);
    csv += names[i] + "," + code + "," + CsvQuote("Population, total") +
           ",SP.POP.TOTL";
    for (int y = first_year; y <= last_year; ++y) {
      std::uint64_t cents = 1000 + rng.Below(189000);
      if (cents % 100 == 0) cents += 37;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%llu.%02llu",
                    static_cast<unsigned long long>(cents / 100),
                    static_cast<unsigned long long>(cents % 100));
      csv += ",";
      csv += buf;
    }
    csv += "\n";
  }
  return csv;
}

CsvTable wide_matrix(std::size_t n_entities, std::uint64_t seed,
                     int first_year, int last_year) {
  return parse_csv_text(
      wide_matrix_csv(n_entities, seed, first_year, last_year), {},
      "wide_matrix.csv");
}

std::string inpatient_csv(std::size_t n_rows) {
  const char* diseases[] = {"Cholera", "Measles", "Influenza", "Tuberculosis",
                            "Malaria", "Dengue", "Typhoid"};
  const char* sexes[] = {"Male", "Female"};
  const char* ages[] = {"0-14", "15-64", "65+"};
  std::string csv = "Disease Category,Sex,Age Group,Discharges,Beds\n";
  for (std::size_t i = 0; i < n_rows; ++i) {
    csv += std::string(diseases[(i / 6) % 7]) + "," + sexes[i % 2] + "," +
           ages[(i / 2) % 3] + "," + std::to_string(120 + 17 * i) + "," +
           std::to_string(30 + 3 * i) + "\n";
  }
  return csv;
}

std::string type1_csv() {
  return "Name,Description,Owner\n"
         "alpha,first record,ops\n"
         "beta,second record,eng\n"
         "gamma,third record,ops\n";
}

const std::vector<std::string>& standard_gold_years() {
  static const std::vector<std::string> years = {"2000", "2005", "2010",
                                                 "2015", "2019", "2021"};
  return years;
}

std::string temp_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() /
               ("csvkg-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
  fs::path p = fs::path(dir) / name;
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p.string();
}

int run_command(const std::string& command, std::string* stdout_text) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return -1;
  std::array<char, 4096> buf;
  std::string out;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int status = ::pclose(pipe);
  if (stdout_text) *stdout_text = out;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace csvkg::testing
