// Copyright 2026 The hwarch Authors.
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
#include "hwarch/results.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "hwarch/error.hpp"

namespace hwarch {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error(Errc::kConfigError, "bad number '" + text + "' in " + what);
  }
  return v;
}

template <class Int>
Int parse_int(const std::string& text, const std::string& what) {
  Int v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error(Errc::kConfigError, "bad integer '" + text + "' in " + what);
  }
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Splits one CSV record; returns false at end of input.
bool read_csv_row(std::istream& in, std::vector<std::string>& row) {
  row.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw Error(Errc::kConfigError, "unterminated quoted CSV field");
  row.push_back(std::move(field));
  return true;
}

// Column order consistent with every record's own parameter order where one
// exists; ties and cycles fall back to first appearance.
std::vector<std::string> param_columns(const std::vector<ResultRecord>& records) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (const ResultRecord& r : records) {
    for (const auto& [k, v] : r.params) {
      if (index.emplace(k, names.size()).second) names.push_back(k);
    }
  }
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
  std::vector<std::size_t> indegree(n, 0);
  for (const ResultRecord& r : records) {
    for (std::size_t i = 1; i < r.params.size(); ++i) {
      const std::size_t a = index.at(r.params[i - 1].first);
      const std::size_t b = index.at(r.params[i].first);
      if (a != b && !before[a][b]) {
        before[a][b] = true;
        ++indegree[b];
      }
    }
  }
  std::vector<std::string> out;
  std::vector<bool> placed(n, false);
  while (out.size() < n) {
    std::size_t next = n;
    for (std::size_t i = 0; i < n && next == n; ++i) {
      if (!placed[i] && indegree[i] == 0) next = i;
    }
    if (next == n) {
      for (std::size_t i = 0; i < n && next == n; ++i) {
        if (!placed[i]) next = i;
      }
    }
    placed[next] = true;
    out.push_back(names[next]);
    for (std::size_t j = 0; j < n; ++j) {
      if (before[next][j]) --indegree[j];
    }
  }
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

void write_csv(std::ostream& out, const RunResult& run) {
  const std::vector<std::string> names = param_columns(run.records);
  out << "experiment,metric,value,rep,seed";
  for (const std::string& n : names) out << ',' << csv_field(n);
  out << ",tolerance\n";
  for (const ResultRecord& r : run.records) {
    out << csv_field(r.experiment) << ',' << csv_field(r.metric) << ',' << format_double(r.value)
        << ',' << r.rep << ',' << r.seed;
    for (const std::string& n : names) {
      out << ',';
      for (const auto& [k, v] : r.params) {
        if (k == n) {
          out << csv_field(v);
          break;
        }
      }
    }
    out << ',' << format_double(r.tolerance) << '\n';
  }
}

void write_json(std::ostream& out, const RunResult& run) {
  json records = json::array();
  for (const ResultRecord& r : run.records) {
    json params = json::array();
    for (const auto& [k, v] : r.params) params.push_back({{"name", k}, {"value", v}});
    records.push_back({{"experiment", r.experiment},
                       {"metric", r.metric},
                       {"value", r.value},
                       {"rep", r.rep},
                       {"seed", r.seed},
                       {"params", params},
                       {"tolerance", r.tolerance}});
  }
  json doc = {{"config", json::parse(to_json_text(run.config))}, {"records", records}};
  out << doc.dump(2) << '\n';
}

std::vector<ResultRecord> read_csv(std::istream& in) {
  std::vector<std::string> header;
  if (!read_csv_row(in, header) || header.size() < 6 || header[0] != "experiment" ||
      header[1] != "metric" || header[2] != "value" || header[3] != "rep" ||
      header[4] != "seed" || header.back() != "tolerance") {
    throw Error(Errc::kConfigError, "not a result CSV header");
  }
  std::vector<ResultRecord> out;
  std::vector<std::string> row;
  std::size_t line = 1;
  while (read_csv_row(in, row)) {
    ++line;
    const std::string where = "CSV line " + std::to_string(line);
    if (row.size() != header.size()) throw Error(Errc::kConfigError, "wrong column count on " + where);
    ResultRecord r;
    r.experiment = row[0];
    r.metric = row[1];
    r.value = parse_double(row[2], where);
    r.rep = parse_int<std::int64_t>(row[3], where);
    r.seed = parse_int<std::uint64_t>(row[4], where);
    for (std::size_t i = 5; i + 1 < row.size(); ++i) {
      if (!row[i].empty()) r.params.emplace_back(header[i], row[i]);
    }
    r.tolerance = parse_double(row.back(), where);
    out.push_back(std::move(r));
  }
  return out;
}

RunResult read_json(std::istream& in) {
  RunResult run;
  try {
    const json doc = json::parse(in);
    run.config = parse_config(doc.at("config").dump());
    for (const json& j : doc.at("records")) {
      ResultRecord r;
      r.experiment = j.at("experiment").get<std::string>();
      r.metric = j.at("metric").get<std::string>();
      r.value = j.at("value").get<double>();
      r.rep = j.at("rep").get<std::int64_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      for (const json& p : j.at("params")) {
        r.params.emplace_back(p.at("name").get<std::string>(), p.at("value").get<std::string>());
      }
      r.tolerance = j.at("tolerance").get<double>();
      run.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::kConfigError, std::string("malformed result JSON: ") + e.what());
  }
  return run;
}

std::vector<std::filesystem::path> write_outputs(const RunResult& run,
                                                 const std::filesystem::path& dir,
                                                 OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  const std::string stem(experiment_name(run.config.experiment));
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& ext, auto&& writer) {
    const std::filesystem::path path = dir / (stem + ext);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
    writer(out, run);
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed for " + path.string());
    written.push_back(path);
  };
  if (format != OutputFormat::kJson) emit(".csv", [](std::ostream& o, const RunResult& r) { write_csv(o, r); });
  if (format != OutputFormat::kCsv) emit(".json", [](std::ostream& o, const RunResult& r) { write_json(o, r); });
  return written;
}

double percentile_nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) throw Error(Errc::kInvalidParams, "percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw Error(Errc::kInvalidParams, "percentile outside [0, 100]");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  return values[rank == 0 ? 0 : rank - 1];
}

KendallTrend kendall_trend(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::kInvalidParams, "trend inputs differ in length");
  if (x.size() < 2) throw Error(Errc::kInvalidParams, "trend test needs at least two points");
  const std::size_t n = x.size();
  auto sign = [](double d) { return (d > 0) - (d < 0); };
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += sign(x[i] - x[j]) * sign(y[i] - y[j]);
  }
  // Tie-group sizes of each variable.
  auto ties = [](std::span<const double> v) {
    std::map<double, double> counts;
    for (double e : v) counts[e] += 1.0;
    double t1 = 0, t2 = 0, t3 = 0;  // sum t(t-1), t(t-1)(t-2), t(t-1)(2t+5)
    for (const auto& [value, t] : counts) {
      t1 += t * (t - 1);
      t2 += t * (t - 1) * (t - 2);
      t3 += t * (t - 1) * (2 * t + 5);
    }
    return std::array<double, 3>{t1, t2, t3};
  };
  const auto tx = ties(x), ty = ties(y);
  const double nn = static_cast<double>(n);
  const double n0 = nn * (nn - 1) / 2;
  KendallTrend out;
  out.s = static_cast<double>(s);
  const double denom = std::sqrt((n0 - tx[0] / 2) * (n0 - ty[0] / 2));
  out.tau_b = denom > 0 ? out.s / denom : 0.0;
  out.var_s = (nn * (nn - 1) * (2 * nn + 5) - tx[2] - ty[2]) / 18.0 +
              (n > 2 ? tx[1] * ty[1] / (9.0 * nn * (nn - 1) * (nn - 2)) : 0.0) +
              tx[0] * ty[0] / (2.0 * nn * (nn - 1));
  out.z = out.var_s > 0 ? out.s / std::sqrt(out.var_s) : 0.0;
  out.p_decreasing = normal_cdf(out.z);
  out.p_increasing = normal_cdf(-out.z);
  return out;
}

}  // namespace hwarch
