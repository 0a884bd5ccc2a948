// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/bench.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "treeltqp/errors.hpp"
#include "treeltqp/server.hpp"
#include "treeltqp/traversal.hpp"
#include "treeltqp/value.hpp"
#include "treeltqp/vocab.hpp"

#include <json.hpp>

namespace ltqp {

namespace {

std::string range_query(const std::string& from, Cmp upper_cmp, const std::string& to,
                        Cmp lower_cmp = Cmp::Ge) {
  std::ostringstream out;
  out << "PREFIX saref: <" << vocab::kSarefNs << ">\n"
      << "PREFIX xsd: <" << vocab::kXsdNs << ">\n"
      << "SELECT ?m ?t ?s\n"
      << "WHERE {\n"
      << "  ?m saref:hasTimestamp ?t .\n"
      << "  ?m saref:measurementMadeBy ?s .\n"
      << "  FILTER(?t " << cmp_symbol(lower_cmp) << " \"" << from << "\"^^xsd:dateTime && ?t "
      << cmp_symbol(upper_cmp) << " \"" << to << "\"^^xsd:dateTime)\n"
      << "}\n";
  return out.str();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> analog_queries(std::int64_t start_micros,
                                                                std::int64_t step_micros,
                                                                std::int64_t count) {
  if (count < 4) throw ConfigError("analog queries need a dataset of at least 4 measurements");
  auto ts = [&](std::int64_t k) { return format_date_time_micros(start_micros + k * step_micros); };
  std::vector<std::pair<std::string, std::string>> out;
  // Q1: a window strictly between two samples; overlaps a leaf, matches nothing.
  const std::int64_t q1 = count / 3;
  out.emplace_back("Q1", range_query(ts(q1), Cmp::Lt, ts(q1 + 1), Cmp::Gt));
  // Q2: half-open step window around one sample; exactly one result.
  const std::int64_t q2 = count / 2;
  out.emplace_back("Q2", range_query(ts(q2), Cmp::Lt,
                                     format_date_time_micros(start_micros + q2 * step_micros +
                                                             step_micros)));
  // Q3: a wide range covering ~30% of the data.
  out.emplace_back("Q3", range_query(ts(count * 3 / 10), Cmp::Lt, ts(count * 6 / 10)));
  // Q4: near-full scan; the heaviest shape.
  out.emplace_back("Q4", range_query(ts(0), Cmp::Le, ts(count - 1)));
  return out;
}

BenchConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config " + path + ": " + e.what());
  }

  BenchConfig cfg;
  try {
    for (const auto& frag : doc.at("fragments")) {
      cfg.fragments.push_back({frag.at("n").get<int>(), frag.at("dir").get<std::string>()});
    }
    if (doc.contains("queries")) {
      const auto config_dir = std::filesystem::path(path).parent_path();
      for (const auto& [id, spec] : doc.at("queries").items()) {
        if (spec.contains("text")) {
          cfg.queries.emplace_back(id, spec.at("text").get<std::string>());
        } else {
          std::filesystem::path file = spec.at("file").get<std::string>();
          if (file.is_relative()) file = config_dir / file;
          std::ifstream qin(file);
          if (!qin) throw ConfigError("cannot open query file " + file.string());
          std::ostringstream text;
          text << qin.rdbuf();
          cfg.queries.emplace_back(id, text.str());
        }
      }
    } else if (doc.contains("dataset")) {
      const auto& ds = doc.at("dataset");
      auto start = parse_date_time_micros(ds.at("start").get<std::string>());
      if (!start) throw ConfigError("dataset.start is not a dateTime");
      cfg.queries = analog_queries(*start,
                                   static_cast<std::int64_t>(ds.at("step_seconds").get<double>() *
                                                             1000000.0),
                                   ds.at("count").get<std::int64_t>());
    } else {
      throw ConfigError("config needs either \"queries\" or \"dataset\"");
    }
    if (doc.contains("criteria")) {
      cfg.criteria.clear();
      for (const auto& c : doc.at("criteria")) {
        const std::string name = c.get<std::string>();
        if (name == "rule") cfg.criteria.push_back(CriterionKind::RuleBased);
        else if (name == "predicate") cfg.criteria.push_back(CriterionKind::PredicateBased);
        else throw ConfigError("unknown criterion \"" + name + "\"");
      }
    }
    if (doc.contains("timeout_ms"))
      cfg.timeout = std::chrono::milliseconds(doc.at("timeout_ms").get<std::int64_t>());
    if (doc.contains("repetitions")) cfg.repetitions = doc.at("repetitions").get<int>();
    if (doc.contains("port")) cfg.port = doc.at("port").get<int>();
    if (doc.contains("delay_ms")) cfg.delay_ms = doc.at("delay_ms").get<int>();
    if (doc.contains("fetch_parallelism"))
      cfg.fetch_parallelism = doc.at("fetch_parallelism").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config " + path + ": " + e.what());
  }
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (cfg.fragments.empty()) throw ConfigError("config lists no fragment directories");
  return cfg;
}

BenchReport run_bench(const BenchConfig& cfg) {
  BenchReport report;
  for (const BenchFragments& frag : cfg.fragments) {
    DocServer server(frag.dir, cfg.port, cfg.delay_ms);
    server.start();
    for (const auto& [query_id, query_text] : cfg.queries) {
      auto query = std::make_shared<const Query>(parse_query(query_text));
      for (CriterionKind kind : cfg.criteria) {
        const ReachabilityCriterion criterion =
            kind == CriterionKind::RuleBased ? ReachabilityCriterion::rule_based(query)
                                             : ReachabilityCriterion::predicate_based();
        BenchRow row;
        row.n = frag.n;
        row.query_id = query_id;
        row.criterion = to_string(kind);
        std::vector<std::int64_t> times;
        try {
          for (int rep = 0; rep < cfg.repetitions; ++rep) {
            HttpFetcher fetcher;
            TraversalOptions options;
            options.timeout = cfg.timeout;
            options.fetch_parallelism = cfg.fetch_parallelism;
            options.log_failures = false;
            const TraversalResult res =
                traverse_and_query({server.root_url()}, *query, criterion, fetcher, options);
            times.push_back(res.metrics.wall_time.count());
            if (res.metrics.timed_out) row.timed_out = true;
            if (rep == 0) {
              row.requests = res.metrics.requests;
              row.results = res.metrics.result_count;
              row.pruned_links = res.metrics.pruned_links;
              row.peak_store = res.metrics.peak_store_size();
            } else if (!row.timed_out && (row.requests != res.metrics.requests ||
                                          row.results != res.metrics.result_count)) {
              row.note = "requests/results varied across repetitions";
            }
          }
          std::sort(times.begin(), times.end());
          const std::size_t mid = times.size() / 2;
          row.median_wall_us = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
        } catch (const std::exception& e) {
          row.note = e.what();
        }
        report.rows.push_back(std::move(row));
      }
    }
    server.stop();
  }
  return report;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const char* kCsvHeader = "n,query,criterion,median_wall_us,requests,results,pruned_links,peak_store,timed_out,note";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::string report_table(const BenchReport& r) {
  // One line per (n, query); criteria pivot into column groups, matching
  // the usual side-by-side presentation. Timed-out cells print x.
  std::vector<std::string> criteria;
  std::vector<std::pair<int, std::string>> cells;  // (n, query) in first-seen order
  std::map<std::pair<int, std::string>, std::map<std::string, const BenchRow*>> by_cell;
  for (const BenchRow& row : r.rows) {
    if (std::find(criteria.begin(), criteria.end(), row.criterion) == criteria.end())
      criteria.push_back(row.criterion);
    const auto key = std::make_pair(row.n, row.query_id);
    if (!by_cell.count(key)) cells.push_back(key);
    by_cell[key][row.criterion] = &row;
  }

  std::vector<std::string> header = {"n", "Query"};
  for (const std::string& c : criteria) header.push_back("Time-" + c + " (ms)");
  for (const std::string& c : criteria) header.push_back("Req-" + c);
  for (const std::string& c : criteria) header.push_back("Res-" + c);
  for (const std::string& c : criteria) header.push_back("Pruned-" + c);
  for (const std::string& c : criteria) header.push_back("Store-" + c);

  std::vector<std::vector<std::string>> lines = {header};
  for (const auto& key : cells) {
    std::vector<std::string> line = {std::to_string(key.first), key.second};
    auto cell_of = [&](const std::string& c) -> const BenchRow* {
      auto it = by_cell[key].find(c);
      return it == by_cell[key].end() ? nullptr : it->second;
    };
    for (const std::string& c : criteria) {
      const BenchRow* row = cell_of(c);
      if (!row || !row->note.empty()) line.push_back("-");
      else if (row->timed_out) line.push_back("x");
      else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", static_cast<double>(row->median_wall_us) / 1000.0);
        line.push_back(buf);
      }
    }
    auto counter_cols = [&](auto getter) {
      for (const std::string& c : criteria) {
        const BenchRow* row = cell_of(c);
        line.push_back(row && row->note.empty() ? std::to_string(getter(*row)) : "-");
      }
    };
    counter_cols([](const BenchRow& row) { return row.requests; });
    counter_cols([](const BenchRow& row) { return row.results; });
    counter_cols([](const BenchRow& row) { return row.pruned_links; });
    counter_cols([](const BenchRow& row) { return row.peak_store; });
    lines.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : lines)
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      out << line[i] << std::string(widths[i] - line[i].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string report_json(const BenchReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"query", row.query_id},
                    {"criterion", row.criterion},
                    {"median_wall_us", row.median_wall_us},
                    {"requests", row.requests},
                    {"results", row.results},
                    {"pruned_links", row.pruned_links},
                    {"peak_store", row.peak_store},
                    {"timed_out", row.timed_out},
                    {"note", row.note}});
  }
  return rows.dump(2) + "\n";
}

std::string report_csv(const BenchReport& r) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const BenchRow& row : r.rows) {
    out << row.n << ',' << csv_escape(row.query_id) << ',' << csv_escape(row.criterion) << ','
        << row.median_wall_us << ',' << row.requests << ',' << row.results << ','
        << row.pruned_links << ',' << row.peak_store << ',' << (row.timed_out ? "true" : "false")
        << ',' << csv_escape(row.note) << '\n';
  }
  return out.str();
}

BenchReport report_from_json(const std::string& text) {
  BenchReport report;
  const nlohmann::json doc = nlohmann::json::parse(text);
  for (const auto& item : doc) {
    BenchRow row;
    row.n = item.at("n").get<int>();
    row.query_id = item.at("query").get<std::string>();
    row.criterion = item.at("criterion").get<std::string>();
    row.median_wall_us = item.at("median_wall_us").get<std::int64_t>();
    row.requests = item.at("requests").get<std::uint64_t>();
    row.results = item.at("results").get<std::uint64_t>();
    row.pruned_links = item.at("pruned_links").get<std::uint64_t>();
    row.peak_store = item.at("peak_store").get<std::uint64_t>();
    row.timed_out = item.at("timed_out").get<bool>();
    row.note = item.at("note").get<std::string>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

BenchReport report_from_csv(const std::string& text) {
  BenchReport report;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ConfigError("unexpected csv header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 10) throw ConfigError("malformed csv row: " + line);
    BenchRow row;
    row.n = std::stoi(fields[0]);
    row.query_id = fields[1];
    row.criterion = fields[2];
    row.median_wall_us = std::stoll(fields[3]);
    row.requests = std::stoull(fields[4]);
    row.results = std::stoull(fields[5]);
    row.pruned_links = std::stoull(fields[6]);
    row.peak_store = std::stoull(fields[7]);
    row.timed_out = fields[8] == "true";
    row.note = fields[9];
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ltqp
