#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "pbi/distribution.hpp"
#include "pbi/errors.hpp"
#include "pbi/rational.hpp"
#include "pbi/scheme.hpp"

namespace pbi {

// A parsed publication dataset plus where it came from.
struct Dataset {
  std::vector<PublicationRecord> records;
  std::string source;
};

enum class DatasetFormat { csv, jsonl };
enum class ReportFormat { csv, json };

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

inline std::string trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
    text.remove_suffix(1);
  return std::string(text);
}

inline CitationCount parse_citations(const std::string& value,
                                     std::size_t line) {
  std::string trimmed = trim(value);
  if (trimmed.empty() || trimmed[0] == '-')
    throw ValidationError("citations must be a non-negative integer, got '" +
                              value + "'",
                          line);
  CitationCount result = 0;
  for (char c : trimmed) {
    if (c < '0' || c > '9')
      throw ValidationError("citations must be a non-negative integer, got '" +
                                value + "'",
                            line);
    CitationCount next = result * 10 + static_cast<CitationCount>(c - '0');
    if (next / 10 != result)
      throw ValidationError("citation count out of range: '" + value + "'",
                            line);
    result = next;
  }
  return result;
}

inline void warn(std::ostream* warnings, const std::string& message) {
  if (warnings != nullptr) *warnings << "warning: " << message << "\n";
}

inline void validate_record(const PublicationRecord& record,
                            std::unordered_set<std::string>& seen,
                            std::size_t line) {
  if (record.pub_id.empty()) throw ValidationError("empty pub_id", line);
  if (record.field_id.empty()) throw ValidationError("empty field_id", line);
  if (!seen.insert(record.pub_id).second)
    throw DuplicatePublication("line " + std::to_string(line) +
                               ": duplicate pub_id '" + record.pub_id + "'");
}

inline Dataset parse_publications_csv(std::istream& input,
                                      const std::string& source,
                                      std::ostream* warnings) {
  Dataset dataset;
  dataset.source = source;
  std::string line;
  if (!std::getline(input, line))
    throw ParseError("missing CSV header" +
                     (source.empty() ? "" : " in " + source));
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::optional<std::size_t> pub_col, field_col, citations_col, groups_col;
  std::vector<std::string> header = split(line, ',');
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name = trim(header[c]);
    if (name == "pub_id")
      pub_col = c;
    else if (name == "field_id")
      field_col = c;
    else if (name == "citations")
      citations_col = c;
    else if (name == "groups")
      groups_col = c;
    else
      warn(warnings, "ignoring unknown column '" + name + "'");
  }
  if (!pub_col || !field_col || !citations_col)
    throw ParseError("header must name pub_id, field_id and citations", 1);

  std::unordered_set<std::string> seen;
  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_number);
    PublicationRecord record;
    record.pub_id = fields[*pub_col];
    record.field_id = fields[*field_col];
    record.citations = parse_citations(fields[*citations_col], line_number);
    if (groups_col && !fields[*groups_col].empty()) {
      for (const std::string& group : split(fields[*groups_col], ';')) {
        if (!group.empty()) record.groups.insert(group);
      }
    }
    validate_record(record, seen, line_number);
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

inline Dataset parse_publications_jsonl(std::istream& input,
                                        const std::string& source,
                                        std::ostream* warnings) {
  Dataset dataset;
  dataset.source = source;
  std::unordered_set<std::string> seen;
  std::set<std::string> warned_keys;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& error) {
      throw ParseError(std::string("invalid JSON: ") + error.what(),
                       line_number);
    }
    if (!object.is_object())
      throw ParseError("expected a JSON object per line", line_number);

    PublicationRecord record;
    for (const auto& [key, value] : object.items()) {
      if (key == "pub_id" && value.is_string())
        record.pub_id = value.get<std::string>();
      else if (key == "field_id" && value.is_string())
        record.field_id = value.get<std::string>();
      else if (key == "citations") {
        if (value.is_number_unsigned())
          record.citations = value.get<std::uint64_t>();
        else
          throw ValidationError(
              "citations must be a non-negative integer, got " + value.dump(),
              line_number);
      } else if (key == "groups") {
        if (!value.is_array())
          throw ValidationError("groups must be an array of strings",
                                line_number);
        for (const auto& group : value) {
          if (!group.is_string())
            throw ValidationError("groups must be an array of strings",
                                  line_number);
          record.groups.insert(group.get<std::string>());
        }
      } else if (key == "pub_id" || key == "field_id") {
        throw ValidationError(key + " must be a string", line_number);
      } else if (warned_keys.insert(key).second) {
        warn(warnings, "ignoring unknown key '" + key + "'");
      }
    }
    if (!object.contains("citations"))
      throw ValidationError("missing citations", line_number);
    validate_record(record, seen, line_number);
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

}  // namespace detail

// Parses a publications stream. CSV needs a header naming pub_id, field_id,
// citations and optionally groups (semicolon-separated); JSONL uses the same
// keys with groups as an array. Unknown columns/keys are ignored with a
// warning.
inline Dataset parse_publications(std::istream& input, DatasetFormat format,
                                  const std::string& source = "",
                                  std::ostream* warnings = nullptr) {
  return format == DatasetFormat::csv
             ? detail::parse_publications_csv(input, source, warnings)
             : detail::parse_publications_jsonl(input, source, warnings);
}

// Merges a memberships CSV (header pub_id,group_id) into the dataset by
// union. Rows naming unknown publications are skipped with a warning.
inline void merge_memberships(Dataset& dataset, std::istream& input,
                              std::ostream* warnings = nullptr) {
  std::unordered_map<std::string_view, PublicationRecord*> by_id;
  by_id.reserve(dataset.records.size());
  for (PublicationRecord& record : dataset.records)
    by_id.emplace(record.pub_id, &record);

  std::string line;
  if (!std::getline(input, line)) throw ParseError("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = detail::split(line, ',');
  std::optional<std::size_t> pub_col, group_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name = detail::trim(header[c]);
    if (name == "pub_id")
      pub_col = c;
    else if (name == "group_id")
      group_col = c;
    else
      detail::warn(warnings, "ignoring unknown column '" + name + "'");
  }
  if (!pub_col || !group_col)
    throw ParseError("header must name pub_id and group_id", 1);

  std::size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split(line, ',');
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_number);
    const std::string& pub_id = fields[*pub_col];
    const std::string& group_id = fields[*group_col];
    if (group_id.empty())
      throw ValidationError("empty group_id", line_number);
    auto it = by_id.find(pub_id);
    if (it == by_id.end()) {
      detail::warn(warnings, "membership for unknown publication '" + pub_id +
                                 "' skipped");
      continue;
    }
    it->second->groups.insert(group_id);
  }
}

// Serializes records back to the publications CSV format.
inline std::string write_publications_csv(const Dataset& dataset) {
  std::string out = "pub_id,field_id,citations,groups\n";
  for (const PublicationRecord& record : dataset.records) {
    out += record.pub_id;
    out += ',';
    out += record.field_id;
    out += ',';
    out += std::to_string(record.citations);
    out += ',';
    bool first = true;
    for (const std::string& group : record.groups) {
      if (!first) out += ';';
      out += group;
      first = false;
    }
    out += '\n';
  }
  return out;
}

// Parses a scheme JSON document: {"name": ..., "boundaries": [...],
// "scores": [...]} with boundaries/scores given as exact strings ("9/10",
// "0.95") or JSON integers. Floating-point numbers are rejected: they cannot
// represent the boundaries exactly.
inline PercentileScheme parse_scheme_file(std::istream& input) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& error) {
    throw ParseError(std::string("invalid scheme JSON: ") + error.what());
  }
  if (!document.is_object())
    throw ParseError("scheme file must hold a JSON object");
  if (!document.contains("name") || !document["name"].is_string())
    throw ParseError("scheme file must name the scheme");

  auto parse_values = [&](const char* key) {
    if (!document.contains(key) || !document[key].is_array())
      throw ParseError(std::string("scheme file must hold a '") + key +
                       "' array");
    std::vector<Rational> values;
    for (const auto& element : document[key]) {
      if (element.is_string()) {
        try {
          values.push_back(Rational::parse(element.get<std::string>()));
        } catch (const std::exception&) {
          throw ParseError("invalid rational '" + element.get<std::string>() +
                           "' in '" + key + "'");
        }
      } else if (element.is_number_integer() && !element.is_number_float()) {
        values.push_back(Rational(element.get<long long>()));
      } else {
        throw ParseError(std::string("'") + key +
                         "' entries must be exact rational strings");
      }
    }
    return values;
  };

  PercentileScheme scheme;
  scheme.name = document["name"].get<std::string>();
  scheme.boundaries = parse_values("boundaries");
  scheme.scores = parse_values("scores");
  validate(scheme);
  return scheme;
}

// Serializes a scheme losslessly (exact fraction strings).
inline std::string scheme_to_json(const PercentileScheme& scheme) {
  nlohmann::ordered_json document;
  document["name"] = scheme.name;
  document["boundaries"] = nlohmann::json::array();
  for (const Rational& boundary : scheme.boundaries)
    document["boundaries"].push_back(boundary.to_fraction_string());
  document["scores"] = nlohmann::json::array();
  for (const Rational& score : scheme.scores)
    document["scores"].push_back(score.to_fraction_string());
  return document.dump(2) + "\n";
}

// One report cell: an exact rational (optionally rendered as a percentage,
// optionally with a "<name>_exact" sibling), an integer, or plain text.
struct ReportCell {
  enum class Kind { rational, integer, text };

  Kind kind = Kind::text;
  Rational value;
  bool percent = false;
  bool with_exact = false;
  std::uint64_t integer_value = 0;
  std::string text_value;

  static ReportCell rational(Rational r, bool percent = false,
                             bool with_exact = true) {
    ReportCell cell;
    cell.kind = Kind::rational;
    cell.value = std::move(r);
    cell.percent = percent;
    cell.with_exact = with_exact;
    return cell;
  }
  static ReportCell integer(std::uint64_t n) {
    ReportCell cell;
    cell.kind = Kind::integer;
    cell.integer_value = n;
    return cell;
  }
  static ReportCell text(std::string s) {
    ReportCell cell;
    cell.kind = Kind::text;
    cell.text_value = std::move(s);
    return cell;
  }
};

// One output row. The decimal rendering of a value flagged percent is
// value x 100 (the unit column then reads "%"); the _exact sibling always
// carries the raw fraction.
struct ReportRow {
  std::string subject_type;  // "publication" | "group" | "field"
  std::string subject;
  std::string approach;
  std::string scheme;
  std::string unit;  // "%" when percent-rendered, "" otherwise
  std::optional<Rational> value;
  std::vector<std::pair<std::string, ReportCell>> extras;
};

namespace detail {

inline std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string escaped = "\"";
  for (char c : cell) {
    if (c == '"') escaped += "\"\"";
    else escaped.push_back(c);
  }
  escaped.push_back('"');
  return escaped;
}

inline std::string render_decimal(const Rational& value, bool percent,
                                  unsigned precision) {
  return (percent ? value * Rational(100) : value)
      .to_decimal_string(precision);
}

// Stable union of extra column names in first-seen order.
inline std::vector<std::string> extra_columns(std::span<const ReportRow> rows) {
  std::vector<std::string> columns;
  std::unordered_set<std::string> known;
  for (const ReportRow& row : rows) {
    for (const auto& [name, cell] : row.extras) {
      if (known.insert(name).second) {
        columns.push_back(name);
        if (cell.kind == ReportCell::Kind::rational && cell.with_exact) {
          columns.push_back(name + "_exact");
          known.insert(columns.back());
        }
      }
    }
  }
  return columns;
}

}  // namespace detail

// Serializes rows with a deterministic column order. Rationals are rendered
// half-even at `precision` decimal places next to their exact num/den form.
inline std::string write_report(std::span<const ReportRow> rows,
                                ReportFormat format, unsigned precision) {
  std::vector<std::string> extra_names = detail::extra_columns(rows);

  auto cells_for = [&](const ReportRow& row) {
    std::vector<std::pair<std::string, std::string>> cells;
    cells.emplace_back("subject_type", row.subject_type);
    cells.emplace_back("subject", row.subject);
    cells.emplace_back("approach", row.approach);
    cells.emplace_back("scheme", row.scheme);
    cells.emplace_back("unit", row.unit);
    bool percent = row.unit == "%";
    cells.emplace_back(
        "value", row.value
                     ? detail::render_decimal(*row.value, percent, precision)
                     : "");
    cells.emplace_back("value_exact",
                       row.value ? row.value->to_fraction_string() : "");
    std::map<std::string, const ReportCell*> present;
    for (const auto& [name, cell] : row.extras) present.emplace(name, &cell);
    for (const std::string& name : extra_names) {
      if (name.size() > 6 && name.ends_with("_exact") &&
          present.count(name.substr(0, name.size() - 6))) {
        const ReportCell* cell = present[name.substr(0, name.size() - 6)];
        cells.emplace_back(name, cell->kind == ReportCell::Kind::rational &&
                                         cell->with_exact
                                     ? cell->value.to_fraction_string()
                                     : "");
        continue;
      }
      auto it = present.find(name);
      if (it == present.end()) {
        cells.emplace_back(name, "");
        continue;
      }
      const ReportCell& cell = *it->second;
      switch (cell.kind) {
        case ReportCell::Kind::rational:
          cells.emplace_back(name, detail::render_decimal(
                                       cell.value, cell.percent, precision));
          break;
        case ReportCell::Kind::integer:
          cells.emplace_back(name, std::to_string(cell.integer_value));
          break;
        case ReportCell::Kind::text:
          cells.emplace_back(name, cell.text_value);
          break;
      }
    }
    return cells;
  };

  if (format == ReportFormat::csv) {
    std::string out;
    out += "subject_type,subject,approach,scheme,unit,value,value_exact";
    for (const std::string& name : extra_names) {
      out += ',';
      out += detail::csv_escape(name);
    }
    out += '\n';
    for (const ReportRow& row : rows) {
      bool first = true;
      for (const auto& [name, text] : cells_for(row)) {
        if (!first) out += ',';
        out += detail::csv_escape(text);
        first = false;
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json document;
  document["precision"] = precision;
  document["rows"] = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json object;
    for (const auto& [name, text] : cells_for(row)) object[name] = text;
    document["rows"].push_back(std::move(object));
  }
  return document.dump(2) + "\n";
}

}  // namespace pbi
