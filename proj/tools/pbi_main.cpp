// Command line front end: score publications, evaluate research groups,
// audit whole fields for scheme bias, and report percentile thresholds.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbi/pbi.hpp"

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string memberships;
  std::string scheme_name = "top10";
  std::string scheme_file;
  std::string top_percent = "10";
  std::string approach = "fractional";
  std::string output;
  std::string format = "csv";
  unsigned precision = 4;
  std::string percentile = "0.9";
};

void add_common_options(CLI::App& cmd, Options& options) {
  cmd.add_option("--input", options.inputs,
                 "publications file (CSV, or JSONL by .jsonl/.ndjson "
                 "extension); repeatable")
      ->required();
  cmd.add_option("--memberships", options.memberships,
                 "memberships CSV (pub_id,group_id), merged by union");
  auto* scheme = cmd.add_option(
      "--scheme", options.scheme_name,
      "built-in scheme: top10 | r6 | topX (x from --top) | topX=<percent> "
      "[default: top10]");
  cmd.add_option("--scheme-file", options.scheme_file,
                 "scheme JSON file (name, boundaries, scores)")
      ->excludes(scheme);
  cmd.add_option("--top", options.top_percent,
                 "percent for the topX scheme, in (0,100) [default: 10]");
  cmd.add_option("--approach", options.approach,
                 "fractional | leydesdorff | nsb | pudovkin_garfield | "
                 "scimago | rousseau | schreiber | schreiber_inclusive | "
                 "cwts | all [default: fractional]");
  cmd.add_option("--output", options.output,
                 "output path [default: standard output]");
  cmd.add_option("--format", options.format, "csv | json [default: csv]")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--precision", options.precision,
                 "decimal places in rendered values [default: 4]")
      ->check(CLI::Range(1u, 40u));
}

pbi::Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return pbi::Rational::parse(text);
  } catch (const std::exception&) {
    throw pbi::ValidationError(std::string(flag) + ": invalid rational '" +
                               text + "'");
  }
}

pbi::PercentileScheme resolve_scheme(const Options& options) {
  if (!options.scheme_file.empty()) {
    std::ifstream input(options.scheme_file);
    if (!input)
      throw pbi::Error("cannot open scheme file '" + options.scheme_file + "'");
    return pbi::parse_scheme_file(input);
  }
  std::string name = options.scheme_name;
  std::string percent = options.top_percent;
  if (name.rfind("topX=", 0) == 0) {
    percent = name.substr(5);
    name = "topX";
  }
  if (name == "top10") return pbi::top_x_scheme(pbi::Rational(1, 10));
  if (name == "r6") return pbi::r6_scheme();
  if (name == "topX") {
    pbi::Rational value = parse_rational_flag(percent, "--top");
    if (!(pbi::Rational(0) < value && value < pbi::Rational(100)))
      throw pbi::ValidationError("--top must lie strictly between 0 and 100");
    return pbi::top_x_scheme(value / pbi::Rational(100));
  }
  throw pbi::ValidationError("unknown scheme '" + options.scheme_name +
                             "' (expected top10, r6, topX or topX=<percent>)");
}

std::vector<pbi::ApproachId> resolve_approaches(
    const Options& options, const pbi::PercentileScheme& scheme) {
  if (options.approach == "all") {
    std::vector<pbi::ApproachId> approaches;
    for (pbi::ApproachId approach : pbi::kAllApproaches) {
      if (!pbi::is_top_x(scheme) && pbi::approach_requires_top_x(approach)) {
        std::cerr << "warning: skipping " << pbi::to_string(approach)
                  << ": defined only for top-x% schemes\n";
        continue;
      }
      approaches.push_back(approach);
    }
    return approaches;
  }
  auto approach = pbi::approach_from_string(options.approach);
  if (!approach)
    throw pbi::ValidationError("unknown approach '" + options.approach + "'");
  if (pbi::approach_requires_top_x(*approach) && !pbi::is_top_x(scheme))
    throw pbi::ApproachSchemeMismatch(
        options.approach + " is defined only for top-x% schemes, not '" +
        scheme.name + "'");
  return {*approach};
}

pbi::Dataset load_dataset(const Options& options) {
  pbi::Dataset dataset;
  for (const std::string& path : options.inputs) {
    std::ifstream input(path);
    if (!input) throw pbi::Error("cannot open input '" + path + "'");
    std::string extension = std::filesystem::path(path).extension().string();
    pbi::DatasetFormat format =
        (extension == ".jsonl" || extension == ".ndjson")
            ? pbi::DatasetFormat::jsonl
            : pbi::DatasetFormat::csv;
    pbi::Dataset part = pbi::parse_publications(input, format, path, &std::cerr);
    dataset.records.insert(dataset.records.end(),
                           std::make_move_iterator(part.records.begin()),
                           std::make_move_iterator(part.records.end()));
    if (!dataset.source.empty()) dataset.source += ";";
    dataset.source += path;
  }
  if (!options.memberships.empty()) {
    std::ifstream input(options.memberships);
    if (!input)
      throw pbi::Error("cannot open memberships '" + options.memberships + "'");
    pbi::merge_memberships(dataset, input, &std::cerr);
  }
  return dataset;
}

int approach_order(const std::string& name) {
  for (std::size_t k = 0; k < pbi::kAllApproaches.size(); ++k) {
    if (pbi::to_string(pbi::kAllApproaches[k]) == name)
      return static_cast<int>(k);
  }
  return -1;
}

void sort_rows(std::vector<pbi::ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const pbi::ReportRow& a, const pbi::ReportRow& b) {
                     if (a.subject != b.subject) return a.subject < b.subject;
                     return approach_order(a.approach) <
                            approach_order(b.approach);
                   });
}

// Per-field CWTS calibrations, computed once per run.
std::map<std::string, pbi::CwtsCalibration> calibrate_fields(
    const std::map<std::string, pbi::CitationDistribution>& dists,
    const pbi::PercentileScheme& scheme) {
  std::map<std::string, pbi::CwtsCalibration> calibrations;
  pbi::Rational x = pbi::top_x_fraction(scheme);
  for (const auto& [field_id, dist] : dists)
    calibrations.emplace(field_id, pbi::cwts_calibrate(dist, x));
  return calibrations;
}

void append_cwts_extras(pbi::ReportRow& row,
                        const pbi::CwtsCalibration& calibration) {
  row.extras.emplace_back("threshold",
                          pbi::ReportCell::integer(calibration.threshold));
  row.extras.emplace_back("raw_share",
                          pbi::ReportCell::rational(calibration.raw_share));
  row.extras.emplace_back("factor",
                          pbi::ReportCell::rational(calibration.factor));
}

std::vector<pbi::ReportRow> cmd_score(
    const pbi::Dataset& dataset,
    const std::map<std::string, pbi::CitationDistribution>& dists,
    const pbi::PercentileScheme& scheme,
    const std::vector<pbi::ApproachId>& approaches) {
  bool wants_cwts = std::count(approaches.begin(), approaches.end(),
                               pbi::ApproachId::cwts) > 0;
  std::map<std::string, pbi::CwtsCalibration> calibrations;
  if (wants_cwts) calibrations = calibrate_fields(dists, scheme);

  std::vector<pbi::ReportRow> rows;
  rows.reserve(dataset.records.size() * approaches.size());
  for (const pbi::PublicationRecord& record : dataset.records) {
    const pbi::CitationDistribution& dist = dists.at(record.field_id);
    for (pbi::ApproachId approach : approaches) {
      pbi::ReportRow row;
      row.subject_type = "publication";
      row.subject = record.pub_id;
      row.approach = std::string(pbi::to_string(approach));
      row.scheme = scheme.name;
      row.extras.emplace_back("field", pbi::ReportCell::text(record.field_id));
      row.extras.emplace_back("citations",
                              pbi::ReportCell::integer(record.citations));
      switch (approach) {
        case pbi::ApproachId::fractional: {
          pbi::Score score = pbi::publication_score(dist, scheme,
                                                    record.citations);
          row.value = score.value;
          for (std::size_t k = 0; k < score.breakdown.size(); ++k) {
            row.extras.emplace_back(
                "breakdown_" + std::to_string(k + 1),
                pbi::ReportCell::rational(score.breakdown[k]));
          }
          break;
        }
        case pbi::ApproachId::leydesdorff:
          row.value = pbi::approach_publication_score(dist, scheme, approach,
                                                      record.citations);
          row.extras.emplace_back(
              "percentile",
              pbi::ReportCell::rational(
                  pbi::leydesdorff_percentile(dist, record.citations),
                  /*percent=*/true));
          break;
        case pbi::ApproachId::pudovkin_garfield:
          row.value = pbi::approach_publication_score(dist, scheme, approach,
                                                      record.citations);
          row.extras.emplace_back(
              "percentile",
              pbi::ReportCell::rational(
                  pbi::pudovkin_garfield_percentile(dist, record.citations),
                  /*percent=*/true));
          break;
        case pbi::ApproachId::cwts: {
          const pbi::CwtsCalibration& calibration =
              calibrations.at(record.field_id);
          row.value = record.citations >= calibration.threshold
                          ? calibration.factor
                          : pbi::Rational(0);
          append_cwts_extras(row, calibration);
          break;
        }
        default:
          row.value = pbi::approach_publication_score(dist, scheme, approach,
                                                      record.citations);
          break;
      }
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<pbi::ReportRow> cmd_evaluate(
    const pbi::Dataset& dataset,
    const std::map<std::string, pbi::CitationDistribution>& dists,
    const pbi::PercentileScheme& scheme,
    const std::vector<pbi::ApproachId>& approaches) {
  std::map<std::string, std::vector<pbi::PublicationRecord>> groups;
  for (const pbi::PublicationRecord& record : dataset.records) {
    for (const std::string& group : record.groups)
      groups[group].push_back(record);
  }
  if (groups.empty())
    std::cerr << "warning: dataset defines no group memberships\n";

  std::vector<pbi::ReportRow> rows;
  for (const auto& [group_id, members] : groups) {
    // Calibration columns are only meaningful when the group sits in one field.
    std::optional<std::string> single_field = members.front().field_id;
    for (const pbi::PublicationRecord& member : members) {
      if (member.field_id != *single_field) {
        single_field.reset();
        break;
      }
    }
    for (pbi::ApproachId approach : approaches) {
      pbi::ReportRow row;
      row.subject_type = "group";
      row.subject = group_id;
      row.approach = std::string(pbi::to_string(approach));
      row.scheme = scheme.name;
      row.value = pbi::legacy_group_indicator(members, dists, approach, scheme);
      row.extras.emplace_back("n_publications",
                              pbi::ReportCell::integer(members.size()));
      if (approach == pbi::ApproachId::cwts && single_field) {
        append_cwts_extras(
            row, pbi::cwts_calibrate(dists.at(*single_field),
                                     pbi::top_x_fraction(scheme)));
      }
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<pbi::ReportRow> cmd_audit(
    const pbi::Dataset& dataset,
    const std::map<std::string, pbi::CitationDistribution>& dists,
    const pbi::PercentileScheme& scheme,
    const std::vector<pbi::ApproachId>& approaches) {
  std::map<std::string, std::vector<pbi::PublicationRecord>> by_field;
  for (const pbi::PublicationRecord& record : dataset.records)
    by_field[record.field_id].push_back(record);

  bool percent = pbi::is_top_x(scheme);
  pbi::Rational target = pbi::expected_value(scheme);

  std::vector<pbi::ReportRow> rows;
  for (const auto& [field_id, dist] : dists) {
    for (pbi::ApproachId approach : approaches) {
      pbi::ReportRow row;
      row.subject_type = "field";
      row.subject = field_id;
      row.approach = std::string(pbi::to_string(approach));
      row.scheme = scheme.name;
      row.unit = percent ? "%" : "";
      pbi::Rational observed =
          approach == pbi::ApproachId::fractional
              ? pbi::field_audit(dist, scheme).observed
              : pbi::legacy_group_indicator(by_field.at(field_id), dists,
                                            approach, scheme);
      row.value = observed;
      row.extras.emplace_back("target",
                              pbi::ReportCell::rational(target, percent));
      row.extras.emplace_back(
          "deviation", pbi::ReportCell::rational(observed - target, percent));
      row.extras.emplace_back("n_publications",
                              pbi::ReportCell::integer(dist.total()));
      if (approach == pbi::ApproachId::cwts) {
        append_cwts_extras(
            row, pbi::cwts_calibrate(dist, pbi::top_x_fraction(scheme)));
      }
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<pbi::ReportRow> cmd_thresholds(
    const std::map<std::string, pbi::CitationDistribution>& dists,
    const pbi::Rational& percentile) {
  pbi::Rational tail = pbi::Rational(1) - percentile;
  std::vector<pbi::ReportRow> rows;
  for (const auto& [field_id, dist] : dists) {
    pbi::CitationCount threshold = dist.percentile_threshold(percentile);
    pbi::BandStats bands = dist.band_stats(threshold);
    pbi::CwtsCalibration calibration = pbi::cwts_calibrate(dist, tail);
    pbi::ReportRow row;
    row.subject_type = "field";
    row.subject = field_id;
    row.extras.emplace_back("percentile", pbi::ReportCell::rational(
                                              percentile, /*percent=*/true));
    row.extras.emplace_back("threshold", pbi::ReportCell::integer(threshold));
    row.extras.emplace_back(
        "share_below", pbi::ReportCell::rational(bands.below, /*percent=*/true));
    row.extras.emplace_back(
        "share_at", pbi::ReportCell::rational(bands.at, /*percent=*/true));
    row.extras.emplace_back(
        "share_above", pbi::ReportCell::rational(bands.above, /*percent=*/true));
    row.extras.emplace_back("cwts_threshold",
                            pbi::ReportCell::integer(calibration.threshold));
    row.extras.emplace_back("n_publications",
                            pbi::ReportCell::integer(dist.total()));
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  return rows;
}

void emit(const std::vector<pbi::ReportRow>& rows, const Options& options) {
  pbi::ReportFormat format = options.format == "json" ? pbi::ReportFormat::json
                                                      : pbi::ReportFormat::csv;
  std::string report = pbi::write_report(rows, format, options.precision);
  if (options.output.empty()) {
    std::cout << report;
    return;
  }
  std::ofstream out(options.output, std::ios::binary);
  if (!out) throw pbi::Error("cannot open output '" + options.output + "'");
  out << report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percentile-based citation indicators"};
  app.require_subcommand(1);

  Options options;
  CLI::App* score = app.add_subcommand(
      "score", "Per-publication scores under the selected approaches");
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Group indicators (average member score per approach)");
  CLI::App* audit = app.add_subcommand(
      "audit", "Whole-field indicator vs. the scheme target, per approach");
  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Percentile thresholds and at-threshold band shares");
  for (CLI::App* cmd : {score, evaluate, audit, thresholds})
    add_common_options(*cmd, options);
  thresholds->add_option(
      "--percentile", options.percentile,
      "threshold percentile as a fraction in (0,1) [default: 0.9]");

  try {
    app.parse(argc, argv);

    pbi::Dataset dataset = load_dataset(options);
    auto dists = pbi::build_distributions(dataset.records);

    std::vector<pbi::ReportRow> rows;
    if (thresholds->parsed()) {
      pbi::Rational percentile =
          parse_rational_flag(options.percentile, "--percentile");
      if (!(pbi::Rational(0) < percentile && percentile < pbi::Rational(1)))
        throw pbi::ValidationError(
            "--percentile must lie strictly between 0 and 1");
      rows = cmd_thresholds(dists, percentile);
    } else {
      pbi::PercentileScheme scheme = resolve_scheme(options);
      pbi::validate(scheme);
      std::vector<pbi::ApproachId> approaches =
          resolve_approaches(options, scheme);
      if (score->parsed())
        rows = cmd_score(dataset, dists, scheme, approaches);
      else if (evaluate->parsed())
        rows = cmd_evaluate(dataset, dists, scheme, approaches);
      else
        rows = cmd_audit(dataset, dists, scheme, approaches);
    }
    emit(rows, options);
    return 0;
  } catch (const CLI::ParseError& error) {
    return app.exit(error);
  } catch (const std::exception& error) {
    std::cerr << "pbi: " << error.what() << "\n";
    return 1;
  }
}
