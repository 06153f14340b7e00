#pragma once

// Front and reference CSV files and the on-disk study layout:
//
//   <root>/<algorithm>/<problem>/M<objectives>/run<k>.csv
//   <root>/_reference/<problem>/M<objectives>.csv
//
// Front files hold a header row f1,...,fM and one objective vector per line.
// Reference files use the same format followed by two rows tagged #ideal and
// #nadir in column 0.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "prank/aggregation.hpp"
#include "prank/core.hpp"

namespace prank {

namespace fs = std::filesystem;

// Shortest-enough decimal form: 17 significant digits always round-trips.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw error(errc::invalid_parameter, "cannot format number");
  return std::string(buf, ptr);
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view field, const std::string& source, std::size_t line, std::size_t column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw error(errc::parse_error, source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                       ": not a number: '" + std::string(field) + "'");
  }
  return v;
}

struct ParsedCsv {
  std::size_t columns = 0;
  std::vector<ObjectiveVector> rows;
  std::map<std::string, ObjectiveVector> tagged;
};

inline ParsedCsv parse_objective_csv(std::istream& in, const std::string& source, bool allow_tags) {
  ParsedCsv out;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      header_seen = true;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (trim(fields[i]) != "f" + std::to_string(i + 1)) {
          throw error(errc::parse_error, source + ":" + std::to_string(line_no) + ":" + std::to_string(i + 1) +
                                             ": header must be f1,...,fM");
        }
      }
      out.columns = fields.size();
      continue;
    }
    std::size_t first = 0;
    std::string tag;
    if (!fields.empty() && !trim(fields[0]).empty() && trim(fields[0]).front() == '#') {
      if (!allow_tags) {
        throw error(errc::parse_error, source + ":" + std::to_string(line_no) + ":1: tagged row in a front file");
      }
      tag = std::string(trim(fields[0]));
      first = 1;
    } else if (!out.tagged.empty()) {
      throw error(errc::parse_error, source + ":" + std::to_string(line_no) + ":1: point row after tagged rows");
    }
    if (fields.size() - first != out.columns) {
      throw error(errc::parse_error, source + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(out.columns) + " values, got " +
                                         std::to_string(fields.size() - first));
    }
    ObjectiveVector v;
    for (std::size_t i = first; i < fields.size(); ++i) v.push_back(parse_number(fields[i], source, line_no, i + 1));
    if (tag.empty()) {
      out.rows.push_back(std::move(v));
    } else {
      out.tagged[tag] = std::move(v);
    }
  }
  if (!header_seen) throw error(errc::parse_error, source + ": empty file");
  return out;
}

inline std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open " + path.string());
  return in;
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw error(errc::io_error, "write failed for " + path.string());
}

inline std::string header_row(std::size_t m) {
  std::string s;
  for (std::size_t i = 0; i < m; ++i) s += (i ? ",f" : "f") + std::to_string(i + 1);
  return s + "\n";
}

inline std::string point_row(const ObjectiveVector& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += format_double(p[i]);
  }
  return s + "\n";
}

}  // namespace detail

inline std::vector<ObjectiveVector> parse_front_csv(std::istream& in, const std::string& source = "<stream>") {
  auto parsed = detail::parse_objective_csv(in, source, false);
  return std::move(parsed.rows);
}

inline ReferenceSet parse_reference_csv(std::istream& in, const std::string& source = "<stream>") {
  auto parsed = detail::parse_objective_csv(in, source, true);
  ReferenceSet ref;
  ref.points = std::move(parsed.rows);
  auto ideal = parsed.tagged.find("#ideal");
  auto nadir = parsed.tagged.find("#nadir");
  if (ideal == parsed.tagged.end() || nadir == parsed.tagged.end()) {
    throw error(errc::parse_error, source + ": reference file needs #ideal and #nadir rows");
  }
  ref.ideal = ideal->second;
  ref.nadir = nadir->second;
  if (ref.points.size() == 1) ref.notes.push_back("singleton_reference");
  return ref;
}

inline std::string front_csv(const std::vector<ObjectiveVector>& points) {
  std::string s = detail::header_row(points.empty() ? 0 : points.front().size());
  for (const auto& p : points) s += detail::point_row(p);
  return s;
}

inline std::string reference_csv(const ReferenceSet& ref) {
  std::string s = front_csv(ref.points);
  s += "#ideal," + detail::point_row(ref.ideal);
  s += "#nadir," + detail::point_row(ref.nadir);
  return s;
}

inline fs::path front_path(const fs::path& root, const Front& f) {
  return root / f.algorithm_id / f.problem_id / ("M" + std::to_string(f.objective_count())) /
         ("run" + std::to_string(f.run_index) + ".csv");
}

inline fs::path reference_path(const fs::path& root, const CellKey& key) {
  return root / "_reference" / key.problem / ("M" + std::to_string(key.objectives) + ".csv");
}

inline void write_study(const fs::path& root, const Study& study) {
  for (const auto& [key, fronts] : study.fronts) {
    for (const auto& f : fronts) detail::write_text(front_path(root, f), front_csv(f.points));
  }
  for (const auto& [key, ref] : study.references) detail::write_text(reference_path(root, key), reference_csv(ref));
}

namespace detail {

inline std::vector<fs::path> sorted_children(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (directories ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
  }
  if (ec) throw error(errc::io_error, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

// Parses the number after a fixed prefix ("M5" -> 5, "run12.csv" -> 12).
inline std::optional<std::size_t> suffix_number(std::string_view name, std::string_view prefix,
                                                std::string_view suffix = "") {
  if (name.size() <= prefix.size() + suffix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
  if (name.substr(name.size() - suffix.size()) != suffix) return std::nullopt;
  const auto digits = name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return v;
}

inline std::vector<ObjectiveVector> load_points(const fs::path& path) {
  auto in = open_input(path);
  return parse_front_csv(in, path.string());
}

}  // namespace detail

inline ReferenceSet load_reference(const fs::path& path) {
  auto in = detail::open_input(path);
  return parse_reference_csv(in, path.string());
}

// Reads every front under root. Unless allow_missing, any (algorithm,
// problem, M) cell or run absent for some algorithm is an error; with it, the
// layout is still the full union and run_study drops incomplete cells.
inline Study load_study(const fs::path& root, bool allow_missing = false) {
  if (!fs::is_directory(root)) throw error(errc::io_error, "data root " + root.string() + " is not a directory");
  Study study;
  std::set<std::string> problems;
  std::set<std::size_t> objective_counts;
  std::size_t max_run = 0;
  for (const auto& alg_dir : detail::sorted_children(root, true)) {
    const auto algorithm = alg_dir.filename().string();
    if (algorithm.front() == '_') continue;
    study.layout.algorithms.push_back(algorithm);
    for (const auto& problem_dir : detail::sorted_children(alg_dir, true)) {
      const auto problem = problem_dir.filename().string();
      for (const auto& m_dir : detail::sorted_children(problem_dir, true)) {
        const auto m = detail::suffix_number(m_dir.filename().string(), "M");
        if (!m || *m == 0) throw error(errc::parse_error, m_dir.string() + ": expected M<objectives>");
        problems.insert(problem);
        objective_counts.insert(*m);
        auto& fronts = study.fronts[CellKey{problem, *m}];
        for (const auto& file : detail::sorted_children(m_dir, false)) {
          const auto run = detail::suffix_number(file.filename().string(), "run", ".csv");
          if (!run || *run == 0) continue;
          Front f{detail::load_points(file), algorithm, problem, *run};
          if (f.points.empty()) throw error(errc::empty_front, file.string());
          validate_front(f);
          if (f.objective_count() != *m) {
            throw error(errc::dimension_mismatch, file.string() + ": " + std::to_string(f.objective_count()) +
                                                      " columns under M" + std::to_string(*m));
          }
          max_run = std::max(max_run, *run);
          fronts.push_back(std::move(f));
        }
      }
    }
  }
  if (study.layout.algorithms.empty()) throw error(errc::grid_incomplete, "no algorithm directories under " + root.string());
  study.layout.problems.assign(problems.begin(), problems.end());
  study.layout.objective_counts.assign(objective_counts.begin(), objective_counts.end());
  study.layout.runs = max_run;

  for (auto& [key, fronts] : study.fronts) {
    std::sort(fronts.begin(), fronts.end(), [&](const Front& a, const Front& b) {
      auto pos = [&](const std::string& id) {
        return std::find(study.layout.algorithms.begin(), study.layout.algorithms.end(), id);
      };
      return std::pair(pos(a.algorithm_id), a.run_index) < std::pair(pos(b.algorithm_id), b.run_index);
    });
  }

  if (!allow_missing) {
    for (const auto& p : study.layout.problems) {
      for (auto m : study.layout.objective_counts) {
        const CellKey key{p, m};
        const auto& fronts = study.fronts[key];
        for (const auto& a : study.layout.algorithms) {
          std::set<std::size_t> runs;
          for (const auto& f : fronts) {
            if (f.algorithm_id == a) runs.insert(f.run_index);
          }
          if (runs.empty()) throw error(errc::grid_incomplete, "no runs of " + a + " for " + cell_label(key));
          for (std::size_t r = 1; r <= study.layout.runs; ++r) {
            if (!runs.count(r)) {
              throw error(errc::missing_run, a + "/" + cell_label(key) + "/run" + std::to_string(r));
            }
          }
        }
      }
    }
  }

  const auto ref_root = root / "_reference";
  if (fs::is_directory(ref_root)) {
    for (const auto& problem_dir : detail::sorted_children(ref_root, true)) {
      for (const auto& file : detail::sorted_children(problem_dir, false)) {
        const auto m = detail::suffix_number(file.filename().string(), "M", ".csv");
        if (!m) continue;
        ReferenceSet ref = load_reference(file);
        validate_reference(ref);
        if (ref.objective_count() != *m) {
          throw error(errc::dimension_mismatch, file.string() + ": reference has " +
                                                    std::to_string(ref.objective_count()) + " objectives");
        }
        study.references[CellKey{problem_dir.filename().string(), *m}] = std::move(ref);
      }
    }
  }
  for (auto it = study.fronts.begin(); it != study.fronts.end();) {
    it = it->second.empty() ? study.fronts.erase(it) : std::next(it);
  }
  return study;
}

}  // namespace prank
