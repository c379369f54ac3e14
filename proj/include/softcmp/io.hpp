#pragma once

// File formats: CSV datasets (with an optional ground-truth label column) and
// the versioned clustering JSON exchanged by the CLI tools.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "softcmp/clusterers.hpp"
#include "softcmp/core.hpp"
#include "softcmp/errors.hpp"

namespace softcmp {

inline constexpr int kClusteringFormatVersion = 1;
inline constexpr const char* kClusteringFormatName = "softcmp-clustering";

// --- CSV datasets -----------------------------------------------------------

struct LoadedDataset {
  Dataset data;
  std::vector<std::string> featureNames;
  std::optional<HardClustering> groundTruth;
  std::vector<std::string> classNames;  // label strings in first-appearance order
};

struct LoadOptions {
  std::string labelColumn;  // empty = all columns are features
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

inline std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// Reads a header-first CSV of numeric features. When `labelColumn` names a
// column, its values become the ground-truth hard clustering.
inline LoadedDataset load_dataset(const std::string& path, const LoadOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, path + ": empty file");
  const std::vector<std::string> header = detail::split_csv_line(line);

  std::ptrdiff_t labelIdx = -1;
  LoadedDataset out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = detail::trimmed(header[i]);
    if (!opt.labelColumn.empty() && name == opt.labelColumn) {
      if (labelIdx >= 0) throw Error(Errc::ParseError, path + ": duplicate label column " + name);
      labelIdx = static_cast<std::ptrdiff_t>(i);
    } else {
      out.featureNames.push_back(name);
    }
  }
  if (!opt.labelColumn.empty() && labelIdx < 0)
    throw Error(Errc::ParseError, path + ": no column named " + opt.labelColumn);
  if (out.featureNames.empty()) throw Error(Errc::ParseError, path + ": no feature columns");

  std::vector<std::uint32_t> labels;
  std::size_t rowNo = 1;
  while (std::getline(in, line)) {
    ++rowNo;
    if (detail::trimmed(line).empty()) continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw Error(Errc::ParseError, path + ": row " + std::to_string(rowNo) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string cell = detail::trimmed(cells[i]);
      if (static_cast<std::ptrdiff_t>(i) == labelIdx) {
        std::uint32_t lab = 0;
        for (; lab < out.classNames.size(); ++lab)
          if (out.classNames[lab] == cell) break;
        if (lab == out.classNames.size()) out.classNames.push_back(cell);
        labels.push_back(lab);
      } else {
        double v = 0.0;
        const char* b = cell.data();
        const auto [p, ec] = std::from_chars(b, b + cell.size(), v);
        if (ec != std::errc() || p != b + cell.size())
          throw Error(Errc::NonNumericFeature, path + ": row " + std::to_string(rowNo) +
                                                   ", column " + detail::trimmed(header[i]) +
                                                   ": not a number: '" + cell + "'");
        out.data.values.push_back(v);
      }
    }
    ++out.data.n;
  }
  out.data.dim = out.featureNames.size();
  if (out.data.n == 0) throw Error(Errc::ParseError, path + ": no data rows");
  if (labelIdx >= 0) {
    if (out.classNames.size() > kMaxClusters)
      throw Error(Errc::DegenerateData, path + ": more than 64 distinct labels");
    out.groundTruth = HardClustering(Frame(out.classNames.size()), std::move(labels));
    out.groundTruth->frame.labels = out.classNames;
  }
  return out;
}

// --- clustering JSON ----------------------------------------------------------
//
// {"format": "softcmp-clustering", "version": 1,
//  "clusters": ["c0", ...],
//  "objects": [{"focal": [{"set": [0, 1], "mass": 0.4}, ...]}, ...]}

inline nlohmann::json clustering_to_json(const SoftClustering& m) {
  nlohmann::json j;
  j["format"] = kClusteringFormatName;
  j["version"] = kClusteringFormatVersion;
  j["kind"] = kind_name(classify(m));
  j["clusters"] = m.frame().labels;
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& mf : m.masses()) {
    nlohmann::json focal = nlohmann::json::array();
    for (const auto& [set, mass] : mf.focal()) {
      nlohmann::json entry;
      std::vector<std::size_t> idx;
      for (std::uint64_t rem = set; rem;) {
        idx.push_back(static_cast<std::size_t>(std::countr_zero(rem)));
        rem &= rem - 1;
      }
      entry["set"] = idx;
      entry["mass"] = mass;
      focal.push_back(std::move(entry));
    }
    objects.push_back(nlohmann::json{{"focal", std::move(focal)}});
  }
  j["objects"] = std::move(objects);
  return j;
}

inline void write_clustering(const SoftClustering& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << clustering_to_json(m).dump(2) << '\n';
}

inline SoftClustering clustering_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
      j["format"].get<std::string>() != kClusteringFormatName)
    throw Error(Errc::SchemaError, "not a clustering file: missing format tag");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kClusteringFormatVersion)
    throw Error(Errc::SchemaError, "unsupported clustering file version");
  if (!j.contains("clusters") || !j["clusters"].is_array() || j["clusters"].empty())
    throw Error(Errc::SchemaError, "clusters must be a nonempty array of names");
  if (!j.contains("objects") || !j["objects"].is_array())
    throw Error(Errc::SchemaError, "objects must be an array");

  std::vector<std::string> names;
  for (const auto& c : j["clusters"]) {
    if (!c.is_string()) throw Error(Errc::SchemaError, "cluster names must be strings");
    names.push_back(c.get<std::string>());
  }
  Frame frame(std::move(names));
  const std::size_t k = frame.size();

  std::vector<std::vector<MassFunction::Entry>> raw;
  raw.reserve(j["objects"].size());
  for (const auto& obj : j["objects"]) {
    if (!obj.is_object() || !obj.contains("focal") || !obj["focal"].is_array())
      throw Error(Errc::SchemaError,
                  "object " + std::to_string(raw.size()) + ": needs a focal array");
    std::vector<MassFunction::Entry> entries;
    for (const auto& e : obj["focal"]) {
      if (!e.is_object() || !e.contains("set") || !e["set"].is_array() || !e.contains("mass") ||
          !e["mass"].is_number())
        throw Error(Errc::SchemaError, "object " + std::to_string(raw.size()) +
                                           ": focal entries need a set array and a mass number");
      std::uint64_t mask = 0;
      for (const auto& idx : e["set"]) {
        if (!idx.is_number_unsigned() || idx.get<std::uint64_t>() >= k)
          throw Error(Errc::SchemaError, "object " + std::to_string(raw.size()) +
                                             ": set member outside 0.." + std::to_string(k - 1));
        mask |= std::uint64_t{1} << idx.get<std::uint64_t>();
      }
      entries.emplace_back(mask, e["mass"].get<double>());
    }
    raw.push_back(std::move(entries));
  }
  try {
    return validate_soft_clustering(std::move(frame), std::move(raw));
  } catch (const Error& err) {
    throw Error(Errc::ValidationError, err.what());
  }
}

inline SoftClustering read_clustering(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  try {
    return clustering_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace softcmp
