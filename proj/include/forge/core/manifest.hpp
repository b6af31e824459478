#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/core/sample.hpp"

namespace forge {

inline constexpr int kManifestSchemaVersion = 1;

using TaskCounts = std::array<std::uint64_t, 5>;    // indexed by task_index()
using ShuffleMix = std::array<std::uint64_t, 4>;    // indexed by ShuffleVariant

enum class CorpusKind { Rgb, Rgbd };

struct CorpusEntry {
  std::string root;
  CorpusKind kind = CorpusKind::Rgb;
  double weight = 1.0;
  bool operator==(const CorpusEntry&) const = default;
};

struct ManifestHeader {
  int schema_version = kManifestSchemaVersion;
  std::uint64_t master_seed = 0;
  std::string corpus_fingerprint;
  std::vector<CorpusEntry> corpora;
  TaskCounts counts{};
  ShuffleMix shuffle_mix{};
  bool operator==(const ManifestHeader&) const = default;
};

struct Manifest {
  ManifestHeader header;
  std::vector<QASample> records;
};

nlohmann::json to_json(const QASample& sample);
/// Throws Error(ManifestUnreadable) with the record id on a malformed record.
QASample sample_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ManifestHeader& header);
ManifestHeader header_from_json(const nlohmann::json& j);

/// One compact JSON document per line; the first line holds {"header": ...}.
std::string serialize_record(const QASample& sample);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

/// Parses the manifest and checks that the record count matches the header.
/// Does not touch image files. Throws Error(ManifestUnreadable).
Manifest read_manifest(const std::filesystem::path& path);

/// Header counts recomputed from the records.
void recount(ManifestHeader& header, const std::vector<QASample>& records);

/// Resolves a record's image path against the manifest location.
std::filesystem::path image_path(const std::filesystem::path& manifest_path, const std::string& relative);

}  // namespace forge
