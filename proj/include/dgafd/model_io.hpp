#pragma once

#include <string>

#include "dgafd/emd.hpp"
#include "dgafd/eval.hpp"
#include "dgafd/hierarchy.hpp"
#include "dgafd/ranking.hpp"

namespace dgafd {

inline constexpr int kModelSchemaVersion = 1;

/// Everything needed to reproduce predictions: the ranking and window that
/// select features, the EMD settings, the three ensembles, and provenance
/// (training config + dataset fingerprint). Round-trips bit-exactly.
struct ModelArtifact {
    int schema_version = kModelSchemaVersion;
    SkewnessRanking ranking;
    FeatureWindow window;
    SiftConfig sift;
    EmdAxis emd_axis = EmdAxis::Column;
    TrainConfig train_config;
    std::string dataset_fingerprint;
    HierarchicalModel model;
};

std::string serialize_model(const ModelArtifact& artifact);

/// Throws VersionMismatch for unknown schema versions and CorruptArtifact for
/// unparseable or checksum-failing documents.
ModelArtifact deserialize_model(const std::string& text);

void save_model(const ModelArtifact& artifact, const std::string& path);
ModelArtifact load_model(const std::string& path);

/// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace dgafd
