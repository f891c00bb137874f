#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dgafd/fault.hpp"
#include "dgafd/features.hpp"

namespace dgafd {

/// Parsed dataset; row order is the file order and is preserved everywhere.
struct Dataset {
    std::vector<GasSample> samples;
    std::string fingerprint;  // content hash of the source bytes

    std::size_t size() const { return samples.size(); }
    bool fully_labeled() const;

    /// Labels of all rows; throws Error when any row is unlabeled.
    std::vector<FaultClass> labels() const;

    /// Count of rows per fault class (unlabeled rows are not counted).
    std::array<std::size_t, kNumFaultClasses> class_counts() const;
};

inline constexpr std::string_view kDatasetHeader = "id,h2,ch4,c2h6,c2h4,c2h2,label";

/// Parses CSV text with the exact header `id,h2,ch4,c2h6,c2h4,c2h2,label`.
/// Gases must be finite and non-negative; the label may be empty. Any
/// malformed row raises ParseError naming the line; empty input (or a file
/// with no data rows) raises EmptyFile.
Dataset parse_dataset(std::string_view text);

Dataset ingest(const std::string& path);

/// FNV-1a 64-bit hash, hex-encoded.
std::string content_fingerprint(std::string_view bytes);

}  // namespace dgafd
