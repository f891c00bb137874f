#include "dgafd/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

double parse_gas(std::string_view field, long line_no, std::string_view column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line_no, "column " + std::string(column) + ": '" + std::string(field) +
                                      "' is not a number");
    }
    if (!std::isfinite(value) || value < 0.0) {
        throw ParseError(line_no, "column " + std::string(column) + ": concentration must be a finite non-negative ppm value");
    }
    return value;
}

}  // namespace

bool Dataset::fully_labeled() const {
    for (const auto& s : samples) {
        if (!s.label) return false;
    }
    return true;
}

std::vector<FaultClass> Dataset::labels() const {
    std::vector<FaultClass> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.label) throw Error("sample '" + s.id + "' has no label");
        out.push_back(*s.label);
    }
    return out;
}

std::array<std::size_t, kNumFaultClasses> Dataset::class_counts() const {
    std::array<std::size_t, kNumFaultClasses> counts{};
    for (const auto& s : samples) {
        if (s.label) ++counts[static_cast<std::size_t>(index_of(*s.label))];
    }
    return counts;
}

Dataset parse_dataset(std::string_view text) {
    if (text.empty()) throw EmptyFile("dataset is empty");

    Dataset ds;
    ds.fingerprint = content_fingerprint(text);

    long line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = strip_cr(line);

        if (!header_seen) {
            if (line != kDatasetHeader) {
                throw ParseError(line_no, "header must be exactly '" + std::string(kDatasetHeader) + "'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;  // blank trailing lines are tolerated

        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            throw ParseError(line_no, "expected 7 comma-separated fields, got " +
                                          std::to_string(fields.size()));
        }
        GasSample s;
        s.id = std::string(fields[0]);
        s.h2 = parse_gas(fields[1], line_no, "h2");
        s.ch4 = parse_gas(fields[2], line_no, "ch4");
        s.c2h6 = parse_gas(fields[3], line_no, "c2h6");
        s.c2h4 = parse_gas(fields[4], line_no, "c2h4");
        s.c2h2 = parse_gas(fields[5], line_no, "c2h2");
        if (!fields[6].empty()) {
            const auto label = parse_fault_class(fields[6]);
            if (!label) {
                throw ParseError(line_no, "column label: '" + std::string(fields[6]) +
                                              "' is not one of PD,D1,D2,T1,T2,T3");
            }
            s.label = label;
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) throw EmptyFile("dataset has a header but no rows");
    return ds;
}

Dataset ingest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open dataset file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str());
}

std::string content_fingerprint(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(out);
}

}  // namespace dgafd
