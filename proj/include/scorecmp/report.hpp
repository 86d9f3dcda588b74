#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scorecmp/predint.hpp"
#include "scorecmp/protocols.hpp"
#include "scorecmp/sig_tests.hpp"

// Structured command reports. The canonical serialization is pretty-printed
// JSON with schema_version "1"; numbers keep full precision so a report can
// be replayed and compared bit-for-bit. Markdown table renderers mirror the
// summary layouts used in the human output.

namespace scorecmp {

struct InputDigest {
    std::string path;
    std::string digest;  // "fnv1a64:<16 hex digits>", non-cryptographic
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
InputDigest digest_file(const std::string& path);

struct Report {
    std::string command;
    std::vector<InputDigest> inputs;
    std::optional<std::uint64_t> seed;
    nlohmann::json results;

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

nlohmann::json to_json(const SigTestResult& r);
nlohmann::json to_json(const ProtocolReport& r);
nlohmann::json to_json(const DistComparison& c);
nlohmann::json to_json(const LinearFit& f);
nlohmann::json to_json(const IntervalSummary& s);

std::string markdown_protocol_table(const ProtocolReport& r);
std::string markdown_sweep_table(const std::vector<SweepPoint>& pct,
                                 const std::vector<MeanDeltaPoint>& deltas);
std::string markdown_predint_table(const IntervalSummary& s);

}  // namespace scorecmp
