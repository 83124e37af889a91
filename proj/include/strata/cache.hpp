#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/graded_dimension.hpp"

namespace strata {

inline constexpr const char* kToolVersion = "1.0.0";

/// FNV-1a 64-bit of the rendered presentation, as 16 hex digits.
std::string presentation_hash(const IdealPresentation& pres);

/// One stored Betti vector. `dims` holds display dims (complex by complex degree).
struct CacheRecord {
    Family family = Family::real;
    int ell = 0;
    std::vector<std::uint64_t> dims;
    Method method = Method::rank;
    std::optional<int> truncated_at;
    std::string tool_version = kToolVersion;
    std::optional<std::string> presentation_hash;

    static CacheRecord from(const BettiVector& b, std::optional<std::string> hash);
    nlohmann::ordered_json to_json() const;
    static CacheRecord from_json(const nlohmann::ordered_json& doc);
    bool operator==(const CacheRecord&) const = default;
};

/// One stored verification verdict.
struct ReportRecord {
    Family family = Family::real;
    int ell = 0;
    std::string check;
    std::optional<int> degree_bound;
    std::string verdict;
    std::string detail;
    std::string tool_version = kToolVersion;
    std::string presentation_hash;

    nlohmann::ordered_json to_json() const;
    static ReportRecord from_json(const nlohmann::ordered_json& doc);
    bool operator==(const ReportRecord&) const = default;
};

/// Directory of JSON records, one file per (family, ell, method, truncation).
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(Family family, int ell, Method method, std::optional<int> truncated_at) const;

    /// A record is returned only if it parses, carries the current tool version
    /// and its presentation hash equals `expected_hash`.
    std::optional<CacheRecord> get(Family family, int ell, Method method, std::optional<int> truncated_at,
                                   const std::optional<std::string>& expected_hash) const;

    /// Writes through a temporary file and an atomic rename. Returns an error
    /// message on failure, empty on success.
    std::string put(const CacheRecord& record) const;

    std::filesystem::path report_path(Family family, int ell, const std::string& check,
                                      std::optional<int> degree_bound) const;
    std::optional<ReportRecord> get_report(Family family, int ell, const std::string& check,
                                           std::optional<int> degree_bound, const std::string& expected_hash) const;
    std::string put_report(const ReportRecord& record) const;

private:
    std::string write(const std::filesystem::path& target, const nlohmann::ordered_json& doc) const;

    std::filesystem::path dir_;
};

} // namespace strata
