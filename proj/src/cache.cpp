#include "strata/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace strata {

std::string presentation_hash(const IdealPresentation& pres) {
    std::string text = std::string(to_string(pres.family)) + "\n" + render_presentation(pres);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CacheRecord CacheRecord::from(const BettiVector& b, std::optional<std::string> hash) {
    CacheRecord r;
    r.family = b.family;
    r.ell = b.ell;
    r.dims = b.display_dims();
    r.method = b.method;
    r.truncated_at = b.truncated_at;
    r.presentation_hash = std::move(hash);
    return r;
}

nlohmann::ordered_json CacheRecord::to_json() const {
    nlohmann::ordered_json doc;
    doc["family"] = std::string(to_string(family));
    doc["ell"] = ell;
    doc["dims"] = dims;
    doc["method"] = std::string(to_string(method));
    doc["truncated_at"] = truncated_at ? nlohmann::ordered_json(*truncated_at) : nlohmann::ordered_json(nullptr);
    doc["tool_version"] = tool_version;
    doc["presentation_hash"] =
        presentation_hash ? nlohmann::ordered_json(*presentation_hash) : nlohmann::ordered_json(nullptr);
    return doc;
}

CacheRecord CacheRecord::from_json(const nlohmann::ordered_json& doc) {
    CacheRecord r;
    r.family = parse_family(doc.at("family").get<std::string>());
    r.ell = doc.at("ell").get<int>();
    r.dims = doc.at("dims").get<std::vector<std::uint64_t>>();
    r.method = parse_method(doc.at("method").get<std::string>());
    if (!doc.at("truncated_at").is_null()) {
        r.truncated_at = doc.at("truncated_at").get<int>();
    }
    r.tool_version = doc.at("tool_version").get<std::string>();
    if (!doc.at("presentation_hash").is_null()) {
        r.presentation_hash = doc.at("presentation_hash").get<std::string>();
    }
    return r;
}

std::filesystem::path ResultCache::path_for(Family family, int ell, Method method,
                                            std::optional<int> truncated_at) const {
    std::string name = std::string(to_string(family)) + "-" + std::to_string(ell) + "-" +
                       std::string(to_string(method)) +
                       (truncated_at ? "-d" + std::to_string(*truncated_at) : std::string()) + ".json";
    return dir_ / name;
}

std::optional<CacheRecord> ResultCache::get(Family family, int ell, Method method, std::optional<int> truncated_at,
                                            const std::optional<std::string>& expected_hash) const {
    std::ifstream in(path_for(family, ell, method, truncated_at));
    if (!in) {
        return std::nullopt;
    }
    try {
        auto doc = nlohmann::ordered_json::parse(in);
        CacheRecord r = CacheRecord::from_json(doc);
        if (r.family != family || r.ell != ell || r.method != method || r.truncated_at != truncated_at ||
            r.tool_version != kToolVersion || r.presentation_hash != expected_hash) {
            return std::nullopt;
        }
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string ResultCache::put(const CacheRecord& record) const {
    return write(path_for(record.family, record.ell, record.method, record.truncated_at), record.to_json());
}

nlohmann::ordered_json ReportRecord::to_json() const {
    nlohmann::ordered_json doc;
    doc["family"] = std::string(to_string(family));
    doc["ell"] = ell;
    doc["check"] = check;
    doc["degree_bound"] = degree_bound ? nlohmann::ordered_json(*degree_bound) : nlohmann::ordered_json(nullptr);
    doc["verdict"] = verdict;
    doc["detail"] = detail;
    doc["tool_version"] = tool_version;
    doc["presentation_hash"] = presentation_hash;
    return doc;
}

ReportRecord ReportRecord::from_json(const nlohmann::ordered_json& doc) {
    ReportRecord r;
    r.family = parse_family(doc.at("family").get<std::string>());
    r.ell = doc.at("ell").get<int>();
    r.check = doc.at("check").get<std::string>();
    if (!doc.at("degree_bound").is_null()) {
        r.degree_bound = doc.at("degree_bound").get<int>();
    }
    r.verdict = doc.at("verdict").get<std::string>();
    r.detail = doc.at("detail").get<std::string>();
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.presentation_hash = doc.at("presentation_hash").get<std::string>();
    return r;
}

std::filesystem::path ResultCache::report_path(Family family, int ell, const std::string& check,
                                               std::optional<int> degree_bound) const {
    std::string name = std::string(to_string(family)) + "-" + std::to_string(ell) + "-verify-" + check +
                       (degree_bound ? "-d" + std::to_string(*degree_bound) : std::string()) + ".json";
    return dir_ / name;
}

std::optional<ReportRecord> ResultCache::get_report(Family family, int ell, const std::string& check,
                                                    std::optional<int> degree_bound,
                                                    const std::string& expected_hash) const {
    std::ifstream in(report_path(family, ell, check, degree_bound));
    if (!in) {
        return std::nullopt;
    }
    try {
        ReportRecord r = ReportRecord::from_json(nlohmann::ordered_json::parse(in));
        if (r.family != family || r.ell != ell || r.check != check || r.degree_bound != degree_bound ||
            r.tool_version != kToolVersion || r.presentation_hash != expected_hash) {
            return std::nullopt;
        }
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string ResultCache::put_report(const ReportRecord& record) const {
    return write(report_path(record.family, record.ell, record.check, record.degree_bound), record.to_json());
}

std::string ResultCache::write(const std::filesystem::path& target, const nlohmann::ordered_json& doc) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        return "cannot create cache directory " + dir_.string() + ": " + ec.message();
    }
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            return "cannot write " + tmp.string();
        }
        out << doc.dump(2) << '\n';
        if (!out.flush()) {
            std::filesystem::remove(tmp, ec);
            return "cannot write " + tmp.string();
        }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        return "cannot rename into " + target.string();
    }
    return {};
}

} // namespace strata
