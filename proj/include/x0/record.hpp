#pragma once

// On-disk records of computed plane models and the directory cache that holds them.
//
// One JSON document per level, file name P_<N>.json. Coefficients are decimal
// strings. Example:
//
//   {
//     "schema_version": 1,
//     "N": 2,
//     "bidegree": [1, 3],
//     "psi": 3,
//     "degree_f": 1,
//     "terms": [{"a": 0, "b": 3, "c": "16777216"}, ...],
//     "verification_precision": 76,
//     "normalization_fallback": false,
//     "tool_version": "0.1.0",
//     "timestamp": "2026-10-16T12:00:00Z"
//   }

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "bivariate.hpp"
#include "errors.hpp"
#include "minpoly.hpp"

#ifndef X0MODEL_VERSION
#define X0MODEL_VERSION "0.1.0"
#endif

namespace x0
{

inline constexpr int kRecordSchemaVersion = 1;
inline constexpr const char *kCacheDirEnv = "X0MODEL_CACHE_DIR";

class CorruptRecord : public Error
{
public:
    using Error::Error;
};

struct PolynomialRecord
{
    int schema_version = kRecordSchemaVersion;
    std::int64_t N = 0;
    /// Sorted by (b, a) descending.
    std::vector<Term> terms;
    Bidegree bidegree;
    std::int64_t psi = 0;
    std::int64_t degree_f = 0;
    /// Absolute q-exponent up to which P(j, f) = 0 was checked.
    std::int64_t verification_precision = 0;
    bool normalization_fallback = false;
    std::string tool_version = X0MODEL_VERSION;
    std::string timestamp;

    BivariatePoly to_poly() const { return BivariatePoly(N, terms); }

    friend bool operator==(const PolynomialRecord &, const PolynomialRecord &) = default;
};

inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline PolynomialRecord make_record(const BivariatePoly &P, std::int64_t verification_precision,
                                    bool normalization_fallback = false)
{
    PolynomialRecord r;
    r.N = P.level();
    r.terms = P.terms_by_y_desc();
    r.bidegree = {P.x_degree(), P.y_degree()};
    r.psi = dedekind_psi(r.N);
    r.degree_f = degree_f(r.N);
    r.verification_precision = verification_precision;
    r.normalization_fallback = normalization_fallback;
    r.timestamp = utc_timestamp();
    return r;
}

inline nlohmann::json to_json(const PolynomialRecord &r)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : r.terms) {
        terms.push_back({{"a", t.m.a}, {"b", t.m.b}, {"c", t.c.get_str()}});
    }
    return {
        {"schema_version", r.schema_version},
        {"N", r.N},
        {"bidegree", {r.bidegree.dx, r.bidegree.dy}},
        {"psi", r.psi},
        {"degree_f", r.degree_f},
        {"terms", terms},
        {"verification_precision", r.verification_precision},
        {"normalization_fallback", r.normalization_fallback},
        {"tool_version", r.tool_version},
        {"timestamp", r.timestamp},
    };
}

inline PolynomialRecord record_from_json(const nlohmann::json &j)
{
    try {
        PolynomialRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kRecordSchemaVersion) {
            throw CorruptRecord("unsupported schema_version " + std::to_string(r.schema_version));
        }
        r.N = j.at("N").get<std::int64_t>();
        const auto &bd = j.at("bidegree");
        r.bidegree = {bd.at(0).get<std::int64_t>(), bd.at(1).get<std::int64_t>()};
        r.psi = j.at("psi").get<std::int64_t>();
        r.degree_f = j.at("degree_f").get<std::int64_t>();
        for (const auto &t : j.at("terms")) {
            Integer c;
            if (c.set_str(t.at("c").get<std::string>(), 10) != 0) {
                throw CorruptRecord("coefficient is not a decimal integer");
            }
            if (sgn(c) == 0) {
                throw CorruptRecord("zero coefficient in term list");
            }
            r.terms.push_back({{t.at("a").get<int>(), t.at("b").get<int>()}, std::move(c)});
        }
        if (r.terms.empty()) {
            throw CorruptRecord("empty term list");
        }
        r.terms = r.to_poly().terms_by_y_desc();
        r.verification_precision = j.at("verification_precision").get<std::int64_t>();
        r.normalization_fallback = j.value("normalization_fallback", false);
        r.tool_version = j.at("tool_version").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw CorruptRecord(std::string("malformed record: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw CorruptRecord(std::string("malformed record: ") + e.what());
    }
}

inline std::string serialize(const PolynomialRecord &r) { return to_json(r).dump(2) + "\n"; }

inline PolynomialRecord parse_record(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw CorruptRecord(std::string("invalid JSON: ") + e.what());
    }
    return record_from_json(j);
}

/// Cache directory: explicit flag, then $X0MODEL_CACHE_DIR, then
/// $XDG_CACHE_HOME/x0model, then $HOME/.cache/x0model.
inline std::filesystem::path resolve_cache_dir(const std::optional<std::string> &flag)
{
    if (flag && !flag->empty()) {
        return *flag;
    }
    if (const char *env = std::getenv(kCacheDirEnv); env && *env) {
        return env;
    }
    if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        return std::filesystem::path(xdg) / "x0model";
    }
    if (const char *home = std::getenv("HOME"); home && *home) {
        return std::filesystem::path(home) / ".cache" / "x0model";
    }
    return ".x0model-cache";
}

class RecordCache
{
public:
    explicit RecordCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path &directory() const { return dir_; }

    std::filesystem::path path_for(std::int64_t N) const { return dir_ / ("P_" + std::to_string(N) + ".json"); }

    /// nullopt if no record exists; CorruptRecord if one exists but cannot be read.
    std::optional<PolynomialRecord> load(std::int64_t N) const
    {
        const auto path = path_for(N);
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            return std::nullopt;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        PolynomialRecord r = parse_record(buf.str());
        if (r.N != N) {
            throw CorruptRecord(path.string() + " holds level " + std::to_string(r.N));
        }
        return r;
    }

    /// Writes to a temporary file in the same directory, then renames over the target.
    void store(const PolynomialRecord &r) const
    {
        std::filesystem::create_directories(dir_);
        const auto target = path_for(r.N);
        auto tmp = target;
        tmp += ".tmp." + std::to_string(static_cast<long long>(::getpid())) + "." +
               std::to_string(std::chrono::steady_clock::now().time_since_epoch().count());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw Error("cannot write " + tmp.string());
            }
            out << serialize(r);
            out.flush();
            if (!out) {
                throw Error("write failed for " + tmp.string());
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec) {
            std::filesystem::remove(tmp);
            throw Error("cannot rename " + tmp.string() + ": " + ec.message());
        }
    }

private:
    std::filesystem::path dir_;
};

} // namespace x0
