#pragma once

// Result persistence.  Every output file embeds the hash of the parameter
// section of its run config, and the hash of its own payload bytes, so a
// verifier can re-derive both from the file alone.
//
//   .jsonl   header line {schema, timestamp, config, config_hash, runtime}
//            payload lines (one JSON object each)
//            footer line {payload_hash, payload_lines}
//   .csv     "# weylab schema=1 config_hash=..." first line,
//            payload = every non-# line, "# payload_hash=..." last line
//   .svg     plot content, then a trailing
//            "<!-- weylab schema=1 config_hash=... payload_hash=... -->"
//            comment whose payload hash covers everything before it.
//
// Hashes are FNV-1a 64 over raw bytes, rendered as 16 hex digits.  Runtime
// metadata (timestamp, output dir, parallelism) stays outside the hashed
// regions: reruns with the same parameters and seed must produce
// byte-identical payloads no matter where or how wide they ran.

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylab/kernel_decomp.hpp"
#include "weylab/level_set.hpp"
#include "weylab/mean_value.hpp"
#include "weylab/weyl_bounds.hpp"

namespace weylab::out {

using json = nlohmann::ordered_json;

inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string(buf);
}

inline std::string config_hash(const json& params) { return hash_hex(params.dump()); }

inline std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// record serializers
// ---------------------------------------------------------------------------

inline json to_json(const ScanRecord& r) {
    return json{{"d", r.d},
                {"N", r.N},
                {"q", r.q},
                {"a", r.a},
                {"max_modulus", r.max_modulus},
                {"ratio", r.ratio},
                {"x_star", r.x_star},
                {"in_window", r.in_window}};
}

inline json to_json(const ScanSummary& s) {
    return json{{"kind", "summary"},
                {"record_count", s.record_count},
                {"max_ratio", s.max_ratio},
                {"argmax_q", s.argmax_q},
                {"argmax_a", s.argmax_a},
                {"histogram", json{{"bin_width", s.histogram.bin_width},
                                   {"counts", s.histogram.counts}}}};
}

inline json to_json(const MeanValueResult& r) {
    json j{{"d", r.d},
           {"N", r.N},
           {"p", r.p},
           {"method", method_name(r.method)},
           {"float_value", r.float_value}};
    j["exact_value"] = r.has_exact ? json(r.exact_value.str()) : json(nullptr);
    if (r.method == MeanValueMethod::monte_carlo) {
        j["stderr"] = r.stderr_value;
        j["seed"] = r.seed;
    }
    return j;
}

inline json to_json(const ExponentFit& f) {
    json pts = json::array();
    for (const auto& pt : f.points)
        pts.push_back(json{{"N", pt.N},
                           {"S", pt.S.str()},
                           {"logN", pt.logN},
                           {"logS", pt.logS},
                           {"residual", pt.residual}});
    return json{{"d", f.d},
                {"p", f.p},
                {"slope", f.slope},
                {"intercept", f.intercept},
                {"conjectured_slope", f.conjectured_slope},
                {"points", pts}};
}

inline json to_json(const Lemma21Report& r) {
    return json{{"kind", "phi_hat_decay"},
                {"Q", r.Q},
                {"k_max", r.k_max},
                {"prime_count", r.prime_count},
                {"sup_ratio", r.sup_ratio},
                {"argmax_k", r.argmax_k}};
}

inline json to_json(const PhiHat0Row& r) {
    return json{{"kind", "phi_hat0"},
                {"Q", r.Q},
                {"prime_count", r.prime_count},
                {"phi_hat0", r.phi_hat0},
                {"ratio", r.ratio}};
}

inline json to_json(const Lemma22Report& r) {
    return json{{"kind", "k2q_hat_band"},
                {"Q", r.Q},
                {"n2_lo", r.n2_lo},
                {"n2_hi", r.n2_hi},
                {"prime_count", r.prime_count},
                {"sup_abs", r.sup_abs},
                {"ratio", r.ratio},
                {"argmax_n1", r.argmax_n1},
                {"argmax_n2", r.argmax_n2}};
}

inline json to_json(const LevelEntry& e) {
    return json{{"lambda", e.lambda},
                {"measure", e.est.measure},
                {"uncertainty", e.est.uncertainty},
                {"estimator", e.est.used == EstimatorKind::grid ? "grid" : "monte_carlo"},
                {"mc_fallback", e.est.mc_fallback},
                {"Mx", e.est.Mx},
                {"Mt", e.est.Mt},
                {"samples", e.est.samples},
                {"seed", e.est.seed}};
}

inline json to_json(const ChebyshevReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(json{{"lambda", e.lambda}, {"measure", e.measure}, {"ratio", e.ratio},
                               {"pass", e.pass}});
    return json{{"kind", "chebyshev"},
                {"max_ratio", r.max_ratio},
                {"all_pass", r.all_pass},
                {"entries", entries}};
}

inline json to_json(const DualityGridValues& v) {
    return json{{"measure", v.measure},
                {"lhs", v.lhs},
                {"mid", v.mid},
                {"rhs_re", v.rhs.real()},
                {"rhs_im", v.rhs.imag()}};
}

inline json to_json(const DualityReport& r) {
    return json{{"kind", "duality"},
                {"d", r.d},
                {"N", r.N},
                {"lambda", r.lambda},
                {"tol", r.tol},
                {"coarse", to_json(r.coarse)},
                {"fine", to_json(r.fine)},
                {"refined", to_json(r.refined)},
                {"lhs_ok", r.lhs_ok},
                {"pairing_ok", r.pairing_ok}};
}

// ---------------------------------------------------------------------------
// stamped file writers
// ---------------------------------------------------------------------------

struct RuntimeInfo {
    std::string out_dir;
    unsigned parallelism = 0;
};

inline void write_stamped_jsonl(const std::filesystem::path& path, const json& params,
                                const std::vector<json>& payload, const RuntimeInfo& runtime) {
    std::string payload_bytes;
    for (const json& line : payload) {
        payload_bytes += line.dump();
        payload_bytes += '\n';
    }
    json header{{"schema", 1},
                {"timestamp", iso_timestamp()},
                {"config", params},
                {"config_hash", config_hash(params)},
                {"runtime", json{{"out_dir", runtime.out_dir}, {"parallelism", runtime.parallelism}}}};
    json footer{{"payload_hash", hash_hex(payload_bytes)}, {"payload_lines", payload.size()}};
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << header.dump() << '\n' << payload_bytes << footer.dump() << '\n';
}

inline void write_stamped_csv(const std::filesystem::path& path, const json& params,
                              const std::string& header_row, const std::vector<std::string>& rows,
                              const std::vector<std::string>& trailer_comments = {}) {
    std::string payload_bytes = header_row + '\n';
    for (const std::string& r : rows) payload_bytes += r + '\n';
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << "# weylab schema=1 config_hash=" << config_hash(params) << '\n';
    f << payload_bytes;
    for (const std::string& c : trailer_comments) f << "# " << c << '\n';
    f << "# payload_hash=" << hash_hex(payload_bytes) << '\n';
}

inline void write_stamped_svg(const std::filesystem::path& path, const json& params,
                              const std::string& svg_content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << svg_content;
    f << "<!-- weylab schema=1 config_hash=" << config_hash(params)
      << " payload_hash=" << hash_hex(svg_content) << " -->\n";
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// Extract the payload byte region of a stamped .jsonl (for determinism
// comparisons): everything between the header and footer lines.
inline std::string jsonl_payload_region(const std::string& content) {
    std::size_t first_nl = content.find('\n');
    if (first_nl == std::string::npos) return {};
    std::size_t last_nl = content.rfind('\n', content.size() - 2);
    if (last_nl == std::string::npos || last_nl < first_nl) return {};
    return content.substr(first_nl + 1, last_nl - first_nl);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline VerifyResult verify_stamped_file(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::string ext = path.extension().string();
    if (ext == ".jsonl") {
        std::size_t first_nl = content.find('\n');
        if (first_nl == std::string::npos) return {false, "missing header line"};
        json header = json::parse(content.substr(0, first_nl), nullptr, false);
        if (header.is_discarded() || !header.contains("config") || !header.contains("config_hash"))
            return {false, "malformed header"};
        if (config_hash(header["config"]) != header["config_hash"].get<std::string>())
            return {false, "config hash mismatch"};
        std::size_t last_nl = content.rfind('\n', content.size() - 2);
        json footer = json::parse(content.substr(last_nl + 1), nullptr, false);
        if (footer.is_discarded() || !footer.contains("payload_hash"))
            return {false, "malformed footer"};
        std::string payload = jsonl_payload_region(content);
        if (hash_hex(payload) != footer["payload_hash"].get<std::string>())
            return {false, "payload hash mismatch"};
        return {true, ""};
    }
    if (ext == ".csv") {
        std::string payload;
        std::string stored_cfg, stored_payload;
        std::istringstream ss(content);
        std::string line;
        while (std::getline(ss, line)) {
            if (line.rfind("# weylab schema=", 0) == 0) {
                std::size_t pos = line.find("config_hash=");
                if (pos != std::string::npos) stored_cfg = line.substr(pos + 12, 16);
            } else if (line.rfind("# payload_hash=", 0) == 0) {
                stored_payload = line.substr(15, 16);
            } else if (!line.empty() && line[0] == '#') {
                continue;  // trailer comments stay outside the payload
            } else {
                payload += line + '\n';
            }
        }
        if (stored_cfg.empty()) return {false, "missing config hash comment"};
        if (stored_payload.empty()) return {false, "missing payload hash comment"};
        if (hash_hex(payload) != stored_payload) return {false, "payload hash mismatch"};
        return {true, ""};
    }
    if (ext == ".svg") {
        std::size_t marker = content.rfind("<!-- weylab schema=");
        if (marker == std::string::npos) return {false, "missing stamp comment"};
        std::string body = content.substr(0, marker);
        std::size_t pos = content.find("payload_hash=", marker);
        if (pos == std::string::npos) return {false, "missing payload hash"};
        std::string stored = content.substr(pos + 13, 16);
        if (hash_hex(body) != stored) return {false, "payload hash mismatch"};
        return {true, ""};
    }
    return {false, "unsupported extension " + ext};
}

}  // namespace weylab::out
