#include "psl/scan_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psl/error.hpp"

namespace psl {
namespace {

std::uint64_t parse_u64(const std::string& text) {
    const u128 v = parse_u128(text);
    if (v >> 64 != 0) {
        throw invalid_argument("value does not fit in 64 bits: " + text);
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

void write_hits_csv(std::ostream& os, std::span<const PrimeHit> hits) {
    os << "m,k,q\n";
    for (const auto& h : hits) {
        os << h.m << ',' << h.k << ',' << to_string(h.q) << '\n';
    }
}

std::vector<PrimeHit> read_hits_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "m,k,q") {
        throw invalid_argument("hits file must start with header 'm,k,q'");
    }
    std::vector<PrimeHit> hits;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw invalid_argument("malformed hits row: " + line);
        }
        PrimeHit h;
        h.m = parse_u64(line.substr(0, c1));
        h.k = parse_u64(line.substr(c1 + 1, c2 - c1 - 1));
        h.q = parse_u128(line.substr(c2 + 1));
        if (h.k != hits.size() + 1 || (!hits.empty() && h.m <= hits.back().m)) {
            throw invalid_argument("hits must be numbered 1, 2, ... with increasing m: " + line);
        }
        hits.push_back(h);
    }
    return hits;
}

std::string checkpoint_to_json(const Checkpoint& checkpoint) {
    nlohmann::ordered_json j;
    j["variant"] = checkpoint.variant.to_string();
    j["n_last"] = std::to_string(checkpoint.n_last);
    j["accumulator"] = to_string(checkpoint.accumulator);
    j["hits_so_far"] = std::to_string(checkpoint.hits_so_far);
    j["digest"] = std::to_string(checkpoint.digest);
    return j.dump();
}

Checkpoint checkpoint_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    try {
        Checkpoint cp;
        cp.variant = SumVariant::parse(j.at("variant").get<std::string>());
        cp.n_last = parse_u64(j.at("n_last").get<std::string>());
        cp.accumulator = parse_u128(j.at("accumulator").get<std::string>());
        cp.hits_so_far = parse_u64(j.at("hits_so_far").get<std::string>());
        cp.digest = parse_u64(j.at("digest").get<std::string>());
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument(std::string("checkpoint is missing a field: ") + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw error("cannot open " + tmp.string() + " for writing");
        }
        out << contents;
        if (!out.flush()) {
            throw error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<PrimeHit> load_hits(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_hits_csv(in);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    return checkpoint_from_json(read_file(path));
}

}  // namespace psl
