#pragma once

// On-disk result cache for affine characters. One file per result, named by
// the SHA-256 of the canonical request; format described in docs/cache-format.md.

#include "splinter/affine.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <random>

namespace splinter::cli {

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

class ResultCache {
public:
    ResultCache() = default;
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    [[nodiscard]] bool enabled() const { return !dir_.empty(); }

    static std::string affine_key(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
        return "affine_character\n" + rs.descriptor() + "\n" + mu.finite.str() + "\nlevel " +
               std::to_string(mu.level) + "\ncutoff " + std::to_string(cutoff);
    }

    std::optional<GradedCharacter> load(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        std::string line;
        if (!std::getline(in, line) || line != "splinter-cache 1") return std::nullopt;
        std::string stored_key, l;
        std::size_t key_lines = 0;
        if (!(in >> key_lines)) return std::nullopt;
        std::getline(in, l);
        for (std::size_t i = 0; i < key_lines; ++i) {
            if (!std::getline(in, l)) return std::nullopt;
            stored_key += (i ? "\n" : "") + l;
        }
        if (stored_key != key) return std::nullopt;
        std::int64_t cutoff = 0;
        std::size_t dim = 0;
        std::string tag;
        if (!(in >> tag >> cutoff) || tag != "cutoff") return std::nullopt;
        if (!(in >> tag >> dim) || tag != "dimension") return std::nullopt;
        GradedCharacter out(cutoff);
        for (std::int64_t n = 0; n <= cutoff; ++n) {
            std::int64_t grade = 0;
            std::size_t count = 0;
            if (!(in >> tag >> grade >> count) || tag != "layer" || grade != n) return std::nullopt;
            for (std::size_t t = 0; t < count; ++t) {
                Weight w(dim);
                std::string c;
                for (std::size_t i = 0; i < dim; ++i) {
                    if (!(in >> c)) return std::nullopt;
                    try {
                        w[i] = parse_rational(c);
                    } catch (const std::exception&) {
                        return std::nullopt;
                    }
                }
                std::int64_t m = 0;
                if (!(in >> m)) return std::nullopt;
                out.add(n, w, m);
            }
        }
        if (!(in >> tag) || tag != "end") return std::nullopt;
        return out;
    }

    void store(const std::string& key, const GradedCharacter& ch, std::size_t dim) const {
        if (!enabled()) return;
        std::filesystem::create_directories(dir_);
        std::ostringstream os;
        os << "splinter-cache 1\n";
        std::size_t key_lines = 1 + static_cast<std::size_t>(std::count(key.begin(), key.end(), '\n'));
        os << key_lines << "\n" << key << "\n";
        os << "cutoff " << ch.cutoff() << "\ndimension " << dim << "\n";
        for (std::int64_t n = 0; n <= ch.cutoff(); ++n) {
            os << "layer " << n << " " << ch.layer(n).size() << "\n";
            for (const auto& [w, m] : ch.layer(n).terms()) {
                for (std::size_t i = 0; i < w.size(); ++i) os << to_string(w[i]) << " ";
                os << m << "\n";
            }
        }
        os << "end\n";
        const auto target = path_for(key);
        std::random_device rd;
        const auto tmp = target.string() + ".tmp" + std::to_string(rd());
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << os.str();
            if (!out) return;
        }
        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    [[nodiscard]] std::filesystem::path path_for(const std::string& key) const {
        return dir_ / (sha256_hex(key) + ".txt");
    }

private:
    std::filesystem::path dir_;
};

inline GradedCharacter cached_affine_character(const ResultCache& cache, const RootSystem& rs, const AffineWeight& mu,
                                               std::int64_t cutoff) {
    const std::string key = ResultCache::affine_key(rs, mu, cutoff);
    if (auto hit = cache.load(key)) return *hit;
    GradedCharacter ch = affine_character(rs, mu, cutoff);
    cache.store(key, ch, rs.dimension());
    return ch;
}

}  // namespace splinter::cli
