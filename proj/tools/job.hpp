#pragma once

// Job configuration for the command-line front end: raw flags, validation
// with aggregated errors, and the resolved inputs a command runs on.

#include "cache.hpp"

#include "splinter/catalog.hpp"

#include <cstdlib>
#include <variant>

namespace splinter::cli {

inline constexpr std::int64_t kMaxGrade = 40;

struct JobConfig {
    std::string command;  // roots, splint, fan, branch, affine-branch, strings, qdim, verify
    std::string action;   // splint: list | check
    std::string algebra;
    std::string splint;
    std::string weight;   // Dynkin labels "1,0"
    std::optional<std::int64_t> level;
    std::optional<std::int64_t> grade_max;
    std::string format = "text";
    std::string cache_dir;
    bool no_cache = false;
    bool oracle = false;
    std::string catalog;
    std::string identity = "all";
    std::string emit;
    std::int64_t probe_max = 3;
    int verbosity = 0;
};

struct Job {
    JobConfig cfg;
    std::vector<CatalogEntry> catalog;
    std::optional<RootSystem> rs;
    const CatalogEntry* entry = nullptr;
    Weight weight;
    std::int64_t grade_max = 0;
    std::vector<std::string> identities;
    ResultCache cache;
};

inline std::vector<std::int64_t> parse_labels(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InvalidInput("empty Dynkin label in \"" + text + "\"");
        item = item.substr(b, e - b + 1);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw InvalidInput("Dynkin label \"" + item + "\" is not an integer");
        if (v < 0) throw InvalidInput("Dynkin label " + item + " is negative (weights must be dominant)");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidInput("no Dynkin labels given");
    return out;
}

namespace detail {

struct Needs {
    bool algebra = false, splint = false, weight = false, level = false, grade = false;
};

inline std::optional<Needs> needs_of(const std::string& cmd) {
    if (cmd == "roots") return Needs{true, false, false, false, false};
    if (cmd == "splint") return Needs{};
    if (cmd == "fan") return Needs{false, true, false, false, false};
    if (cmd == "branch") return Needs{false, true, true, false, false};
    if (cmd == "affine-branch") return Needs{false, true, true, true, true};
    if (cmd == "strings" || cmd == "qdim") return Needs{true, false, true, true, true};
    if (cmd == "verify") return Needs{false, true, false, false, true};
    return std::nullopt;
}

}  // namespace detail

/// Checks every field before any computation; all problems are reported together.
inline std::variant<Job, std::vector<std::string>> validate(const JobConfig& cfg) {
    std::vector<std::string> errors;
    Job job;
    job.cfg = cfg;
    auto needs = detail::needs_of(cfg.command);
    if (!needs) return std::vector<std::string>{"unknown command \"" + cfg.command + "\""};
    if (cfg.command == "splint") {
        if (cfg.action != "list" && cfg.action != "check")
            errors.push_back("splint needs an action: list or check");
        if (cfg.action == "check") needs->splint = true;
    }
    if (cfg.format != "text" && cfg.format != "json") errors.push_back("--format must be text or json");

    try {
        job.catalog = cfg.catalog.empty() ? builtin_catalog() : load_catalog_file(cfg.catalog);
    } catch (const std::exception& ex) {
        errors.push_back(ex.what());
    }

    if (!cfg.algebra.empty()) {
        try {
            job.rs = build_root_system(cfg.algebra);
        } catch (const std::exception& ex) {
            errors.push_back("--algebra: " + std::string(ex.what()));
        }
    } else if (needs->algebra) {
        errors.push_back("--algebra is required for " + cfg.command);
    }

    if (needs->splint && cfg.splint.empty()) errors.push_back("--splint is required for " + cfg.command);
    if (!cfg.splint.empty() && (needs->splint || cfg.command == "splint")) {
        std::string known;
        for (const auto& e : job.catalog) known += (known.empty() ? "" : ", ") + e.splint.qualified_name();
        try {
            job.entry = find_splint(job.catalog, cfg.splint, cfg.algebra);
            if (!job.entry) {
                errors.push_back("unknown splint \"" + cfg.splint + "\"; catalog has: " + known);
            } else if (job.rs && job.rs->name() != job.entry->splint.ambient.name()) {
                errors.push_back("splint " + job.entry->splint.qualified_name() + " does not belong to " + job.rs->name());
            } else {
                job.rs = job.entry->splint.ambient;
            }
        } catch (const std::exception& ex) {
            errors.push_back("unknown splint \"" + cfg.splint + "\" (" + ex.what() + "); catalog has: " + known);
        }
    }

    if (needs->level) {
        if (!cfg.level) errors.push_back("--level is required for " + cfg.command);
        else if (*cfg.level < 0) errors.push_back("--level must be nonnegative");
    }
    if (needs->grade) {
        job.grade_max = cfg.grade_max.value_or(cfg.command == "verify" ? 4 : -1);
        if (job.grade_max < 0) errors.push_back("--grade-max is required for " + cfg.command);
        else if (job.grade_max > kMaxGrade) errors.push_back("--grade-max exceeds " + std::to_string(kMaxGrade));
    }
    if (needs->weight) {
        if (cfg.weight.empty()) {
            errors.push_back("--weight is required for " + cfg.command);
        } else {
            try {
                const auto labels = parse_labels(cfg.weight);
                if (job.rs) {
                    if (labels.size() != job.rs->rank())
                        errors.push_back("--weight needs " + std::to_string(job.rs->rank()) + " labels for " +
                                         job.rs->name());
                    else
                        job.weight = job.rs->from_dynkin(labels);
                }
            } catch (const std::exception& ex) {
                errors.push_back("--weight: " + std::string(ex.what()));
            }
        }
    }
    if (needs->level && cfg.level && *cfg.level >= 0 && job.rs && job.weight.size() == job.rs->dimension()) {
        if (!job.rs->is_simple()) {
            errors.push_back("affine commands need a simple algebra, got " + job.rs->name());
        } else if (job.rs->inner(job.weight, job.rs->highest_roots().front()) > *cfg.level) {
            errors.push_back("weight " + cfg.weight + " is not integrable at level " + std::to_string(*cfg.level));
        }
    }
    if (cfg.command == "verify") {
        static const std::vector<std::string> known{"denominator", "eq5", "eq6", "eq6-bare"};
        if (cfg.identity == "all")
            job.identities = {"denominator", "eq5", "eq6"};
        else if (std::find(known.begin(), known.end(), cfg.identity) != known.end())
            job.identities = {cfg.identity};
        else
            errors.push_back("--identity must be one of denominator, eq5, eq6, eq6-bare, all");
    }
    if (!cfg.emit.empty() && cfg.emit != "matrix") errors.push_back("--emit accepts only \"matrix\"");
    if (!cfg.emit.empty() && cfg.command != "strings") errors.push_back("--emit applies to strings only");
    if (cfg.probe_max < 0 || cfg.probe_max > 6) errors.push_back("--probe-max must lie in 0..6");

    if (!cfg.no_cache) {
        std::string dir = cfg.cache_dir;
        if (dir.empty())
            if (const char* env = std::getenv("SPLINTER_CACHE_DIR")) dir = env;
        if (!dir.empty()) job.cache = ResultCache(dir);
    }

    if (!errors.empty()) return errors;
    return job;
}

}  // namespace splinter::cli
