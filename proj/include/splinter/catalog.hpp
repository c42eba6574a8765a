#pragma once

// Splint catalog: a JSON data file (see docs/splint-catalog.md) describing
// each splint by the images of every positive stem root, re-verified on load.

#include "splinter/splint.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace splinter {

struct CatalogEntry {
    Splint splint;
    SplintReport check;
};

/// Outcome of probing the stem-multiplicity branching rule against
/// character subtraction on all dominant weights with labels <= max_label.
struct Eq9Probe {
    bool applicable = true;
    std::size_t probes = 0;
    std::vector<std::int64_t> first_failure;  // Dynkin labels
};

namespace detail {

inline Embedding embedding_from_json(const nlohmann::json& j, const RootSystem& ambient) {
    RootSystem source = build_root_system(j.at("type").get<std::string>());
    const auto& coords = source.positive_root_coordinates();
    std::vector<std::optional<Weight>> images(coords.size());
    for (const auto& item : j.at("map")) {
        const auto root = item.at("root").get<std::vector<std::int64_t>>();
        const auto image = item.at("image").get<std::vector<std::int64_t>>();
        auto it = std::find(coords.begin(), coords.end(), root);
        if (it == coords.end())
            throw InvalidInput("catalog: [" + join_ints(root) + "] is not a positive root of " + source.name());
        if (image.size() != ambient.rank())
            throw InvalidInput("catalog: image [" + join_ints(image) + "] has wrong length for " + ambient.name());
        auto& slot = images[static_cast<std::size_t>(it - coords.begin())];
        if (slot) throw InvalidInput("catalog: root [" + join_ints(root) + "] listed twice");
        slot = ambient.from_simple_coordinates(image);
    }
    std::vector<Weight> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) throw InvalidInput("catalog: no image for root [" + join_ints(coords[i]) + "]");
        out.push_back(*images[i]);
    }
    return Embedding(std::move(source), ambient, std::move(out));
}

}  // namespace detail

inline std::vector<CatalogEntry> parse_catalog(const nlohmann::json& doc) {
    if (doc.value("format", "") != "splinter.splint-catalog")
        throw InvalidInput("catalog: missing or unknown \"format\" tag");
    std::vector<CatalogEntry> out;
    for (const auto& e : doc.at("splints")) {
        Splint s;
        s.name = e.at("name").get<std::string>();
        s.ambient = build_root_system(e.at("ambient").get<std::string>());
        s.phi1 = detail::embedding_from_json(e.at("phi1"), s.ambient);
        s.phi2 = detail::embedding_from_json(e.at("phi2"), s.ambient);
        s.correspondence = e.at("correspondence").get<std::vector<std::size_t>>();
        for (auto k : s.correspondence)
            if (k >= s.phi2.source().rank()) throw InvalidInput("catalog: correspondence index out of range");
        SplintReport rep = check_splint(s);
        out.push_back({std::move(s), std::move(rep)});
    }
    return out;
}

inline std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open catalog file " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput("catalog " + path + ": " + ex.what());
    }
    try {
        return parse_catalog(doc);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput("catalog " + path + ": " + ex.what());
    }
}

/// Shipped catalog (identical to data/splints.json). Roots are given in the
/// stem's simple-root coordinates, images in the ambient simple-root
/// coordinates (Bourbaki numbering).
inline constexpr const char* kBuiltinCatalog = R"json({
  "format": "splinter.splint-catalog",
  "version": 1,
  "splints": [
    {
      "name": "A2A2",
      "ambient": "G2",
      "phi1": {"type": "A2", "map": [
        {"root": [1, 0], "image": [0, 1]},
        {"root": [0, 1], "image": [3, 1]},
        {"root": [1, 1], "image": [3, 2]}]},
      "phi2": {"type": "A2", "map": [
        {"root": [1, 0], "image": [1, 0]},
        {"root": [0, 1], "image": [1, 1]},
        {"root": [1, 1], "image": [2, 1]}]},
      "correspondence": [0, 1]
    },
    {
      "name": "A1A1",
      "ambient": "B2",
      "phi1": {"type": "A1+A1", "map": [
        {"root": [1, 0], "image": [1, 0]},
        {"root": [0, 1], "image": [1, 2]}]},
      "phi2": {"type": "A1+A1", "map": [
        {"root": [1, 0], "image": [1, 1]},
        {"root": [0, 1], "image": [0, 1]}]},
      "correspondence": [0, 1]
    },
    {
      "name": "A1-A1A1",
      "ambient": "A2",
      "phi1": {"type": "A1", "map": [
        {"root": [1], "image": [1, 0]}]},
      "phi2": {"type": "A1+A1", "map": [
        {"root": [1, 0], "image": [1, 1]},
        {"root": [0, 1], "image": [0, 1]}]},
      "correspondence": [0, 1]
    }
  ]
})json";

inline const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto parsed = parse_catalog(nlohmann::json::parse(kBuiltinCatalog));
        for (const auto& e : parsed)
            if (!e.check.report.pass)
                throw ConsistencyError("built-in splint " + e.splint.qualified_name() + " fails verification: " +
                                       e.check.report.violations.front());
        return parsed;
    }();
    return entries;
}

/// Verified built-in splints of the given algebra; empty when none are known.
inline std::vector<Splint> splint_catalog(const RootSystem& rs) {
    std::vector<Splint> out;
    for (const auto& e : builtin_catalog())
        if (e.splint.ambient.name() == rs.name() && e.check.report.pass) out.push_back(e.splint);
    return out;
}

/// Looks up "G2:A2A2" or a bare "A2A2" (optionally restricted to `algebra`).
inline const CatalogEntry* find_splint(const std::vector<CatalogEntry>& catalog, const std::string& name,
                                       const std::string& algebra = "") {
    std::string amb = algebra, bare = name;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        amb = name.substr(0, colon);
        bare = name.substr(colon + 1);
    }
    std::string canon_amb;
    if (!amb.empty()) canon_amb = build_root_system(amb).name();
    for (const auto& e : catalog)
        if (e.splint.name == bare && (canon_amb.empty() || e.splint.ambient.name() == canon_amb)) return &e;
    return nullptr;
}

/// Compares both branching routes on every dominant weight with Dynkin
/// labels <= max_label.
inline Eq9Probe probe_eq9(const Splint& s, std::int64_t max_label) {
    Eq9Probe out;
    const RootSubsystem sub = subalgebra_of(s);
    const std::size_t r = s.ambient.rank();
    std::vector<std::int64_t> labels(r, 0);
    while (true) {
        ++out.probes;
        const Weight mu = s.ambient.from_dynkin(labels);
        BranchingTable via;
        bool ok = true;
        try {
            via = branch_via_splint(s, mu);
        } catch (const InvalidInput&) {
            ok = false;
        }
        if (ok) ok = via == branch_direct(s.ambient, sub, mu);
        if (!ok) {
            out.applicable = false;
            out.first_failure = labels;
            return out;
        }
        std::size_t k = 0;
        while (k < r && labels[k] == max_label) labels[k++] = 0;
        if (k == r) break;
        ++labels[k];
    }
    return out;
}

}  // namespace splinter
