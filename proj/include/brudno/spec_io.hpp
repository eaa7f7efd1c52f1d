#pragma once
// JSON ingestion for shift specs and run configs.
//
// Shift spec schema:
//   { "group": "Z" | "Z2" | "Z3" | "H3",
//     "alphabet": k,
//     "zero_fill_safe": bool,
//     "forbidden": [ { "support": [[x...], ...], "letters": [a, ...] }, ... ] }
// Coordinate tuples must match the group arity (1, 2, 3, 3).
//
// Run config schema (all fields optional, defaults shown in README):
//   { "n_list": [...], "k_sweep": [...],
//     "sampler": {"kind": "...", "seed": s, "count": c, "period": p, "letter": a},
//     "budgets": {"enumeration_nodes": ..., "search_cap": ..., "exhaustive_words": ...,
//                 "max_tile_cells": ..., "center_scan": ...},
//     "dictionary_mode": "occurring" | "full-language",
//     "format": "csv" | "json" }

#include <fstream>
#include <variant>

#include <json.hpp>

#include "brudno.hpp"

namespace brudno {

using json = nlohmann::ordered_json;

template <ComputableGroup G>
ShiftSpec<G> shift_spec_from_json(const json& j) {
    ShiftSpec<G> spec;
    if (!j.contains("alphabet") || !j["alphabet"].is_number_unsigned() || j["alphabet"] == 0)
        throw validation_error("spec field 'alphabet' must be a positive integer");
    spec.alphabet = j["alphabet"].get<u32>();
    spec.zero_fill_safe = j.value("zero_fill_safe", true);
    if (j.contains("forbidden")) {
        if (!j["forbidden"].is_array()) throw validation_error("spec field 'forbidden' must be an array");
        for (const auto& f : j["forbidden"]) {
            if (!f.contains("support") || !f.contains("letters"))
                throw validation_error("forbidden pattern needs fields 'support' and 'letters'");
            std::vector<typename G::Element> cells;
            for (const auto& tuple : f["support"]) {
                std::vector<i64> coords;
                for (const auto& c : tuple) coords.push_back(c.get<i64>());
                cells.push_back(G::from_coords(coords));
            }
            if (cells.empty())
                throw validation_error("forbidden pattern field 'support' must be nonempty");
            std::vector<u32> letters;
            for (const auto& a : f["letters"]) {
                u32 v = a.get<u32>();
                if (v < 1 || v > spec.alphabet)
                    throw validation_error("forbidden pattern field 'letters' is outside the alphabet");
                letters.push_back(v);
            }
            spec.forbidden.push_back(make_pattern<G>(cells, letters));
        }
    }
    return spec;
}

using AnyShiftSpec =
    std::variant<ShiftSpec<Z>, ShiftSpec<Z2>, ShiftSpec<Z3>, ShiftSpec<Heisenberg>>;

inline AnyShiftSpec shift_spec_from_json_any(const json& j) {
    if (!j.contains("group") || !j["group"].is_string())
        throw validation_error("spec field 'group' must be one of Z, Z2, Z3, H3");
    std::string g = j["group"].get<std::string>();
    if (g == "Z") return shift_spec_from_json<Z>(j);
    if (g == "Z2") return shift_spec_from_json<Z2>(j);
    if (g == "Z3") return shift_spec_from_json<Z3>(j);
    if (g == "H3") return shift_spec_from_json<Heisenberg>(j);
    throw validation_error("spec field 'group' has unknown value '" + g + "'");
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("file '" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

inline AnyShiftSpec load_shift_spec(const std::string& path) {
    return shift_spec_from_json_any(load_json_file(path));
}

// --- run configuration ------------------------------------------------------

struct RunConfig {
    std::vector<u32> n_list{8, 16, 32, 64};
    std::vector<u32> k_sweep{2, 4, 8};
    SamplerConfig sampler;
    Budgets budgets;
    DictionaryMode mode = DictionaryMode::occurring;
    std::string format = "csv";
};

inline SamplerKind sampler_kind_from_string(const std::string& s) {
    if (s == "constant") return SamplerKind::constant;
    if (s == "periodic") return SamplerKind::periodic;
    if (s == "uniform-random") return SamplerKind::uniform_random;
    if (s == "greedy-admissible") return SamplerKind::greedy_admissible;
    throw validation_error("sampler field 'kind' has unknown value '" + s + "'");
}

inline RunConfig run_config_from_json(const json& j, RunConfig cfg = {}) {
    if (j.contains("n_list")) {
        cfg.n_list.clear();
        for (const auto& n : j["n_list"]) cfg.n_list.push_back(n.get<u32>());
    }
    if (cfg.n_list.empty()) throw validation_error("config field 'n_list' must be nonempty");
    if (j.contains("k_sweep")) {
        cfg.k_sweep.clear();
        for (const auto& k : j["k_sweep"]) cfg.k_sweep.push_back(k.get<u32>());
    }
    if (cfg.k_sweep.empty()) throw validation_error("config field 'k_sweep' must be nonempty");
    for (u32 v : cfg.n_list)
        if (v == 0) throw validation_error("config field 'n_list' entries must be >= 1");
    for (u32 v : cfg.k_sweep)
        if (v == 0) throw validation_error("config field 'k_sweep' entries must be >= 1");
    if (j.contains("sampler")) {
        const auto& s = j["sampler"];
        if (s.contains("kind")) cfg.sampler.kind = sampler_kind_from_string(s["kind"].get<std::string>());
        cfg.sampler.seed = s.value("seed", cfg.sampler.seed);
        cfg.sampler.count = s.value("count", cfg.sampler.count);
        cfg.sampler.period = s.value("period", cfg.sampler.period);
        cfg.sampler.letter = s.value("letter", cfg.sampler.letter);
        if (cfg.sampler.count == 0) throw validation_error("sampler field 'count' must be >= 1");
    }
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        cfg.budgets.enumeration_nodes = b.value("enumeration_nodes", cfg.budgets.enumeration_nodes);
        cfg.budgets.search_cap = b.value("search_cap", cfg.budgets.search_cap);
        cfg.budgets.exhaustive_words = b.value("exhaustive_words", cfg.budgets.exhaustive_words);
        cfg.budgets.max_tile_cells = b.value("max_tile_cells", cfg.budgets.max_tile_cells);
        cfg.budgets.center_scan = b.value("center_scan", cfg.budgets.center_scan);
        if (cfg.budgets.enumeration_nodes == 0 || cfg.budgets.search_cap == 0 ||
            cfg.budgets.max_tile_cells == 0)
            throw validation_error("config field 'budgets' entries must be positive");
    }
    if (j.contains("dictionary_mode")) {
        std::string m = j["dictionary_mode"].get<std::string>();
        if (m == "occurring") cfg.mode = DictionaryMode::occurring;
        else if (m == "full-language") cfg.mode = DictionaryMode::full_language;
        else throw validation_error("config field 'dictionary_mode' has unknown value '" + m + "'");
    }
    cfg.format = j.value("format", cfg.format);
    if (cfg.format != "csv" && cfg.format != "json")
        throw validation_error("config field 'format' must be 'csv' or 'json'");
    return cfg;
}

} // namespace brudno
