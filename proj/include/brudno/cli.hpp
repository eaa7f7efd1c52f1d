#pragma once
// Command-line surface. Every table the CLI prints is assembled from library
// calls; no computation lives here. Exit codes: 0 success, 1 validation
// error, 2 search/enumeration budget exhausted.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "extension.hpp"
#include "spec_io.hpp"

namespace brudno {

namespace cli_detail {

inline std::string fmt6(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << x;
    return os.str();
}

// Runs fn on the box monotiling of the named group.
template <class Fn>
void with_group_tiling(const std::string& name, Fn&& fn) {
    if (name == "Z") fn(ZdMonotiling<1>{});
    else if (name == "Z2") fn(ZdMonotiling<2>{});
    else if (name == "Z3") fn(ZdMonotiling<3>{});
    else if (name == "H3") fn(H3Monotiling{});
    else throw validation_error("flag '--group' must be one of Z, Z2, Z3, H3");
}

template <class G>
auto box_tiling_for_spec() {
    if constexpr (std::is_same_v<G, Z>) return ZdMonotiling<1>{};
    else if constexpr (std::is_same_v<G, Z2>) return ZdMonotiling<2>{};
    else if constexpr (std::is_same_v<G, Z3>) return ZdMonotiling<3>{};
    else return H3Monotiling{};
}

inline std::string count_repr(const EntropyEstimate& est) {
    if (est.exact_count) return std::to_string(*est.exact_count);
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << "~2^" << est.log2_count;
    return os.str();
}

inline const char* sampler_kind_name(SamplerKind k) {
    switch (k) {
        case SamplerKind::constant: return "constant";
        case SamplerKind::periodic: return "periodic";
        case SamplerKind::uniform_random: return "uniform-random";
        case SamplerKind::greedy_admissible: return "greedy-admissible";
    }
    return "?";
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"computable Folner monotilings, subshift entropy and tiling-dictionary compression"};
    app.require_subcommand(1);

    // codec
    auto* codec = app.add_subcommand("codec", "prefix-free integer codec passthrough");
    codec->require_subcommand(1);
    u64 hat_value = 0;
    std::string hat_bits;
    auto* hat_enc = codec->add_subcommand("hat-encode", "print the self-delimiting code of N");
    hat_enc->add_option("N", hat_value, "nonnegative integer")->required();
    auto* hat_dec = codec->add_subcommand("hat-decode", "decode the leading hat code of BITS");
    hat_dec->add_option("BITS", hat_bits, "ASCII bit string")->required();

    // tiling check / density
    auto* tiling_cmd = app.add_subcommand("tiling", "monotiling diagnostics");
    tiling_cmd->require_subcommand(1);
    std::string group_name = "Z";
    u32 tile_n = 1, tile_k = 1;
    u64 window_size = 1000;
    auto* check_cmd = tiling_cmd->add_subcommand("check", "finite-window disjoint-cover check");
    check_cmd->add_option("--group", group_name, "Z, Z2, Z3 or H3")->required();
    check_cmd->add_option("--n", tile_n, "tile index")->required()->check(CLI::PositiveNumber);
    check_cmd->add_option("--window", window_size, "window size in group elements");
    auto* density_cmd = tiling_cmd->add_subcommand("density", "center-density ratios at (k, n)");
    density_cmd->add_option("--group", group_name, "Z, Z2, Z3 or H3")->required();
    density_cmd->add_option("--k", tile_k, "base tile index")->required()->check(CLI::PositiveNumber);
    density_cmd->add_option("--n", tile_n, "window tile index")->required()->check(CLI::PositiveNumber);

    // extension build
    auto* ext_cmd = app.add_subcommand("extension", "monotilings from group extensions");
    ext_cmd->require_subcommand(1);
    std::string seq_name = "h3";
    u32 ext_l = 1;
    u64 ext_window = 500;
    auto* build_cmd = ext_cmd->add_subcommand("build", "build one extension tile and verify it");
    build_cmd->add_option("--seq", seq_name, "exact sequence (h3 = Z -> H3 -> Z2)");
    build_cmd->add_option("--l", ext_l, "invariance parameter")->required()->check(CLI::PositiveNumber);
    build_cmd->add_option("--window", ext_window, "tiling-check window size");

    // entropy / complexity / brudno
    std::string spec_path, config_path;
    u32 n_max = 8;
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy estimates for n = 1..N");
    entropy_cmd->add_option("--spec", spec_path, "shift spec JSON file")->required();
    entropy_cmd->add_option("--n-max", n_max, "largest tile index")->required()->check(CLI::PositiveNumber);
    auto* complexity_cmd = app.add_subcommand("complexity", "mean complexity of sampled configurations");
    complexity_cmd->add_option("--spec", spec_path, "shift spec JSON file")->required();
    complexity_cmd->add_option("--config", config_path, "run config JSON file");
    auto* brudno_cmd = app.add_subcommand("brudno", "entropy vs. max mean complexity sweep");
    brudno_cmd->add_option("--spec", spec_path, "shift spec JSON file")->required();
    brudno_cmd->add_option("--config", config_path, "run config JSON file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        RunConfig cfg;
        if (const char* env = std::getenv("BRUDNO_ENUM_BUDGET")) {
            char* end = nullptr;
            u64 v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) cfg.budgets.enumeration_nodes = v;
        }
        if (!config_path.empty()) cfg = run_config_from_json(load_json_file(config_path), cfg);

        if (hat_enc->parsed()) {
            out << encode_hat(hat_value).to_string() << "\n";
            return 0;
        }
        if (hat_dec->parsed()) {
            auto [value, rest] = decode_hat_stream(BitString::from_string(hat_bits));
            out << value;
            if (!rest.empty()) out << " " << rest.to_string();
            out << "\n";
            return 0;
        }

        if (check_cmd->parsed()) {
            with_group_tiling(group_name, [&](auto tiling) {
                using G = typename decltype(tiling)::Group;
                auto window = first_k_elements<G>(window_size);
                auto check = check_tiling_window(tiling, tile_n, window);
                json j;
                j["tile_size"] = check.tile_size;
                j["disjoint"] = check.disjoint;
                j["covers_window_interior"] = check.covers;
                out << j.dump() << "\n";
            });
            return 0;
        }
        if (density_cmd->parsed()) {
            with_group_tiling(group_name, [&](auto tiling) {
                auto rep = density_report(tiling, tile_k, tile_n);
                json j;
                j["k"] = tile_k;
                j["n"] = tile_n;
                j["base_cells"] = rep.base_cells;
                j["tile_cells"] = rep.tile_cells;
                j["interior_center_count"] = rep.interior_center_count;
                j["window_center_count"] = rep.window_center_count;
                j["interior_center_ratio"] = rep.interior_center_ratio();
                j["window_center_ratio"] = rep.window_center_ratio();
                j["target"] = rep.target();
                out << j.dump() << "\n";
            });
            return 0;
        }
        if (build_cmd->parsed()) {
            if (seq_name != "h3") throw validation_error("flag '--seq' only supports 'h3'");
            auto tiling = h3_extension_monotiling(cfg.budgets);
            const auto& slice = tiling.slice(ext_l);
            json j;
            j["l"] = ext_l;
            j["tile_size"] = slice.tile.size();
            j["m_star"] = slice.m_star;
            j["k_star"] = slice.k_star;
            json ratios = json::array();
            double worst = 0.0;
            for (const auto& g : slice.k_set) {
                double r = folner_ratio(tiling, ext_l, g);
                worst = std::max(worst, r);
                ratios.push_back(r);
            }
            j["invariance_ratios"] = ratios;
            j["max_invariance_ratio"] = worst;
            j["bound"] = 1.0 / static_cast<double>(ext_l);
            auto window = first_k_elements<Heisenberg>(ext_window);
            auto check = check_tiling_window(tiling, ext_l, window);
            j["tiling_check"] = {{"disjoint", check.disjoint},
                                 {"covers_window_interior", check.covers}};
            bool g_side = 2ull * ext_l * slice.g_interior.size() >=
                          (2ull * ext_l - 1) * slice.g_tile.size();
            bool e_side = 2ull * ext_l * slice.e_interior.size() >=
                          (2ull * ext_l - 1) * slice.e_tile.size();
            j["interior_mass"] = {{"quotient_side", g_side}, {"kernel_side", e_side}};
            out << j.dump() << "\n";
            return 0;
        }

        if (entropy_cmd->parsed()) {
            auto spec = load_shift_spec(spec_path);
            std::visit(
                [&]<class G>(const ShiftSpec<G>& s) {
                    auto tiling = box_tiling_for_spec<G>();
                    out << "n,cells,count,entropy_bits\n";
                    for (u32 n = 1; n <= n_max; ++n) {
                        auto est = entropy_estimate(s, tiling, n, cfg.budgets);
                        out << n << "," << est.cells << "," << count_repr(est) << ","
                            << fmt6(est.bits_per_cell) << "\n";
                    }
                    if (!s.zero_fill_safe)
                        out << "# counts are upper estimates: spec is not declared zero-fill-safe\n";
                },
                spec);
            return 0;
        }
        if (complexity_cmd->parsed()) {
            auto spec = load_shift_spec(spec_path);
            std::visit(
                [&]<class G>(const ShiftSpec<G>& s) {
                    auto tiling = box_tiling_for_spec<G>();
                    out << "sampler,seed,n,cells,best_k,program_bits,mean_complexity_bits,entropy_bits\n";
                    for (u32 n : cfg.n_list) {
                        auto est = entropy_estimate(s, tiling, n, cfg.budgets);
                        auto window = tiling.tile(n);
                        for (u32 jdx = 0; jdx < cfg.sampler.count; ++jdx) {
                            auto w = sample_configuration(s, cfg.sampler, window, jdx);
                            auto rep = mean_complexity(w, s, tiling, n, cfg.k_sweep, cfg.mode,
                                                       cfg.budgets);
                            out << sampler_kind_name(cfg.sampler.kind) << ","
                                << (cfg.sampler.seed + jdx) << "," << n << "," << rep.cells << ","
                                << rep.best_k << "," << rep.program_bits << ","
                                << fmt6(rep.mean_bits) << "," << fmt6(est.bits_per_cell) << "\n";
                        }
                    }
                    out << "# seed=" << cfg.sampler.seed << "\n";
                },
                spec);
            return 0;
        }
        if (brudno_cmd->parsed()) {
            auto spec = load_shift_spec(spec_path);
            std::visit(
                [&]<class G>(const ShiftSpec<G>& s) {
                    auto tiling = box_tiling_for_spec<G>();
                    auto rows = brudno_sweep(s, tiling, cfg.n_list, cfg.k_sweep, cfg.sampler,
                                             cfg.mode, cfg.budgets);
                    if (cfg.format == "json") {
                        json arr = json::array();
                        for (const auto& r : rows) {
                            json j;
                            j["n"] = r.n;
                            j["cells"] = r.cells;
                            j["count"] = r.count_repr;
                            j["entropy_bits"] = r.entropy_bits;
                            j["best_k"] = r.best_k;
                            j["max_mean_complexity_bits"] = r.max_mean_bits;
                            j["gap"] = r.gap;
                            j["sampled"] = r.sampled;
                            j["count_is_upper_estimate"] = r.upper_estimate_only;
                            arr.push_back(j);
                        }
                        out << arr.dump() << "\n";
                    } else {
                        out << "n,cells,count,entropy_bits,best_k,max_mean_complexity_bits,gap\n";
                        std::string sampled_rows;
                        for (const auto& r : rows) {
                            out << r.n << "," << r.cells << "," << r.count_repr << ","
                                << fmt6(r.entropy_bits) << "," << r.best_k << ","
                                << fmt6(r.max_mean_bits) << "," << fmt6(r.gap) << "\n";
                            if (r.sampled) {
                                if (!sampled_rows.empty()) sampled_rows += " ";
                                sampled_rows += std::to_string(r.n);
                            }
                        }
                        out << "# seed=" << cfg.sampler.seed << "\n";
                        if (!sampled_rows.empty())
                            out << "# sampled max (lower estimate) at n: " << sampled_rows << "\n";
                        if (!s.zero_fill_safe)
                            out << "# counts are upper estimates: spec is not declared zero-fill-safe\n";
                    }
                },
                spec);
            return 0;
        }
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const budget_exceeded& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace brudno
