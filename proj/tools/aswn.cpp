// aswn: twisted L-functions over finite fields, their p-adic and T-adic
// Newton polygons, and the bound/progression checks around them.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aswn/svg.hpp"
#include "aswn/verify.hpp"

namespace fs = std::filesystem;
using namespace aswn;
using namespace aswn::cli;

namespace {

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw InvalidConfig("cannot open config file " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidConfig(std::string("config parse error: ") + e.what());
    }
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << content;
}

void emit_report(const Report& rep, const std::string& out_dir, const std::string& name,
                 bool svg) {
    std::string text = rep.to_json().dump(2) + "\n";
    if (out_dir.empty()) {
        std::cout << text;
        return;
    }
    fs::path dir(out_dir);
    write_file(dir / (name + ".json"), text);
    if (rep.np) write_file(dir / (name + "_np.csv"), polygon_to_csv(*rep.np));
    if (svg) {
        std::vector<std::pair<std::string, Polygon>> series;
        if (rep.np) series.push_back({"NP", *rep.np});
        if (rep.hp_scaled) series.push_back({"HP", *rep.hp_scaled});
        if (rep.up_scaled) series.push_back({"UP", *rep.up_scaled});
        write_file(dir / (name + ".svg"), svg_plot(series, name));
    }
    std::cout << name << ": " << (rep.all_pass() ? "pass" : "FAIL") << " (" << out_dir << "/"
              << name << ".json)\n";
}

int dispatch(const std::string& command, const Json& cfg, const std::string& out_dir,
             const std::string& cache_dir, bool dry_run, bool svg) {
    std::unique_ptr<ExpSumCache> cache;
    if (!cache_dir.empty()) cache = std::make_unique<ExpSumCache>(cache_dir);

    if (command == "tower") {
        long p = cfg.at("p").get<long>();
        int a = cfg.at("a").get<int>();
        int lmax = cfg.value("l_max", 1);
        FieldTower tower(p, a, lmax);
        if (out_dir.empty())
            std::cout << tower.to_json() << "\n";
        else
            write_file(fs::path(out_dir) / "tower.json", tower.to_json() + "\n");
        return 0;
    }

    if (command == "distance" && cfg.contains("sweep")) {
        const auto& sw = cfg.at("sweep");
        Report rep = run_distance_sweep(sw.value("p_max", 7L), sw.value("a_max", 3),
                                        sw.value("d_max", 6));
        emit_report(rep, out_dir, "verify_distance_sweep", svg);
        return exit_code_for(rep);
    }

    Instance inst = instance_from_json(cfg);
    if (dry_run) {
        std::cout << "enumeration cost (sum of q^l): " << dry_run_cost(inst, command) << "\n";
        return 0;
    }

    Report rep;
    std::string name;
    if (command == "lpoly") {
        std::string l_json;
        rep = run_lpoly(inst, cache.get(), &l_json);
        name = "lpoly";
        if (!out_dir.empty()) write_file(fs::path(out_dir) / "lpoly_L.json", l_json + "\n");
    } else if (command == "main") {
        rep = run_verify_main(inst, cache.get());
        name = "verify_main";
    } else if (command == "strong") {
        std::vector<int> m_list;
        for (const auto& m : cfg.at("m_list")) m_list.push_back(m.get<int>());
        rep = run_verify_strong(inst, m_list, cache.get());
        name = "verify_strong";
    } else if (command == "decompose") {
        rep = run_verify_decompose(inst, cache.get());
        name = "verify_decompose";
    } else if (command == "independent") {
        std::vector<std::uint64_t> r_list;
        if (cfg.contains("r_list")) {
            for (const auto& r : cfg.at("r_list")) r_list.push_back(r.get<std::uint64_t>());
        } else {
            std::uint64_t pm = 1;
            for (int i = 0; i < inst.m; ++i) pm *= static_cast<std::uint64_t>(inst.p);
            for (std::uint64_t r = 1; r < pm; ++r)
                if (r % static_cast<std::uint64_t>(inst.p) != 0) r_list.push_back(r);
        }
        rep = run_verify_independent(inst, r_list, cache.get());
        name = "verify_independent";
    } else if (command == "dwork") {
        rep = run_verify_dwork(inst, cache.get());
        name = "verify_dwork";
    } else if (command == "distance") {
        rep = run_verify_distance(inst);
        name = "verify_distance";
    } else if (command == "oracle") {
        rep = run_verify_oracle(inst, cache.get());
        name = "verify_oracle";
    } else {
        throw InvalidConfig("unknown command " + command);
    }
    emit_report(rep, out_dir, name, svg);
    return exit_code_for(rep);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted L-function / Newton polygon verification toolkit"};
    app.require_subcommand(1);

    std::string config, out_dir, cache_dir;
    bool dry_run = false, svg = false;
    if (const char* env = std::getenv("ASWN_CACHE")) cache_dir = env;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "instance/config JSON file")->required();
        sub->add_option("--out", out_dir, "output directory (default: stdout)");
        sub->add_option("--cache", cache_dir, "exponential-sum cache directory");
        sub->add_flag("--dry-run", dry_run, "print the enumeration cost and exit");
        sub->add_flag("--svg", svg, "also write an SVG plot");
    };

    auto* tower_cmd = app.add_subcommand("tower", "build and print deterministic field data");
    add_common(tower_cmd);
    auto* lpoly_cmd = app.add_subcommand("lpoly", "compute L, its Newton polygon and bounds");
    add_common(lpoly_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run a theorem check");
    std::string which;
    verify_cmd
        ->add_option("kind", which, "main|strong|decompose|independent|dwork|distance|oracle")
        ->required();
    add_common(verify_cmd);

    CLI11_PARSE(app, argc, argv);

    std::string command;
    if (tower_cmd->parsed())
        command = "tower";
    else if (lpoly_cmd->parsed())
        command = "lpoly";
    else
        command = which;

    try {
        Json cfg = load_config(config);
        return dispatch(command, cfg, out_dir, cache_dir, dry_run, svg);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TruncationTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MultiplicityNotDivisible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
