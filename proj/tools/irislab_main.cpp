#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "irislab/errors.hpp"
#include "irislab/harness.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> preset_dirs() {
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("IRISLAB_PRESET_DIR")) dirs.emplace_back(env);
    dirs.emplace_back(IRISLAB_PRESET_INSTALL_DIR);
    dirs.emplace_back(IRISLAB_PRESET_SOURCE_DIR);
    return dirs;
}

fs::path resolve_spec(const std::string& arg) {
    if (fs::is_regular_file(arg)) return arg;
    for (const auto& d : preset_dirs()) {
        const auto p = d / (arg + ".json");
        if (fs::is_regular_file(p)) return p;
    }
    irislab::fail(irislab::ErrorKind::io,
                  "'" + arg + "' is neither a config file nor a known preset");
}

int report_error(const std::string& kind, const std::string& message, int code) {
    nlohmann::json j = {{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << j.dump() << '\n';
    return code;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int list_presets() {
    std::vector<std::string> seen;
    for (const auto& d : preset_dirs()) {
        if (!fs::is_directory(d)) continue;
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(d))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const auto name = f.stem().string();
            if (std::find(seen.begin(), seen.end(), name) != seen.end()) continue;
            seen.push_back(name);
            std::string exp = "?";
            try {
                exp = irislab::to_string(irislab::load_spec(f.string()).experiment);
            } catch (const std::exception&) {
                exp = "invalid";
            }
            std::cout << name << '\t' << exp << '\t' << f.string() << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-assisted MIMO downlink analysis and simulation"};
    app.set_version_flag("--version", irislab::library_version());
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment preset or config file");
    std::string target;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string out_dir;
    std::string format = "csv";
    std::string series;
    run->add_option("spec", target, "Preset name or path to an experiment JSON")->required();
    run->add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--workers", workers, "Worker threads, 0 for one per core")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--out", out_dir, "Output directory; stdout when omitted");
    run->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--series", series, "Comma-separated series to keep");

    auto* list = app.add_subcommand("list", "List available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", e.what(), 2);
    }

    try {
        if (list->parsed()) return list_presets();

        const auto path = resolve_spec(target);
        auto spec = irislab::load_spec(path.string());
        if (trials) spec.plan.trials = *trials;
        if (seed) spec.plan.master_seed = *seed;
        if (workers) spec.plan.workers = *workers;
        if (!series.empty()) spec.series_filter = split_list(series);
        if (spec.name.empty()) spec.name = path.stem().string();

        const auto result = irislab::run_experiment(spec);

        if (out_dir.empty()) {
            if (format == "csv")
                irislab::emit_csv(result, std::cout);
            else
                irislab::emit_json(result, std::cout);
        } else {
            fs::create_directories(out_dir);
            const auto file = (fs::path(out_dir) / (spec.name + "." + format)).string();
            if (format == "csv")
                irislab::emit_csv(result, file);
            else
                irislab::emit_json(result, file);
            std::cerr << "wrote " << file << '\n';
        }
        for (const auto& f : result.metadata.failures) {
            nlohmann::json j = {{"warning", {{"series", f.series}, {"axes", f.axes},
                                             {"message", f.message}}}};
            std::cerr << j.dump() << '\n';
        }
        std::cerr << result.rows.size() << " rows, " << result.metadata.failures.size()
                  << " point failures, " << result.metadata.wall_time_s << " s\n";
        return 0;
    } catch (const irislab::Error& e) {
        return report_error(irislab::to_string(e.kind()), e.what(), 1);
    } catch (const fs::filesystem_error& e) {
        return report_error("io", e.what(), 1);
    } catch (const std::exception& e) {
        return report_error("internal", e.what(), 1);
    }
}
