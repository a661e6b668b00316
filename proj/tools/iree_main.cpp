#include "iree/errors.hpp"
#include "iree/report.hpp"
#include "iree/scenario_io.hpp"
#include "iree/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

namespace {

struct SourceOpts {
    std::string preset;
    std::string config;
    int grid = 0;
    double epoch = 0.0;
    std::uint64_t seed = 0;
};

void add_source_flags(CLI::App* cmd, SourceOpts& o) {
    auto* preset = cmd->add_option("--preset", o.preset, "bundled scenario name (see `presets`)");
    auto* config = cmd->add_option("--config", o.config, "scenario config file (JSON)");
    preset->excludes(config);
    config->excludes(preset);
    cmd->add_option("--grid", o.grid, "override grid resolution per axis")->check(CLI::PositiveNumber);
    cmd->add_option("--epoch", o.epoch, "override evaluation epoch [s]")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "seed for the `random` preset");
}

iree::LoadedScenario load_source(const SourceOpts& o) {
    if (o.preset.empty() == o.config.empty()) {
        throw iree::ConfigError("need exactly one of --preset or --config");
    }
    iree::LoadedScenario ls =
        o.config.empty() ? iree::make_preset(o.preset, o.seed) : iree::load_scenario(o.config);
    if (o.grid > 0) {
        ls.scenario.grid = {o.grid, o.grid, o.grid};
    }
    if (o.epoch > 0.0) {
        // capex shares are per-epoch rates, so they scale with the epoch
        ls.cost.capex_total *= o.epoch / ls.scenario.epoch_s;
        ls.scenario.epoch_s = o.epoch;
    }
    ls.scenario.validate();
    return ls;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        iree::write_text(out_path, text);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"integrated relative energy efficiency metrics for 3D network scenarios"};
    app.require_subcommand(1);

    CLI::App* presets_cmd = app.add_subcommand("presets", "list bundled scenarios");
    presets_cmd->callback([] {
        for (const iree::PresetInfo& p : iree::preset_list()) {
            std::string name = p.name;
            name.append(name.size() < 20 ? 20 - name.size() : 1, ' ');
            std::cout << name << p.description << "\n";
        }
    });

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one scenario and print its metrics");
    static SourceOpts eval_src;
    static std::string eval_mode = "both";
    static std::string eval_out;
    add_source_flags(eval_cmd, eval_src);
    eval_cmd->add_option("--mode", eval_mode, "divergence mode: numeric, closed, or both")
        ->check(CLI::IsMember({"numeric", "closed", "both"}));
    eval_cmd->add_option("--out", eval_out, "write the report to a file instead of stdout");
    eval_cmd->callback([] {
        const iree::LoadedScenario ls = load_source(eval_src);
        const iree::Evaluation ev = iree::evaluate(ls.scenario);
        std::string text;
        if (eval_mode != "closed") {
            text += iree::format_report(iree::metrics_report(ev, ls.cost, iree::XiMode::Numeric));
        }
        if (eval_mode == "both") {
            text += "\n";
        }
        if (eval_mode != "numeric") {
            text += iree::format_report(iree::metrics_report(ev, ls.cost, iree::XiMode::ClosedForm));
        }
        emit(eval_out, text);
    });

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a scenario over a parameter range");
    static SourceOpts sweep_src;
    static std::string kind_name;
    static std::string axis_name = "x";
    static std::string asset;
    static std::size_t station_index = 0;
    static std::string format = "csv";
    static std::string sweep_out;
    static iree::SweepSpec spec;
    spec.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    add_source_flags(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--kind", kind_name, "se | de | placement | traffic-sigma")
        ->required()
        ->check(CLI::IsMember({"se", "de", "placement", "traffic-sigma"}));
    sweep_cmd->add_option("--start", spec.start, "first axis value")->required();
    sweep_cmd->add_option("--stop", spec.stop, "last axis value")->required();
    sweep_cmd->add_option("--steps", spec.steps, "number of sweep points (>= 2)")->required();
    sweep_cmd->add_option("--axis", axis_name, "placement coordinate to sweep")
        ->check(CLI::IsMember({"x", "y", "z"}));
    sweep_cmd->add_option("--asset", asset,
                          "placement target: uav | satellite | uav+satellite | ris | station");
    sweep_cmd->add_option("--station-index", station_index,
                          "roster index moved when --asset station");
    sweep_cmd->add_option("--workers", spec.workers, "max concurrent sweep points")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--format", format, "csv or human")
        ->check(CLI::IsMember({"csv", "human"}));
    sweep_cmd->add_option("--out", sweep_out, "write the table to a file instead of stdout");
    sweep_cmd->callback([] {
        const iree::LoadedScenario ls = load_source(sweep_src);
        if (kind_name == "se") {
            spec.kind = iree::SweepKind::SePower;
        } else if (kind_name == "de") {
            spec.kind = iree::SweepKind::DeStationCount;
        } else if (kind_name == "placement") {
            spec.kind = iree::SweepKind::Placement;
        } else {
            spec.kind = iree::SweepKind::TrafficSigma;
        }
        spec.axis = axis_name == "x" ? 0 : (axis_name == "y" ? 1 : 2);

        if (spec.kind == iree::SweepKind::Placement) {
            if (asset.empty()) {
                throw iree::ConfigError("placement sweeps need --asset");
            }
            const iree::Vec3 center = ls.scenario.region.center();
            const double cx = center.x();
            const double cy = center.y();
            if (asset == "uav" || asset == "uav+satellite") {
                spec.moving = iree::MovingAsset::Station;
                spec.moving_station = ls.scenario.stations.size();
                spec.added_stations.push_back(iree::make_uav_station({cx, cy, 100.0}));
                if (asset == "uav+satellite") {
                    spec.added_stations.push_back(iree::make_satellite_station({cx, cy, 5e5}));
                }
            } else if (asset == "satellite") {
                spec.moving = iree::MovingAsset::Station;
                spec.moving_station = ls.scenario.stations.size();
                spec.added_stations.push_back(iree::make_satellite_station({cx, cy, 5e5}));
            } else if (asset == "ris") {
                spec.moving = iree::MovingAsset::Ris;
                spec.ris = iree::make_ris_element({cx, cy, 35.0});
            } else if (asset == "station") {
                spec.moving = iree::MovingAsset::Station;
                spec.moving_station = station_index;
            } else {
                throw iree::ConfigError("unknown --asset \"" + asset + "\"");
            }
        } else if (!asset.empty()) {
            throw iree::ConfigError("--asset only applies to placement sweeps");
        }

        const std::vector<iree::SweepRow> rows = iree::run_sweep(ls.scenario, ls.cost, spec);
        emit(sweep_out, format == "csv" ? iree::format_csv(rows) : iree::format_human(rows));
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
