/*
 * Copyright 2026 The mobivlc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobivlc/harness.hpp"
#include "mobivlc/loading.hpp"
#include "mobivlc/ofdm.hpp"
#include "mobivlc/rng.hpp"

namespace fs = std::filesystem;
using namespace mobivlc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitInfeasible = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string schemes;
    uint64_t seed = 0;
    bool seed_set = false;
    int packets = 0;
    int replicates = 0;
    int threads = -1;
    bool packets_csv = false;
    bool print_config = false;
    std::string dump_dir;
};

SweepConfig load_config(const CommonArgs& a) {
    SweepConfig cfg;
    if (!a.config_path.empty()) cfg = parse_sweep_config(read_file(a.config_path));
    if (a.seed_set) cfg.master_seed = a.seed;
    if (a.packets > 0) cfg.packets_per_point = a.packets;
    if (a.replicates > 0) cfg.replicate_count = a.replicates;
    if (a.threads >= 0) cfg.threads = a.threads;
    if (!a.schemes.empty()) {
        cfg.schemes.clear();
        std::stringstream ss(a.schemes);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.schemes.push_back(scheme_from_name(item));
    }
    cfg.validate();
    return cfg;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir);
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_grid_flags) {
    cmd->add_option("--config", a.config_path, "JSON sweep configuration");
    cmd->add_option("--out", a.out_dir, "output directory (default .)");
    cmd->add_option("--seed", a.seed, "master seed override")
        ->each([&a](const std::string&) { a.seed_set = true; });
    cmd->add_option("--packets", a.packets, "packets per grid point override");
    cmd->add_option("--threads", a.threads, "worker threads (0 = hardware)");
    cmd->add_flag("--print-config", a.print_config,
                  "echo the resolved configuration and exit");
    if (with_grid_flags) {
        cmd->add_option("--schemes", a.schemes,
                        "comma separated subset of OFDM,DMT,OCT");
        cmd->add_option("--replicates", a.replicates, "replicate count override");
        cmd->add_flag("--packets-csv", a.packets_csv,
                      "also write per-packet rows (packets.csv)");
        cmd->add_option("--dump-waveforms", a.dump_dir,
                        "write per-packet f32 waveform dumps under this directory");
    }
}

int run_sweep_cmd(const CommonArgs& a) {
    SweepConfig cfg = load_config(a);
    if (a.print_config) {
        std::cout << sweep_config_to_json(cfg);
        return kExitOk;
    }
    auto results = run_sweep(cfg);
    ensure_dir(a.out_dir);
    write_file(a.out_dir + "/results.csv", results_csv(results));
    write_file(a.out_dir + "/loading.csv", loading_csv(results));
    if (a.packets_csv)
        write_file(a.out_dir + "/packets.csv", packets_csv(results));
    if (!a.dump_dir.empty()) {
        for (const auto& r : results) {
            char sub[128];
            std::snprintf(sub, sizeof(sub), "%s/%s_v%g_d%g_r%d", a.dump_dir.c_str(),
                          scheme_name(r.scheme).c_str(), r.speed_cm_s,
                          r.distance_cm, r.replicate);
            ensure_dir(sub);
            // regenerate the transmit waveforms for the dump
            for (const auto& p : r.packets) {
                const uint64_t pay = derive_seed(cfg.master_seed, Stream::Payload,
                                                 Phase::Measurement, r.replicate,
                                                 p.packet_index);
                const auto bits = prbs_bits(
                    pay, static_cast<std::size_t>(r.loading.total_bits()) *
                             cfg.ofdm.n_data_symbols);
                const Packet pkt = build_packet(
                    bits, r.loading,
                    r.scheme == Scheme::Oct ? Precoder::Oct : Precoder::None,
                    cfg.ofdm, cfg.training_seed);
                dump_waveform_f32(
                    std::string(sub) + "/pkt_" + std::to_string(p.packet_index) +
                        ".f32",
                    pkt.waveform);
            }
        }
    }
    std::cout << "wrote " << results.size() << " result rows to " << a.out_dir
              << "/results.csv\n";
    return kExitOk;
}

int run_scalar_cmd(const CommonArgs& a, bool bias, double from, double to,
                   double step) {
    SweepConfig cfg = load_config(a);
    if (a.print_config) {
        std::cout << sweep_config_to_json(cfg);
        return kExitOk;
    }
    const auto points = bias ? sweep_bias(cfg, from, to, step)
                             : sweep_amplification(cfg, from, to, step);
    ensure_dir(a.out_dir);
    const std::string name = bias ? "bias_sweep.csv" : "amplification_sweep.csv";
    write_file(a.out_dir + "/" + name,
               scalar_sweep_csv(points, bias ? "bias_v" : "amplification_db"));
    std::cout << "wrote " << points.size() << " rows to " << a.out_dir << "/"
              << name << "\n";
    return kExitOk;
}

// Rebuild distribution statistics from a previously written packets.csv.
int run_report_cmd(const std::string& packets_path, const std::string& out_dir) {
    const std::string text = read_file(packets_path);
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) ||
        line != "scheme,speed_cm_s,distance_cm,replicate,packet_index,offset_cm,ber,lost")
        throw ConfigError("unrecognized packets.csv header");

    std::map<std::tuple<std::string, double, double, int>, TrialResult> groups;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string scheme, field;
        double speed, distance, offset, ber;
        int replicate, index, lost;
        std::getline(row, scheme, ',');
        std::getline(row, field, ',');
        speed = std::stod(field);
        std::getline(row, field, ',');
        distance = std::stod(field);
        std::getline(row, field, ',');
        replicate = std::stoi(field);
        std::getline(row, field, ',');
        index = std::stoi(field);
        std::getline(row, field, ',');
        offset = std::stod(field);
        std::getline(row, field, ',');
        ber = std::stod(field);
        std::getline(row, field, ',');
        lost = std::stoi(field);

        TrialResult& t = groups[{scheme, speed, distance, replicate}];
        t.scheme = scheme_from_name(scheme);
        t.speed_cm_s = speed;
        t.distance_cm = distance;
        t.replicate = replicate;
        t.packets.push_back({index, offset, ber, lost != 0});
    }
    if (groups.empty()) throw ConfigError("packets.csv has no data rows");
    std::vector<TrialResult> results;
    for (auto& [key, t] : groups) results.push_back(std::move(t));
    ensure_dir(out_dir);
    write_file(out_dir + "/dist.csv", distribution_report(results));
    std::cout << "wrote " << out_dir << "/dist.csv\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mobile VLC link-level sweep harness"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "run the full Monte-Carlo grid");
    add_common(sweep, sweep_args, true);

    CommonArgs bias_args;
    double bias_from = 4.5, bias_to = 7.5, bias_step = 0.25;
    CLI::App* bias = app.add_subcommand(
        "sweep-bias", "BER vs laser bias at the stationary midpoint");
    add_common(bias, bias_args, false);
    bias->add_option("--from", bias_from, "start bias (V)");
    bias->add_option("--to", bias_to, "end bias (V)");
    bias->add_option("--step", bias_step, "bias step (V)");

    CommonArgs amp_args;
    double amp_from = 10.0, amp_to = 40.0, amp_step = 2.5;
    CLI::App* amp = app.add_subcommand(
        "sweep-amplification", "BER vs drive amplification at the midpoint");
    add_common(amp, amp_args, false);
    amp->add_option("--from", amp_from, "start amplification (dB)");
    amp->add_option("--to", amp_to, "end amplification (dB)");
    amp->add_option("--step", amp_step, "amplification step (dB)");

    std::string packets_path, report_out = ".";
    CLI::App* report = app.add_subcommand(
        "report-dist", "distribution summary from a packets.csv");
    report->add_option("--packets", packets_path, "packets.csv from a sweep")
        ->required();
    report->add_option("--out", report_out, "output directory (default .)");

    try {
        app.parse(argc, argv);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
        if (bias->parsed())
            return run_scalar_cmd(bias_args, true, bias_from, bias_to, bias_step);
        if (amp->parsed())
            return run_scalar_cmd(amp_args, false, amp_from, amp_to, amp_step);
        if (report->parsed()) return run_report_cmd(packets_path, report_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const InfeasibleLoadingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
