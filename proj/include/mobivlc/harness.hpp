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
#pragma once

#include <string>
#include <vector>

#include "mobivlc/channel.hpp"
#include "mobivlc/loading.hpp"
#include "mobivlc/types.hpp"

namespace mobivlc {

/// Raised on unreadable/unwritable files (CLI exit code 2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything one Monte-Carlo sweep needs. JSON configs mirror these field
/// names in snake_case; grid distance/speed overwrite the mobility profile
/// per point.
struct SweepConfig {
    std::vector<Scheme> schemes{Scheme::Ofdm, Scheme::Dmt, Scheme::Oct};
    std::vector<double> speeds_cm_s{0, 10, 20, 30, 40, 50};
    std::vector<double> distances_cm{30, 40, 50};
    int packets_per_point = 500;
    int calibration_packets = 20;
    double fec_ber_limit = 3.8e-3;
    uint64_t master_seed = 1;
    int replicate_count = 1;
    uint64_t training_seed = 0x564c43;
    bool recalibrate_per_pair = true;  // DMT probes rerun per (speed, distance)
    int threads = 0;                   // 0 = hardware concurrency

    OfdmConfig ofdm;
    LaserModel laser;
    MobilityProfile mobility;
    LinkResponse link;
    LoadingOptions loading;

    void validate() const;
};

struct PacketRecord {
    int packet_index = 0;
    double offset_cm = 0.0;
    double ber = 0.0;
    bool lost = false;
};

struct TrialResult {
    Scheme scheme = Scheme::Ofdm;
    double speed_cm_s = 0.0;
    double distance_cm = 0.0;
    int replicate = 0;
    std::vector<PacketRecord> packets;
    LoadingTable loading;

    double packet_loss_rate = 0.0;
    double mean_ber = 0.0;
    double ber_p10 = 0.0, ber_p25 = 0.0, ber_median = 0.0;
    double ber_p75 = 0.0, ber_p90 = 0.0;
};

/// q-quantile (q in [0,1]) by linear interpolation on the sorted values,
/// rank = (n - 1) * q.
double percentile(std::vector<double> values, double q);

/// One grid point: DMT calibration (probe packets on disjoint seeds), then
/// packets_per_point measured packets through the full chain. Channel and
/// payload seeds depend only on (master_seed, replicate, phase, packet), so
/// schemes, speeds and distances see paired realizations.
TrialResult run_point(const SweepConfig& cfg, Scheme scheme, double speed_cm_s,
                      double distance_cm, int replicate);

/// The full scheme x speed x distance x replicate grid, parallel across
/// points, deterministically ordered.
std::vector<TrialResult> run_sweep(const SweepConfig& cfg);

// CSV renderings (fixed column orders; results header is a wire contract)
std::string results_csv(const std::vector<TrialResult>& results);
std::string packets_csv(const std::vector<TrialResult>& results);
std::string loading_csv(const std::vector<TrialResult>& results);

/// Per (scheme, speed, distance) distribution summary, replicates pooled:
/// mean and the 10/25/50/75/90 BER percentiles.
std::string distribution_report(const std::vector<TrialResult>& results);

struct ScalarSweepPoint {
    double value = 0.0;
    double mean_ber = 0.0;
    double packet_loss_rate = 0.0;
};

/// Laser operating-point sub-sweeps at the stationary midpoint (v = 0, d = 0).
std::vector<ScalarSweepPoint> sweep_bias(const SweepConfig& cfg, double from_v,
                                         double to_v, double step_v);
std::vector<ScalarSweepPoint> sweep_amplification(const SweepConfig& cfg,
                                                  double from_db, double to_db,
                                                  double step_db);
std::string scalar_sweep_csv(const std::vector<ScalarSweepPoint>& points,
                             const std::string& value_header);

// file helpers (throw IoError)
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

/// Little-endian float32 sample dump, one file per packet: pkt_<index>.f32.
void dump_waveform_f32(const std::string& path, std::span<const double> samples);

// JSON config round trip (throws ConfigError on malformed/unknown fields)
SweepConfig parse_sweep_config(const std::string& json_text);
std::string sweep_config_to_json(const SweepConfig& cfg);

}  // namespace mobivlc
