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
#include <set>
#include <string>

#include <json.hpp>

#include "mobivlc/harness.hpp"

namespace mobivlc {

namespace {

using nlohmann::json;

// Unknown keys are configuration errors: silent typos in sweep configs are
// worse than a hard stop.
void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown config key '" + it.key() + "' in " + where);
}

template <typename T>
void get_to(const json& obj, const char* key, T& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        it->get_to(out);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    check_keys(j,
               {"schemes", "speeds_cm_s", "distances_cm", "packets_per_point",
                "calibration_packets", "fec_ber_limit", "master_seed",
                "replicate_count", "training_seed", "recalibrate_per_pair",
                "threads", "ofdm", "laser", "mobility", "link", "loading"},
               "config root");

    SweepConfig cfg;
    if (j.contains("schemes")) {
        std::vector<std::string> names;
        get_to(j, "schemes", names);
        cfg.schemes.clear();
        for (const auto& n : names) cfg.schemes.push_back(scheme_from_name(n));
    }
    get_to(j, "speeds_cm_s", cfg.speeds_cm_s);
    get_to(j, "distances_cm", cfg.distances_cm);
    get_to(j, "packets_per_point", cfg.packets_per_point);
    get_to(j, "calibration_packets", cfg.calibration_packets);
    get_to(j, "fec_ber_limit", cfg.fec_ber_limit);
    get_to(j, "master_seed", cfg.master_seed);
    get_to(j, "replicate_count", cfg.replicate_count);
    get_to(j, "training_seed", cfg.training_seed);
    get_to(j, "recalibrate_per_pair", cfg.recalibrate_per_pair);
    get_to(j, "threads", cfg.threads);

    if (j.contains("ofdm")) {
        const json& o = j["ofdm"];
        check_keys(o,
                   {"fft_size", "cp_num", "cp_den", "n_data_subcarriers",
                    "n_data_symbols", "n_training_symbols", "dac_rate",
                    "adc_rate"},
                   "ofdm");
        get_to(o, "fft_size", cfg.ofdm.fft_size);
        get_to(o, "cp_num", cfg.ofdm.cp_num);
        get_to(o, "cp_den", cfg.ofdm.cp_den);
        get_to(o, "n_data_subcarriers", cfg.ofdm.n_data_subcarriers);
        get_to(o, "n_data_symbols", cfg.ofdm.n_data_symbols);
        get_to(o, "n_training_symbols", cfg.ofdm.n_training_symbols);
        get_to(o, "dac_rate", cfg.ofdm.dac_rate);
        get_to(o, "adc_rate", cfg.ofdm.adc_rate);
    }
    if (j.contains("laser")) {
        const json& o = j["laser"];
        check_keys(o,
                   {"bias_v", "threshold_v", "saturation_v", "amplification_db",
                    "drive_rms_v_at_0db", "responsivity_slope"},
                   "laser");
        get_to(o, "bias_v", cfg.laser.bias_v);
        get_to(o, "threshold_v", cfg.laser.threshold_v);
        get_to(o, "saturation_v", cfg.laser.saturation_v);
        get_to(o, "amplification_db", cfg.laser.amplification_db);
        get_to(o, "drive_rms_v_at_0db", cfg.laser.drive_rms_v_at_0db);
        get_to(o, "responsivity_slope", cfg.laser.responsivity_slope);
    }
    if (j.contains("mobility")) {
        const json& o = j["mobility"];
        check_keys(o, {"trajectory", "beam_sigma_cm", "jitter_coeff"},
                   "mobility");
        if (o.contains("trajectory")) {
            std::string t;
            get_to(o, "trajectory", t);
            if (t == "Triangle")
                cfg.mobility.trajectory = Trajectory::Triangle;
            else if (t == "OneWay")
                cfg.mobility.trajectory = Trajectory::OneWay;
            else
                throw ConfigError("trajectory must be Triangle or OneWay");
        }
        get_to(o, "beam_sigma_cm", cfg.mobility.beam_sigma_cm);
        get_to(o, "jitter_coeff", cfg.mobility.jitter_coeff);
    }
    if (j.contains("link")) {
        const json& o = j["link"];
        check_keys(o, {"f3db_hz", "noise_std", "include_resampling"}, "link");
        get_to(o, "f3db_hz", cfg.link.f3db_hz);
        get_to(o, "noise_std", cfg.link.noise_std);
        get_to(o, "include_resampling", cfg.link.include_resampling);
    }
    if (j.contains("loading")) {
        const json& o = j["loading"];
        check_keys(o, {"target_bits", "snr_gap_db", "snr_ceiling"}, "loading");
        get_to(o, "target_bits", cfg.loading.target_bits);
        get_to(o, "snr_gap_db", cfg.loading.snr_gap_db);
        get_to(o, "snr_ceiling", cfg.loading.snr_ceiling);
    }
    return cfg;
}

std::string sweep_config_to_json(const SweepConfig& cfg) {
    json j;
    std::vector<std::string> names;
    for (Scheme s : cfg.schemes) names.push_back(scheme_name(s));
    j["schemes"] = names;
    j["speeds_cm_s"] = cfg.speeds_cm_s;
    j["distances_cm"] = cfg.distances_cm;
    j["packets_per_point"] = cfg.packets_per_point;
    j["calibration_packets"] = cfg.calibration_packets;
    j["fec_ber_limit"] = cfg.fec_ber_limit;
    j["master_seed"] = cfg.master_seed;
    j["replicate_count"] = cfg.replicate_count;
    j["training_seed"] = cfg.training_seed;
    j["recalibrate_per_pair"] = cfg.recalibrate_per_pair;
    j["threads"] = cfg.threads;
    j["ofdm"] = {{"fft_size", cfg.ofdm.fft_size},
                 {"cp_num", cfg.ofdm.cp_num},
                 {"cp_den", cfg.ofdm.cp_den},
                 {"n_data_subcarriers", cfg.ofdm.n_data_subcarriers},
                 {"n_data_symbols", cfg.ofdm.n_data_symbols},
                 {"n_training_symbols", cfg.ofdm.n_training_symbols},
                 {"dac_rate", cfg.ofdm.dac_rate},
                 {"adc_rate", cfg.ofdm.adc_rate}};
    j["laser"] = {{"bias_v", cfg.laser.bias_v},
                  {"threshold_v", cfg.laser.threshold_v},
                  {"saturation_v", cfg.laser.saturation_v},
                  {"amplification_db", cfg.laser.amplification_db},
                  {"drive_rms_v_at_0db", cfg.laser.drive_rms_v_at_0db},
                  {"responsivity_slope", cfg.laser.responsivity_slope}};
    j["mobility"] = {
        {"trajectory",
         cfg.mobility.trajectory == Trajectory::Triangle ? "Triangle" : "OneWay"},
        {"beam_sigma_cm", cfg.mobility.beam_sigma_cm},
        {"jitter_coeff", cfg.mobility.jitter_coeff}};
    j["link"] = {{"f3db_hz", cfg.link.f3db_hz},
                 {"noise_std", cfg.link.noise_std},
                 {"include_resampling", cfg.link.include_resampling}};
    j["loading"] = {{"target_bits", cfg.loading.target_bits},
                    {"snr_gap_db", cfg.loading.snr_gap_db},
                    {"snr_ceiling", cfg.loading.snr_ceiling}};
    return j.dump(2) + "\n";
}

}  // namespace mobivlc
