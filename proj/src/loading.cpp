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
#include "mobivlc/loading.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mobivlc {

double LoadingOptions::gap_linear() const { return std::pow(10.0, snr_gap_db / 10.0); }

SnrProfile snr_from_estimate(const ChannelEstimate& est, double tx_power_per_bin,
                             const LoadingOptions& opt) {
    const std::size_t n = est.gain.size();
    if (n == 0 || est.noise_var.size() != n)
        throw std::invalid_argument("snr_from_estimate: malformed estimate");

    SnrProfile profile;
    profile.gap = opt.gap_linear();
    profile.snr.assign(n, 0.0);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        const double h2 = std::norm(est.gain[k]);
        if (h2 == 0.0) continue;
        profile.snr[k] = est.noise_var[k] > 0.0
                             ? tx_power_per_bin * h2 / est.noise_var[k]
                             : opt.snr_ceiling;
        any = true;
    }
    if (!any)
        throw std::invalid_argument("snr_from_estimate: all-zero estimate");
    return profile;
}

LoadingTable levin_campello(const SnrProfile& profile, int target_bits) {
    const int n = static_cast<int>(profile.snr.size());
    if (target_bits < 0 || target_bits > kMaxBitsPerSubcarrier * n)
        throw InfeasibleLoadingError("bit target outside the feasible range");

    int usable = 0;
    for (double s : profile.snr)
        if (s > 0.0) ++usable;
    if (target_bits > 0 && usable == 0)
        throw InfeasibleLoadingError("no subcarrier with positive SNR");
    if (target_bits > kMaxBitsPerSubcarrier * usable)
        throw InfeasibleLoadingError("bit target exceeds loadable capacity");

    LoadingTable table;
    table.bits.assign(n, 0);
    table.power.assign(n, 0.0);

    const double gap = profile.gap;
    for (int placed = 0; placed < target_bits; ++placed) {
        int best = -1;
        double best_dp = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (profile.snr[k] <= 0.0 || table.bits[k] >= kMaxBitsPerSubcarrier)
                continue;
            const double dp =
                gap * std::ldexp(1.0, table.bits[k]) / profile.snr[k];
            if (dp < best_dp) {  // strict: ties keep the lower index
                best_dp = dp;
                best = k;
            }
        }
        table.bits[best] += 1;
    }

    double total = 0.0;
    int loaded = 0;
    for (int k = 0; k < n; ++k) {
        if (table.bits[k] == 0) continue;
        table.power[k] =
            gap * (std::ldexp(1.0, table.bits[k]) - 1.0) / profile.snr[k];
        total += table.power[k];
        ++loaded;
    }
    if (loaded > 0) {
        const double scale = static_cast<double>(loaded) / total;
        for (double& p : table.power) p *= scale;
    }
    return table;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Ofdm: return "OFDM";
        case Scheme::Dmt: return "DMT";
        case Scheme::Oct: return "OCT";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "OFDM") return Scheme::Ofdm;
    if (name == "DMT") return Scheme::Dmt;
    if (name == "OCT") return Scheme::Oct;
    throw ConfigError("unknown scheme: " + name);
}

LoadingTable calibrate(Scheme scheme, const ProbeRunner& probe_runner,
                       const OfdmConfig& cfg, int calibration_packets,
                       const LoadingOptions& opt) {
    const int nd = cfg.n_data_subcarriers;
    if (scheme != Scheme::Dmt) {
        // channel independent: never touches the probe runner
        return LoadingTable::uniform(nd, 2);
    }
    if (calibration_packets < 1)
        throw ConfigError("DMT calibration needs at least one probe packet");

    ChannelEstimate mean;
    mean.gain.assign(nd, cplx(0.0, 0.0));
    mean.noise_var.assign(nd, 0.0);
    for (int p = 0; p < calibration_packets; ++p) {
        const ChannelEstimate est = probe_runner(p);
        for (int k = 0; k < nd; ++k) {
            mean.gain[k] += est.gain[k];
            mean.noise_var[k] += est.noise_var[k];
        }
    }
    for (int k = 0; k < nd; ++k) {
        mean.gain[k] /= static_cast<double>(calibration_packets);
        mean.noise_var[k] /= static_cast<double>(calibration_packets);
    }
    return levin_campello(snr_from_estimate(mean, 1.0, opt), opt.target_bits);
}

std::string loading_to_csv(const LoadingTable& table) {
    std::string out = "subcarrier,bits,power\n";
    char line[80];
    for (std::size_t k = 0; k < table.bits.size(); ++k) {
        std::snprintf(line, sizeof(line), "%zu,%d,%.9g\n", k, table.bits[k],
                      table.power[k]);
        out += line;
    }
    return out;
}

}  // namespace mobivlc
