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

#include <functional>
#include <string>

#include "mobivlc/types.hpp"

namespace mobivlc {

inline constexpr int kMaxBitsPerSubcarrier = 6;

struct LoadingOptions {
    int target_bits = 254;        // total bits per OFDM symbol, all schemes
    double snr_gap_db = 9.8;      // SNR gap for uncoded QAM at the FEC limit
    double snr_ceiling = 1e12;    // assigned where noise_var underflows to 0

    double gap_linear() const;
};

/// Per-subcarrier SNR from a channel estimate:
/// snr[k] = tx_power_per_bin * |H_k|^2 / sigma_k^2.
SnrProfile snr_from_estimate(const ChannelEstimate& est, double tx_power_per_bin,
                             const LoadingOptions& opt = {});

/// Margin-adaptive greedy bit filling at a fixed total rate.
///
/// The marginal power for a (b -> b+1) step on subcarrier k is
/// gap * 2^b / snr[k]; each bit goes to the cheapest subcarrier (ties to the
/// lower index) until target_bits are placed, capped at 6 bits. Powers are
/// gap * (2^b - 1) / snr, rescaled to mean 1 over the loaded subcarriers.
/// Throws InfeasibleLoadingError when the target cannot be met.
LoadingTable levin_campello(const SnrProfile& profile, int target_bits);

enum class Scheme { Ofdm, Dmt, Oct };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Produces one calibration-phase channel estimate per probe packet.
using ProbeRunner = std::function<ChannelEstimate(int probe_index)>;

/// Scheme-specific loading: DMT averages calibration_packets probe estimates
/// (coherent mean of H_k, mean of sigma_k^2) and runs the loader on the
/// averaged profile; OFDM and OCT return the uniform 4QAM table without
/// invoking the probe runner at all.
LoadingTable calibrate(Scheme scheme, const ProbeRunner& probe_runner,
                       const OfdmConfig& cfg, int calibration_packets,
                       const LoadingOptions& opt = {});

/// "subcarrier,bits,power" rows for reporting.
std::string loading_to_csv(const LoadingTable& table);

}  // namespace mobivlc
