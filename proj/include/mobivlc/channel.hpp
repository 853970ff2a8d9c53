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

#include <cstdint>
#include <span>
#include <vector>

#include "mobivlc/types.hpp"

namespace mobivlc {

/// Static laser nonlinearity: linear slope between threshold and saturation,
/// dark below threshold, clipped flat above saturation.
struct LaserModel {
    double bias_v = 6.0;
    double threshold_v = 4.0;
    double saturation_v = 8.0;
    double amplification_db = 25.0;
    double drive_rms_v_at_0db = 0.05;
    double responsivity_slope = 1.0;

    void validate() const;
};

enum class Trajectory { Triangle, OneWay };

/// Receiver motion across the beam plus the speed-proportional per-packet
/// intensity jitter. The traverse is centered on the beam axis, offsets in
/// [-d/2, +d/2]. The jitter model stands in for capture-time pointing and
/// platform fluctuation, which is the working hypothesis for why loss grows
/// with speed; the geometric roll-off alone is speed independent.
struct MobilityProfile {
    double lateral_distance_cm = 0.0;  // d, traverse length
    double speed_cm_s = 0.0;           // v
    Trajectory trajectory = Trajectory::Triangle;
    double beam_sigma_cm = 25.0;       // Gaussian beam half-width w
    double jitter_coeff = 0.004;       // kappa; sigma_ln(gain) = kappa * v

    void validate() const;
};

/// Receiver-side electrical response: first-order low pass, AWGN, and the
/// optional DAC/ADC rate conversion stage.
struct LinkResponse {
    double f3db_hz = 50e6;
    double noise_std = 0.10;
    bool include_resampling = false;

    void validate() const;
};

/// Stochastic state of one captured packet, fully determined by
/// (rng_seed, packet_index, profile, capture time).
struct ChannelRealization {
    int packet_index = 0;
    double time_s = 0.0;
    double offset_cm = 0.0;
    double geometric_gain = 1.0;
    double jitter_gain = 1.0;
    uint64_t rng_seed = 0;
};

/// Lateral offset at time t. Triangle oscillates between -d/2 and +d/2 at
/// constant speed starting from -d/2 (period 2d/v); OneWay ramps once and
/// clamps. v = 0 freezes the receiver at -d/2.
double trajectory_offset(double t_s, const MobilityProfile& profile);

/// Gaussian beam roll-off exp(-offset^2 / (2 w^2)).
double beam_gain(double offset_cm, const MobilityProfile& profile);

/// Scale a unit-RMS waveform to drive volts: rms = drive_rms_v_at_0db
/// * 10^(amplification_db / 20).
std::vector<double> amplify(std::span<const double> unit_rms_waveform,
                            const LaserModel& model);

/// Drive volts (around bias) to emitted intensity through the clipped
/// linear transfer.
std::vector<double> laser_transfer(std::span<const double> drive_v,
                                   const LaserModel& model);

/// One-pole low pass y[n] = a x[n] + (1-a) y[n-1], a = 1 - exp(-2 pi f3db/rate).
std::vector<double> lowpass(std::span<const double> samples,
                            const LinkResponse& response, double rate);

/// Polyphase rational resampler (Kaiser beta = 8, 24 taps per phase) with
/// integer group-delay compensation: output sample j sits at input position
/// j * from/to. The rate ratio must reduce to L/M with L, M <= 64.
std::vector<double> resample(std::span<const double> samples, double from_rate,
                             double to_rate);

/// Capture time of packet i out of n, spread uniformly over two traversal
/// periods (zero when the receiver is stationary).
double capture_time(int packet_index, int n_packets,
                    const MobilityProfile& profile);

/// Realize the per-packet stochastic state at the given capture time.
ChannelRealization make_realization(int packet_index, double time_s,
                                    const MobilityProfile& profile,
                                    uint64_t rng_seed);

/// Full analog chain: normalize to unit RMS, amplify, laser, AC coupling,
/// geometric and jitter gain, low pass, then AWGN (through the DAC/ADC
/// resampling stage when enabled). Output is at dac_rate with the input
/// length and frame alignment preserved.
std::vector<double> transmit_packet(std::span<const double> waveform,
                                    const ChannelRealization& realization,
                                    const MobilityProfile& profile,
                                    const LaserModel& model,
                                    const LinkResponse& response,
                                    double dac_rate, double adc_rate);

}  // namespace mobivlc
