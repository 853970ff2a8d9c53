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
#include "mobivlc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mobivlc/rng.hpp"

namespace mobivlc {

void LaserModel::validate() const {
    if (!(threshold_v < bias_v && bias_v < saturation_v))
        throw ConfigError("laser requires threshold < bias < saturation");
    if (!std::isfinite(amplification_db))
        throw ConfigError("amplification must be finite");
    if (!(drive_rms_v_at_0db > 0) || !(responsivity_slope > 0))
        throw ConfigError("laser drive reference and slope must be positive");
}

void MobilityProfile::validate() const {
    if (lateral_distance_cm < 0 || speed_cm_s < 0)
        throw ConfigError("distance and speed must be nonnegative");
    if (!(beam_sigma_cm > 0)) throw ConfigError("beam sigma must be positive");
    if (jitter_coeff < 0) throw ConfigError("jitter coefficient must be >= 0");
}

void LinkResponse::validate() const {
    if (!(f3db_hz > 0)) throw ConfigError("f3db must be positive");
    if (noise_std < 0) throw ConfigError("noise std must be >= 0");
}

double trajectory_offset(double t_s, const MobilityProfile& profile) {
    const double d = profile.lateral_distance_cm;
    const double v = profile.speed_cm_s;
    if (v <= 0.0 || d <= 0.0) return -d / 2.0;
    if (profile.trajectory == Trajectory::OneWay)
        return std::min(-d / 2.0 + v * t_s, d / 2.0);
    const double period = 2.0 * d / v;
    const double leg = d / v;
    const double phase = std::fmod(t_s, period);
    return phase <= leg ? -d / 2.0 + v * phase : d / 2.0 - v * (phase - leg);
}

double beam_gain(double offset_cm, const MobilityProfile& profile) {
    const double w = profile.beam_sigma_cm;
    return std::exp(-offset_cm * offset_cm / (2.0 * w * w));
}

std::vector<double> amplify(std::span<const double> unit_rms_waveform,
                            const LaserModel& model) {
    const double s =
        model.drive_rms_v_at_0db * std::pow(10.0, model.amplification_db / 20.0);
    std::vector<double> out(unit_rms_waveform.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * unit_rms_waveform[i];
    return out;
}

std::vector<double> laser_transfer(std::span<const double> drive_v,
                                   const LaserModel& model) {
    const double span = model.saturation_v - model.threshold_v;
    std::vector<double> out(drive_v.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double above = model.bias_v + drive_v[i] - model.threshold_v;
        out[i] = model.responsivity_slope * std::clamp(above, 0.0, span);
    }
    return out;
}

std::vector<double> lowpass(std::span<const double> samples,
                            const LinkResponse& response, double rate) {
    if (!(rate > 0)) throw std::invalid_argument("lowpass: rate must be positive");
    const double a = 1.0 - std::exp(-2.0 * std::numbers::pi * response.f3db_hz / rate);
    std::vector<double> out(samples.size());
    double state = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        state = a * samples[i] + (1.0 - a) * state;
        out[i] = state;
    }
    return out;
}

double capture_time(int packet_index, int n_packets,
                    const MobilityProfile& profile) {
    if (profile.speed_cm_s <= 0.0 || profile.lateral_distance_cm <= 0.0)
        return 0.0;
    const double window =
        2.0 * (2.0 * profile.lateral_distance_cm / profile.speed_cm_s);
    return (packet_index + 0.5) * window / n_packets;
}

ChannelRealization make_realization(int packet_index, double time_s,
                                    const MobilityProfile& profile,
                                    uint64_t rng_seed) {
    ChannelRealization r;
    r.packet_index = packet_index;
    r.time_s = time_s;
    r.offset_cm = trajectory_offset(time_s, profile);
    r.geometric_gain = beam_gain(r.offset_cm, profile);
    r.rng_seed = rng_seed;

    const double sigma = profile.jitter_coeff * profile.speed_cm_s;
    std::mt19937_64 rng(splitmix64(rng_seed ^ 0x6a6974746572ULL));
    std::normal_distribution<double> normal(0.0, 1.0);
    r.jitter_gain = std::exp(sigma * normal(rng));
    return r;
}

std::vector<double> transmit_packet(std::span<const double> waveform,
                                    const ChannelRealization& realization,
                                    const MobilityProfile& profile,
                                    const LaserModel& model,
                                    const LinkResponse& response,
                                    double dac_rate, double adc_rate) {
    (void)profile;
    const std::size_t n = waveform.size();

    double rms = 0.0;
    for (double x : waveform) rms += x * x;
    rms = n > 0 ? std::sqrt(rms / n) : 0.0;
    std::vector<double> sig(n);
    const double inv = rms > 0.0 ? 1.0 / rms : 0.0;
    for (std::size_t i = 0; i < n; ++i) sig[i] = waveform[i] * inv;

    sig = laser_transfer(amplify(sig, model), model);

    double mean = 0.0;
    for (double x : sig) mean += x;
    mean = n > 0 ? mean / n : 0.0;
    const double gain = realization.geometric_gain * realization.jitter_gain;
    for (double& x : sig) x = (x - mean) * gain;

    sig = lowpass(sig, response, dac_rate);

    std::mt19937_64 rng(splitmix64(realization.rng_seed ^ 0x6e6f697365ULL));
    std::normal_distribution<double> awgn(0.0, response.noise_std);
    if (response.include_resampling) {
        // pad so the resampler edge transients land outside the frame
        constexpr std::size_t pad = 32;
        std::vector<double> padded(n + 2 * pad, 0.0);
        std::copy(sig.begin(), sig.end(), padded.begin() + pad);
        auto up = resample(padded, dac_rate, adc_rate);
        if (response.noise_std > 0.0)
            for (double& x : up) x += awgn(rng);
        auto down = resample(up, adc_rate, dac_rate);
        down.resize(padded.size(), 0.0);
        sig.assign(down.begin() + pad, down.begin() + pad + n);
    } else if (response.noise_std > 0.0) {
        for (double& x : sig) x += awgn(rng);
    }
    return sig;
}

}  // namespace mobivlc
