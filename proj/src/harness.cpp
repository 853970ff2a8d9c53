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
#include "mobivlc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "mobivlc/ofdm.hpp"
#include "mobivlc/rng.hpp"

namespace mobivlc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ChannelEstimate estimate_from_samples(std::span<const double> samples,
                                      const OfdmConfig& cfg,
                                      uint64_t training_seed) {
    const int sym_len = cfg.symbol_len();
    std::vector<SymbolSpectrum> training(cfg.n_training_symbols);
    for (int s = 0; s < cfg.n_training_symbols; ++s)
        training[s] = ofdm_demodulate(samples.subspan(s * sym_len, sym_len), cfg);
    return estimate_channel(training, training_spectrum(cfg, training_seed), cfg);
}

}  // namespace

void SweepConfig::validate() const {
    if (schemes.empty()) throw ConfigError("at least one scheme required");
    if (speeds_cm_s.empty() || distances_cm.empty())
        throw ConfigError("speed and distance grids must be nonempty");
    for (double v : speeds_cm_s)
        if (v < 0) throw ConfigError("speeds must be nonnegative");
    for (double d : distances_cm)
        if (d < 0) throw ConfigError("distances must be nonnegative");
    if (packets_per_point < 1) throw ConfigError("packets_per_point must be >= 1");
    if (calibration_packets < 1)
        throw ConfigError("calibration_packets must be >= 1");
    if (!(fec_ber_limit > 0.0 && fec_ber_limit < 0.5))
        throw ConfigError("fec_ber_limit must lie in (0, 0.5)");
    if (replicate_count < 1) throw ConfigError("replicate_count must be >= 1");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (loading.target_bits < 0 ||
        loading.target_bits > kMaxBitsPerSubcarrier * ofdm.n_data_subcarriers)
        throw ConfigError("loading target out of range");
    // equal rate is the controlled variable of the comparison
    if (loading.target_bits != 2 * ofdm.n_data_subcarriers)
        throw ConfigError(
            "loading target_bits must equal 2*n_data_subcarriers so every "
            "scheme runs at the same rate");
    ofdm.validate();
    laser.validate();
    mobility.validate();
    link.validate();
}

double percentile(std::vector<double> values, double q) {
    if (values.empty())
        throw std::invalid_argument("percentile: empty input");
    std::sort(values.begin(), values.end());
    const double rank = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

TrialResult run_point(const SweepConfig& cfg, Scheme scheme, double speed_cm_s,
                      double distance_cm, int replicate) {
    const OfdmConfig& ofdm = cfg.ofdm;
    const int nd = ofdm.n_data_subcarriers;

    MobilityProfile prof = cfg.mobility;
    prof.speed_cm_s = speed_cm_s;
    prof.lateral_distance_cm = distance_cm;

    MobilityProfile cal_prof = prof;
    if (!cfg.recalibrate_per_pair) cal_prof.speed_cm_s = cfg.speeds_cm_s.front();

    // Calibration: DMT probes uniform 4QAM packets on the calibration seed
    // stream; OFDM and OCT never draw a channel realization here.
    const LoadingTable probe_loading = LoadingTable::uniform(nd, 2);
    const ProbeRunner runner = [&](int j) {
        const uint64_t chan_seed = derive_seed(cfg.master_seed, Stream::Channel,
                                               Phase::Calibration, replicate, j);
        const uint64_t pay_seed = derive_seed(cfg.master_seed, Stream::Payload,
                                              Phase::Calibration, replicate, j);
        const auto bits = prbs_bits(
            pay_seed, static_cast<std::size_t>(probe_loading.total_bits()) *
                          ofdm.n_data_symbols);
        const Packet pkt = build_packet(bits, probe_loading, Precoder::None,
                                        ofdm, cfg.training_seed);
        const double t = capture_time(j, cfg.calibration_packets, cal_prof);
        const auto real = make_realization(j, t, cal_prof, chan_seed);
        const auto rx = transmit_packet(pkt.waveform, real, cal_prof, cfg.laser,
                                        cfg.link, ofdm.dac_rate, ofdm.adc_rate);
        return estimate_from_samples(rx, ofdm, cfg.training_seed);
    };
    LoadingTable loading =
        calibrate(scheme, runner, ofdm, cfg.calibration_packets, cfg.loading);

    const Precoder precoder =
        scheme == Scheme::Oct ? Precoder::Oct : Precoder::None;
    OctMatrix oct;
    if (precoder == Precoder::Oct) oct = build_oct(nd);

    TrialResult res;
    res.scheme = scheme;
    res.speed_cm_s = speed_cm_s;
    res.distance_cm = distance_cm;
    res.replicate = replicate;
    res.loading = loading;
    res.packets.resize(cfg.packets_per_point);

    const std::size_t n_bits =
        static_cast<std::size_t>(loading.total_bits()) * ofdm.n_data_symbols;
    for (int i = 0; i < cfg.packets_per_point; ++i) {
        const uint64_t chan_seed = derive_seed(cfg.master_seed, Stream::Channel,
                                               Phase::Measurement, replicate, i);
        const uint64_t pay_seed = derive_seed(cfg.master_seed, Stream::Payload,
                                              Phase::Measurement, replicate, i);
        const auto bits = prbs_bits(pay_seed, n_bits);
        const Packet pkt =
            build_packet(bits, loading, precoder, ofdm, cfg.training_seed);
        const double t = capture_time(i, cfg.packets_per_point, prof);
        const auto real = make_realization(i, t, prof, chan_seed);
        const auto rx = transmit_packet(pkt.waveform, real, prof, cfg.laser,
                                        cfg.link, ofdm.dac_rate, ofdm.adc_rate);
        const ReceiveOutcome out = receive_packet(rx, loading, precoder, ofdm,
                                                  cfg.training_seed, &oct);
        PacketRecord& rec = res.packets[i];
        rec.packet_index = i;
        rec.offset_cm = real.offset_cm;
        rec.ber = out.lost ? 0.5 : compute_ber(bits, out.bits);
        rec.lost = rec.ber > cfg.fec_ber_limit;
    }

    std::vector<double> bers(res.packets.size());
    int lost = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < res.packets.size(); ++i) {
        bers[i] = res.packets[i].ber;
        sum += bers[i];
        lost += res.packets[i].lost ? 1 : 0;
    }
    res.packet_loss_rate = static_cast<double>(lost) / bers.size();
    res.mean_ber = sum / bers.size();
    res.ber_p10 = percentile(bers, 0.10);
    res.ber_p25 = percentile(bers, 0.25);
    res.ber_median = percentile(bers, 0.50);
    res.ber_p75 = percentile(bers, 0.75);
    res.ber_p90 = percentile(bers, 0.90);
    return res;
}

std::vector<TrialResult> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    struct Point {
        Scheme scheme;
        double speed, distance;
        int replicate;
    };
    std::vector<Point> points;
    for (Scheme s : cfg.schemes)
        for (double v : cfg.speeds_cm_s)
            for (double d : cfg.distances_cm)
                for (int r = 0; r < cfg.replicate_count; ++r)
                    points.push_back({s, v, d, r});

    std::vector<TrialResult> results(points.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const Point& p = points[i];
                results[i] =
                    run_point(cfg, p.scheme, p.speed, p.distance, p.replicate);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    unsigned n_threads = cfg.threads > 0
                             ? static_cast<unsigned>(cfg.threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, points.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::string results_csv(const std::vector<TrialResult>& results) {
    std::string out =
        "scheme,speed_cm_s,distance_cm,replicate,packet_loss_rate,mean_ber,"
        "ber_p10,ber_p90\n";
    for (const auto& r : results) {
        out += scheme_name(r.scheme) + ',' + fmt(r.speed_cm_s) + ',' +
               fmt(r.distance_cm) + ',' + std::to_string(r.replicate) + ',' +
               fmt(r.packet_loss_rate) + ',' + fmt(r.mean_ber) + ',' +
               fmt(r.ber_p10) + ',' + fmt(r.ber_p90) + '\n';
    }
    return out;
}

std::string packets_csv(const std::vector<TrialResult>& results) {
    std::string out =
        "scheme,speed_cm_s,distance_cm,replicate,packet_index,offset_cm,ber,"
        "lost\n";
    for (const auto& r : results)
        for (const auto& p : r.packets)
            out += scheme_name(r.scheme) + ',' + fmt(r.speed_cm_s) + ',' +
                   fmt(r.distance_cm) + ',' + std::to_string(r.replicate) + ',' +
                   std::to_string(p.packet_index) + ',' + fmt(p.offset_cm) +
                   ',' + fmt(p.ber) + ',' + (p.lost ? "1" : "0") + '\n';
    return out;
}

std::string loading_csv(const std::vector<TrialResult>& results) {
    std::string out =
        "scheme,speed_cm_s,distance_cm,replicate,subcarrier,bits,power\n";
    for (const auto& r : results) {
        if (r.scheme != Scheme::Dmt) continue;
        for (std::size_t k = 0; k < r.loading.bits.size(); ++k)
            out += scheme_name(r.scheme) + ',' + fmt(r.speed_cm_s) + ',' +
                   fmt(r.distance_cm) + ',' + std::to_string(r.replicate) + ',' +
                   std::to_string(k) + ',' + std::to_string(r.loading.bits[k]) +
                   ',' + fmt(r.loading.power[k]) + '\n';
    }
    return out;
}

std::string distribution_report(const std::vector<TrialResult>& results) {
    if (results.empty())
        throw std::invalid_argument("distribution_report: empty input");
    std::map<std::tuple<int, double, double>, std::vector<double>> groups;
    for (const auto& r : results) {
        auto& bucket =
            groups[{static_cast<int>(r.scheme), r.speed_cm_s, r.distance_cm}];
        for (const auto& p : r.packets) bucket.push_back(p.ber);
    }
    std::string out =
        "scheme,speed_cm_s,distance_cm,mean_ber,ber_p10,ber_p25,ber_median,"
        "ber_p75,ber_p90\n";
    for (const auto& [key, bers] : groups) {
        const auto& [scheme_idx, v, d] = key;
        double sum = 0.0;
        for (double b : bers) sum += b;
        out += scheme_name(static_cast<Scheme>(scheme_idx)) + ',' + fmt(v) +
               ',' + fmt(d) + ',' + fmt(sum / bers.size()) + ',' +
               fmt(percentile(bers, 0.10)) + ',' + fmt(percentile(bers, 0.25)) +
               ',' + fmt(percentile(bers, 0.50)) + ',' +
               fmt(percentile(bers, 0.75)) + ',' + fmt(percentile(bers, 0.90)) +
               '\n';
    }
    return out;
}

namespace {

std::vector<ScalarSweepPoint> sweep_laser_scalar(const SweepConfig& cfg,
                                                 double from, double to,
                                                 double step, bool bias) {
    if (!(step > 0) || to < from)
        throw ConfigError("scalar sweep needs from <= to and step > 0");
    SweepConfig point_cfg = cfg;
    point_cfg.mobility.speed_cm_s = 0.0;
    point_cfg.mobility.lateral_distance_cm = 0.0;
    std::vector<ScalarSweepPoint> out;
    for (double x = from; x <= to + 1e-9; x += step) {
        if (bias)
            point_cfg.laser.bias_v = x;
        else
            point_cfg.laser.amplification_db = x;
        const TrialResult r =
            run_point(point_cfg, Scheme::Ofdm, 0.0, 0.0, /*replicate=*/0);
        out.push_back({x, r.mean_ber, r.packet_loss_rate});
    }
    return out;
}

}  // namespace

std::vector<ScalarSweepPoint> sweep_bias(const SweepConfig& cfg, double from_v,
                                         double to_v, double step_v) {
    return sweep_laser_scalar(cfg, from_v, to_v, step_v, true);
}

std::vector<ScalarSweepPoint> sweep_amplification(const SweepConfig& cfg,
                                                  double from_db, double to_db,
                                                  double step_db) {
    return sweep_laser_scalar(cfg, from_db, to_db, step_db, false);
}

std::string scalar_sweep_csv(const std::vector<ScalarSweepPoint>& points,
                             const std::string& value_header) {
    std::string out = value_header + ",mean_ber,packet_loss_rate\n";
    for (const auto& p : points)
        out += fmt(p.value) + ',' + fmt(p.mean_ber) + ',' +
               fmt(p.packet_loss_rate) + '\n';
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::string s((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
    return s;
}

void dump_waveform_f32(const std::string& path, std::span<const double> samples) {
    static_assert(std::endian::native == std::endian::little,
                  "f32 dumps assume a little-endian host");
    std::string bytes(samples.size() * sizeof(float), '\0');
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const float v = static_cast<float>(samples[i]);
        std::memcpy(bytes.data() + i * sizeof(float), &v, sizeof(float));
    }
    write_file(path, bytes);
}

}  // namespace mobivlc
