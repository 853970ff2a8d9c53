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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobivlc/channel.hpp"
#include "mobivlc/fft.hpp"
#include "mobivlc/ofdm.hpp"
#include "mobivlc/rng.hpp"

using namespace mobivlc;

namespace {

MobilityProfile profile(double d, double v, double kappa = 0.004) {
    MobilityProfile p;
    p.lateral_distance_cm = d;
    p.speed_cm_s = v;
    p.jitter_coeff = kappa;
    return p;
}

}  // namespace

TEST_CASE("triangle trajectory hits the stated waypoints") {
    const auto p = profile(50.0, 20.0);
    CHECK(trajectory_offset(0.0, p) == doctest::Approx(-25.0));
    CHECK(trajectory_offset(1.25, p) == doctest::Approx(0.0));
    CHECK(trajectory_offset(2.5, p) == doctest::Approx(25.0));
    CHECK(trajectory_offset(3.75, p) == doctest::Approx(0.0));
    CHECK(trajectory_offset(5.0, p) == doctest::Approx(-25.0));
    // v = 0 freezes at the start of the track
    CHECK(trajectory_offset(123.0, profile(50.0, 0.0)) == doctest::Approx(-25.0));
}

TEST_CASE("one-way trajectory clamps at the far end") {
    auto p = profile(50.0, 20.0);
    p.trajectory = Trajectory::OneWay;
    CHECK(trajectory_offset(0.0, p) == doctest::Approx(-25.0));
    CHECK(trajectory_offset(1.25, p) == doctest::Approx(0.0));
    CHECK(trajectory_offset(100.0, p) == doctest::Approx(25.0));
}

TEST_CASE("beam gain follows the Gaussian roll-off") {
    const auto p = profile(50.0, 0.0);
    CHECK(beam_gain(0.0, p) == doctest::Approx(1.0));
    CHECK(beam_gain(25.0, p) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(beam_gain(25.0, p) == doctest::Approx(0.6065).epsilon(1e-3));
    CHECK(beam_gain(-25.0, p) == beam_gain(25.0, p));
}

TEST_CASE("laser transfer: operating point, linear region, clipping") {
    LaserModel m;
    std::vector<double> quiet(64, 0.0);
    for (double y : laser_transfer(quiet, m))
        CHECK(y == doctest::Approx(2.0).epsilon(1e-12));

    // 1 V sinusoid stays inside [threshold, saturation]: undistorted
    std::vector<double> sine(256), big(256);
    for (int i = 0; i < 256; ++i) {
        sine[i] = 1.0 * std::sin(2.0 * std::numbers::pi * 7 * i / 256.0);
        big[i] = 3.0 * std::sin(2.0 * std::numbers::pi * 7 * i / 256.0);
    }
    const auto lin = laser_transfer(sine, m);
    for (int i = 0; i < 256; ++i)
        CHECK(lin[i] == doctest::Approx(2.0 + sine[i]).epsilon(1e-12));

    // 3 V sinusoid clips at both rails: odd harmonics appear
    const auto clipped = laser_transfer(big, m);
    std::vector<cplx> t(256), f(256);
    for (int i = 0; i < 256; ++i) t[i] = cplx(clipped[i], 0.0);
    fft_forward(t.data(), f.data(), 256);
    CHECK(std::abs(f[21]) > 1e-3 * std::abs(f[7]));  // third harmonic of bin 7
    double peak = 0.0;
    for (double y : clipped) peak = std::max(peak, y);
    CHECK(peak == doctest::Approx(4.0).epsilon(1e-12));  // slope * (8 - 4)
}

TEST_CASE("amplify scales a unit-RMS waveform to the drive level") {
    LaserModel m;
    std::vector<double> one(1000, 1.0);  // RMS 1 by construction

    m.amplification_db = 0.0;
    auto d = amplify(one, m);
    CHECK(d[0] == doctest::Approx(0.05).epsilon(1e-12));

    m.amplification_db = 20.0;
    d = amplify(one, m);
    CHECK(d[0] == doctest::Approx(0.5).epsilon(1e-12));

    m.amplification_db = 25.0;
    d = amplify(one, m);
    CHECK(d[0] == doctest::Approx(0.889).epsilon(1e-3));
}

TEST_CASE("lowpass: DC gain 1, -3 dB near f3db, identity limit") {
    LinkResponse r;
    r.f3db_hz = 6e6;  // 2% of the rate: the pole sits where expected
    const double rate = 300e6;

    std::vector<double> step(4096, 1.0);
    const auto settled = lowpass(step, r, rate);
    CHECK(settled.back() == doctest::Approx(1.0).epsilon(1e-6));

    // magnitude response via a long impulse response
    std::vector<double> impulse(1 << 15, 0.0);
    impulse[0] = 1.0;
    const auto h = lowpass(impulse, r, rate);
    const int n = static_cast<int>(h.size());
    std::vector<cplx> t(n), f(n);
    for (int i = 0; i < n; ++i) t[i] = cplx(h[i], 0.0);
    fft_forward(t.data(), f.data(), n);
    const int k3 = static_cast<int>(std::round(r.f3db_hz / rate * n));
    const double mag_db =
        20.0 * std::log10(std::abs(f[k3]) / std::abs(f[0]));
    CHECK(mag_db == doctest::Approx(-3.0).epsilon(0.1));

    r.f3db_hz = 1e12;  // a -> 1: identity
    std::mt19937_64 rng(601);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(512);
    for (auto& v : x) v = u(rng);
    const auto y = lowpass(x, r, rate);
    for (int i = 0; i < 512; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("resample: DC preservation and tone fidelity") {
    std::vector<double> dc(2000, 0.7);
    const auto up = resample(dc, 300e6, 625e6);
    CHECK(up.size() == static_cast<std::size_t>((2000 * 25 + 11) / 12));
    for (std::size_t i = 200; i + 200 < up.size(); ++i)
        CHECK(up[i] == doctest::Approx(0.7).epsilon(1e-6));

    // 50 MHz tone at 300 MS/s survives the round trip within 1%
    const int n = 3000;
    std::vector<double> tone(n);
    for (int i = 0; i < n; ++i)
        tone[i] = std::sin(2.0 * std::numbers::pi * 50e6 * i / 300e6);
    auto rt = resample(resample(tone, 300e6, 625e6), 625e6, 300e6);
    rt.resize(n);
    for (int i = 100; i < n - 100; ++i)
        CHECK(rt[i] == doctest::Approx(tone[i]).epsilon(0.01).scale(1.0));
}

TEST_CASE("resample: band-limited roundtrip error under 1e-3 of RMS") {
    // random signal occupying < 0.4 of Nyquist (60 MHz of 150)
    const int n = 4096;
    const int occupied = static_cast<int>(0.4 * n / 2) - 1;
    std::mt19937_64 rng(602);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> bins(n, cplx(0, 0));
    for (int k = 1; k <= occupied; ++k) {
        bins[k] = cplx(u(rng), u(rng));
        bins[n - k] = std::conj(bins[k]);
    }
    std::vector<cplx> time(n);
    fft_inverse(bins.data(), time.data(), n);
    std::vector<double> x(n);
    double rms = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = time[i].real();
        rms += x[i] * x[i];
    }
    rms = std::sqrt(rms / n);

    auto rt = resample(resample(x, 300e6, 625e6), 625e6, 300e6);
    rt.resize(n);
    double worst = 0.0;
    for (int i = 100; i < n - 100; ++i)
        worst = std::max(worst, std::abs(rt[i] - x[i]));
    CHECK(worst / rms < 1e-3);
}

TEST_CASE("resample rejects non-rational and oversized ratios") {
    std::vector<double> x(100, 0.0);
    CHECK_THROWS_AS((void)resample(x, 300e6, 300e6 * std::numbers::pi),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)resample(x, 1.0, 65.0 / 1.0), std::invalid_argument);
    CHECK_NOTHROW((void)resample(x, 300e6, 625e6));
}

TEST_CASE("capture times spread the packets over two traversal periods") {
    const auto p = profile(50.0, 20.0);  // period 5 s, window 10 s
    CHECK(capture_time(0, 500, p) == doctest::Approx(0.01));
    CHECK(capture_time(499, 500, p) == doctest::Approx(9.99));
    CHECK(capture_time(0, 500, profile(50.0, 0.0)) == 0.0);
}

TEST_CASE("offset histogram over the capture window is uniform") {
    const auto p = profile(50.0, 20.0);
    const int n = 500, bins = 10;
    std::vector<int> hist(bins, 0);
    for (int i = 0; i < n; ++i) {
        const double off = trajectory_offset(capture_time(i, n, p), p);
        int b = static_cast<int>((off + 25.0) / 50.0 * bins);
        b = std::clamp(b, 0, bins - 1);
        hist[b]++;
    }
    // chi-squared against uniform; 5% critical value for 9 dof is 16.92
    double chi2 = 0.0;
    const double expect = static_cast<double>(n) / bins;
    for (int c : hist) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 16.92);
}

TEST_CASE("jitter statistics: ln(gain) std is kappa*v") {
    const auto p = profile(50.0, 40.0, 0.004);  // sigma = 0.16
    double sum = 0.0, sum2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto r = make_realization(i, 0.0, p, splitmix64(i));
        const double ln = std::log(r.jitter_gain);
        sum += ln;
        sum2 += ln * ln;
    }
    const double std_ln = std::sqrt(sum2 / n - (sum / n) * (sum / n));
    CHECK(std_ln == doctest::Approx(0.16).epsilon(0.02));

    // v = 0: no jitter at all
    const auto r0 = make_realization(3, 0.0, profile(50.0, 0.0), 9);
    CHECK(r0.jitter_gain == 1.0);
}

TEST_CASE("transmit_packet is deterministic in (seed, index, configs)") {
    OfdmConfig cfg;
    cfg.n_data_symbols = 2;
    cfg.n_training_symbols = 2;
    const auto loading = LoadingTable::uniform(cfg.n_data_subcarriers, 2);
    const auto bits = prbs_bits(9, static_cast<std::size_t>(loading.total_bits()) *
                                       cfg.n_data_symbols);
    const auto pkt = build_packet(bits, loading, Precoder::None, cfg, 3);
    const auto p = profile(50.0, 20.0);
    LaserModel laser;
    LinkResponse link;
    const auto r = make_realization(7, 1.0, p, 12345);
    const auto a = transmit_packet(pkt.waveform, r, p, laser, link, 300e6, 625e6);
    const auto b = transmit_packet(pkt.waveform, r, p, laser, link, 300e6, 625e6);
    CHECK(a == b);
}

TEST_CASE("transparent channel: proportional output, zero BER, all schemes") {
    OfdmConfig cfg;
    cfg.n_data_symbols = 8;
    LaserModel laser;
    laser.amplification_db = 10.0;  // drive peaks stay inside the linear region
    LinkResponse link;
    link.f3db_hz = 750e6;  // >= 5x the signal band
    link.noise_std = 0.0;
    const auto p = profile(0.0, 0.0, 0.0);

    for (Precoder prec : {Precoder::None, Precoder::Oct}) {
        const auto loading = LoadingTable::uniform(cfg.n_data_subcarriers, 2);
        const auto bits =
            prbs_bits(77, static_cast<std::size_t>(loading.total_bits()) *
                              cfg.n_data_symbols);
        const auto pkt = build_packet(bits, loading, prec, cfg, 4);
        const auto real = make_realization(0, 0.0, p, 55);
        CHECK(real.geometric_gain == 1.0);
        CHECK(real.jitter_gain == 1.0);
        const auto rx =
            transmit_packet(pkt.waveform, real, p, laser, link, 300e6, 625e6);
        const auto out = receive_packet(rx, loading, prec, cfg, 4);
        REQUIRE_FALSE(out.lost);
        CHECK(compute_ber(bits, out.bits) == 0.0);
    }
}

TEST_CASE("gain monotonicity: larger offsets never raise the estimated SNR") {
    OfdmConfig cfg;
    cfg.n_data_symbols = 0;
    LaserModel laser;
    LinkResponse link;  // defaults carry noise
    const auto prof = profile(60.0, 0.0, 0.0);
    const auto pkt = build_packet({}, LoadingTable::uniform(cfg.n_data_subcarriers, 0),
                                  Precoder::None, cfg, 5);

    double last = 1e300;
    for (double off : {0.0, 10.0, 20.0, 30.0}) {
        ChannelRealization r;
        r.offset_cm = off;
        r.geometric_gain = beam_gain(off, prof);
        r.jitter_gain = 1.0;
        r.rng_seed = 77;  // identical noise draws across offsets
        const auto rx =
            transmit_packet(pkt.waveform, r, prof, laser, link, 300e6, 625e6);
        const int sym = cfg.symbol_len();
        std::vector<SymbolSpectrum> tr(cfg.n_training_symbols);
        for (int s = 0; s < cfg.n_training_symbols; ++s)
            tr[s] = ofdm_demodulate(std::span(rx).subspan(s * sym, sym), cfg);
        const auto est = estimate_channel(tr, training_spectrum(cfg, 5), cfg);
        double snr = 0.0;
        for (int k = 0; k < cfg.n_data_subcarriers; ++k)
            snr += std::norm(est.gain[k]) / est.noise_var[k];
        CHECK(snr < last);
        last = snr;
    }
}

TEST_CASE("resampling-enabled chain passes low-band traffic cleanly") {
    OfdmConfig cfg;
    cfg.n_data_symbols = 4;
    LaserModel laser;
    laser.amplification_db = 10.0;
    LinkResponse link;
    link.f3db_hz = 750e6;
    link.noise_std = 0.0;
    link.include_resampling = true;
    const auto p = profile(0.0, 0.0, 0.0);

    // load only the lower half of the band; the converter stage is clean there
    LoadingTable low;
    low.bits.assign(cfg.n_data_subcarriers, 0);
    low.power.assign(cfg.n_data_subcarriers, 0.0);
    for (int k = 0; k < 64; ++k) {
        low.bits[k] = 2;
        low.power[k] = 1.0;
    }
    const auto bits = prbs_bits(88, static_cast<std::size_t>(low.total_bits()) *
                                        cfg.n_data_symbols);
    const auto pkt = build_packet(bits, low, Precoder::None, cfg, 6);
    const auto real = make_realization(0, 0.0, p, 66);
    const auto rx = transmit_packet(pkt.waveform, real, p, laser, link, 300e6, 625e6);
    REQUIRE(rx.size() == pkt.waveform.size());
    const auto out = receive_packet(rx, low, Precoder::None, cfg, 6);
    REQUIRE_FALSE(out.lost);
    CHECK(compute_ber(bits, out.bits) == 0.0);
}

TEST_CASE("model validation rejects inconsistent parameters") {
    LaserModel m;
    m.bias_v = 3.0;  // below threshold
    CHECK_THROWS_AS(m.validate(), ConfigError);
    MobilityProfile p;
    p.beam_sigma_cm = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    LinkResponse r;
    r.noise_std = -1.0;
    CHECK_THROWS_AS(r.validate(), ConfigError);
}
