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
#include "mobivlc/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mobivlc/fft.hpp"
#include "mobivlc/qam.hpp"
#include "mobivlc/rng.hpp"

namespace mobivlc {

void OfdmConfig::validate() const {
    if (fft_size < 4 || (fft_size & (fft_size - 1)) != 0)
        throw ConfigError("fft_size must be a power of two >= 4");
    if (cp_num <= 0 || cp_den <= 0 || (fft_size * cp_num) % cp_den != 0)
        throw ConfigError("cp ratio must give a whole number of samples");
    if (n_data_subcarriers < 1 || n_data_subcarriers > fft_size / 2 - 1)
        throw ConfigError("n_data_subcarriers must be in [1, fft_size/2 - 1]");
    if (n_data_symbols < 0 || n_training_symbols < 1)
        throw ConfigError("symbol counts out of range");
    if (!(dac_rate > 0) || !(adc_rate > 0))
        throw ConfigError("converter rates must be positive");
}

int LoadingTable::total_bits() const {
    return std::accumulate(bits.begin(), bits.end(), 0);
}

void LoadingTable::validate(int target_bits) const {
    if (bits.size() != power.size())
        throw ConfigError("loading table bits/power length mismatch");
    double sum = 0.0;
    int loaded = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] < 0 || bits[k] > 6)
            throw ConfigError("loading bits must be in 0..6");
        if (bits[k] == 0 && power[k] != 0.0)
            throw ConfigError("unloaded subcarrier must carry zero power");
        if (power[k] < 0.0) throw ConfigError("negative subcarrier power");
        if (bits[k] > 0) {
            sum += power[k];
            ++loaded;
        }
    }
    if (total_bits() != target_bits)
        throw ConfigError("loading table does not meet the bit target");
    if (loaded > 0 && std::abs(sum / loaded - 1.0) > 1e-9)
        throw ConfigError("loaded subcarrier power must average to 1");
}

LoadingTable LoadingTable::uniform(int n_subcarriers, int bits_per_subcarrier) {
    LoadingTable t;
    t.bits.assign(n_subcarriers, bits_per_subcarrier);
    t.power.assign(n_subcarriers, bits_per_subcarrier > 0 ? 1.0 : 0.0);
    return t;
}

SymbolSpectrum assemble_spectrum(std::span<const cplx> data_symbols,
                                 const OfdmConfig& cfg) {
    if (static_cast<int>(data_symbols.size()) != cfg.n_data_subcarriers)
        throw std::invalid_argument("assemble_spectrum: wrong input length");
    const int n = cfg.fft_size;
    SymbolSpectrum s;
    s.bins.assign(n, cplx(0.0, 0.0));
    for (int k = 1; k <= cfg.n_data_subcarriers; ++k) {
        s.bins[k] = data_symbols[k - 1];
        s.bins[n - k] = std::conj(data_symbols[k - 1]);
    }
    return s;
}

std::vector<double> ofdm_modulate(const SymbolSpectrum& spectrum,
                                  const OfdmConfig& cfg) {
    const int n = cfg.fft_size;
    if (static_cast<int>(spectrum.bins.size()) != n)
        throw std::invalid_argument("ofdm_modulate: wrong spectrum size");
    std::vector<cplx> time(n);
    fft_inverse(spectrum.bins.data(), time.data(), n);

    const int cp = cfg.cp_len();
    std::vector<double> out(n + cp);
    for (int i = 0; i < cp; ++i) out[i] = time[n - cp + i].real();
    for (int i = 0; i < n; ++i) out[cp + i] = time[i].real();
    return out;
}

SymbolSpectrum ofdm_demodulate(std::span<const double> samples,
                               const OfdmConfig& cfg) {
    const int n = cfg.fft_size;
    const int cp = cfg.cp_len();
    if (static_cast<int>(samples.size()) != n + cp)
        throw std::invalid_argument("ofdm_demodulate: wrong sample count");
    std::vector<cplx> time(n);
    for (int i = 0; i < n; ++i) time[i] = cplx(samples[cp + i], 0.0);
    SymbolSpectrum s;
    s.bins.resize(n);
    fft_forward(time.data(), s.bins.data(), n);
    return s;
}

SymbolSpectrum training_spectrum(const OfdmConfig& cfg, uint64_t training_seed) {
    std::mt19937_64 rng(splitmix64(training_seed ^ 0x7261696e696e67ULL));
    std::vector<cplx> syms(cfg.n_data_subcarriers);
    uint8_t b[2];
    for (auto& s : syms) {
        b[0] = static_cast<uint8_t>(rng() & 1u);
        b[1] = static_cast<uint8_t>(rng() & 1u);
        s = gray_qam_map({b, 2}, 4);
    }
    return assemble_spectrum(syms, cfg);
}

Packet build_packet(std::span<const uint8_t> payload_bits,
                    const LoadingTable& loading, Precoder precoder,
                    const OfdmConfig& cfg, uint64_t training_seed) {
    const int nd = cfg.n_data_subcarriers;
    if (static_cast<int>(loading.bits.size()) != nd)
        throw std::invalid_argument("build_packet: loading size mismatch");
    const long bits_per_symbol = loading.total_bits();
    if (static_cast<long>(payload_bits.size()) !=
        bits_per_symbol * cfg.n_data_symbols)
        throw std::invalid_argument("build_packet: payload does not match loading");

    Packet pkt;
    pkt.payload_bits.assign(payload_bits.begin(), payload_bits.end());
    pkt.loading = loading;
    pkt.precoder = precoder;
    pkt.waveform.reserve(cfg.packet_len());

    const SymbolSpectrum training = training_spectrum(cfg, training_seed);
    const auto training_time = ofdm_modulate(training, cfg);
    for (int s = 0; s < cfg.n_training_symbols; ++s)
        pkt.waveform.insert(pkt.waveform.end(), training_time.begin(),
                            training_time.end());

    OctMatrix oct;
    if (precoder == Precoder::Oct) oct = build_oct(nd);

    std::size_t pos = 0;
    std::vector<cplx> syms(nd);
    for (int s = 0; s < cfg.n_data_symbols; ++s) {
        for (int k = 0; k < nd; ++k) {
            const int b = loading.bits[k];
            if (b == 0) {
                syms[k] = cplx(0.0, 0.0);
                continue;
            }
            syms[k] = gray_qam_map({payload_bits.data() + pos,
                                    static_cast<std::size_t>(b)},
                                   1 << b);
            pos += b;
        }
        std::vector<cplx> shaped =
            precoder == Precoder::Oct ? oct_precode(syms, oct) : syms;
        for (int k = 0; k < nd; ++k) shaped[k] *= std::sqrt(loading.power[k]);
        const auto time = ofdm_modulate(assemble_spectrum(shaped, cfg), cfg);
        pkt.waveform.insert(pkt.waveform.end(), time.begin(), time.end());
    }
    return pkt;
}

ChannelEstimate estimate_channel(std::span<const SymbolSpectrum> received_training,
                                 const SymbolSpectrum& reference_training,
                                 const OfdmConfig& cfg) {
    const int nt = static_cast<int>(received_training.size());
    if (nt < 2)
        throw std::invalid_argument(
            "estimate_channel: need at least 2 training symbols");
    const int nd = cfg.n_data_subcarriers;

    ChannelEstimate est;
    est.gain.assign(nd, cplx(0.0, 0.0));
    est.noise_var.assign(nd, 0.0);
    for (int k = 1; k <= nd; ++k) {
        const cplx x = reference_training.bins[k];
        if (x == cplx(0.0, 0.0))
            throw std::invalid_argument(
                "estimate_channel: reference is zero on a data subcarrier");
        cplx mean(0.0, 0.0);
        for (int t = 0; t < nt; ++t) mean += received_training[t].bins[k] / x;
        mean /= static_cast<double>(nt);
        double resid = 0.0;
        for (int t = 0; t < nt; ++t)
            resid += std::norm(received_training[t].bins[k] - mean * x);
        est.gain[k - 1] = mean;
        est.noise_var[k - 1] = resid / (nt - 1);
    }
    return est;
}

EqualizeResult equalize(const SymbolSpectrum& spectrum, const ChannelEstimate& est,
                        std::span<const int> loaded_bits) {
    const int nd = static_cast<int>(est.gain.size());
    EqualizeResult res;
    res.symbols.assign(nd, cplx(0.0, 0.0));
    for (int k = 0; k < nd; ++k) {
        if (est.gain[k] == cplx(0.0, 0.0)) {
            if (k < static_cast<int>(loaded_bits.size()) && loaded_bits[k] > 0)
                res.lost = true;
            continue;
        }
        res.symbols[k] = spectrum.bins[k + 1] / est.gain[k];
    }
    return res;
}

double compute_ber(std::span<const uint8_t> tx_bits, std::span<const uint8_t> rx_bits) {
    if (tx_bits.empty()) throw std::invalid_argument("compute_ber: empty input");
    if (tx_bits.size() != rx_bits.size())
        throw std::invalid_argument("compute_ber: length mismatch");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < tx_bits.size(); ++i)
        errors += (tx_bits[i] ^ rx_bits[i]) & 1u;
    return static_cast<double>(errors) / static_cast<double>(tx_bits.size());
}

ReceiveOutcome receive_packet(std::span<const double> samples,
                              const LoadingTable& loading, Precoder precoder,
                              const OfdmConfig& cfg, uint64_t training_seed,
                              const OctMatrix* oct) {
    const int sym_len = cfg.symbol_len();
    if (static_cast<int>(samples.size()) != cfg.packet_len())
        throw std::invalid_argument("receive_packet: wrong sample count");
    const int nd = cfg.n_data_subcarriers;

    std::vector<SymbolSpectrum> training(cfg.n_training_symbols);
    for (int s = 0; s < cfg.n_training_symbols; ++s)
        training[s] =
            ofdm_demodulate(samples.subspan(s * sym_len, sym_len), cfg);
    const SymbolSpectrum reference = training_spectrum(cfg, training_seed);
    const ChannelEstimate est = estimate_channel(training, reference, cfg);

    OctMatrix local_oct;
    if (precoder == Precoder::Oct && oct == nullptr) {
        local_oct = build_oct(nd);
        oct = &local_oct;
    }

    ReceiveOutcome out;
    out.bits.resize(static_cast<std::size_t>(loading.total_bits()) *
                    cfg.n_data_symbols);
    std::size_t pos = 0;
    std::vector<cplx> symbols(nd);
    for (int s = 0; s < cfg.n_data_symbols; ++s) {
        const auto spec = ofdm_demodulate(
            samples.subspan((cfg.n_training_symbols + s) * sym_len, sym_len), cfg);
        EqualizeResult eq = equalize(spec, est, loading.bits);
        if (eq.lost) {
            out.lost = true;
            out.bits.clear();
            return out;
        }
        for (int k = 0; k < nd; ++k)
            symbols[k] = loading.power[k] > 0.0
                             ? eq.symbols[k] / std::sqrt(loading.power[k])
                             : eq.symbols[k];
        if (precoder == Precoder::Oct) {
            const auto decoded = oct_decode(symbols, *oct);
            std::copy(decoded.begin(), decoded.end(), symbols.begin());
        }
        for (int k = 0; k < nd; ++k) {
            const int b = loading.bits[k];
            if (b == 0) continue;
            gray_qam_demap(symbols[k], 1 << b, out.bits.data() + pos);
            pos += b;
        }
    }
    return out;
}

double raw_bit_rate(const OfdmConfig& cfg, const LoadingTable& loading) {
    return cfg.dac_rate * static_cast<double>(loading.total_bits()) /
           static_cast<double>(cfg.symbol_len());
}

}  // namespace mobivlc
