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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mobivlc {

using cplx = std::complex<double>;

/// Raised for bad user-facing configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a loading target cannot be met (CLI exit code 3).
struct InfeasibleLoadingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Frame geometry and converter rates for the OFDM/DMT modem.
struct OfdmConfig {
    int fft_size = 256;
    int cp_num = 1;                 // cyclic prefix ratio cp_num/cp_den of one symbol
    int cp_den = 32;
    int n_data_subcarriers = 127;   // data on bins 1..n_data_subcarriers
    int n_data_symbols = 200;
    int n_training_symbols = 20;
    double dac_rate = 300e6;
    double adc_rate = 625e6;

    int cp_len() const { return fft_size * cp_num / cp_den; }
    int symbol_len() const { return fft_size + cp_len(); }
    int packet_len() const { return (n_training_symbols + n_data_symbols) * symbol_len(); }

    void validate() const;
};

/// One OFDM symbol in the frequency domain, fft_size bins.
/// Valid spectra have bins[0] = bins[fft_size/2] = 0 and
/// bins[N-k] = conj(bins[k]) so the time-domain signal is real.
struct SymbolSpectrum {
    std::vector<cplx> bins;
};

/// Bits and linear power per data subcarrier. Power averages to 1 over
/// the loaded subcarriers; unloaded subcarriers carry zero power.
struct LoadingTable {
    std::vector<int> bits;
    std::vector<double> power;

    int total_bits() const;
    void validate(int target_bits) const;

    static LoadingTable uniform(int n_subcarriers, int bits_per_subcarrier);
};

/// Per-data-subcarrier SNR summary used by the bit/power loader.
struct SnrProfile {
    std::vector<double> snr;   // linear
    double gap = 1.0;          // SNR gap, linear, >= 1
};

/// Least-squares channel estimate from the training symbols.
struct ChannelEstimate {
    std::vector<cplx> gain;        // H_k per data subcarrier
    std::vector<double> noise_var; // sigma_k^2 per data subcarrier
};

enum class Precoder { None, Oct };

/// A fully assembled transmit packet.
struct Packet {
    std::vector<uint8_t> payload_bits;
    LoadingTable loading;
    Precoder precoder = Precoder::None;
    std::vector<double> waveform;   // real samples at dac_rate
};

}  // namespace mobivlc
