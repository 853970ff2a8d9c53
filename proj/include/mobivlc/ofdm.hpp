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

#include "mobivlc/oct.hpp"
#include "mobivlc/types.hpp"

namespace mobivlc {

/// Place data symbols on bins 1..n_data, zero DC and Nyquist, and fill the
/// conjugate mirror so the inverse transform is real.
SymbolSpectrum assemble_spectrum(std::span<const cplx> data_symbols,
                                 const OfdmConfig& cfg);

/// Unitary inverse DFT, real part, cyclic prefix prepended.
/// Output length fft_size + cp_len.
std::vector<double> ofdm_modulate(const SymbolSpectrum& spectrum,
                                  const OfdmConfig& cfg);

/// Drop the cyclic prefix and apply the unitary forward DFT.
SymbolSpectrum ofdm_demodulate(std::span<const double> samples,
                               const OfdmConfig& cfg);

/// The fixed pseudorandom 4QAM training spectrum shared by both ends.
SymbolSpectrum training_spectrum(const OfdmConfig& cfg, uint64_t training_seed);

/// Assemble a full packet: n_training copies of the training symbol followed
/// by the payload mapped per the loading table, optionally OCT-precoded, with
/// per-subcarrier amplitude sqrt(power[k]).
Packet build_packet(std::span<const uint8_t> payload_bits,
                    const LoadingTable& loading, Precoder precoder,
                    const OfdmConfig& cfg, uint64_t training_seed);

/// Least-squares estimate over the data subcarriers: H_k as the mean of
/// Y_k/X_k across training symbols, noise_var as the unbiased residual
/// variance. Needs at least two training symbols.
ChannelEstimate estimate_channel(std::span<const SymbolSpectrum> received_training,
                                 const SymbolSpectrum& reference_training,
                                 const OfdmConfig& cfg);

struct EqualizeResult {
    std::vector<cplx> symbols;  // Y_k / H_k over the data subcarriers
    bool lost = false;          // H_k == 0 hit on a loaded subcarrier
};

/// Zero-forcing one-tap equalizer. loaded[k] marks subcarriers that carry
/// bits; a zero gain there marks the packet lost rather than throwing.
EqualizeResult equalize(const SymbolSpectrum& spectrum, const ChannelEstimate& est,
                        std::span<const int> loaded_bits);

/// Bit error ratio between two equal-length bit sequences.
double compute_ber(std::span<const uint8_t> tx_bits, std::span<const uint8_t> rx_bits);

struct ReceiveOutcome {
    std::vector<uint8_t> bits;
    bool lost = false;
};

/// Full receive chain for one packet captured at dac_rate with ideal frame
/// timing: demodulate, estimate from the packet's own training symbols,
/// equalize, undo the power scaling and precoding, demap.
ReceiveOutcome receive_packet(std::span<const double> samples,
                              const LoadingTable& loading, Precoder precoder,
                              const OfdmConfig& cfg, uint64_t training_seed,
                              const OctMatrix* oct = nullptr);

/// Raw line rate in bits/s for one loading table at the configured DAC rate.
double raw_bit_rate(const OfdmConfig& cfg, const LoadingTable& loading);

}  // namespace mobivlc
