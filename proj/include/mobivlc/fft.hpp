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
#include <vector>

namespace mobivlc {

// Thin FFTW front end. Plans are cached per size and created with
// FFTW_ESTIMATE | FFTW_UNALIGNED, so execution is reproducible across runs
// and safe from multiple threads on distinct buffers.

/// Unitary forward DFT (1/sqrt(n) scaling). in and out must not alias.
void fft_forward(const std::complex<double>* in, std::complex<double>* out, int n);

/// Unitary inverse DFT (1/sqrt(n) scaling). in and out must not alias.
void fft_inverse(const std::complex<double>* in, std::complex<double>* out, int n);

inline std::vector<std::complex<double>> fft_forward(
    const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> out(in.size());
    fft_forward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

inline std::vector<std::complex<double>> fft_inverse(
    const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> out(in.size());
    fft_inverse(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

}  // namespace mobivlc
