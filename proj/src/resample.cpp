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
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mobivlc/channel.hpp"

namespace mobivlc {

namespace {

constexpr int kTapsPerPhase = 24;
constexpr double kKaiserBeta = 8.0;
constexpr int kMaxFactor = 64;

double bessel_i0(double x) {
    // power series; converges quickly for the beta range used here
    double sum = 1.0, term = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (k * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// L-phase bank of kTapsPerPhase taps each. The prototype is a Kaiser
// windowed sinc at the upsampled rate, centered on tap kTapsPerPhase/2 * L
// so the compensated group delay is a whole number of input samples. Each
// phase is normalized to unit DC gain.
struct PhaseBank {
    int L = 0;
    int M = 0;
    std::vector<std::vector<double>> taps;  // [phase][tap]
};

PhaseBank design_bank(int L, int M) {
    const int total = kTapsPerPhase * L;
    const int center = (kTapsPerPhase / 2) * L;
    // cutoff at the narrower of the two Nyquist bands, in cycles per
    // upsampled sample
    const double fc = 0.5 / std::max(L, M);
    const double i0b = bessel_i0(kKaiserBeta);

    std::vector<double> proto(total);
    for (int i = 0; i < total; ++i) {
        const double u = static_cast<double>(i - center) / center;  // [-1, 1)
        const double w =
            std::abs(u) <= 1.0
                ? bessel_i0(kKaiserBeta * std::sqrt(1.0 - u * u)) / i0b
                : 0.0;
        proto[i] = 2.0 * fc * sinc(2.0 * fc * (i - center)) * w;
    }

    PhaseBank bank;
    bank.L = L;
    bank.M = M;
    bank.taps.assign(L, std::vector<double>(kTapsPerPhase));
    for (int p = 0; p < L; ++p) {
        double sum = 0.0;
        for (int t = 0; t < kTapsPerPhase; ++t) {
            bank.taps[p][t] = proto[p + L * t];
            sum += bank.taps[p][t];
        }
        for (int t = 0; t < kTapsPerPhase; ++t) bank.taps[p][t] /= sum;
    }
    return bank;
}

const PhaseBank& bank_for(int L, int M) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, PhaseBank> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(L, M);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, design_bank(L, M)).first;
    return it->second;
}

void reduce_ratio(double from_rate, double to_rate, int& L, int& M) {
    for (int m = 1; m <= kMaxFactor; ++m) {
        const double l = to_rate * m / from_rate;
        const double rl = std::round(l);
        if (rl >= 1.0 && rl <= kMaxFactor && std::abs(l - rl) < 1e-9 * rl) {
            L = static_cast<int>(rl);
            M = m;
            return;
        }
    }
    throw std::invalid_argument(
        "resample: rate ratio does not reduce to L/M with L, M <= 64");
}

}  // namespace

std::vector<double> resample(std::span<const double> samples, double from_rate,
                             double to_rate) {
    if (!(from_rate > 0) || !(to_rate > 0))
        throw std::invalid_argument("resample: rates must be positive");
    int L = 1, M = 1;
    reduce_ratio(from_rate, to_rate, L, M);
    if (L == 1 && M == 1) return {samples.begin(), samples.end()};
    const PhaseBank& bank = bank_for(L, M);

    const long n_in = static_cast<long>(samples.size());
    const long n_out = (n_in * L + M - 1) / M;
    const int look_ahead = kTapsPerPhase / 2;  // center tap offset in inputs
    std::vector<double> out(n_out);
    for (long j = 0; j < n_out; ++j) {
        const long m = j * M;
        const int p = static_cast<int>(m % L);
        const long n0 = m / L + look_ahead;
        const auto& h = bank.taps[p];
        double acc = 0.0;
        for (int t = 0; t < kTapsPerPhase; ++t) {
            const long idx = n0 - t;
            if (idx >= 0 && idx < n_in) acc += h[t] * samples[idx];
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace mobivlc
