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
#include <random>
#include <vector>

namespace mobivlc {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Named sub-streams hashed into derived seeds. Packet-level streams are
/// keyed only by (master, stream, replicate, phase, packet_index) so the
/// same channel and payload realizations pair up across schemes, speeds
/// and distances.
enum class Stream : uint64_t {
    Channel = 1,
    Payload = 2,
    Training = 3,
};

enum class Phase : uint64_t {
    Calibration = 1,
    Measurement = 2,
};

inline uint64_t derive_seed(uint64_t master, Stream stream, Phase phase,
                            int replicate, int packet_index) {
    uint64_t s = splitmix64(master);
    s = splitmix64(s ^ static_cast<uint64_t>(stream));
    s = splitmix64(s ^ static_cast<uint64_t>(phase));
    s = splitmix64(s ^ static_cast<uint64_t>(replicate));
    s = splitmix64(s ^ static_cast<uint64_t>(packet_index));
    return s;
}

/// Pseudorandom payload bits for one packet.
inline std::vector<uint8_t> prbs_bits(uint64_t seed, std::size_t n_bits) {
    std::vector<uint8_t> bits(n_bits);
    std::mt19937_64 rng(seed);
    uint64_t word = 0;
    int avail = 0;
    for (std::size_t i = 0; i < n_bits; ++i) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        bits[i] = static_cast<uint8_t>(word & 1u);
        word >>= 1;
        --avail;
    }
    return bits;
}

}  // namespace mobivlc
