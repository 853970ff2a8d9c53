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

// Gray-coded QAM, orders {2, 4, 8, 16, 32, 64}, normalized to unit average
// symbol energy. Even bit counts are square constellations; odd bit counts
// use the rectangular I x Q split (4x2 for 8QAM, 8x4 for 32QAM) so the
// labeling stays exactly Gray per axis. The first half of the label drives
// I, the second half Q (the extra bit of odd orders goes to I).

bool qam_order_supported(int order);

/// Map log2(order) bits (MSB first) to a constellation point.
cplx gray_qam_map(std::span<const uint8_t> bits, int order);

/// Hard decision: bits of the nearest constellation point. Exact-distance
/// ties resolve to the smaller bit label.
std::vector<uint8_t> gray_qam_demap(cplx symbol, int order);

/// Allocation-free demap into out_bits (log2(order) entries).
void gray_qam_demap(cplx symbol, int order, uint8_t* out_bits);

/// All order constellation points in label order (label = bits as an integer).
std::span<const cplx> qam_constellation(int order);

}  // namespace mobivlc
