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
#include "mobivlc/qam.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mobivlc {

namespace {

int bits_per_symbol(int order) {
    switch (order) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        case 16: return 4;
        case 32: return 5;
        case 64: return 6;
        default: return 0;
    }
}

// Gray-coded PAM level for an m-bit axis code. Code 0 maps to the most
// positive level and adjacent levels differ in exactly one code bit.
double pam_level(unsigned code, int m) {
    const unsigned levels = 1u << m;
    // invert code -> index in the Gray sequence g(i) = i ^ (i >> 1)
    unsigned idx = 0;
    for (unsigned i = 0; i < levels; ++i) {
        if ((i ^ (i >> 1)) == code) {
            idx = i;
            break;
        }
    }
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(idx);
}

std::vector<cplx> make_constellation(int order) {
    const int m = bits_per_symbol(order);
    const int mi = (m + 1) / 2;  // I bits (extra bit of odd orders)
    const int mq = m - mi;       // Q bits
    const double li = static_cast<double>(1u << mi);
    const double lq = static_cast<double>(1u << mq);
    // mean square of +/-1, +/-3, ... over 2^m levels is (L^2 - 1)/3
    double energy = (li * li - 1.0) / 3.0;
    if (mq > 0) energy += (lq * lq - 1.0) / 3.0;
    const double scale = 1.0 / std::sqrt(energy);

    std::vector<cplx> pts(order);
    for (int label = 0; label < order; ++label) {
        const unsigned code_i = static_cast<unsigned>(label) >> mq;
        const unsigned code_q = static_cast<unsigned>(label) & ((1u << mq) - 1u);
        const double re = pam_level(code_i, mi) * scale;
        const double im = mq > 0 ? pam_level(code_q, mq) * scale : 0.0;
        pts[label] = cplx(re, im);
    }
    return pts;
}

const std::vector<cplx>& constellation(int order) {
    static const std::array<std::vector<cplx>, 6> tables = {
        make_constellation(2),  make_constellation(4),  make_constellation(8),
        make_constellation(16), make_constellation(32), make_constellation(64)};
    switch (order) {
        case 2: return tables[0];
        case 4: return tables[1];
        case 8: return tables[2];
        case 16: return tables[3];
        case 32: return tables[4];
        case 64: return tables[5];
        default: throw std::invalid_argument("unsupported QAM order");
    }
}

}  // namespace

bool qam_order_supported(int order) { return bits_per_symbol(order) > 0; }

cplx gray_qam_map(std::span<const uint8_t> bits, int order) {
    const int m = bits_per_symbol(order);
    if (m == 0) throw std::invalid_argument("unsupported QAM order");
    if (static_cast<int>(bits.size()) != m)
        throw std::invalid_argument("bit count does not match QAM order");
    unsigned label = 0;
    for (int i = 0; i < m; ++i) label = (label << 1) | (bits[i] & 1u);
    return constellation(order)[label];
}

void gray_qam_demap(cplx symbol, int order, uint8_t* out_bits) {
    const int m = bits_per_symbol(order);
    if (m == 0) throw std::invalid_argument("unsupported QAM order");
    const auto& pts = constellation(order);
    int best = 0;
    double best_d2 = std::norm(symbol - pts[0]);
    for (int label = 1; label < order; ++label) {
        const double d2 = std::norm(symbol - pts[label]);
        if (d2 < best_d2) {  // strict: ties keep the smaller label
            best_d2 = d2;
            best = label;
        }
    }
    for (int i = 0; i < m; ++i)
        out_bits[i] = static_cast<uint8_t>((best >> (m - 1 - i)) & 1);
}

std::vector<uint8_t> gray_qam_demap(cplx symbol, int order) {
    std::vector<uint8_t> bits(bits_per_symbol(order));
    gray_qam_demap(symbol, order, bits.data());
    return bits;
}

std::span<const cplx> qam_constellation(int order) {
    const auto& pts = constellation(order);
    return {pts.data(), pts.size()};
}

}  // namespace mobivlc
