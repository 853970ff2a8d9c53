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

#include <span>
#include <string>
#include <vector>

#include "mobivlc/types.hpp"

namespace mobivlc {

/// Real orthogonal circulant spreading transform over the data subcarriers.
///
/// The generator is the inverse DFT of a unit-modulus quadratic-phase
/// sequence (conjugate-symmetrized so the matrix is real), which gives a
/// perfectly flat eigenvalue spectrum and spreads every data symbol across
/// all subcarriers without any channel knowledge. first_row is the first
/// column of T, i.e. T * e0 = first_row and T[r][j] = first_row[(r - j) mod n].
struct OctMatrix {
    int n = 0;
    std::string generator;            // construction tag, "quadratic-phase"
    std::vector<double> first_row;    // circulant generator
    std::vector<cplx> eigenvalues;    // DFT of first_row, all unit modulus

    /// Materializes the dense matrix (tests and small-n analysis only).
    std::vector<std::vector<double>> dense() const;
};

/// Build the order-n transform. Throws on n < 1.
OctMatrix build_oct(int n);

/// T * symbols via the length-n DFT fast path. Energy preserving.
std::vector<cplx> oct_precode(std::span<const cplx> symbols, const OctMatrix& oct);

/// T' * symbols (= inverse by orthogonality), same fast path.
std::vector<cplx> oct_decode(std::span<const cplx> symbols, const OctMatrix& oct);

}  // namespace mobivlc
