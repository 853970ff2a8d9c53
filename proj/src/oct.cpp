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
#include "mobivlc/oct.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mobivlc/fft.hpp"

namespace mobivlc {

namespace {

// Quadratic phase angles, conjugate-symmetrized so the inverse DFT is real:
// theta_k = pi k^2 / n (even n) or pi k (k+1) / n (odd n) on the lower half,
// theta_{n-k} = -theta_k, theta_0 = 0. For even n the Nyquist phase must be
// 0 or pi; the formula value is kept when it already is (n % 4 == 0),
// otherwise it snaps to 0.
std::vector<double> quadratic_phases(int n) {
    std::vector<double> theta(n, 0.0);
    const double pi = std::numbers::pi;
    for (int k = 1; k <= (n - 1) / 2; ++k) {
        theta[k] = (n % 2 == 0) ? pi * k * k / n : pi * k * (k + 1) / n;
        theta[n - k] = -theta[k];
    }
    if (n % 2 == 0)
        theta[n / 2] = (n % 4 == 0 && (n / 4) % 2 == 1) ? pi : 0.0;
    return theta;
}

// y = IDFT(DFT(x) .* factors), unnormalized transforms cancel through 1/n.
std::vector<cplx> circulant_apply(std::span<const cplx> x,
                                  std::span<const cplx> factors) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> spec(n), out(n);
    fft_forward(x.data(), spec.data(), n);
    for (int k = 0; k < n; ++k) spec[k] *= factors[k];
    fft_inverse(spec.data(), out.data(), n);
    return out;
}

}  // namespace

OctMatrix build_oct(int n) {
    if (n < 1) throw std::invalid_argument("oct size must be at least 1");
    OctMatrix oct;
    oct.n = n;
    oct.generator = "quadratic-phase";
    oct.eigenvalues.resize(n);
    const auto theta = quadratic_phases(n);
    for (int k = 0; k < n; ++k)
        oct.eigenvalues[k] = std::polar(1.0, theta[k]);

    // generator = IDFT of the eigenvalues; imaginary residue is rounding only
    std::vector<cplx> t(n);
    fft_inverse(oct.eigenvalues.data(), t.data(), n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    oct.first_row.resize(n);
    for (int m = 0; m < n; ++m) oct.first_row[m] = t[m].real() * scale;
    return oct;
}

std::vector<std::vector<double>> OctMatrix::dense() const {
    std::vector<std::vector<double>> T(n, std::vector<double>(n));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j)
            T[r][j] = first_row[((r - j) % n + n) % n];
    return T;
}

std::vector<cplx> oct_precode(std::span<const cplx> symbols, const OctMatrix& oct) {
    if (static_cast<int>(symbols.size()) != oct.n)
        throw std::invalid_argument("oct precode length mismatch");
    return circulant_apply(symbols, oct.eigenvalues);
}

std::vector<cplx> oct_decode(std::span<const cplx> symbols, const OctMatrix& oct) {
    if (static_cast<int>(symbols.size()) != oct.n)
        throw std::invalid_argument("oct decode length mismatch");
    std::vector<cplx> conj_eig(oct.n);
    for (int k = 0; k < oct.n; ++k) conj_eig[k] = std::conj(oct.eigenvalues[k]);
    return circulant_apply(symbols, conj_eig);
}

}  // namespace mobivlc
