// Copyright 2026 The qSGAN Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense-matrix reference simulator used only as a test oracle. It builds the full 2^n x 2^n
// unitary of every gate by Kronecker products and shares no code with the library kernels.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qsgan/qcircuit.hpp"

namespace qsgan::testing {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

inline Matrix identity(std::size_t dim) {
    Matrix m(dim, std::vector<cplx>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
        m[i][i] = 1.0;
    }
    return m;
}

inline Matrix matmul(const Matrix &a, const Matrix &b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == cplx(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    Matrix c(na * nb, std::vector<cplx>(na * nb, 0.0));
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    c[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return c;
}

inline Matrix pauli(Axis axis) {
    const cplx i(0.0, 1.0);
    switch (axis) {
        case Axis::X:
            return {{0.0, 1.0}, {1.0, 0.0}};
        case Axis::Y:
            return {{0.0, -i}, {i, 0.0}};
        case Axis::Z:
            return {{1.0, 0.0}, {0.0, -1.0}};
    }
    return identity(2);
}

// cos(t/2) I - i sin(t/2) sigma
inline Matrix rotation(Axis axis, double angle) {
    const Matrix sigma = pauli(axis);
    Matrix r = identity(2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            r[a][b] = std::cos(angle / 2) * r[a][b] - cplx(0.0, std::sin(angle / 2)) * sigma[a][b];
        }
    }
    return r;
}

// Qubit k is bit k of the basis index, so the Kronecker order is q_{n-1} x ... x q_0.
inline Matrix single_qubit_operator(const Matrix &gate, std::size_t qubit, std::size_t n) {
    Matrix op = {{1.0}};
    for (std::size_t k = n; k-- > 0;) {
        op = kron(op, k == qubit ? gate : identity(2));
    }
    return op;
}

inline Matrix cnot_operator(std::size_t control, std::size_t target, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix op(dim, std::vector<cplx>(dim, 0.0));
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t row = ((col >> control) & 1U) ? col ^ (std::size_t{1} << target) : col;
        op[row][col] = 1.0;
    }
    return op;
}

inline Matrix circuit_unitary(const AnsatzSpec &spec, std::span<const double> theta) {
    Matrix u = identity(std::size_t{1} << spec.n_qubits);
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        for (std::size_t k = 0; k < spec.n_qubits; ++k) {
            const auto gate = rotation(spec.axis(layer, k), theta[layer * spec.n_qubits + k]);
            u = matmul(single_qubit_operator(gate, k, spec.n_qubits), u);
        }
        for (const auto &c : spec.entanglers[layer]) {
            u = matmul(cnot_operator(c.control, c.target, spec.n_qubits), u);
        }
    }
    return u;
}

inline std::vector<double> reference_distribution(const AnsatzSpec &spec, std::span<const double> theta) {
    const Matrix u = circuit_unitary(spec, theta);
    std::vector<double> p(u.size());
    for (std::size_t x = 0; x < u.size(); ++x) {
        p[x] = std::norm(u[x][0]);
    }
    return p;
}

}  // namespace qsgan::testing
