#pragma once

#include "cousinlab/exact_real.hpp"
#include "cousinlab/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cousinlab {

using RealMat = Mat<ExactReal>;
using ComplexMat = Mat<ExactComplex>;

// Lattice in C^n generated by the columns of
//
//     [ 0        I_m   M + iN ]
//     [ I_{n-m}  R1    R2     ]
//
// with M, N real m x m, N invertible, R1 and R2 real (n-m) x m.
struct PeriodMatrix {
    int n = 0, m = 0;
    RealMat M, N, R1, R2;

    PeriodMatrix() = default;
    PeriodMatrix(int n, int m, RealMat M, RealMat N, RealMat R1, RealMat R2);

    int rank_real() const { return n - m; }
    // [R1 | R2], shape (n-m) x 2m.
    RealMat R() const;
    // All n + m generators as columns of an n x (n+m) complex matrix, in the
    // order v_1..v_{n-m}, (I; R1), (M+iN; R2).
    ComplexMat columns() const;
    // Power-basis field shared by the irrational entries, if any.
    FieldPtr field() const;
};

bool operator==(const PeriodMatrix& a, const PeriodMatrix& b);

// normalize() output. coord_change * basis * column_transform equals
// P.columns() exactly, with column_transform unimodular.
struct Normalization {
    PeriodMatrix P;
    ComplexMat coord_change;
    IntMat column_transform;
    bool fast_path = false;
};

Normalization normalize(const ComplexMat& basis, int m);

struct CousinCertificate {
    bool cousin = true;
    std::vector<Integer> sigma; // empty when cousin
    std::vector<Integer> tau;
    // Basis of the sigma-lattice {sigma : sigma R in Z^{2m}}.
    std::vector<std::vector<Integer>> violation_basis;
};

CousinCertificate is_cousin(const PeriodMatrix& P);

// Exact check of sigma R + tau == 0.
bool witness_holds(const PeriodMatrix& P, const std::vector<Integer>& sigma, const std::vector<Integer>& tau);

// Row vector times matrix for exact reals with integer coefficients.
std::vector<ExactReal> sigma_times(const std::vector<Integer>& sigma, const RealMat& R);

// The example lattice [[0, 1, i], [1, alpha, 0]].
PeriodMatrix example_matrix(const ExactReal& alpha);

} // namespace cousinlab
