#include "cousinlab/linalg.hpp"

#include <algorithm>

namespace cousinlab {

namespace {

IntMat int_identity(std::size_t n) {
    IntMat m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// row_i -= q * row_j
void row_axpy(IntMat& m, std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < m[i].size(); ++c)
        m[i][c] -= q * m[j][c];
}

void col_axpy(IntMat& m, std::size_t i, std::size_t j, const Integer& q) {
    for (auto& row : m)
        row[i] -= q * row[j];
}

Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithForm smith_normal_form(const IntMat& a) {
    std::size_t m = a.size(), n = m ? a[0].size() : 0;
    SmithForm s{int_identity(m), a, int_identity(n), 0};
    IntMat& D = s.D;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (pi == m || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                s.rank = t;
                return s;
            }
            std::swap(D[t], D[pi]);
            std::swap(s.U[t], s.U[pi]);
            swap_cols(D, t, pj);
            swap_cols(s.V, t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D[i][t] == 0)
                    continue;
                Integer q = fdiv(D[i][t], D[t][t]);
                row_axpy(D, i, t, q);
                row_axpy(s.U, i, t, q);
                if (D[i][t] != 0)
                    dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D[t][j] == 0)
                    continue;
                Integer q = fdiv(D[t][j], D[t][t]);
                col_axpy(D, j, t, q);
                col_axpy(s.V, j, t, q);
                if (D[t][j] != 0)
                    dirty = true;
            }
            if (dirty)
                continue;
            // divisibility: fold an offending row into the pivot row
            bool fixed = true;
            for (std::size_t i = t + 1; i < m && fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_axpy(D, t, i, -1);
                        row_axpy(s.U, t, i, -1);
                        fixed = false;
                        break;
                    }
            if (fixed)
                break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t])
                x = -x;
            for (auto& x : s.U[t])
                x = -x;
        }
        s.rank = t + 1;
    }
    return s;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMat& a, std::size_t cols) {
    std::vector<std::vector<Integer>> out;
    if (a.empty()) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<Integer> e(cols, 0);
            e[j] = 1;
            out.push_back(e);
        }
        return out;
    }
    SmithForm s = smith_normal_form(a);
    for (std::size_t j = s.rank; j < cols; ++j) {
        std::vector<Integer> v(cols);
        for (std::size_t i = 0; i < cols; ++i)
            v[i] = s.V[i][j];
        out.push_back(std::move(v));
    }
    return out;
}

IntMat hermite_normal_form(IntMat a) {
    std::size_t m = a.size(), n = m ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // gcd-combine column c below row r into row r
        for (;;) {
            std::size_t p = m;
            for (std::size_t i = r; i < m; ++i)
                if (a[i][c] != 0 && (p == m || abs(a[i][c]) < abs(a[p][c])))
                    p = i;
            if (p == m)
                break;
            std::swap(a[r], a[p]);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (a[i][c] == 0)
                    continue;
                row_axpy(a, i, r, fdiv(a[i][c], a[r][c]));
                if (a[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (a[r][c] == 0)
            continue;
        if (a[r][c] < 0)
            for (auto& x : a[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i)
            row_axpy(a, i, r, fdiv(a[i][c], a[r][c]));
        ++r;
    }
    return a;
}

} // namespace cousinlab
