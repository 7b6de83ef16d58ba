#include "linalg.hpp"

namespace veech {

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(RatMat & m)
{
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(m[p], m[r]);
        Rat inv = 1 / m[r][c];
        for (int j = c; j < cols; ++j)
            m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int rank(RatMat m)
{
    return (int)rref(m).size();
}

RatVec solve_square(RatMat a, RatVec b)
{
    int n = (int)a.size();
    for (int i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    auto pivots = rref(a);
    if ((int)pivots.size() != n || pivots.back() == n)
        throw LinalgError("singular system");
    RatVec x(n);
    for (int i = 0; i < n; ++i)
        x[i] = a[i][n];
    return x;
}

std::optional<RatVec> solve_exact(RatMat a, RatVec b)
{
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    for (int i = 0; i < rows; ++i)
        a[i].push_back(b[i]);
    auto pivots = rref(a);
    for (int c : pivots)
        if (c == cols)
            return std::nullopt; // pivot in the rhs column: inconsistent
    if ((int)pivots.size() != cols)
        throw LinalgError("underdetermined system");
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = a[i][cols];
    return x;
}

RatMat inverse(RatMat a)
{
    int n = (int)a.size();
    for (int i = 0; i < n; ++i) {
        a[i].resize(2 * n, Rat(0));
        a[i][n + i] = 1;
    }
    auto pivots = rref(a);
    if ((int)pivots.size() != n || pivots.back() != n - 1)
        throw LinalgError("matrix not invertible");
    RatMat out(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[i][j] = a[i][n + j];
    return out;
}

std::vector<RatVec> right_kernel(RatMat a)
{
    int cols = a.empty() ? 0 : (int)a[0].size();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<RatVec> left_kernel(const RatMat & a)
{
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    RatMat t(cols, RatVec(rows));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            t[j][i] = a[i][j];
    return right_kernel(std::move(t));
}

Rat det3(const RatMat & a)
{
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
         - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
         + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

} // namespace veech
