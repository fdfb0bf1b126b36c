#include "courant/linalg.hpp"

#include <stdexcept>

namespace courant {

QMat qmat_zero(int rows, int cols) { return QMat(rows, QVec(cols, Rational(0))); }

QMat qmat_identity(int n) {
    QMat m = qmat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMat qmat_transpose(const QMat& a) {
    if (a.empty()) return a;
    QMat out(a[0].size(), QVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
    return out;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    int r = a.size();
    int k = b.size();
    int c = b.empty() ? 0 : b[0].size();
    QMat out = qmat_zero(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

QVec qvec_mat(const QVec& v, const QMat& a) {
    int k = a.size();
    int c = a.empty() ? 0 : a[0].size();
    QVec out(c, Rational(0));
    for (int l = 0; l < k; ++l) {
        if (v[l] == 0) continue;
        for (int j = 0; j < c; ++j) out[j] += v[l] * a[l][j];
    }
    return out;
}

int rref(QMat& a) {
    int rows = a.size();
    int cols = rows ? a[0].size() : 0;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        Rational inv = Rational(1) / a[rank][col];
        for (int j = 0; j < cols; ++j) a[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    a.resize(rank);
    return rank;
}

int rank_of(QMat a) { return rref(a); }

QMat kernel(const QMat& a) {
    QMat m = a;
    int cols = m.empty() ? 0 : m[0].size();
    int rank = rref(m);
    // Pivot columns.
    std::vector<int> pivot_col(rank);
    std::vector<bool> is_pivot(cols, false);
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (c < cols && m[r][c] == 0) ++c;
        pivot_col[r] = c;
        if (c < cols) is_pivot[c] = true;
    }
    QMat out;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols, Rational(0));
        v[c] = 1;
        for (int r = 0; r < rank; ++r) {
            if (pivot_col[r] < cols) v[pivot_col[r]] = -m[r][c];
        }
        out.push_back(v);
    }
    rref(out);
    return out;
}

QMat row_space(QMat a) {
    rref(a);
    return a;
}

QMat subspace_sum(const QMat& a, const QMat& b) {
    QMat stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    rref(stacked);
    return stacked;
}

QMat subspace_intersection(const QMat& a, const QMat& b) {
    // x in both row spaces: x = la = mb. Solve [a^t | -b^t] (l,m)^t = 0.
    if (a.empty() || b.empty()) return QMat{};
    int cols = a[0].size();
    int ka = a.size(), kb = b.size();
    QMat sys = qmat_zero(ka + kb, cols);
    for (int i = 0; i < ka; ++i) sys[i] = a[i];
    for (int i = 0; i < kb; ++i) {
        for (int j = 0; j < cols; ++j) sys[ka + i][j] = -b[i][j];
    }
    // Kernel of sys^t: combinations (l, m) with sum l_i a_i - sum m_j b_j = 0.
    QMat combos = kernel(qmat_transpose(sys));
    QMat out;
    for (const auto& lm : combos) {
        QVec v(cols, Rational(0));
        for (int i = 0; i < ka; ++i)
            for (int j = 0; j < cols; ++j) v[j] += lm[i] * a[i][j];
        out.push_back(v);
    }
    rref(out);
    return out;
}

bool subspace_contains(const QMat& space, const QVec& v) {
    QMat m = space;
    m.push_back(v);
    return rank_of(m) == static_cast<int>(row_space(space).size());
}

bool subspace_subset(const QMat& inner, const QMat& outer) {
    for (const auto& v : inner)
        if (!subspace_contains(outer, v)) return false;
    return true;
}

bool subspace_equal(const QMat& a, const QMat& b) { return row_space(a) == row_space(b); }

std::vector<Rational> solve_row(const QMat& a, const QVec& b, bool& ok) {
    // x a = b: transpose to a^t x^t = b^t and eliminate.
    int k = a.size();
    int cols = a.empty() ? 0 : a[0].size();
    QMat aug = qmat_zero(cols, k + 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < cols; ++j) aug[j][i] = a[i][j];
    for (int j = 0; j < cols; ++j) aug[j][k] = b[j];
    QMat work = aug;
    rref(work);
    QVec x(k, Rational(0));
    ok = true;
    for (const auto& row : work) {
        int lead = -1;
        for (int c = 0; c <= k; ++c) {
            if (row[c] != 0) {
                lead = c;
                break;
            }
        }
        if (lead < 0) continue;
        if (lead == k) {
            ok = false;  // inconsistent
            return {};
        }
        // Free variables stay zero (normalized representative), so the pivot
        // value is read off directly.
        x[lead] = row[k];
    }
    // Verify (works also with free-variable choices).
    QVec check = qvec_mat(x, a);
    for (int j = 0; j < cols; ++j) {
        if (check[j] != b[j]) {
            ok = false;
            return {};
        }
    }
    return x;
}

}  // namespace courant
