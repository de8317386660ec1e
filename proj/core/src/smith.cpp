#include "kirbycalc/smith.hpp"

#include <sstream>
#include <utility>

namespace kirby {

std::string AbelianGroup::str() const {
    if (trivial()) return "trivial";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    for (int i = 0; i < free_rank; ++i) {
        if (!first) os << " + ";
        os << "Z";
        first = false;
    }
    return os.str();
}

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

struct Worker {
    IntMatrix m, u, v;
    size_t rows, cols;

    explicit Worker(const IntMatrix& in) : m(in) {
        rows = m.size();
        cols = rows ? m[0].size() : 0;
        u.assign(rows, std::vector<Int>(rows, 0));
        v.assign(cols, std::vector<Int>(cols, 0));
        for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
        for (size_t j = 0; j < cols; ++j) v[j][j] = 1;
    }

    void row_swap(size_t a, size_t b) {
        if (a == b) return;
        std::swap(m[a], m[b]);
        std::swap(u[a], u[b]);
    }
    void col_swap(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
        for (size_t i = 0; i < cols; ++i) std::swap(v[i][a], v[i][b]);
    }
    void row_add(size_t dst, size_t src, const Int& f) {  // row dst += f * row src
        for (size_t j = 0; j < cols; ++j) m[dst][j] += f * m[src][j];
        for (size_t j = 0; j < rows; ++j) u[dst][j] += f * u[src][j];
    }
    void col_add(size_t dst, size_t src, const Int& f) {
        for (size_t i = 0; i < rows; ++i) m[i][dst] += f * m[i][src];
        for (size_t i = 0; i < cols; ++i) v[i][dst] += f * v[i][src];
    }
    void row_negate(size_t a) {
        for (size_t j = 0; j < cols; ++j) m[a][j] = -m[a][j];
        for (size_t j = 0; j < rows; ++j) u[a][j] = -u[a][j];
    }

    bool find_pivot(size_t k, size_t& pi, size_t& pj) {
        bool found = false;
        Int best = 0;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (m[i][j] != 0 && (!found || iabs(m[i][j]) < best)) {
                    best = iabs(m[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
        return found;
    }

    void run() {
        size_t k = 0;
        while (k < rows && k < cols) {
            size_t pi = 0, pj = 0;
            if (!find_pivot(k, pi, pj)) break;
            row_swap(k, pi);
            col_swap(k, pj);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (size_t i = k + 1; i < rows; ++i) {
                    if (m[i][k] == 0) continue;
                    Int q = m[i][k] / m[k][k];
                    if (q != 0) row_add(i, k, -q);
                    if (m[i][k] != 0) {  // remainder smaller than pivot
                        row_swap(k, i);
                        clean = false;
                    }
                }
                if (!clean) continue;
                for (size_t j = k + 1; j < cols; ++j) {
                    if (m[k][j] == 0) continue;
                    Int q = m[k][j] / m[k][k];
                    if (q != 0) col_add(j, k, -q);
                    if (m[k][j] != 0) {
                        col_swap(k, j);
                        clean = false;
                    }
                }
                if (!clean) continue;
                // divisibility: pivot must divide the rest of the submatrix
                for (size_t i = k + 1; i < rows && clean; ++i)
                    for (size_t j = k + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[k][k] != 0) {
                            row_add(k, i, 1);
                            clean = false;
                        }
            }
            if (m[k][k] < 0) row_negate(k);
            ++k;
        }
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    Worker w(m);
    w.run();
    SmithResult out;
    out.d = std::move(w.m);
    out.u = std::move(w.u);
    out.v = std::move(w.v);
    size_t rank = 0;
    size_t n = std::min(out.d.size(), out.d.empty() ? size_t(0) : out.d[0].size());
    for (size_t i = 0; i < n; ++i) {
        const Int& di = out.d[i][i];
        if (di == 0) break;
        ++rank;
        if (di > 1) out.cokernel.torsion.push_back(di);
    }
    size_t cols = out.d.empty() ? 0 : out.d[0].size();
    out.cokernel.free_rank = static_cast<int>(cols - rank);
    return out;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    size_t n = a.size(), k = b.size(), m2 = k ? b[0].size() : 0;
    IntMatrix c(n, std::vector<Int>(m2, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m2; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

Int det(IntMatrix m) {
    size_t n = m.size();
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return n ? sign * m[n - 1][n - 1] : Int(1);
}

}  // namespace kirby
