#include "arithdyn/linalg.hpp"

#include "arithdyn/errors.hpp"

#include <utility>

namespace arithdyn {

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    IntMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
}

RankProfile bareiss_rank(IntMatrix m) {
    RankProfile out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> row_id(rows);
    for (std::size_t i = 0; i < rows; ++i) row_id[i] = i;
    Integer prev = 1;
    Integer tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
            std::swap(row_id[piv], row_id[r]);
        }
        const Integer& p = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Integer lead = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                // m(i,j) = (m(i,j) * p - lead * m(r,j)) / prev
                mpz_mul(tmp.get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), m(r, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = p;
        out.pivot_rows.push_back(row_id[r]);
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.minor = r ? prev : Integer(0);
    return out;
}

Integer determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer prev = 1, tmp;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i) {
            if (sgn(m(i, k)) != 0) {
                piv = i;
                break;
            }
        }
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(tmp.get_mpz_t(), m(i, j).get_mpz_t(), m(k, k).get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? prev : Integer(-prev);
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = mod_u64(m(i, j), p);
    auto mul = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i * cols + c]) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const std::uint64_t s = inv(a[r * cols + c]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t f = mul(a[i * cols + c], s);
            if (!f) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = (a[i * cols + j] + p - mul(f, a[r * cols + j])) % p;
        }
        ++r;
    }
    return r;
}

std::vector<std::vector<Rational>> solve_exact(const IntMatrix& a, const std::vector<std::vector<Integer>>& rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw InvalidInput("solve_exact needs a square matrix");
    const std::size_t k = rhs.size();
    // Fraction-free elimination on [A | B], then rational back substitution.
    IntMatrix m(n, n + k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        for (std::size_t t = 0; t < k; ++t) m(i, n + t) = rhs[t].at(i);
    }
    Integer prev = 1, tmp;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        if (piv == n) throw InvalidInput("singular system");
        if (piv != c)
            for (std::size_t j = 0; j < n + k; ++j) std::swap(m(piv, j), m(c, j));
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n + k; ++j) {
                mpz_mul(tmp.get_mpz_t(), m(i, j).get_mpz_t(), m(c, c).get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), m(i, c).get_mpz_t(), m(c, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(c, c);
    }
    std::vector<std::vector<Rational>> out(k, std::vector<Rational>(n));
    for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t i = n; i-- > 0;) {
            Rational s = m(i, n + t);
            for (std::size_t j = i + 1; j < n; ++j) s -= Rational(m(i, j)) * out[t][j];
            out[t][i] = s / Rational(m(i, i));
            out[t][i].canonicalize();
        }
    }
    return out;
}

}  // namespace arithdyn
