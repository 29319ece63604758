#include "lsseq/smith.hpp"

#include <stdexcept>

namespace lsseq {

namespace {

// Working state of the reduction.  Every row operation on `d` is mirrored on
// `u` (left factor) and every column operation on `v` (right factor); the
// inverses receive the inverse operation from the other side.
struct Reducer {
    IntMatrix d, u, v;
    std::optional<IntMatrix> u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        if (u_inv) u_inv->swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        if (v_inv) v_inv->swap_rows(a, b);
    }
    // row_target += factor * row_source
    void add_row(std::size_t target, std::size_t source, const Integer& factor) {
        d.add_row_multiple(target, source, factor);
        u.add_row_multiple(target, source, factor);
        if (u_inv) u_inv->add_col_multiple(source, target, -factor);
    }
    // col_target += factor * col_source
    void add_col(std::size_t target, std::size_t source, const Integer& factor) {
        d.add_col_multiple(target, source, factor);
        v.add_col_multiple(target, source, factor);
        if (v_inv) v_inv->add_row_multiple(source, target, -factor);
    }
    void negate_row(std::size_t i) {
        d.negate_row(i);
        u.negate_row(i);
        if (u_inv) u_inv->negate_col(i);
    }
};

bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    const Integer* best = nullptr;
    for (std::size_t i = t; i < d.rows(); ++i) {
        for (std::size_t j = t; j < d.cols(); ++j) {
            const Integer& x = d(i, j);
            if (sgn(x) == 0) continue;
            if (!best || mpz_cmpabs(x.get_mpz_t(), best->get_mpz_t()) < 0) {
                best = &x;
                pi = i;
                pj = j;
                // nothing beats a unit, and later units lose the tie-break
                if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) return true;
            }
        }
    }
    return best != nullptr;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Reducer r{a, IntMatrix::identity(m), IntMatrix::identity(n), std::nullopt, std::nullopt};
    if (options.track_inverses) {
        r.u_inv = IntMatrix::identity(m);
        r.v_inv = IntMatrix::identity(n);
    }

    IntVector diagonal;
    Integer q;
    for (std::size_t t = 0; t < m && t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(r.d, t, pi, pj)) break;
        for (;;) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(r.d(i, t)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), r.d(i, t).get_mpz_t(), r.d(t, t).get_mpz_t());
                r.add_row(i, t, -q);
                if (sgn(r.d(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(r.d(t, j)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), r.d(t, j).get_mpz_t(), r.d(t, t).get_mpz_t());
                r.add_col(j, t, -q);
                if (sgn(r.d(t, j)) != 0) clean = false;
            }
            if (!clean) {
                // Remainders are strictly smaller than the pivot; re-pivot.
                find_pivot(r.d, t, pi, pj);
                continue;
            }
            // Row t and column t are clear; enforce divisibility of the block.
            bool divisible = true;
            const bool unit = mpz_cmpabs_ui(r.d(t, t).get_mpz_t(), 1) == 0;
            for (std::size_t i = t + 1; i < m && divisible && !unit; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (!mpz_divisible_p(r.d(i, j).get_mpz_t(), r.d(t, t).get_mpz_t())) {
                        r.add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) break;
            pi = t;
            pj = t;
        }
        if (sgn(r.d(t, t)) < 0) r.negate_row(t);
        diagonal.push_back(r.d(t, t));
    }

    SmithDecomposition out;
    out.u = std::move(r.u);
    out.d = std::move(r.d);
    out.v = std::move(r.v);
    out.diagonal = std::move(diagonal);
    out.u_inverse = std::move(r.u_inv);
    out.v_inverse = std::move(r.v_inv);
    return out;
}

IntMatrix kernel(const IntMatrix& a) {
    const auto snf = smith_normal_form(a);
    return snf.v.column_range(snf.rank(), a.cols() - snf.rank());
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
    const auto snf = smith_normal_form(a);
    const IntVector c = snf.u * b;
    IntVector y(a.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < snf.rank()) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), snf.diagonal[i].get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), snf.diagonal[i].get_mpz_t());
        } else if (sgn(c[i]) != 0) {
            return std::nullopt;
        }
    }
    return snf.v * y;
}

IntMatrix column_span_basis(const IntMatrix& a) {
    const auto snf = smith_normal_form(a);
    return (a * snf.v).column_range(0, snf.rank());
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && sgn(m(swap, k)) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
    return a.rows() == a.cols() && abs(determinant(a)) == 1;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::domain_error("not unimodular: matrix is not square");
    const auto snf = smith_normal_form(a);
    if (snf.rank() != a.rows()) throw std::domain_error("not unimodular");
    for (const auto& d : snf.diagonal)
        if (d != 1) throw std::domain_error("not unimodular");
    return snf.v * snf.u;
}

IntMatrix power(const IntMatrix& a, long exponent) {
    if (a.rows() != a.cols()) throw std::invalid_argument("power: matrix is not square");
    IntMatrix base = exponent < 0 ? inverse_unimodular(a) : a;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    IntMatrix result = IntMatrix::identity(a.rows());
    while (e) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

}  // namespace lsseq
