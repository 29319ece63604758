#pragma once

// Reference computations that share no code with the library: brute-force
// determinantal divisors, exact ranks over Q and F_p, and counting formulas.

#include "lsseq/int_matrix.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace oracle {

using lsseq::IntMatrix;
using lsseq::Integer;

inline Integer laplace_det(const std::vector<std::vector<Integer>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Integer total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<Integer>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Integer> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        const Integer term = m[0][c] * laplace_det(minor);
        total += (c % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// gcd of all k x k minors, for k = 1 .. min(rows, cols).
inline std::vector<Integer> determinantal_divisors(const IntMatrix& a) {
    std::vector<Integer> out;
    const std::size_t top = std::min(a.rows(), a.cols());
    for (std::size_t k = 1; k <= top; ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(a.rows(), k, 0, cur, rs);
        subsets(a.cols(), k, 0, cur, cs);
        Integer g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a(r[i], c[j]);
                const Integer d = laplace_det(m);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        out.push_back(g);
    }
    return out;
}

// Nonzero invariant factors d_k / d_{k-1}.
inline std::vector<Integer> invariant_factors(const IntMatrix& a) {
    std::vector<Integer> out;
    Integer prev = 1;
    for (const auto& d : determinantal_divisors(a)) {
        if (d == 0) break;
        out.push_back(Integer(d / prev));
        prev = d;
    }
    return out;
}

inline std::size_t rank_q(const IntMatrix& a) {
    std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t p = rank;
        while (p < a.rows() && m[p][c] == 0) ++p;
        if (p == a.rows()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < a.cols(); ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank_mod(const IntMatrix& a, long p) {
    std::vector<std::vector<long>> m(a.rows(), std::vector<long>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), a(i, j).get_mpz_t(), static_cast<unsigned long>(p));
            m[i][j] = r.get_si();
        }
    auto inv = [p](long x) {
        long r = 1, e = p - 2;
        for (long b = x % p; e; e >>= 1, b = b * b % p)
            if (e & 1) r = r * b % p;
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && m[piv][c] == 0) ++piv;
        if (piv == a.rows()) continue;
        std::swap(m[piv], m[rank]);
        const long iv = inv(m[rank][c]);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const long f = m[r][c] * iv % p;
            for (std::size_t k = c; k < a.cols(); ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Ranks of H^p of a cochain complex C^0 -> ... -> C^top from the rank of each
// differential: free rank over Q, and dim over F_p.  For cochain groups of
// rank n_p and D_p : C^p -> C^{p+1},  dim H^p = n_p - rk D_p - rk D_{p-1}.
struct CohomologyCounts {
    std::vector<std::size_t> free_rank;
    std::vector<std::size_t> mod_p_dim;
};

inline CohomologyCounts cohomology_counts(const std::vector<std::size_t>& ranks,
                                          const std::vector<IntMatrix>& differentials, long p) {
    CohomologyCounts out;
    const std::size_t n = ranks.size();
    std::vector<std::size_t> rq(n, 0), rp(n, 0);
    for (std::size_t i = 0; i < n && i < differentials.size(); ++i) {
        rq[i] = rank_q(differentials[i]);
        rp[i] = rank_mod(differentials[i], p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.free_rank.push_back(ranks[i] - rq[i] - (i ? rq[i - 1] : 0));
        out.mod_p_dim.push_back(ranks[i] - rp[i] - (i ? rp[i - 1] : 0));
    }
    return out;
}

inline long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace oracle
