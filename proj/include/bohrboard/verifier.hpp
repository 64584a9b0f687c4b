#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bohrboard/chessboard.hpp"
#include "bohrboard/diophantine.hpp"
#include "bohrboard/rational.hpp"

namespace bohrboard {

struct APQuery {
    std::int64_t y = 1;     // common difference, nonzero
    std::int64_t L = 2;     // target length (number of terms)
    std::int64_t x_lo = 0;  // scan bounds for the first term
    std::int64_t x_hi = 0;
};

inline void validate_query(const APQuery& q) {
    if (q.y == 0) throw std::invalid_argument("AP difference y must be nonzero");
    if (q.L < 2) throw std::invalid_argument("AP length L must be >= 2");
    if (q.x_lo > q.x_hi) throw std::invalid_argument("AP scan bounds must satisfy x_lo <= x_hi");
}

struct APReport {
    APQuery query;
    bool found = false;
    std::optional<std::int64_t> witness_x;  // smallest witness when found
    std::int64_t max_len_seen = 0;          // longest run starting in window, capped at L
};

// Exhaustive scan of x in [x_lo, x_hi]: found iff some x gives L equal
// colors at x, x+y, ..., x+(L-1)y. Runs may extend past x_hi; lengths are
// capped at L. Once a witness exists max_len_seen equals the cap.
template <typename ColoringFn>
APReport mono_ap_exists(ColoringFn&& coloring, const APQuery& q) {
    validate_query(q);
    APReport report{q, false, std::nullopt, 0};
    for (std::int64_t x = q.x_lo; x <= q.x_hi; ++x) {
        Color c0 = coloring(x);
        std::int64_t len = 1;
        while (len < q.L && coloring(x + len * q.y) == c0) ++len;
        if (len > report.max_len_seen) report.max_len_seen = len;
        if (len >= q.L) {
            report.found = true;
            report.witness_x = x;
            break;  // smallest witness; max_len_seen is already at the cap
        }
    }
    return report;
}

struct ScanRow {
    std::int64_t y = 0;
    Rational gap;
    bool in_s = false;
    std::int64_t max_len_seen = 0;
    std::optional<std::int64_t> witness_x;
};

// One row per difference y in [y_lo, y_hi], scanning first terms over
// [x_lo, x_hi] against the pullback coloring. Rows are sorted by y and the
// output is identical regardless of thread count.
inline std::vector<ScanRow> scan_differences(const Chessboard& board, std::int64_t y_lo,
                                             std::int64_t y_hi, std::int64_t L,
                                             std::int64_t x_lo, std::int64_t x_hi,
                                             unsigned threads = 1) {
    if (y_lo < 1) throw std::invalid_argument("y_lo must be >= 1");
    if (y_hi < y_lo) throw std::invalid_argument("y_hi must be >= y_lo");
    const std::size_t n = static_cast<std::size_t>(y_hi - y_lo + 1);
    std::vector<ScanRow> rows(n);
    PullbackColoring coloring(board);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::int64_t y = y_lo + static_cast<std::int64_t>(i);
            APReport rep = mono_ap_exists(coloring, APQuery{y, L, x_lo, x_hi});
            Rational gap = bohr_gap(y, board.params.alphas);
            bool in_s = gap > board.params.delta.delta;
            rows[i] = ScanRow{y, std::move(gap), in_s, rep.max_len_seen, rep.witness_x};
        }
    };
    if (threads <= 1 || n < 2) {
        work(0, n);
    } else {
        unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
        std::vector<std::thread> pool;
        std::size_t chunk = (n + t - 1) / t;
        for (unsigned w = 0; w < t; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

// Default scan window [0, N2].
inline std::vector<ScanRow> scan_differences(const Chessboard& board, std::int64_t y_lo,
                                             std::int64_t y_hi, std::int64_t L,
                                             unsigned threads = 1) {
    return scan_differences(board, y_lo, y_hi, L, 0, board.params.N2, threads);
}

inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "y,bohr_gap,in_S,max_len_seen,witness_x\n";
    for (const ScanRow& r : rows) {
        out += std::to_string(r.y);
        out += ',';
        out += to_pq_string(r.gap);
        out += ',';
        out += r.in_s ? "true" : "false";
        out += ',';
        out += std::to_string(r.max_len_seen);
        out += ',';
        if (r.witness_x) out += std::to_string(*r.witness_x);
        out += '\n';
    }
    return out;
}

struct ReturnCertificate {
    std::int64_t t = 0;  // b - a
    std::int64_t a = 0;
    std::int64_t b = 0;
    MiniCellIndex mini;          // shared by F(x+a*y) and F(x+b*y)
    std::vector<Rational> disp;  // lift of F(t*y) nearest 0, |disp_i| <= N0/C
    bool divides_N1 = false;
};

// Lift of F(ty) with every coordinate in [-N1/2, N1/2).
inline std::vector<Rational> nearest_zero_lift(std::int64_t t, std::int64_t y,
                                               const ChessboardParams& p) {
    std::vector<Rational> out;
    out.reserve(p.alphas.dim());
    Rational half = Rational(p.N1, 2);
    for (const Rational& a : p.alphas.alphas) {
        Rational r = mod_positive(a * t * y, Rational(p.N1));
        if (r >= half) r -= p.N1;
        out.push_back(std::move(r));
    }
    return out;
}

// Scans a = 0, 1, ..., (C*k)^d and returns the first pair (a, b) of indices
// with F(x+a*y), F(x+b*y) in the same mini-cell (minimal b; a is that
// mini-cell's first visit). Existence is forced by pigeonhole: there are
// exactly (C*k)^d mini-cells. The certificate is re-verified before return.
inline ReturnCertificate pigeonhole_return(std::int64_t x, std::int64_t y,
                                           const ChessboardParams& p) {
    if (y == 0) throw std::invalid_argument("pigeonhole_return requires y != 0");
    Int bound_int = 1;
    for (std::int64_t i = 0; i < p.d; ++i) bound_int *= Int(p.C) * p.k;
    if (bound_int > (std::int64_t{1} << 32)) {
        throw std::invalid_argument("pigeonhole bound (C*k)^d too large for desk scale");
    }
    std::int64_t bound = static_cast<std::int64_t>(bound_int);
    std::vector<std::int64_t> first_visit(static_cast<std::size_t>(bound), -1);
    std::int64_t per_axis = p.C * p.k;
    for (std::int64_t a = 0; a <= bound; ++a) {
        MiniCellIndex mini = mini_cell_of(F_map(x + a * y, p), p);
        std::int64_t key = flatten_index(mini.idx, per_axis);
        std::int64_t& seen = first_visit[static_cast<std::size_t>(key)];
        if (seen >= 0) {
            ReturnCertificate cert;
            cert.a = seen;
            cert.b = a;
            cert.t = a - seen;
            cert.mini = mini;
            cert.disp = nearest_zero_lift(cert.t, y, p);
            cert.divides_N1 = (p.N1 % cert.t == 0);
            // re-verify the certificate exactly
            if (!(mini_cell_of(F_map(x + cert.a * y, p), p) == cert.mini)) {
                throw std::logic_error("pigeonhole certificate failed mini-cell recheck");
            }
            Rational cap = Rational(p.N0, p.C);
            for (const Rational& dcoord : cert.disp) {
                if (abs(dcoord) > cap) {
                    throw std::logic_error("pigeonhole certificate violates the N0/C bound");
                }
            }
            return cert;
        }
        seen = a;
    }
    throw std::logic_error("pigeonhole failed: more occupied mini-cells than exist");
}

struct EtaResult {
    Rational eta;             // L-inf distance from the lift of F(t*y) to N1*Z^d
    bool applicable = false;  // y in S and t | N1
    bool holds = true;        // !applicable or eta >= delta
    bool y_in_s = false;
    bool t_divides = false;
};

// The divisibility lemma, re-derived per instance: when t | N1 and y is in
// S, the lift t*y' is within eta/t of an integer point of (N1/t)*Z^d, yet
// y' is more than delta from every integer point, forcing eta >= delta.
inline EtaResult eta_check(std::int64_t y, std::int64_t t, const ChessboardParams& p) {
    if (t < 1) throw std::invalid_argument("eta_check requires t >= 1");
    EtaResult res;
    Rational N1(p.N1);
    for (const Rational& a : p.alphas.alphas) {
        Rational y_prime = mod_positive(a * y, N1);
        Rational r = mod_positive(y_prime * t, N1);
        Rational dist = r <= N1 - r ? r : N1 - r;
        if (dist > res.eta) res.eta = std::move(dist);
    }
    res.y_in_s = in_restricted_set(y, p.alphas, p.delta);
    res.t_divides = (p.N1 % t == 0);
    res.applicable = res.y_in_s && res.t_divides;
    res.holds = !res.applicable || res.eta >= p.delta.delta;
    return res;
}

}  // namespace bohrboard
