#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrboard/diophantine.hpp"
#include "bohrboard/rational.hpp"

namespace bohrboard {

// Enum order is pinned: Red = 0, Blue = 1, so board_hash is well-defined.
enum class Color : std::uint8_t { red = 0, blue = 1 };

inline char color_char(Color c) { return c == Color::red ? 'R' : 'B'; }

struct DivisibilityReport {
    std::int64_t lcm_bound = 1;
    Int lcm_value = 1;                       // lcm(1..lcm_bound)
    std::int64_t requested_N0 = 0;
    std::int64_t adjusted_N0 = 0;
    Int pigeonhole_bound = 0;                // (C*k)^d
    std::vector<std::int64_t> divisors_of_N1;  // t <= (C*k)^d with t | N1
    bool divisible_up_to_Ck = false;         // every t in [1, C*k] divides N1
    std::vector<std::string> regime_notes;   // "sufficiently large" violations
};

struct ChessboardParams {
    std::int64_t d = 1;
    AlphaVector alphas;
    BohrThreshold delta;
    std::int64_t N0 = 1;
    std::int64_t C = 2;
    std::int64_t k = 2;
    std::int64_t N1 = 2;  // always k * N0
    std::int64_t N2 = 2;  // scan horizon
    std::uint64_t seed = 0;
    DivisibilityReport report;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) {
        throw std::invalid_argument(std::string("parameter overflow computing ") + what);
    }
    return a * b;
}

}  // namespace detail

// Builds the full parameter block of the construction. N0 is first scaled
// up to the least multiple of lcm(1..lcm_bound) that is >= the requested
// N0, so that lcm(1..lcm_bound) | N1. Desk-scale values that violate the
// "sufficiently large" regime are allowed and flagged in the report.
inline ChessboardParams build_params(std::int64_t d, AlphaVector alphas, BohrThreshold delta,
                                     std::int64_t N0, std::int64_t C, std::int64_t k,
                                     std::int64_t N2, std::uint64_t seed,
                                     std::int64_t lcm_bound) {
    if (d < 1 || static_cast<std::size_t>(d) != alphas.dim()) {
        throw std::invalid_argument("d must be >= 1 and match the alpha vector length");
    }
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (C < 2) throw std::invalid_argument("C must be >= 2");
    if (N0 < 1) throw std::invalid_argument("N0 must be >= 1");
    if (lcm_bound < 1) throw std::invalid_argument("lcm_bound must be >= 1");

    Int lcm_value = 1;
    for (std::int64_t t = 2; t <= lcm_bound; ++t) {
        lcm_value = boost::multiprecision::lcm(lcm_value, Int(t));
    }
    if (lcm_value > std::numeric_limits<std::int64_t>::max() / k) {
        throw std::invalid_argument("lcm(1..lcm_bound) exceeds the supported desk-scale range");
    }
    std::int64_t lcm64 = static_cast<std::int64_t>(lcm_value);
    std::int64_t adjusted_N0 = ((N0 + lcm64 - 1) / lcm64) * lcm64;
    std::int64_t N1 = detail::checked_mul(k, adjusted_N0, "N1 = k*N0");
    if (N2 < N1) {
        throw std::invalid_argument("N2 must be at least N1 = " + std::to_string(N1));
    }

    ChessboardParams p{d, std::move(alphas), delta, adjusted_N0, C, k, N1, N2, seed, {}};

    DivisibilityReport& report = p.report;
    report.lcm_bound = lcm_bound;
    report.lcm_value = lcm_value;
    report.requested_N0 = N0;
    report.adjusted_N0 = adjusted_N0;
    Int ck = Int(C) * k;
    report.pigeonhole_bound = 1;
    for (std::int64_t i = 0; i < d; ++i) report.pigeonhole_bound *= ck;
    for (std::int64_t t = 1; t <= N1; ++t) {
        if (N1 % t == 0 && Int(t) <= report.pigeonhole_bound) {
            report.divisors_of_N1.push_back(t);
        }
    }
    std::int64_t ck64 = C * k;
    report.divisible_up_to_Ck = true;
    for (std::int64_t t = 1; t <= ck64 && report.divisible_up_to_Ck; ++t) {
        if (N1 % t != 0) report.divisible_up_to_Ck = false;
    }
    if (!report.divisible_up_to_Ck) {
        report.regime_notes.push_back("N1 = " + std::to_string(N1) +
                                      " is not divisible by every integer up to C*k = " +
                                      std::to_string(ck64) + "; divisibility is checked per instance");
    }
    if (adjusted_N0 <= k) {
        report.regime_notes.push_back("N0 = " + std::to_string(adjusted_N0) +
                                      " is not large relative to k = " + std::to_string(k));
    }
    if (k <= C) {
        report.regime_notes.push_back("k = " + std::to_string(k) +
                                      " is not large relative to C = " + std::to_string(C));
    }
    Rational inv_delta = 1 / delta.delta;
    Int floor_needed = rational_ceil(inv_delta);
    if (Int(C) <= floor_needed || C <= d) {
        report.regime_notes.push_back("C = " + std::to_string(C) +
                                      " is not large relative to max(d, 1/delta)");
    }
    return p;
}

struct TorusPoint {
    std::vector<Rational> coords;  // each in [0, N1)
};

struct CellIndex {
    std::vector<std::int64_t> idx;  // each in {0..k-1}
    bool operator==(const CellIndex&) const = default;
};

struct MiniCellIndex {
    std::vector<std::int64_t> idx;  // each in {0..k*C-1}
    bool operator==(const MiniCellIndex&) const = default;
};

// F: Z -> (R/N1 Z)^d, x |-> (alpha_i * x) reduced into [0, N1). Exact.
inline TorusPoint F_map(std::int64_t x, const ChessboardParams& p) {
    TorusPoint out;
    out.coords.reserve(p.alphas.dim());
    for (const Rational& a : p.alphas.alphas) {
        out.coords.push_back(mod_positive(a * x, Rational(p.N1)));
    }
    return out;
}

// Half-open cells [j*N0, (j+1)*N0) per axis.
inline CellIndex cell_of(const TorusPoint& pt, const ChessboardParams& p) {
    CellIndex out;
    out.idx.reserve(pt.coords.size());
    for (const Rational& c : pt.coords) {
        out.idx.push_back(static_cast<std::int64_t>(rational_floor(c / p.N0)));
    }
    return out;
}

// Global mini-cell index: floor(c * C / N0) per axis, in {0..k*C-1}.
inline MiniCellIndex mini_cell_of(const TorusPoint& pt, const ChessboardParams& p) {
    MiniCellIndex out;
    out.idx.reserve(pt.coords.size());
    for (const Rational& c : pt.coords) {
        out.idx.push_back(static_cast<std::int64_t>(rational_floor(c * p.C / p.N0)));
    }
    return out;
}

// Row-major flattening: first axis most significant.
inline std::int64_t flatten_index(const std::vector<std::int64_t>& idx, std::int64_t per_axis) {
    std::int64_t r = 0;
    for (std::int64_t v : idx) r = r * per_axis + v;
    return r;
}

struct Chessboard {
    ChessboardParams params;
    std::vector<Color> colors;  // k^d entries, row-major
    std::uint64_t board_hash = 0;

    Color color_at(const CellIndex& cell) const {
        return colors[static_cast<std::size_t>(flatten_index(cell.idx, params.k))];
    }
};

inline std::size_t cell_count(const ChessboardParams& p) {
    std::size_t n = 1;
    for (std::int64_t i = 0; i < p.d; ++i) {
        if (n > (std::size_t{1} << 28) / static_cast<std::size_t>(p.k)) {
            throw std::invalid_argument("board has too many cells for desk scale (k^d > 2^28)");
        }
        n *= static_cast<std::size_t>(p.k);
    }
    return n;
}

// One unbiased bit per cell from a std::mt19937_64 seeded with params.seed,
// consumed in row-major cell order (top output bit of one draw per cell).
// Identical (params, seed) reproduce the board and its hash bit-exactly.
inline Chessboard random_chessboard(const ChessboardParams& p) {
    Chessboard board{p, {}, 0};
    std::size_t n = cell_count(p);
    board.colors.reserve(n);
    std::mt19937_64 engine(p.seed);
    for (std::size_t i = 0; i < n; ++i) {
        board.colors.push_back((engine() >> 63) ? Color::blue : Color::red);
    }
    board.board_hash = fnv1a64(board.colors.data(), board.colors.size());
    return board;
}

// Pullback coloring of Z through F.
inline Color color_of_integer(std::int64_t x, const Chessboard& board) {
    return board.color_at(cell_of(F_map(x, board.params), board.params));
}

// The classical 1-D coloring: Red iff {alpha*x} lies in [0, 1/2).
inline Color classic_half_coloring(std::int64_t x, const Rational& alpha) {
    return frac_part(alpha * x) < Rational(1, 2) ? Color::red : Color::blue;
}

// Exact integer evaluator for the pullback coloring. With alpha_i = p_i/q_i,
// coordinate i of F(x) is (p_i*x mod q_i*N1)/q_i and the cell index is
// floor of that over N0, i.e. (p_i*x mod q_i*N1) / (q_i*N0) in integers.
// Falls back to the rational path when the moduli do not fit in int64.
class PullbackColoring {
public:
    explicit PullbackColoring(const Chessboard& board) : board_(&board) {
        const ChessboardParams& p = board.params;
        fast_ = true;
        for (const Rational& a : p.alphas.alphas) {
            Int num = numerator(a);
            Int den = denominator(a);
            Int modulus = den * p.N1;
            Int divisor = den * p.N0;
            if (abs(num) > std::numeric_limits<std::int64_t>::max() ||
                modulus > std::numeric_limits<std::int64_t>::max()) {
                fast_ = false;
                break;
            }
            nums_.push_back(static_cast<std::int64_t>(num));
            mods_.push_back(static_cast<std::int64_t>(modulus));
            divs_.push_back(static_cast<std::int64_t>(divisor));
        }
    }

    Color operator()(std::int64_t x) const {
        if (!fast_) return color_of_integer(x, *board_);
        std::int64_t index = 0;
        for (std::size_t i = 0; i < nums_.size(); ++i) {
            __int128 r = static_cast<__int128>(nums_[i]) * x % mods_[i];
            if (r < 0) r += mods_[i];
            index = index * board_->params.k + static_cast<std::int64_t>(r / divs_[i]);
        }
        return board_->colors[static_cast<std::size_t>(index)];
    }

    bool fast_path() const { return fast_; }

private:
    const Chessboard* board_;
    bool fast_ = false;
    std::vector<std::int64_t> nums_, mods_, divs_;
};

// Exact integer evaluator for classic_half_coloring: with alpha = p/q,
// {alpha*x} < 1/2 iff 2*(p*x mod q) < q.
class ClassicColoring {
public:
    explicit ClassicColoring(const Rational& alpha) : alpha_(alpha) {
        Int num = numerator(alpha);
        Int den = denominator(alpha);
        fast_ = abs(num) <= std::numeric_limits<std::int64_t>::max() &&
                den <= std::numeric_limits<std::int64_t>::max() / 2;
        if (fast_) {
            p_ = static_cast<std::int64_t>(num);
            q_ = static_cast<std::int64_t>(den);
        }
    }

    Color operator()(std::int64_t x) const {
        if (!fast_) return classic_half_coloring(x, alpha_);
        __int128 r = static_cast<__int128>(p_) * x % q_;
        if (r < 0) r += q_;
        return 2 * r < q_ ? Color::red : Color::blue;
    }

private:
    Rational alpha_;
    bool fast_ = false;
    std::int64_t p_ = 0, q_ = 1;
};

// Export format: header line "d k N0 C N1 seed", then k^d characters
// 'R'/'B' in row-major order.
inline std::string board_to_text(const Chessboard& board) {
    const ChessboardParams& p = board.params;
    std::string out = std::to_string(p.d) + " " + std::to_string(p.k) + " " +
                      std::to_string(p.N0) + " " + std::to_string(p.C) + " " +
                      std::to_string(p.N1) + " " + std::to_string(p.seed) + "\n";
    for (Color c : board.colors) out += color_char(c);
    out += '\n';
    return out;
}

}  // namespace bohrboard
