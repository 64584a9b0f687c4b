#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrboard/chessboard.hpp"
#include "bohrboard/rational.hpp"

namespace bohrboard {

struct TracedLine {
    TorusPoint base;
    std::vector<Rational> step;  // lift of F(t*y) nearest 0 when derived from an AP
    std::int64_t n_steps = 1;    // parameter range [0, n_steps]
};

struct CellVisit {
    CellIndex cell;
    Rational chord;  // parameter-length of the segment's intersection with the cell
};

namespace detail {

inline std::size_t dominant_axis(const std::vector<Rational>& step) {
    std::size_t best = 0;
    Rational best_abs = abs(step[0]);
    for (std::size_t i = 1; i < step.size(); ++i) {
        Rational a = abs(step[i]);
        if (a > best_abs) {
            best_abs = std::move(a);
            best = i;
        }
    }
    return best;
}

}  // namespace detail

// Walks base + s*step for s in [0, n_steps] on the N1-torus by incremental
// grid traversal, emitting one entry per cell entered (cells reappear when
// the line wraps). Chords are in parameter units and sum to n_steps.
inline std::vector<CellVisit> trace_cells(const TracedLine& line, const ChessboardParams& p) {
    const std::size_t d = line.step.size();
    if (d != static_cast<std::size_t>(p.d) || line.base.coords.size() != d) {
        throw std::invalid_argument("traced line dimension does not match params");
    }
    bool all_zero = true;
    for (const Rational& s : line.step) {
        if (s != 0) all_zero = false;
    }
    if (all_zero) throw std::invalid_argument("degenerate line");
    if (line.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");

    const Rational total(line.n_steps);
    std::vector<std::int64_t> cell(d);
    std::vector<Rational> next_cross(d);  // parameter of the next boundary crossing per axis
    std::vector<Rational> spacing(d);     // parameter distance between crossings per axis
    std::vector<int> dir(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        Rational pos = mod_positive(line.base.coords[i], Rational(p.N1));
        cell[i] = static_cast<std::int64_t>(rational_floor(pos / p.N0));
        const Rational& s = line.step[i];
        if (s > 0) {
            dir[i] = 1;
            spacing[i] = Rational(p.N0) / s;
            next_cross[i] = (Rational((cell[i] + 1) * p.N0) - pos) / s;
        } else if (s < 0) {
            dir[i] = -1;
            spacing[i] = Rational(p.N0) / -s;
            next_cross[i] = (pos - Rational(cell[i] * p.N0)) / -s;
        }
    }

    std::vector<CellVisit> visits;
    Rational t = 0;
    while (true) {
        Rational t_next = total;
        for (std::size_t i = 0; i < d; ++i) {
            if (dir[i] != 0 && next_cross[i] < t_next) t_next = next_cross[i];
        }
        visits.push_back(CellVisit{CellIndex{cell}, t_next - t});
        if (t_next >= total) break;
        for (std::size_t i = 0; i < d; ++i) {
            if (dir[i] != 0 && next_cross[i] == t_next) {
                cell[i] += dir[i];
                if (cell[i] < 0) cell[i] += p.k;
                if (cell[i] >= p.k) cell[i] -= p.k;
                next_cross[i] += spacing[i];
            }
        }
        t = t_next;
    }
    return visits;
}

// Counts cells whose chord, projected on the coordinate of maximal |step_i|,
// covers at least threshold_fraction of the cell side: in parameter units,
// chord >= threshold_fraction * N0 / |step_max|.
inline std::int64_t long_chord_cells(const std::vector<CellVisit>& trace, const TracedLine& line,
                                     const ChessboardParams& p,
                                     const Rational& threshold_fraction) {
    if (!(threshold_fraction > 0 && threshold_fraction <= 1)) {
        throw std::invalid_argument("threshold_fraction must lie in (0, 1]");
    }
    std::size_t axis = detail::dominant_axis(line.step);
    Rational cutoff = threshold_fraction * p.N0 / abs(line.step[axis]);
    std::int64_t count = 0;
    for (const CellVisit& v : trace) {
        if (v.chord >= cutoff) ++count;
    }
    return count;
}

struct OrbitKey {
    std::vector<std::int64_t> qdir;  // floor(step_i * R * C / N0)
    std::vector<std::int64_t> qint;  // floor(base_i * R / N1)
    std::int64_t R = 2;
    auto operator<=>(const OrbitKey&) const = default;
};

inline OrbitKey orbit_key(const TracedLine& line, std::int64_t R, const ChessboardParams& p) {
    if (R < 2) throw std::invalid_argument("orbit resolution R must be >= 2");
    OrbitKey key;
    key.R = R;
    for (const Rational& s : line.step) {
        key.qdir.push_back(static_cast<std::int64_t>(rational_floor(s * R * p.C / p.N0)));
    }
    for (const Rational& b : line.base.coords) {
        Rational pos = mod_positive(b, Rational(p.N1));
        key.qint.push_back(static_cast<std::int64_t>(rational_floor(pos * R / p.N1)));
    }
    return key;
}

inline std::string orbit_key_string(const OrbitKey& key) {
    std::string out;
    for (std::size_t i = 0; i < key.qdir.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(key.qdir[i]);
    }
    out += '|';
    for (std::size_t i = 0; i < key.qint.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(key.qint[i]);
    }
    return out;
}

struct OrbitCensus {
    std::int64_t R = 2;
    Int n_orbits = 0;            // distinct keys covered by the enumeration
    std::int64_t min_cells = 1;  // minimum long-chord cell count over orbits
    Rational union_bound;        // n_orbits * 2^(-min_cells)
};

struct CensusRow {
    OrbitKey key;
    std::int64_t cells_met = 0;
    std::int64_t long_chord_cells = 0;
};

namespace detail {

// Integer DDA used by the census. Coordinates are pre-scaled so that the
// box-center base and step are exact integers; all comparisons are exact.
// Crossing parameters are fractions dist/|step_i| held over the common
// denominator prod |step_i|. Optionally aborts once long_cells exceeds
// `abort_above`: such a trace can no longer attain the global minimum, so
// the reported minimum is unaffected.
struct ScaledTraceCounts {
    std::int64_t cells_met = 0;
    std::int64_t long_cells = 0;
    bool aborted = false;
};

inline ScaledTraceCounts scaled_trace(const std::vector<std::int64_t>& base,
                                      const std::vector<std::int64_t>& step,
                                      std::int64_t cell_side, std::int64_t torus,
                                      std::int64_t n_steps, std::size_t max_axis,
                                      std::int64_t thr_num, std::int64_t thr_den,
                                      std::int64_t abort_above) {
    const std::size_t d = base.size();
    __int128 common = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (step[i] != 0) common *= std::abs(step[i]);
    }
    std::vector<__int128> next_num(d), spacing_num(d);
    std::vector<int> dir(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (step[i] == 0) continue;
        std::int64_t mag = std::abs(step[i]);
        __int128 other = common / mag;
        std::int64_t pos = base[i] % torus;
        if (pos < 0) pos += torus;
        std::int64_t cell = pos / cell_side;
        dir[i] = step[i] > 0 ? 1 : -1;
        spacing_num[i] = other * cell_side;
        std::int64_t dist = step[i] > 0 ? (cell + 1) * cell_side - pos : pos - cell * cell_side;
        next_num[i] = other * dist;
    }
    const __int128 total_num = common * n_steps;
    // chord >= (thr_num/thr_den) * cell_side / |step_max| in parameter units
    // <=> thr_den * chord_num * |step_max| >= thr_num * cell_side * common.
    const __int128 long_rhs = static_cast<__int128>(thr_num) * cell_side * common;
    const std::int64_t max_mag = std::abs(step[max_axis]);

    ScaledTraceCounts out;
    __int128 t_num = 0;
    while (true) {
        __int128 t_next = total_num;
        for (std::size_t i = 0; i < d; ++i) {
            if (dir[i] != 0 && next_num[i] < t_next) t_next = next_num[i];
        }
        ++out.cells_met;
        if (thr_den * (t_next - t_num) * max_mag >= long_rhs) {
            ++out.long_cells;
            if (abort_above >= 0 && out.long_cells > abort_above) {
                out.aborted = true;
                return out;
            }
        }
        if (t_next >= total_num) break;
        for (std::size_t i = 0; i < d; ++i) {
            if (dir[i] != 0 && next_num[i] == t_next) next_num[i] += spacing_num[i];
        }
        t_num = t_next;
    }
    return out;
}

}  // namespace detail

// Enumerates one representative line per quantization box and reports the
// orbit count, the minimum long-chord cell count over the enumeration, and
// the union bound n_orbits * 2^(-min_cells) as an exact rational.
//
// Directions run over the box grid covering [-N0/C, N0/C]^d at resolution
// N0/(C*R), restricted to boxes whose center has max_i |step_i| >= delta
// (the only directions the divisibility lemma allows an AP line to take).
// Intercepts run along one axis transverse to the dominant step axis at
// resolution N1/R. Translating a base by a multiple of N0 shifts the trace
// by whole cells, so only intercept centers distinct mod N0 are traced;
// each stands for its entire residue class, making the reported minimum
// exact over all R^(d-1) intercept boxes per direction.
inline OrbitCensus orbit_census(const ChessboardParams& p, std::int64_t R, std::int64_t n_steps,
                                const Rational& threshold_fraction = Rational(1, 4),
                                std::vector<CensusRow>* rows = nullptr) {
    if (R < 2) throw std::invalid_argument("orbit resolution R must be >= 2");
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    if (!(threshold_fraction > 0 && threshold_fraction <= 1)) {
        throw std::invalid_argument("threshold_fraction must lie in (0, 1]");
    }
    const std::size_t d = static_cast<std::size_t>(p.d);
    const std::int64_t thr_num = static_cast<std::int64_t>(numerator(threshold_fraction));
    const std::int64_t thr_den = static_cast<std::int64_t>(denominator(threshold_fraction));

    // Scale by 2*C*R: box-center steps become (2q+1)*N0 and box-center
    // intercepts (2j+1)*N1*C, all integers.
    if (R > (std::int64_t{1} << 21) || p.N1 > (std::int64_t{1} << 21) ||
        n_steps > (std::int64_t{1} << 21) || d > 3) {
        throw std::invalid_argument("census parameters too large for desk scale");
    }
    const std::int64_t scale = 2 * p.C * R;
    const std::int64_t cell_side = p.N0 * scale;
    const std::int64_t torus = p.N1 * scale;
    {
        // every quantity inside the scaled trace must fit in 128 bits
        Int step_bound = Int(2) * R * p.N0;
        Int common_bound = 1;
        for (std::size_t i = 0; i < d; ++i) common_bound *= step_bound;
        Int worst = Int(thr_den) * common_bound * n_steps * step_bound +
                    common_bound * cell_side;
        if (worst >= (Int(1) << 126)) {
            throw std::invalid_argument("census parameters overflow the scaled trace");
        }
    }

    // Direction box admitted iff |(2q+1)*N0/(2CR)| >= delta for some axis.
    const Int dnum = numerator(p.delta.delta);
    const Int dden = denominator(p.delta.delta);
    auto center_at_least_delta = [&](std::int64_t q) {
        return Int(std::abs(2 * q + 1)) * p.N0 * dden >= dnum * 2 * p.C * R;
    };

    // Intercept classes: scaled centers (2j+1)*N1*C for j in [0, R), grouped
    // by residue mod the scaled cell side.
    std::vector<std::int64_t> intercept_reps;
    {
        std::map<std::int64_t, bool> seen;
        for (std::int64_t j = 0; j < R; ++j) {
            std::int64_t scaled =
                static_cast<std::int64_t>(static_cast<__int128>(2 * j + 1) * p.N1 * p.C % torus);
            if (!seen.count(scaled % cell_side)) {
                seen[scaled % cell_side] = true;
                intercept_reps.push_back(scaled);
            }
        }
    }

    OrbitCensus census;
    census.R = R;
    std::int64_t min_cells = -1;
    Int dir_boxes = 0;
    const bool collect = rows != nullptr;

    std::vector<std::int64_t> qd(d, -R);
    std::vector<std::int64_t> step_scaled(d), base_scaled(d);
    bool done = false;
    while (!done) {
        bool admissible = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (center_at_least_delta(qd[i])) admissible = true;
        }
        if (admissible) {
            ++dir_boxes;
            std::size_t max_axis = 0;
            std::int64_t max_mag = 0;
            for (std::size_t i = 0; i < d; ++i) {
                step_scaled[i] = (2 * qd[i] + 1) * p.N0;
                if (std::abs(step_scaled[i]) > max_mag) {
                    max_mag = std::abs(step_scaled[i]);
                    max_axis = i;
                }
            }
            const std::size_t transverse = d >= 2 ? (max_axis == 0 ? 1 : 0) : 0;
            const std::size_t n_classes = d >= 2 ? intercept_reps.size() : 1;
            for (std::size_t ci = 0; ci < n_classes; ++ci) {
                std::fill(base_scaled.begin(), base_scaled.end(), 0);
                if (d >= 2) base_scaled[transverse] = intercept_reps[ci];
                auto counts =
                    detail::scaled_trace(base_scaled, step_scaled, cell_side, torus, n_steps,
                                         max_axis, thr_num, thr_den, collect ? -1 : min_cells);
                if (!counts.aborted && (min_cells < 0 || counts.long_cells < min_cells)) {
                    min_cells = counts.long_cells;
                }
                if (collect) {
                    TracedLine rep;
                    rep.n_steps = n_steps;
                    for (std::size_t i = 0; i < d; ++i) {
                        rep.step.push_back(Rational(step_scaled[i], scale));
                        rep.base.coords.push_back(Rational(base_scaled[i], scale));
                    }
                    rows->push_back(
                        CensusRow{orbit_key(rep, R, p), counts.cells_met, counts.long_cells});
                }
            }
        }
        // odometer over the direction grid, each digit in [-R, R-1]
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (++qd[axis] < R) break;
            qd[axis] = -R;
            if (axis == 0) done = true;
        }
    }

    Int intercepts = 1;
    for (std::size_t i = 1; i < d; ++i) intercepts *= R;
    census.n_orbits = dir_boxes * intercepts;
    census.min_cells = std::max<std::int64_t>(min_cells, 1);
    Int pow2 = Int(1) << static_cast<unsigned>(census.min_cells);
    census.union_bound = Rational(census.n_orbits, pow2);
    return census;
}

inline std::string census_to_csv(const std::vector<CensusRow>& rows) {
    std::string out = "key,cells_met,long_chord_cells\n";
    for (const CensusRow& r : rows) {
        out += orbit_key_string(r.key);
        out += ',';
        out += std::to_string(r.cells_met);
        out += ',';
        out += std::to_string(r.long_chord_cells);
        out += '\n';
    }
    return out;
}

inline std::string census_summary_line(const OrbitCensus& census) {
    return "n_orbits=" + census.n_orbits.str() +
           " min_cells=" + std::to_string(census.min_cells) +
           " union_bound=" + to_pq_string(census.union_bound);
}

// Static SVG of the board with the traced line and visited cells outlined,
// a small static orbit illustration. Requires d == 2. Axis 0 is drawn
// horizontally, axis 1 vertically with the origin at the bottom left.
inline std::string render_trace_svg(const Chessboard& board, const TracedLine& line) {
    const ChessboardParams& p = board.params;
    if (p.d != 2) throw std::invalid_argument("trace SVG rendering requires d == 2");
    const int px = 512;
    const Rational unit = Rational(px) / p.N1;
    auto fmt = [&](const Rational& coord) {
        Int scaled = rational_floor(coord * unit * 1000);  // exact fixed-point, 3 places
        Int whole = scaled / 1000;
        Int frac = scaled % 1000;
        std::string f = frac.str();
        while (f.size() < 3) f = "0" + f;
        return whole.str() + "." + f;
    };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(px) +
           "\" height=\"" + std::to_string(px) + "\" viewBox=\"0 0 " + std::to_string(px) + " " +
           std::to_string(px) + "\">\n";
    for (std::int64_t i = 0; i < p.k; ++i) {
        for (std::int64_t j = 0; j < p.k; ++j) {
            Color c = board.color_at(CellIndex{{i, j}});
            svg += "  <rect x=\"" + fmt(Rational(i * p.N0)) + "\" y=\"" +
                   fmt(Rational((p.k - 1 - j) * p.N0)) + "\" width=\"" + fmt(Rational(p.N0)) +
                   "\" height=\"" + fmt(Rational(p.N0)) + "\" fill=\"" +
                   (c == Color::red ? "#f4a6a6" : "#a6b8f4") + "\"/>\n";
        }
    }
    for (const CellVisit& v : trace_cells(line, p)) {
        svg += "  <rect x=\"" + fmt(Rational(v.cell.idx[0] * p.N0)) + "\" y=\"" +
               fmt(Rational((p.k - 1 - v.cell.idx[1]) * p.N0)) + "\" width=\"" +
               fmt(Rational(p.N0)) + "\" height=\"" + fmt(Rational(p.N0)) +
               "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    // The segment itself, split at torus wraps. Positions are kept in the
    // half-open window facing the direction of motion so progress is strict.
    const Rational n1(p.N1);
    auto wrap_pos = [&](Rational c, const Rational& s) {
        c = mod_positive(c, n1);
        if (s < 0 && c == 0) c = n1;
        return c;
    };
    std::vector<Rational> pos = {wrap_pos(line.base.coords[0], line.step[0]),
                                 wrap_pos(line.base.coords[1], line.step[1])};
    const Rational total(line.n_steps);
    Rational t = 0;
    auto fy = [&](const Rational& c) { return fmt(n1 - c); };
    while (t < total) {
        Rational t_exit = total;
        for (int i = 0; i < 2; ++i) {
            if (line.step[i] > 0) {
                Rational cand = t + (n1 - pos[i]) / line.step[i];
                if (cand < t_exit) t_exit = cand;
            } else if (line.step[i] < 0) {
                Rational cand = t + pos[i] / -line.step[i];
                if (cand < t_exit) t_exit = cand;
            }
        }
        std::vector<Rational> end_pos = {pos[0] + (t_exit - t) * line.step[0],
                                         pos[1] + (t_exit - t) * line.step[1]};
        svg += "  <line x1=\"" + fmt(pos[0]) + "\" y1=\"" + fy(pos[1]) + "\" x2=\"" +
               fmt(end_pos[0]) + "\" y2=\"" + fy(end_pos[1]) +
               "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
        for (int i = 0; i < 2; ++i) pos[i] = wrap_pos(end_pos[i], line.step[i]);
        t = t_exit;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace bohrboard
