#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrboard/chessboard.hpp"
#include "bohrboard/rational.hpp"

namespace bohrboard {

// Points of {0,1,2}^d and combinatorial-line templates over {0,1,2,*}.
inline constexpr std::uint8_t hj_star = 3;

struct HJPoint {
    std::vector<std::uint8_t> coords;  // entries in {0,1,2}
    bool operator==(const HJPoint&) const = default;
};

struct HJLine {
    std::vector<std::uint8_t> tmpl;  // entries in {0,1,2,hj_star}, at least one star
};

inline std::size_t hj_point_count(std::int64_t d) {
    std::size_t n = 1;
    for (std::int64_t i = 0; i < d; ++i) n *= 3;
    return n;
}

// Lexicographic rank, first coordinate most significant.
inline std::size_t hj_point_id(const HJPoint& pt) {
    std::size_t id = 0;
    for (std::uint8_t c : pt.coords) id = id * 3 + c;
    return id;
}

inline HJPoint hj_point_from_id(std::size_t id, std::int64_t d) {
    HJPoint pt;
    pt.coords.assign(static_cast<std::size_t>(d), 0);
    for (std::int64_t i = d - 1; i >= 0; --i) {
        pt.coords[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(id % 3);
        id /= 3;
    }
    return pt;
}

// The three points of a line: substitute 0, 1, 2 for every star at once.
inline std::array<HJPoint, 3> line_points(const HJLine& line) {
    std::array<HJPoint, 3> pts;
    for (std::uint8_t v = 0; v < 3; ++v) {
        pts[v].coords.reserve(line.tmpl.size());
        for (std::uint8_t c : line.tmpl) {
            pts[v].coords.push_back(c == hj_star ? v : c);
        }
    }
    return pts;
}

// All templates over {0,1,2,*}^d with at least one star, in lexicographic
// order with * as the highest symbol. Count: 4^d - 3^d.
inline std::vector<HJLine> enumerate_lines(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (d > 15) throw std::invalid_argument("d too large to enumerate 4^d templates");
    std::vector<HJLine> lines;
    std::vector<std::uint8_t> tmpl(static_cast<std::size_t>(d), 0);
    while (true) {
        bool has_star = false;
        for (std::uint8_t c : tmpl) {
            if (c == hj_star) has_star = true;
        }
        if (has_star) lines.push_back(HJLine{tmpl});
        std::int64_t axis = d - 1;
        while (axis >= 0 && tmpl[static_cast<std::size_t>(axis)] == hj_star) {
            tmpl[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++tmpl[static_cast<std::size_t>(axis)];
    }
    return lines;
}

// First line (in enumeration order) whose three points share a color.
template <typename ColoringFn>
std::optional<HJLine> find_mono_line(ColoringFn&& coloring, std::int64_t d) {
    for (const HJLine& line : enumerate_lines(d)) {
        auto pts = line_points(line);
        Color c = coloring(pts[0]);
        if (coloring(pts[1]) == c && coloring(pts[2]) == c) return line;
    }
    return std::nullopt;
}

enum class HJSearchStatus { found, none_complete, none_budget };

struct HJSearchResult {
    HJSearchStatus status = HJSearchStatus::none_budget;
    std::optional<std::vector<Color>> coloring;  // point-id order when found
    std::uint64_t nodes = 0;                     // color assignments attempted
};

// Backtracking search for a 2-coloring of {0,1,2}^d with no monochromatic
// combinatorial line. A branch dies as soon as a line is monochromatic;
// a line with two same-colored points forces the third (unit propagation).
// Every returned coloring is re-verified with find_mono_line before return.
inline HJSearchResult search_line_free(std::int64_t d, std::uint64_t node_budget) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    const std::size_t n = hj_point_count(d);
    std::vector<HJLine> lines = enumerate_lines(d);
    std::vector<std::array<std::size_t, 3>> line_ids;
    line_ids.reserve(lines.size());
    std::vector<std::vector<std::size_t>> lines_through(n);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto pts = line_points(lines[li]);
        std::array<std::size_t, 3> ids{hj_point_id(pts[0]), hj_point_id(pts[1]),
                                       hj_point_id(pts[2])};
        line_ids.push_back(ids);
        for (std::size_t pid : ids) lines_through[pid].push_back(li);
    }

    std::vector<std::int8_t> colors(n, -1);  // -1 unassigned, else 0/1
    std::vector<std::size_t> trail;          // assignment order for undo
    HJSearchResult result;

    // Assign pid := c and propagate forced values; returns false on a
    // monochromatic line or exhausted budget.
    auto assign = [&](std::size_t pid, std::int8_t c, bool& budget_ok) -> bool {
        std::vector<std::pair<std::size_t, std::int8_t>> queue{{pid, c}};
        while (!queue.empty()) {
            auto [q, qc] = queue.back();
            queue.pop_back();
            if (colors[q] != -1) {
                if (colors[q] != qc) return false;
                continue;
            }
            if (result.nodes >= node_budget) {
                budget_ok = false;
                return false;
            }
            ++result.nodes;
            colors[q] = qc;
            trail.push_back(q);
            for (std::size_t li : lines_through[q]) {
                const auto& ids = line_ids[li];
                int assigned = 0, sum = 0;
                std::size_t open = 0;
                for (std::size_t id : ids) {
                    if (colors[id] != -1) {
                        ++assigned;
                        sum += colors[id];
                    } else {
                        open = id;
                    }
                }
                if (assigned == 3 && (sum == 0 || sum == 3)) return false;
                if (assigned == 2 && (sum == 0 || sum == 2)) {
                    queue.emplace_back(open, static_cast<std::int8_t>(sum == 0 ? 1 : 0));
                }
            }
        }
        return true;
    };

    auto undo_to = [&](std::size_t mark) {
        while (trail.size() > mark) {
            colors[trail.back()] = -1;
            trail.pop_back();
        }
    };

    // Depth-first over points in id order, red before blue.
    struct Frame {
        std::size_t pid;
        std::int8_t next_color;
        std::size_t trail_mark;
    };
    std::vector<Frame> stack;
    bool budget_ok = true;
    std::size_t cursor = 0;
    while (true) {
        while (cursor < n && colors[cursor] != -1) ++cursor;
        if (cursor == n) {
            // complete assignment; self-verification is mandatory
            std::vector<Color> found(n);
            for (std::size_t i = 0; i < n; ++i) found[i] = static_cast<Color>(colors[i]);
            auto oracle = [&](const HJPoint& pt) { return found[hj_point_id(pt)]; };
            if (find_mono_line(oracle, d)) {
                throw std::logic_error("line-free search produced a coloring with a mono line");
            }
            result.status = HJSearchStatus::found;
            result.coloring = std::move(found);
            return result;
        }
        stack.push_back(Frame{cursor, 0, trail.size()});
        bool descended = false;
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next_color > 1) {
                stack.pop_back();
                if (!stack.empty()) undo_to(stack.back().trail_mark);
                continue;
            }
            undo_to(top.trail_mark);
            std::int8_t c = top.next_color++;
            if (assign(top.pid, c, budget_ok)) {
                descended = true;
                break;
            }
            if (!budget_ok) {
                result.status = HJSearchStatus::none_budget;
                return result;
            }
        }
        if (!descended && stack.empty()) {
            result.status = HJSearchStatus::none_complete;
            return result;
        }
        cursor = 0;  // rescan for the next unassigned point (propagation may fill gaps)
    }
}

// Serialization: 3^d characters 'R'/'B' in lexicographic point order.
inline std::string coloring_to_string(const std::vector<Color>& coloring) {
    std::string out;
    out.reserve(coloring.size());
    for (Color c : coloring) out += color_char(c);
    return out;
}

struct TorusAPWitness {
    std::vector<Rational> base;  // coords in {0, 1/3, 2/3}
    std::vector<Rational> step;  // coords in {0, 1/3}, not all zero
    static constexpr int period = 3;
};

// Lift of a combinatorial line to the unit torus: the three substituted
// points become base, base + step, base + 2*step, a 3-periodic (hence
// infinite) arithmetic progression.
inline TorusAPWitness lift_to_torus_ap(const HJLine& line) {
    bool has_star = false;
    TorusAPWitness w;
    for (std::uint8_t c : line.tmpl) {
        if (c == hj_star) {
            has_star = true;
            w.base.emplace_back(0);
            w.step.emplace_back(Rational(1, 3));
        } else {
            w.base.emplace_back(Rational(c, 3));
            w.step.emplace_back(0);
        }
    }
    if (!has_star) throw std::invalid_argument("combinatorial line must contain a star");
    return w;
}

}  // namespace bohrboard
