#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrboard/rational.hpp"

namespace bohrboard {

// Frequencies alpha_1..alpha_d as exact rationals standing in for real
// targets (typically continued-fraction convergents). approx_note records
// which irrational each entry approximates.
struct AlphaVector {
    std::vector<Rational> alphas;
    std::string label;
    std::string approx_note;

    std::size_t dim() const { return alphas.size(); }
};

struct BohrThreshold {
    Rational delta;

    explicit BohrThreshold(Rational value) : delta(std::move(value)) {
        if (!(delta > 0 && delta <= Rational(1, 2))) {
            throw std::invalid_argument("delta must lie in (0, 1/2], got " + to_pq_string(delta));
        }
    }
};

// Distance from x to the nearest integer, in [0, 1/2].
inline Rational torus_norm(const Rational& x) {
    Rational f = frac_part(x);
    Rational g = 1 - f;
    return f <= g ? f : g;
}

// max_i ||s * alpha_i||.
inline Rational bohr_gap(std::int64_t s, const AlphaVector& alphas) {
    if (alphas.alphas.empty()) {
        throw std::invalid_argument("alpha vector must have dimension >= 1");
    }
    Rational worst = 0;
    for (const Rational& a : alphas.alphas) {
        Rational g = torus_norm(a * s);
        if (g > worst) worst = std::move(g);
    }
    return worst;
}

// Membership in S = { s : max_i ||s alpha_i|| > delta }, strict inequality.
inline bool in_restricted_set(std::int64_t s, const AlphaVector& alphas,
                              const BohrThreshold& delta) {
    return bohr_gap(s, alphas) > delta.delta;
}

// First n continued-fraction convergents of [a0; a1, a2, ...].
// Partial quotients must be positive except that a0 may be zero.
inline std::vector<Rational> convergents(const std::vector<Int>& partial_quotients,
                                         std::size_t n) {
    if (n > partial_quotients.size()) {
        throw std::invalid_argument("insufficient partial quotients");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (partial_quotients[i] < (i == 0 ? 0 : 1)) {
            throw std::invalid_argument("partial quotients must be positive (a0 may be 0)");
        }
    }
    std::vector<Rational> out;
    out.reserve(n);
    Int p_prev = 1, p_curr = 0;  // p_{-1}, p_{-2}
    Int q_prev = 0, q_curr = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int p = partial_quotients[i] * p_prev + p_curr;
        Int q = partial_quotients[i] * q_prev + q_curr;
        out.emplace_back(p, q);
        p_curr = p_prev;
        p_prev = p;
        q_curr = q_prev;
        q_prev = q;
    }
    return out;
}

struct NearReturn {
    std::int64_t s = 0;
    Rational gap;
};

// The `count` values s in [1, max_s] with the smallest bohr_gap, ascending
// by gap, ties broken by smaller s. Exhaustive scan; this *is* the oracle.
inline std::vector<NearReturn> near_return(const AlphaVector& alphas, std::int64_t max_s,
                                           std::size_t count) {
    if (max_s < 1) {
        throw std::invalid_argument("max_s must be >= 1");
    }
    auto better = [](const NearReturn& a, const NearReturn& b) {
        if (a.gap != b.gap) return a.gap < b.gap;
        return a.s < b.s;
    };
    std::vector<NearReturn> best;  // kept sorted, ascending by (gap, s)
    for (std::int64_t s = 1; s <= max_s; ++s) {
        NearReturn cand{s, bohr_gap(s, alphas)};
        if (best.size() == count && !better(cand, best.back())) continue;
        auto pos = std::upper_bound(best.begin(), best.end(), cand, better);
        best.insert(pos, std::move(cand));
        if (best.size() > count) best.pop_back();
    }
    return best;
}

}  // namespace bohrboard
