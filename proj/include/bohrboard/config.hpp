#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bohrboard/chessboard.hpp"
#include "bohrboard/diophantine.hpp"
#include "bohrboard/rational.hpp"

namespace bohrboard {

// Flat key/value experiment configuration. Lines are "key = value"; blank
// lines and '#' comments are ignored. Values are kept verbatim (trimmed),
// so a config round-trips losslessly through canonical_text().
class ExperimentConfig {
public:
    static ExperimentConfig parse(std::string_view text) {
        ExperimentConfig cfg;
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line =
                nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
            ++line_no;
            std::string_view trimmed = trim(line);
            if (!trimmed.empty() && trimmed[0] != '#') {
                std::size_t eq = trimmed.find('=');
                if (eq == std::string_view::npos) {
                    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                                " is not of the form 'key = value'");
                }
                std::string key(trim(trimmed.substr(0, eq)));
                std::string value(trim(trimmed.substr(eq + 1)));
                if (key.empty()) {
                    throw std::invalid_argument("empty key on config line " +
                                                std::to_string(line_no));
                }
                if (cfg.values_.count(key)) {
                    throw std::invalid_argument("duplicate config key '" + key + "'");
                }
                cfg.values_[key] = value;
            }
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const std::string& raw(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw std::invalid_argument("missing required config key '" + key + "'");
        }
        return it->second;
    }

    std::int64_t get_int(const std::string& key) const {
        const std::string& v = raw(key);
        try {
            std::size_t used = 0;
            std::int64_t out = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return out;
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "' is not an integer: '" + v +
                                        "'");
        }
    }

    std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::uint64_t get_uint(const std::string& key) const {
        const std::string& v = raw(key);
        try {
            std::size_t used = 0;
            std::uint64_t out = std::stoull(v, &used);
            if (used != v.size() || v[0] == '-') throw std::invalid_argument(v);
            return out;
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key +
                                        "' is not an unsigned integer: '" + v + "'");
        }
    }

    Rational get_rational(const std::string& key) const {
        try {
            return parse_rational(raw(key));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }

    std::vector<Rational> get_rational_list(const std::string& key) const {
        try {
            return parse_rational_list(raw(key));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config key '" + key + "': " + e.what());
        }
    }

    std::string get_string_or(const std::string& key, std::string fallback) const {
        return has(key) ? raw(key) : std::move(fallback);
    }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    // Unknown keys are rejected by name.
    void require_keys_subset_of(const std::set<std::string>& allowed) const {
        for (const auto& [key, value] : values_) {
            if (!allowed.count(key)) {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        }
    }

    // Canonical serialization: keys sorted, one "key = value" per line.
    std::string canonical_text() const {
        std::string out;
        for (const auto& [key, value] : values_) {
            out += key;
            out += " = ";
            out += value;
            out += '\n';
        }
        return out;
    }

    std::uint64_t hash() const {
        std::string c = canonical_text();
        return fnv1a64(c.data(), c.size());
    }

private:
    static std::string_view trim(std::string_view s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) return {};
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;  // ordered, for canonical output
};

// The chessboard parameter keys shared by every board-bearing command.
inline const std::set<std::string>& board_config_keys() {
    static const std::set<std::string> keys = {"d",  "alphas", "delta", "N0",  "C",
                                               "k",  "N2",     "seed",  "lcm_bound"};
    return keys;
}

inline ChessboardParams params_from_config(const ExperimentConfig& cfg) {
    std::int64_t d = cfg.get_int("d");
    AlphaVector alphas{cfg.get_rational_list("alphas"), "", ""};
    BohrThreshold delta(cfg.get_rational("delta"));
    return build_params(d, std::move(alphas), delta, cfg.get_int("N0"), cfg.get_int("C"),
                        cfg.get_int("k"), cfg.get_int("N2"), cfg.get_uint("seed"),
                        cfg.get_int("lcm_bound"));
}

}  // namespace bohrboard
