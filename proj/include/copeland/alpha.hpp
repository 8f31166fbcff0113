#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace copeland {

// Tie reward num/den in lowest terms. Scores are kept as integers in units of 1/den.
struct Alpha {
    int64_t num = 1;
    int64_t den = 2;

    Alpha() = default;
    Alpha(int64_t b, int64_t d) {
        if (d <= 0 || b < 0 || b > d)
            throw std::invalid_argument("alpha must be a rational in [0,1]");
        int64_t g = std::gcd(b, d);
        num = b / g;
        den = d / g;
        if (num == 0) den = 1;
    }

    static Alpha zero() { return Alpha(0, 1); }
    static Alpha one() { return Alpha(1, 1); }
    static Alpha half() { return Alpha(1, 2); }

    bool is_zero() const { return num == 0; }
    bool is_one() const { return num == den; }

    // Accepts "b/d", "0", "1".
    static Alpha parse(std::string_view s) {
        auto to_int = [&](std::string_view t) -> int64_t {
            if (t.empty() || t.size() > 18) throw std::invalid_argument("bad alpha: " + std::string(s));
            int64_t v = 0;
            for (char c : t) {
                if (c < '0' || c > '9') throw std::invalid_argument("bad alpha: " + std::string(s));
                v = v * 10 + (c - '0');
            }
            return v;
        };
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Alpha(to_int(s), 1);
        return Alpha(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Alpha&, const Alpha&) = default;
};

// Render a scaled score value/den as a decimal-free rational string.
inline std::string format_scaled(int64_t value, const Alpha& a) {
    if (a.den == 1) return std::to_string(value);
    int64_t g = std::gcd(value, a.den);
    if (value == 0) return "0";
    if (a.den / g == 1) return std::to_string(value / g);
    return std::to_string(value / g) + "/" + std::to_string(a.den / g);
}

}  // namespace copeland
