#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace npairs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Canonical text form: "p/q" with q > 1, plain integer otherwise.
std::string rat_to_string(const Rat& r);

// Accepts "p", "-p", "p/q". Returns nullopt on malformed input.
std::optional<Rat> parse_rational(std::string_view text);

// Extended value: either a finite rational or the distinguished infinity.
// Infinity never enters sums; callers branch on is_infinite first.
struct ExtRat {
    bool infinite = false;
    Rat value;  // meaningful iff !infinite

    static ExtRat inf() { return ExtRat{true, Rat(0)}; }
    static ExtRat finite(Rat v) { return ExtRat{false, std::move(v)}; }

    bool is_infinite() const { return infinite; }
    bool is_finite() const { return !infinite; }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
};

// true iff a < b, with infinity larger than every finite value.
bool ext_less(const ExtRat& a, const ExtRat& b);
std::string ext_to_string(const ExtRat& v);
std::optional<ExtRat> parse_ext(std::string_view text);  // "inf" or rational

}  // namespace npairs
