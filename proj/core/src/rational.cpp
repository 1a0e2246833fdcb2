#include "npairs/rational.hpp"

namespace npairs {

std::string rat_to_string(const Rat& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<Rat> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        size_t start = (s[0] == '-') ? 1 : 0;
        if (start == s.size()) return false;
        for (size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) return std::nullopt;
            Int n{std::string(text)};
            return Rat(n);
        }
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Int n{std::string(num)};
        Int d{std::string(den)};
        if (d == 0) return std::nullopt;
        return Rat(n, d);
    } catch (...) {
        return std::nullopt;
    }
}

bool ext_less(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
}

std::string ext_to_string(const ExtRat& v) {
    return v.infinite ? "inf" : rat_to_string(v.value);
}

std::optional<ExtRat> parse_ext(std::string_view text) {
    if (text == "inf") return ExtRat::inf();
    auto r = parse_rational(text);
    if (!r) return std::nullopt;
    return ExtRat::finite(*r);
}

}  // namespace npairs
