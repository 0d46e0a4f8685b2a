#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace metaprop {

using Natural = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Natural& n) { return n.str(); }

inline Natural parse_natural(std::string_view s) {
    if (s.empty())
        throw Error("empty natural");
    for (char c : s)
        if (c < '0' || c > '9')
            throw Error("not a natural: " + std::string(s));
    return Natural(std::string(s));
}

// Throws if n does not fit; callers use this for register numbers, labels and sizes.
inline std::size_t to_size(const Natural& n) {
    if (n > Natural(std::numeric_limits<std::uint32_t>::max()))
        throw Error("natural too large for a size: " + n.str());
    return static_cast<std::size_t>(n.convert_to<std::uint64_t>());
}

inline std::uint64_t to_u64_saturating(const Natural& n) {
    if (n > Natural(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return n.convert_to<std::uint64_t>();
}

inline std::size_t bit_length(const Natural& n) {
    return n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
}

inline Natural monus(const Natural& a, const Natural& b) { return a > b ? Natural(a - b) : Natural(0); }

}  // namespace metaprop
