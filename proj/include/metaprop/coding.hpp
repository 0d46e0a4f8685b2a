#pragma once

// Numeric codings shared by every Goedel numbering in the library.
//
// pair/unpair: Cantor pairing  <a,b> = (a+b)(a+b+1)/2 + b.
// Sequences: each element v is written as the Elias-gamma code of v+1, the
// codes are concatenated, and a leading 1 bit is prepended so that leading
// zeros survive. The empty sequence is 1. Codes grow linearly in the total
// bit length of the elements.

#include "metaprop/natural.hpp"

#include <iterator>
#include <optional>
#include <utility>
#include <vector>

namespace metaprop {

inline Natural cantor_pair(const Natural& a, const Natural& b) {
    Natural s = a + b;
    return s * (s + 1) / 2 + b;
}

inline std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
    // w = floor((sqrt(8z+1)-1)/2)
    Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
    Natural t = w * (w + 1) / 2;
    Natural b = z - t;
    return {w - b, b};
}

namespace detail {

inline std::vector<unsigned char> bits_of(const Natural& n) {
    std::vector<unsigned char> out;
    if (n == 0)
        return out;
    boost::multiprecision::export_bits(n, std::back_inserter(out), 1);
    return out;
}

inline Natural from_bits(const std::vector<unsigned char>& bits) {
    Natural n;
    if (bits.empty())
        return n;
    boost::multiprecision::import_bits(n, bits.begin(), bits.end(), 1);
    return n;
}

}  // namespace detail

class SeqWriter {
public:
    SeqWriter() { bits_.push_back(1); }

    SeqWriter& put(const Natural& v) {
        auto b = detail::bits_of(v + 1);
        bits_.insert(bits_.end(), b.size() - 1, 0);
        bits_.insert(bits_.end(), b.begin(), b.end());
        return *this;
    }
    SeqWriter& put(std::uint64_t v) { return put(Natural(v)); }

    Natural finish() const { return detail::from_bits(bits_); }

private:
    std::vector<unsigned char> bits_;
};

class SeqReader {
public:
    explicit SeqReader(const Natural& code) : bits_(detail::bits_of(code)) {
        ok_ = !bits_.empty();  // 0 has no sentinel
        pos_ = 1;
    }

    bool ok() const { return ok_; }
    bool at_end() const { return !ok_ || pos_ >= bits_.size(); }

    std::optional<Natural> next() {
        if (at_end())
            return std::nullopt;
        std::size_t zeros = 0;
        while (pos_ < bits_.size() && bits_[pos_] == 0) {
            ++zeros;
            ++pos_;
        }
        if (pos_ + zeros + 1 > bits_.size()) {
            ok_ = false;
            return std::nullopt;
        }
        std::vector<unsigned char> b(bits_.begin() + pos_, bits_.begin() + pos_ + zeros + 1);
        pos_ += zeros + 1;
        return detail::from_bits(b) - 1;
    }

private:
    std::vector<unsigned char> bits_;
    std::size_t pos_ = 0;
    bool ok_ = false;
};

inline Natural encode_seq(const std::vector<Natural>& xs) {
    SeqWriter w;
    for (const auto& x : xs)
        w.put(x);
    return w.finish();
}

// nullopt when code is not the image of a sequence.
inline std::optional<std::vector<Natural>> decode_seq(const Natural& code) {
    SeqReader r(code);
    if (!r.ok())
        return std::nullopt;
    std::vector<Natural> out;
    while (!r.at_end()) {
        auto v = r.next();
        if (!v)
            return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

}  // namespace metaprop
