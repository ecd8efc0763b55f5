// Dense fixed-width bitset for search states, with sparse set/test against
// fluent-index lists and a word-level hash.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace epiplan::search {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    int size() const { return bits_; }

    bool contains_all(const std::vector<int>& indices) const {
        for (int i : indices) {
            if (!test(i)) return false;
        }
        return true;
    }

    void set_all(const std::vector<int>& indices) {
        for (int i : indices) set(i);
    }

    void reset_all(const std::vector<int>& indices) {
        for (int i : indices) reset(i);
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        for (int w = 0; w < static_cast<int>(words_.size()); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                int bit = __builtin_ctzll(word);
                out.push_back(w * 64 + bit);
                word &= word - 1;
            }
        }
        return out;
    }

    bool operator==(const Bitset&) const = default;

    struct Hash {
        std::size_t operator()(const Bitset& b) const {
            std::uint64_t h = 1469598103934665603ull;
            for (std::uint64_t w : b.words_) {
                h ^= w;
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

private:
    int bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace epiplan::search
