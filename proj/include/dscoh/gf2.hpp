#ifndef DSCOH_GF2_HPP
#define DSCOH_GF2_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

namespace dscoh {

// Bit vector over GF(2), packed into 64-bit words.
class Gf2Vec {
public:
    explicit Gf2Vec(std::size_t bits = 0) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }

    bool zero() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    int lowest_set() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) {
                std::uint64_t w = words_[k];
                int b = 0;
                while (!(w & 1u)) {
                    w >>= 1;
                    ++b;
                }
                return static_cast<int>(k * 64) + b;
            }
        return -1;
    }
    Gf2Vec& operator^=(const Gf2Vec& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }

private:
    std::size_t bits_;
    std::vector<std::uint64_t> words_;
};

// Incrementally maintained row-echelon basis over GF(2), keyed by pivot bit.
class Gf2Basis {
public:
    explicit Gf2Basis(std::size_t bits) : bits_(bits) {}

    std::size_t rank() const { return rows_.size(); }

    // Reduces v against the basis; returns the residual (zero iff dependent).
    Gf2Vec reduce(Gf2Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            int p = pivots_[i];
            if (p >= 0 && v.test(static_cast<std::size_t>(p))) v ^= rows_[i];
        }
        return v;
    }

    bool independent(const Gf2Vec& v) const { return !reduce(v).zero(); }

    // Inserts v if independent; returns whether the rank grew.
    bool try_insert(const Gf2Vec& v) {
        Gf2Vec r = reduce(v);
        if (r.zero()) return false;
        pivots_.push_back(r.lowest_set());
        rows_.push_back(std::move(r));
        return true;
    }

private:
    std::size_t bits_;
    std::vector<Gf2Vec> rows_;
    std::vector<int> pivots_;
};

inline std::size_t gf2_rank(std::size_t bits, const std::vector<Gf2Vec>& rows) {
    Gf2Basis basis(bits);
    for (const auto& r : rows) basis.try_insert(r);
    return basis.rank();
}

}  // namespace dscoh

#endif
