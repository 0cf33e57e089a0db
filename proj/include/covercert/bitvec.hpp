#ifndef COVERCERT_BITVEC_HPP
#define COVERCERT_BITVEC_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace covercert {

/// flat bitset sized at construction
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::uint64_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::uint64_t size() const { return n_; }

    void set(std::uint64_t i) { w_[i >> 6] |= (std::uint64_t(1) << (i & 63)); }
    void clear(std::uint64_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool get(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (const auto w : w_) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

    void or_with(const BitVec& other) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= other.w_[i];
    }

    friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

  private:
    std::uint64_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace covercert

#endif
