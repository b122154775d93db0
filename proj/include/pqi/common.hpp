#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqi {

// Malformed user input (bad file, bad parameter). CLI maps this to exit 1.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural fact the library relies on failed to hold on real data.
// Reaching this means a bug. CLI maps this to exit 3.
struct InternalCheckError : std::logic_error {
    using std::logic_error::logic_error;
};

// Subset of a fixed universe {0..n-1}, packed into 64-bit words.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) >> 6, 0) {}

    int universe() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= u64(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(u64(1) << (i & 63)); }
    void assign(int i, bool v) { v ? set(i) : reset(i); }

    int count() const {
        int c = 0;
        for (u64 w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (u64 w : w_)
            if (w) return false;
        return true;
    }

    int intersect_count(const Bitset& o) const {
        int c = 0;
        for (size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
        return c;
    }
    bool intersects(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool subset_of(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bitset& subtract(const Bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    Bitset complement() const {
        Bitset r(n_);
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
        r.trim();
        return r;
    }

    // First member, or -1.
    int find_first() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k * 64) + std::countr_zero(w_[k]);
        return -1;
    }
    // First member strictly greater than i, or -1.
    int find_next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t k = size_t(i) >> 6;
        u64 w = w_[k] & (~u64(0) << (i & 63));
        while (true) {
            if (w) return int(k * 64) + std::countr_zero(w);
            if (++k == w_.size()) return -1;
            w = w_[k];
        }
    }

    std::vector<int> members() const {
        std::vector<int> v;
        v.reserve(count());
        for (int i = find_first(); i >= 0; i = find_next(i)) v.push_back(i);
        return v;
    }

    static Bitset of(int n, const std::vector<int>& idx) {
        Bitset b(n);
        for (int i : idx) {
            if (i < 0 || i >= n) throw UserError("vertex index out of range: " + std::to_string(i));
            b.set(i);
        }
        return b;
    }

    bool operator==(const Bitset&) const = default;

    // Order as sorted index sequences; a proper prefix precedes its extensions.
    static bool seq_less(const Bitset& a, const Bitset& b) {
        size_t n = std::max(a.w_.size(), b.w_.size());
        for (size_t k = 0; k < n; ++k) {
            u64 wa = k < a.w_.size() ? a.w_[k] : 0;
            u64 wb = k < b.w_.size() ? b.w_[k] : 0;
            if (wa == wb) continue;
            int p = int(k * 64) + std::countr_zero(wa ^ wb);
            if (a.test(p)) return b.has_member_above(p);
            return !a.has_member_above(p);
        }
        return false;
    }

  private:
    using u64 = std::uint64_t;

    bool has_member_above(int p) const {
        size_t k = size_t(p) >> 6;
        if (w_[k] & ~(~u64(0) >> (63 - (p & 63)))) return true;
        for (++k; k < w_.size(); ++k)
            if (w_[k]) return true;
        return false;
    }
    void trim() {
        if (n_ & 63) w_.back() &= ~u64(0) >> (64 - (n_ & 63));
    }

    int n_ = 0;
    std::vector<u64> w_;
};

inline void sort_sets(std::vector<Bitset>& v) { std::sort(v.begin(), v.end(), Bitset::seq_less); }

}  // namespace pqi
