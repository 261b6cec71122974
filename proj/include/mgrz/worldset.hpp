#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mgrz {

// Subset of a fixed finite universe {0..n-1}, packed into 64-bit words.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static WorldSet full(int n) {
        WorldSet s(n);
        for (int i = 0; i < n; ++i) s.set(i);
        return s;
    }
    static WorldSet singleton(int n, int i) {
        WorldSet s(n);
        s.set(i);
        return s;
    }

    int universe() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (auto v : w_) c += std::popcount(v);
        return c;
    }
    bool any() const {
        for (auto v : w_)
            if (v) return true;
        return false;
    }
    bool none() const { return !any(); }

    WorldSet& operator&=(const WorldSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    WorldSet& operator|=(const WorldSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    WorldSet operator&(const WorldSet& o) const {
        WorldSet r = *this;
        r &= o;
        return r;
    }
    WorldSet operator|(const WorldSet& o) const {
        WorldSet r = *this;
        r |= o;
        return r;
    }
    // Complement within the universe.
    WorldSet operator~() const {
        WorldSet r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }
    WorldSet minus(const WorldSet& o) const {
        WorldSet r = *this;
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
        return r;
    }

    bool intersects(const WorldSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool subset_of(const WorldSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // Lowest member, or -1.
    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }
    // Lowest member > i, or -1.
    int next(int i) const {
        for (int j = i + 1; j < n_; ++j)
            if (test(j)) return j;
        return -1;
    }

    std::vector<int> members() const {
        std::vector<int> m;
        for (int i = first(); i >= 0; i = next(i)) m.push_back(i);
        return m;
    }

    bool operator==(const WorldSet& o) const = default;

private:
    void trim() {
        if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Macro-free iteration helper: for (int w : iterate(set)) ...
inline std::vector<int> iterate(const WorldSet& s) { return s.members(); }

}  // namespace mgrz
