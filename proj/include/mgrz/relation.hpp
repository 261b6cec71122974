#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgrz/worldset.hpp"

namespace mgrz {

// Binary relation on {0..n-1}, one WorldSet row of successors per world.
class Relation {
public:
    Relation() = default;
    explicit Relation(int n) : n_(n), rows_(n, WorldSet(n)) {}

    static Relation identity(int n) {
        Relation r(n);
        for (int i = 0; i < n; ++i) r.set(i, i);
        return r;
    }
    static Relation total(int n) {
        Relation r(n);
        for (int i = 0; i < n; ++i) r.rows_[i] = WorldSet::full(n);
        return r;
    }

    int size() const { return n_; }
    bool test(int i, int j) const { return rows_[i].test(j); }
    void set(int i, int j) { rows_[i].set(j); }
    void reset(int i, int j) { rows_[i].reset(j); }

    const WorldSet& row(int i) const { return rows_[i]; }  // R[i]
    WorldSet& row(int i) { return rows_[i]; }

    WorldSet column(int j) const {  // R^{-1}[j]
        WorldSet c(n_);
        for (int i = 0; i < n_; ++i)
            if (test(i, j)) c.set(i);
        return c;
    }

    WorldSet image(const WorldSet& u) const {  // R[U]
        WorldSet r(n_);
        for (int i = u.first(); i >= 0; i = u.next(i)) r |= rows_[i];
        return r;
    }
    WorldSet preimage(const WorldSet& u) const {  // R^{-1}[U] = {x : R[x] meets U}
        WorldSet r(n_);
        for (int i = 0; i < n_; ++i)
            if (rows_[i].intersects(u)) r.set(i);
        return r;
    }
    WorldSet preimage_all(const WorldSet& u) const {  // {x : R[x] subseteq U}
        WorldSet r(n_);
        for (int i = 0; i < n_; ++i)
            if (rows_[i].subset_of(u)) r.set(i);
        return r;
    }

    // x (this.then(s)) y  iff  exists z: x this z and z s y.
    Relation then(const Relation& s) const {
        Relation r(n_);
        for (int i = 0; i < n_; ++i) r.rows_[i] = s.image(rows_[i]);
        return r;
    }

    Relation transpose() const {
        Relation r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = rows_[i].first(); j >= 0; j = rows_[i].next(j)) r.set(j, i);
        return r;
    }

    Relation reflexive_transitive_closure() const {
        Relation r = *this;
        for (int i = 0; i < n_; ++i) r.set(i, i);
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i)
                if (r.test(i, k)) r.rows_[i] |= r.rows_[k];
        return r;
    }

    bool is_reflexive() const {
        for (int i = 0; i < n_; ++i)
            if (!test(i, i)) return false;
        return true;
    }
    bool is_irreflexive() const {
        for (int i = 0; i < n_; ++i)
            if (test(i, i)) return false;
        return true;
    }
    bool is_transitive() const {
        for (int i = 0; i < n_; ++i)
            for (int j = rows_[i].first(); j >= 0; j = rows_[i].next(j))
                if (!rows_[j].subset_of(rows_[i])) return false;
        return true;
    }
    bool is_antisymmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (test(i, j) && test(j, i)) return false;
        return true;
    }
    bool is_preorder() const { return is_reflexive() && is_transitive(); }
    bool is_partial_order() const { return is_preorder() && is_antisymmetric(); }
    bool is_strict_order() const { return is_irreflexive() && is_transitive(); }

    bool subset_of(const Relation& o) const {
        for (int i = 0; i < n_; ++i)
            if (!rows_[i].subset_of(o.rows_[i])) return false;
        return true;
    }
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> p;
        for (int i = 0; i < n_; ++i)
            for (int j = rows_[i].first(); j >= 0; j = rows_[i].next(j)) p.emplace_back(i, j);
        return p;
    }

    bool operator==(const Relation& o) const = default;

private:
    int n_ = 0;
    std::vector<WorldSet> rows_;
};

// Partition of {0..n-1}; block ids are normalized by first occurrence.
class Partition {
public:
    Partition() = default;

    static Partition identity(int n) {
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i;
        return from_block_ids(ids);
    }
    static Partition single_block(int n) { return from_block_ids(std::vector<int>(n, 0)); }
    static Partition from_block_ids(std::vector<int> raw) {
        Partition p;
        p.block_of_.assign(raw.size(), -1);
        std::vector<int> remap;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            int id = -1;
            for (std::size_t k = 0; k < remap.size(); ++k)
                if (remap[k] == raw[i]) id = int(k);
            if (id < 0) {
                id = int(remap.size());
                remap.push_back(raw[i]);
                p.blocks_.emplace_back(int(raw.size()));
            }
            p.block_of_[i] = id;
            p.blocks_[id].set(int(i));
        }
        return p;
    }
    // Blocks as explicit world lists; returns nothing if they do not partition {0..n-1}.
    static std::optional<Partition> from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
        std::vector<int> ids(n, -1);
        int next = 0;
        for (const auto& b : blocks) {
            if (b.empty()) return std::nullopt;
            for (int w : b) {
                if (w < 0 || w >= n || ids[w] != -1) return std::nullopt;
                ids[w] = next;
            }
            ++next;
        }
        for (int id : ids)
            if (id == -1) return std::nullopt;
        return from_block_ids(ids);
    }

    int universe() const { return int(block_of_.size()); }
    int block_count() const { return int(blocks_.size()); }
    int block_of(int w) const { return block_of_[w]; }
    const WorldSet& block(int b) const { return blocks_[b]; }
    const WorldSet& class_of(int w) const { return blocks_[block_of_[w]]; }  // E[w]
    bool same(int x, int y) const { return block_of_[x] == block_of_[y]; }

    WorldSet saturate(const WorldSet& u) const {  // E[U]
        WorldSet r(universe());
        for (int i = u.first(); i >= 0; i = u.next(i)) r |= class_of(i);
        return r;
    }

    Relation as_relation() const {
        Relation r(universe());
        for (int i = 0; i < universe(); ++i) r.row(i) = class_of(i);
        return r;
    }

    bool operator==(const Partition& o) const { return block_of_ == o.block_of_; }

private:
    std::vector<int> block_of_;
    std::vector<WorldSet> blocks_;
};

}  // namespace mgrz
