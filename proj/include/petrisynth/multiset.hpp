#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace petrisynth {

/// Multiset over interned element ids. Entries are kept sorted by id and
/// never store a zero count (canonical form). Difference saturates at 0,
/// union is max, intersection is min.
class multiset {
public:
    using entry = std::pair<int32_t, int32_t>;

    multiset() = default;
    explicit multiset(std::vector<entry> entries) : entries_(std::move(entries)) {
        normalize();
    }

    int32_t count(int32_t id) const {
        auto it = find(id);
        return it == entries_.end() ? 0 : it->second;
    }
    bool contains(int32_t id) const { return count(id) > 0; }
    bool empty() const { return entries_.empty(); }
    size_t support_size() const { return entries_.size(); }

    int64_t total() const {
        int64_t s = 0;
        for (auto& [_, c] : entries_) s += c;
        return s;
    }

    void add(int32_t id, int32_t n = 1) {
        if (n == 0) return;
        auto it = lower(id);
        if (it != entries_.end() && it->first == id) {
            it->second += n;
            if (it->second <= 0) entries_.erase(it);
        } else if (n > 0) {
            entries_.insert(it, {id, n});
        }
    }

    /// Removes up to n tokens of id (saturating).
    void remove(int32_t id, int32_t n = 1) {
        auto it = lower(id);
        if (it == entries_.end() || it->first != id) return;
        it->second -= n;
        if (it->second <= 0) entries_.erase(it);
    }

    bool includes(const multiset& other) const {
        for (auto& [id, c] : other.entries_)
            if (count(id) < c) return false;
        return true;
    }

    multiset plus(const multiset& other) const {
        multiset r = *this;
        for (auto& [id, c] : other.entries_) r.add(id, c);
        return r;
    }

    /// Saturating difference: max(0, a - b) pointwise.
    multiset minus(const multiset& other) const {
        multiset r = *this;
        for (auto& [id, c] : other.entries_) r.remove(id, c);
        return r;
    }

    multiset set_union(const multiset& other) const {
        multiset r = *this;
        for (auto& [id, c] : other.entries_) {
            auto cur = r.count(id);
            if (c > cur) r.add(id, c - cur);
        }
        return r;
    }

    multiset set_intersection(const multiset& other) const {
        std::vector<entry> out;
        for (auto& [id, c] : entries_) {
            int32_t m = std::min(c, other.count(id));
            if (m > 0) out.push_back({id, m});
        }
        return multiset(std::move(out));
    }

    const std::vector<entry>& entries() const { return entries_; }

    auto operator<=>(const multiset&) const = default;

    size_t hash() const {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (auto& [id, c] : entries_) {
            h ^= std::hash<int64_t>()((int64_t(id) << 32) | uint32_t(c)) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::vector<entry> entries_;

    std::vector<entry>::const_iterator find(int32_t id) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const entry& e, int32_t v) { return e.first < v; });
        if (it != entries_.end() && it->first == id) return it;
        return entries_.end();
    }
    std::vector<entry>::iterator lower(int32_t id) {
        return std::lower_bound(entries_.begin(), entries_.end(), id,
                                [](const entry& e, int32_t v) { return e.first < v; });
    }
    void normalize() {
        std::sort(entries_.begin(), entries_.end());
        std::vector<entry> out;
        for (auto& [id, c] : entries_) {
            if (!out.empty() && out.back().first == id)
                out.back().second += c;
            else
                out.push_back({id, c});
        }
        std::erase_if(out, [](const entry& e) { return e.second == 0; });
        for (auto& [_, c] : out)
            if (c < 0) throw std::invalid_argument("negative multiset count");
        entries_ = std::move(out);
    }
};

} // namespace petrisynth
