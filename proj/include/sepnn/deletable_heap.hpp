#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace sepnn {

/// Binary min-heap over (key, item) pairs with an externally provided
/// position index, so any item can be removed in logarithmic time without
/// lazy deletion (find-min keys stay fresh). Ties on the key go to the
/// smaller item. Items are small integers indexing the position slice.
class DeletableMinHeap {
public:
    struct Entry {
        double key;
        std::uint32_t item;
    };
    static constexpr std::uint32_t kAbsent = 0xFFFFFFFF;

    DeletableMinHeap() = default;

    /// Attaches the position slots for items 0..universe-1. Slots must hold
    /// kAbsent and stay owned by the caller for this heap's lifetime.
    void bind(std::uint32_t* positions, std::uint32_t universe) {
        pos_ = positions;
        universe_ = universe;
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    bool contains(std::uint32_t item) const { return pos_[item] != kAbsent; }

    const Entry& min() const {
        assert(!heap_.empty());
        return heap_.front();
    }

    void insert(std::uint32_t item, double key) {
        assert(item < universe_ && pos_[item] == kAbsent);
        heap_.push_back({key, item});
        pos_[item] = static_cast<std::uint32_t>(heap_.size() - 1);
        sift_up(heap_.size() - 1);
    }

    bool erase(std::uint32_t item) {
        std::uint32_t at = pos_[item];
        if (at == kAbsent) return false;
        pos_[item] = kAbsent;
        std::size_t last = heap_.size() - 1;
        if (at != last) {
            heap_[at] = heap_[last];
            pos_[heap_[at].item] = at;
            heap_.pop_back();
            if (!sift_up(at)) sift_down(at);
        } else {
            heap_.pop_back();
        }
        return true;
    }

    /// Bulk load (heapify); entries must have distinct items, none present.
    void assign(std::vector<Entry> entries) {
        clear();
        heap_ = std::move(entries);
        for (std::size_t i = 0; i < heap_.size(); ++i)
            pos_[heap_[i].item] = static_cast<std::uint32_t>(i);
        if (heap_.size() > 1)
            for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
    }

    void clear() {
        for (const Entry& e : heap_) pos_[e.item] = kAbsent;
        heap_.clear();
    }

    /// Heap-ordered storage view; useful for content checks, not sorted.
    std::span<const Entry> entries() const { return heap_; }

private:
    static bool less(const Entry& a, const Entry& b) {
        return a.key != b.key ? a.key < b.key : a.item < b.item;
    }

    bool sift_up(std::size_t i) {
        bool moved = false;
        while (i > 0) {
            std::size_t parent = (i - 1) / 2;
            if (!less(heap_[i], heap_[parent])) break;
            swap_at(i, parent);
            i = parent;
            moved = true;
        }
        return moved;
    }

    void sift_down(std::size_t i) {
        while (true) {
            std::size_t left = 2 * i + 1;
            if (left >= heap_.size()) break;
            std::size_t smallest = left;
            std::size_t right = left + 1;
            if (right < heap_.size() && less(heap_[right], heap_[left])) smallest = right;
            if (!less(heap_[smallest], heap_[i])) break;
            swap_at(i, smallest);
            i = smallest;
        }
    }

    void swap_at(std::size_t a, std::size_t b) {
        std::swap(heap_[a], heap_[b]);
        pos_[heap_[a].item] = static_cast<std::uint32_t>(a);
        pos_[heap_[b].item] = static_cast<std::uint32_t>(b);
    }

    std::vector<Entry> heap_;
    std::uint32_t* pos_ = nullptr;
    std::uint32_t universe_ = 0;
};

}  // namespace sepnn
