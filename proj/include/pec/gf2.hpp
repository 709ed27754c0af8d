#ifndef PEC_GF2_HPP
#define PEC_GF2_HPP

#include <optional>
#include <vector>

#include "pec/bitvec.hpp"
#include "pec/errors.hpp"

namespace pec {

/// Row-reduced basis of a GF(2) vector space. Rows are kept in reduced
/// row-echelon form with pivots (lowest set bits) strictly increasing, so two
/// bases spanning the same space compare equal regardless of insertion order.
class Gf2Basis {
  public:
    Gf2Basis() = default;
    explicit Gf2Basis(int width) : width_(width) {}

    int width() const { return width_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<BitVec>& rows() const { return rows_; }

    /// In-place insert; returns true when v was independent (rank grew).
    bool add(const BitVec& v) {
        check_width(v);
        BitVec r = reduce(v);
        if (r.zero()) return false;
        int pivot = r.lowest_set_bit();
        std::size_t pos = 0;
        while (pos < rows_.size() && rows_[pos].lowest_set_bit() < pivot) ++pos;
        for (BitVec& row : rows_)
            if (row.test(pivot)) row ^= r;
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    /// Value-style insert: span(result) = span(this ∪ {v}).
    Gf2Basis inserted(const BitVec& v) const {
        Gf2Basis b = *this;
        b.add(v);
        return b;
    }

    bool in_span(const BitVec& v) const {
        check_width(v);
        return reduce(v).zero();
    }

    /// Smallest color index i with the unit vector e_i in the span, if any.
    /// In reduced row-echelon form e_i lies in the span exactly when the row
    /// pivoted at i is e_i itself, so a single pass over the rows suffices.
    std::optional<int> weight1_in_span() const {
        std::optional<int> best;
        for (const BitVec& row : rows_)
            if (row.weight() == 1) {
                int i = row.lowest_set_bit();
                if (!best || i < *best) best = i;
            }
        return best;
    }

    /// Minimum weight of a nonzero vector in the span, by enumerating all
    /// 2^rank combinations in Gray-code order. Returns nullopt for the empty
    /// span or when rank exceeds max_rank.
    std::optional<int> min_weight(int max_rank = 20) const {
        if (rows_.empty()) return std::nullopt;
        if (rank() > max_rank) return std::nullopt;
        BitVec acc(width_);
        int best = width_ + 1;
        std::uint64_t total = std::uint64_t{1} << rank();
        for (std::uint64_t i = 1; i < total; ++i) {
            // Gray step: combination i^(i>>1) differs from the previous one
            // in bit ctz(i).
            acc ^= rows_[std::countr_zero(i)];
            best = std::min(best, acc.weight());
        }
        return best;
    }

    bool operator==(const Gf2Basis&) const = default;

  private:
    void check_width(const BitVec& v) const {
        if (v.width() != width_) throw Error("gf2: width mismatch");
    }

    BitVec reduce(BitVec v) const {
        for (const BitVec& row : rows_) {
            if (v.zero()) break;
            if (v.test(row.lowest_set_bit())) v ^= row;
        }
        return v;
    }

    int width_ = 0;
    std::vector<BitVec> rows_;
};

}  // namespace pec

#endif  // PEC_GF2_HPP
