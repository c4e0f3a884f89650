#pragma once

#include "rephom/rational.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace rephom {

// Sparse vector: (index, nonzero coefficient), strictly increasing indices.
using SparseVec = std::vector<std::pair<int, Rational>>;

// a + c*b
SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec scaled(const SparseVec& a, const Rational& c);
SparseVec sparse_from_map(const std::map<int, Rational>& m);

// Row echelon form built one vector at a time. Each stored row has a distinct
// leading index with coefficient 1. With history enabled every stored row
// remembers which combination of inserted vectors produced it, so dependent
// insertions yield kernel vectors over insertion order.
class Echelon {
public:
    explicit Echelon(bool track_history = false) : history_(track_history) {}

    // Returns true if v was independent of the rows so far.
    bool insert(const SparseVec& v);
    SparseVec reduce(SparseVec v) const;
    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }

    int rank() const { return static_cast<int>(rows_.size()); }
    std::size_t inserted() const { return inserted_; }
    // One vector per dependent insertion, indexed by insertion number.
    const std::vector<SparseVec>& kernel() const { return kernel_; }

private:
    struct Row {
        SparseVec v;
        SparseVec hist;
    };
    bool history_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;
    std::map<int, std::size_t> lead_;  // leading index -> row
    std::vector<SparseVec> kernel_;
};

int sparse_rank(const std::vector<SparseVec>& vectors);

}  // namespace rephom
