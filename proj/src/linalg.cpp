#include "rephom/linalg.hpp"

namespace rephom {

SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rational s = a[i].second;
            s.add_mul(c, b[j].second);
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec scaled(const SparseVec& a, const Rational& c) {
    if (c.is_zero()) return {};
    SparseVec out = a;
    for (auto& e : out) e.second = e.second * c;
    return out;
}

SparseVec sparse_from_map(const std::map<int, Rational>& m) {
    SparseVec out;
    for (const auto& [i, c] : m)
        if (!c.is_zero()) out.emplace_back(i, c);
    return out;
}

SparseVec Echelon::reduce(SparseVec v) const {
    while (!v.empty()) {
        auto it = lead_.find(v.front().first);
        if (it == lead_.end()) break;
        const Rational c = -v.front().second;
        v = axpy(v, c, rows_[it->second].v);
    }
    return v;
}

bool Echelon::insert(const SparseVec& input) {
    const std::size_t id = inserted_++;
    SparseVec v = input;
    SparseVec hist;
    if (history_) hist.emplace_back(static_cast<int>(id), Rational(1));
    while (!v.empty()) {
        auto it = lead_.find(v.front().first);
        if (it == lead_.end()) break;
        const Rational c = -v.front().second;
        const Row& r = rows_[it->second];
        v = axpy(v, c, r.v);
        if (history_) hist = axpy(hist, c, r.hist);
    }
    if (v.empty()) {
        if (history_) kernel_.push_back(std::move(hist));
        return false;
    }
    const Rational inv = Rational(1) / v.front().second;
    Row row{scaled(v, inv), history_ ? scaled(hist, inv) : SparseVec{}};
    lead_[row.v.front().first] = rows_.size();
    rows_.push_back(std::move(row));
    return true;
}

int sparse_rank(const std::vector<SparseVec>& vectors) {
    Echelon e;
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

}  // namespace rephom
