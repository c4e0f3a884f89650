#pragma once

#include "rephom/roots.hpp"
#include "rephom/series.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace rephom {

constexpr int kMaxAmbient = 6;

// Lattice exponent; unused trailing coordinates stay zero.
struct Lattice {
    std::array<std::int16_t, kMaxAmbient> c{};

    static Lattice from(const std::vector<int>& v);
    std::vector<int> to_vector(int dim) const;
    int l1() const;
    Lattice operator+(const Lattice& o) const;
    Lattice scaled(int k) const;
    bool is_zero() const;
    friend bool operator<(const Lattice& a, const Lattice& b) { return a.c < b.c; }
    friend bool operator==(const Lattice& a, const Lattice& b) { return a.c == b.c; }
};

class TorusPoly {
public:
    TorusPoly(int dim, SeriesOrder order) : dim_(dim), order_(std::move(order)) {}

    static TorusPoly one(int dim, const SeriesOrder& order);
    static TorusPoly term(int dim, const std::vector<int>& lattice, const MultiSeries& coeff);
    // 1 - c * e^{root}, c a series
    static TorusPoly one_minus(int dim, const std::vector<int>& root, const MultiSeries& c);

    int dim() const { return dim_; }
    const SeriesOrder& order() const { return order_; }
    const std::map<Lattice, MultiSeries>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    MultiSeries coeff(const std::vector<int>& lattice) const;

    void add_term(const Lattice& l, const MultiSeries& c);
    TorusPoly& operator+=(const TorusPoly& o);
    TorusPoly operator*(const MultiSeries& c) const;
    friend bool operator==(const TorusPoly& a, const TorusPoly& b) {
        return a.dim_ == b.dim_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    TorusPoly transported(const WeylElement& w) const;

private:
    int dim_;
    SeriesOrder order_;
    std::map<Lattice, MultiSeries> terms_;
};

TorusPoly tp_mul(const TorusPoly& a, const TorusPoly& b);

// sum_k scalar^k e^{k*root}, stopping once scalar^k truncates to zero.
TorusPoly expand_geometric(const std::vector<int>& root, const MultiSeries& scalar);

MultiSeries constant_term(const TorusPoly& a);

using FactorRule = std::function<TorusPoly(const std::vector<int>& root)>;

// Product over all roots of the rule's factors.
TorusPoly root_product(const RootSystem& rs, const FactorRule& rule, const SeriesOrder& order);

// Constant term of a product, discarding intermediate terms that can no
// longer reach lattice exponent 0 within the truncation.
struct CtStats {
    std::size_t max_terms = 0;  // largest intermediate support
    int max_sup_norm = 0;       // largest |coordinate| kept in an intermediate
};
MultiSeries ct_of_product(const std::vector<TorusPoly>& factors, CtStats* stats = nullptr);

// The factor list of root_product, with alpha and -alpha adjacent.
std::vector<TorusPoly> root_factors(const RootSystem& rs, const FactorRule& rule, const SeriesOrder& order);

}  // namespace rephom
