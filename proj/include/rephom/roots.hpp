#pragma once

#include "rephom/series.hpp"

#include <string>
#include <vector>

namespace rephom {

enum class Family { gl, sl, so, sp };

// Signed permutation: (w v)[perm[i]] = sign[i] * v[i].
struct WeylElement {
    std::vector<int> perm;
    std::vector<int> sign;

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.perm == b.perm && a.sign == b.sign;
    }
    friend bool operator<(const WeylElement& a, const WeylElement& b) {
        return a.perm != b.perm ? a.perm < b.perm : a.sign < b.sign;
    }
};

WeylElement compose(const WeylElement& a, const WeylElement& b);  // a after b
WeylElement inverse(const WeylElement& w);

struct RootSystem {
    Family family;
    int n;  // the label parameter: matrix size for every family
    std::string label;
    int ambient;  // m
    int rank;     // l
    bool sum_zero_quotient = false;  // sl: reflection rep is the sum-zero subspace
    std::vector<std::vector<int>> roots;
    std::vector<int> degrees;
    std::vector<WeylElement> weyl;

    bool is_simple() const;
};

// family:n, with n the matrix size (so:5 is B_2, sp:4 is C_2, so:4 is D_2).
RootSystem build_root_system(Family family, int n);
RootSystem parse_root_system(const std::string& label);
std::string family_name(Family f);

std::vector<int> weyl_act(const WeylElement& w, const std::vector<int>& v);

// det(1 - scalar*w) on the reflection representation. scalar is given as an
// exponent vector over the order's variables.
MultiSeries reflection_det(const RootSystem& rs, const WeylElement& w, const std::vector<int>& scalar,
                           const SeriesOrder& order);

// Signed cycle type: one (length, product of signs) per cycle, sorted. Two
// elements with equal cycle type have equal reflection determinants.
std::vector<std::pair<int, int>> signed_cycle_type(const WeylElement& w);

}  // namespace rephom
