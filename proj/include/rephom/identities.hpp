#pragma once

#include "rephom/laurent.hpp"
#include "rephom/roots.hpp"
#include "rephom/series.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rephom {

struct Discrepancy {
    std::vector<int> exp;
    Rational lhs;
    Rational rhs;
};

struct IdentityVerdict {
    std::string name;
    std::string system;  // empty when no root system is involved
    SeriesOrder order;
    MultiSeries lhs;
    MultiSeries rhs;
    bool equal = false;
    std::optional<Discrepancy> first_discrepancy;
    std::map<std::string, int> truncation_cuts;
    std::vector<IdentityVerdict> parts;  // sub-checks of compound identities

    nlohmann::json to_json() const;
    static IdentityVerdict from_json(const nlohmann::json& j);
    std::string to_text() const;
};

// Compares two series of the same order; the discrepancy reported is the
// graded-lex smallest exponent where they differ.
IdentityVerdict make_verdict(std::string name, std::string system, MultiSeries lhs, MultiSeries rhs);

// The graded-lex smallest differing exponent, if any.
std::optional<Discrepancy> first_difference(const MultiSeries& a, const MultiSeries& b);

// Terms of total degree <= d.
MultiSeries low_degree_part(const MultiSeries& a, int d);

// --- sides, exposed for cross-checks ---

// (1/|W|)(1-qt)^l/((1-q)^l(1-t)^l) CT{prod_a (1-qt e^a)(1-e^a)/((1-q e^a)(1-t e^a))}
MultiSeries chevalley_lhs(const RootSystem& rs, const SeriesOrder& order);
// (1/|W|) sum_w det(1-qtw)/(det(1-qw)det(1-tw))
MultiSeries molien_qt(const RootSystem& rs, const SeriesOrder& order);
// (1/|W|) sum_w 1/det(1-qw), order in q only
MultiSeries molien_q(const RootSystem& rs, const SeriesOrder& order);
// prod_i 1/(1-q^{d_i})
MultiSeries invariant_degrees_series(const RootSystem& rs, const SeriesOrder& order);

MultiSeries macdonald_qt_lhs(const RootSystem& rs, const SeriesOrder& order);
MultiSeries macdonald_qt_rhs(const RootSystem& rs, const SeriesOrder& order);
MultiSeries macdonald_q_lhs(const RootSystem& rs, int k, const SeriesOrder& order);
MultiSeries macdonald_q_rhs(const RootSystem& rs, int k, const SeriesOrder& order);
// exact degree of the macdonald_q polynomial: k(k-1)|R|/2
int macdonald_q_degree(const RootSystem& rs, int k);

// Gaussian binomial [n choose k]_q as a q-series
MultiSeries q_binomial(int n, int k, const SeriesOrder& order);

// W_lambda as a ratio of Laurent polynomials (unreduced)
LaurentRat nekrasov_weight(const std::vector<int>& lambda);
std::vector<std::vector<int>> partitions_of(int n);
// sum_{|lambda| = n} W_lambda, reduced by cancelling mixed-sign binomials
LaurentRat nekrasov_total(int n);

// (1-qt)/((1-q)(1-t))
MultiSeries chi_line_factor(const SeriesOrder& order);

// --- identities ---

IdentityVerdict chevalley_qt(const RootSystem& rs, const SeriesOrder& order);
MultiSeries chi_En(int n, const SeriesOrder& order);
// order must have q, t, s, v active with v bound >= n
MultiSeries G_n(int n, const SeriesOrder& order);
SeriesOrder G_order(int n, int nq, int nt);
IdentityVerdict macdonald_qt(const RootSystem& rs, const SeriesOrder& order);
IdentityVerdict macdonald_q(const RootSystem& rs, int k, const SeriesOrder& order);
IdentityVerdict nekrasov_sum(int n, const SeriesOrder& order);
IdentityVerdict dual_numbers(int n, const SeriesOrder& order);
IdentityVerdict sl_gl_factor(int n, const SeriesOrder& order);
IdentityVerdict hyperoct_series(int n, const SeriesOrder& order);
// order over q and v
IdentityVerdict rothe_check(const SeriesOrder& order);

}  // namespace rephom
