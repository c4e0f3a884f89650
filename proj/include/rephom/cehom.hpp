#pragma once

#include "rephom/dga.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace rephom {

enum class Action { none, gl_adjoint, sym, hyperoct };

std::string action_name(Action a);
Action action_from_name(const std::string& s);

struct WeightBox {
    std::vector<std::vector<int>> weights;

    // every w in N^rank with sum <= max_sum, in graded-lex order
    static WeightBox total(int rank, int max_sum);
    static WeightBox single(std::vector<int> w) { return WeightBox{{std::move(w)}}; }
};

// Basis of the invariant part of component (i, w). Action::none returns the
// monomial basis. gl_adjoint needs a matrix complex, sym/hyperoct a diagonal one.
std::vector<Poly> invariant_basis(const DGAlgebraSpec& alg, Action action, int i, const std::vector<int>& w);

// Exact Reynolds averaging over S_n or (Z_2)^n x S_n on a diagonal complex.
Poly reynolds(const DGAlgebraSpec& alg, Action action, const Poly& p);

struct HomologyEntry {
    std::vector<int> w;
    std::vector<int> dims;      // dims[i] = dim C_i
    std::vector<int> ranks;     // ranks[i] = rank of d_i : C_i -> C_{i-1}
    std::vector<int> homology;  // dims[i] - ranks[i] - ranks[i+1]
    Rational euler;

    int dim(int i) const { return i < static_cast<int>(dims.size()) ? dims[i] : 0; }
    int rank(int i) const { return i < static_cast<int>(ranks.size()) ? ranks[i] : 0; }
    int h(int i) const { return i < static_cast<int>(homology.size()) ? homology[i] : 0; }
    Rational homology_euler() const;
};

struct HomologyReport {
    std::string complex;
    int n = 0;
    std::string invariants = "none";
    Rational qparam{1};
    std::vector<HomologyEntry> weights;

    const HomologyEntry* find(const std::vector<int>& w) const;
    nlohmann::json to_json() const;
    static HomologyReport from_json(const nlohmann::json& j);
    std::string to_csv() const;
    std::string to_text() const;
};

// Components are computed up to degree |w| + 1, which covers every nonzero one.
HomologyReport homology_dims(const DGAlgebraSpec& alg, const WeightBox& box);
// Throws InternalConsistency if an invariant subspace is not d-stable.
HomologyReport invariant_homology(const DGAlgebraSpec& alg, Action action, const WeightBox& box);

// a_ij -> delta_ij a_i, multiplicatively
Poly hc_map(const DGAlgebraSpec& src, const DGAlgebraSpec& tgt, const Poly& p);

struct HcDegree {
    int degree = 0;
    int source_h = 0;
    int target_h = 0;
    int rank = 0;  // rank of the induced map on homology
    bool injective() const { return rank == source_h; }
    bool surjective() const { return rank == target_h; }
};

struct HcWeight {
    std::vector<int> w;
    bool chain_map = true;           // checked on every monomial of the full complex
    bool lands_in_invariants = true;
    std::vector<HcDegree> degrees;
    bool h0_iso() const;
    bool surjective() const;
    bool bijective() const;
};

struct HcReport {
    int n = 0;
    Rational qparam{1};
    std::vector<HcWeight> weights;
    bool chain_map() const;
    bool surjective() const;
    bool bijective() const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
    std::string to_text() const;
};

// The matrix complex (xy, or qpoly when q != 1) with gl invariants against its
// diagonal partner with sym invariants.
HcReport hc_map_check(int n, const WeightBox& box, const Rational& q = Rational(1));

// number of monomials in X_p (weight (p,0)), Y_p (weight (0,p)), p >= 1, using at most n factors
long long power_sum_monomials(int n, const std::vector<int>& w);

struct QpolyCount {
    std::vector<int> w;
    int h0 = 0;
    long long expected = 0;
    bool higher_vanish = true;
    bool ok() const { return higher_vanish && h0 == expected; }
};

std::vector<QpolyCount> qpoly_h0_count(int n, const WeightBox& box, const Rational& q = Rational(2));

}  // namespace rephom
