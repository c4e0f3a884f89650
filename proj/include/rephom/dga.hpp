#pragma once

#include "rephom/linalg.hpp"
#include "rephom/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rephom {

struct GeneratorSpec {
    std::string tag;
    std::vector<int> index;  // 1-based (i,j) for matrix generators, (i) for diagonal ones
    int degree = 0;
    std::vector<int> weight;
    bool odd() const { return degree % 2 != 0; }
    std::string name() const;
};

// Canonical form: (generator id, exponent) with increasing ids, exponent 1 on
// odd generators. Ordered by total exponent, then lexicographically.
struct Monomial {
    std::vector<std::pair<int, int>> f;

    int length() const;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f == b.f; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.f != b.f; }
    friend bool operator<(const Monomial& a, const Monomial& b);
};

using Poly = std::map<Monomial, Rational>;

void poly_add(Poly& p, const Monomial& m, const Rational& c);
void poly_add(Poly& p, const Poly& q, const Rational& c = Rational(1));

enum class ComplexKind { xy, qpoly, xyz, diag_xy, diag_qpoly, diag_xyz };

std::string kind_name(ComplexKind k);
ComplexKind kind_from_name(const std::string& s);
bool is_diagonal(ComplexKind k);
// the matrix kind for a diagonal one and vice versa
ComplexKind partner_kind(ComplexKind k);

// Words in the letters of a free DG algebra, with letter-level differentials.
struct Letter {
    std::string tag;
    int degree = 0;
    std::vector<int> weight;
};
struct WordTerm {
    Rational c;
    std::vector<int> word;
};
struct FreeResolution {
    std::vector<Letter> letters;
    std::vector<std::vector<WordTerm>> d;
};

// x, y, theta with d(theta) = xy - q yx
FreeResolution resolution_xy(const Rational& q);
// x, y, z, xi, theta, lambda, t with dxi = [y,z], dtheta = [z,x], dlambda = [x,y],
// dt = [x,xi] + [y,theta] + [z,lambda]
FreeResolution resolution_xyz();

struct DGAlgebraSpec {
    ComplexKind kind = ComplexKind::xy;
    int n = 1;
    Rational qparam{1};
    int rank = 2;  // length of weight vectors
    int nletters = 0;
    std::vector<GeneratorSpec> gens;
    std::vector<Poly> d;

    bool diagonal() const { return is_diagonal(kind); }
    // 0-based positions
    int gen_id(int letter, int i, int j) const { return (letter * n + i) * n + j; }
    int diag_id(int letter, int i) const { return letter * n + i; }
    int letter_of(int g) const { return diagonal() ? g / n : g / (n * n); }

    int degree(const Monomial& m) const;
    std::vector<int> weight(const Monomial& m) const;
    std::string str(const Monomial& m) const;
    std::string str(const Poly& p) const;
    Monomial generator(int g) const { return Monomial{{{g, 1}}}; }

    // Koszul sign of the product (0 when an odd generator repeats) and the product
    std::pair<int, Monomial> mul(const Monomial& a, const Monomial& b) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly differential(const Monomial& m) const;
    Poly differential(const Poly& p) const;
    // even derivation with the given values on generators
    Poly derivation(const std::vector<Poly>& values, const Monomial& m) const;
    Poly derivation(const std::vector<Poly>& values, const Poly& p) const;

    // degree and weight bookkeeping plus d(d(g)) = 0 on generators
    void validate() const;
};

DGAlgebraSpec rep_complex(const FreeResolution& res, int n, ComplexKind kind, const Rational& q);
DGAlgebraSpec diag_complex(const FreeResolution& res, int n, ComplexKind kind, const Rational& q);
// qparam is required for qpoly kinds and must be absent or 1 otherwise
DGAlgebraSpec build_complex(ComplexKind kind, int n, std::optional<Rational> qparam = std::nullopt);

// Checks the hard-coded xy (r = 2) or xyz (r = 3) letter differentials against
// the general shuffle rule for the minimal resolution of Sym(V).
bool shuffle_rule_matches(int r);

std::vector<Monomial> component_basis(const DGAlgebraSpec& alg, int i, const std::vector<int>& w);

struct SparseMatrixQ {
    std::vector<Monomial> rows;  // target basis
    std::vector<Monomial> cols;  // source basis
    std::map<std::pair<int, int>, Rational> entries;

    Rational at(int r, int c) const;
    std::vector<SparseVec> columns() const;
    int rank() const { return sparse_rank(columns()); }
};

SparseMatrixQ differential_matrix(const DGAlgebraSpec& alg, int i, const std::vector<int>& w);

}  // namespace rephom
