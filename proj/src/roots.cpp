#include "rephom/roots.hpp"

#include "rephom/errors.hpp"

#include <algorithm>
#include <numeric>

namespace rephom {

std::string family_name(Family f) {
    switch (f) {
        case Family::gl: return "gl";
        case Family::sl: return "sl";
        case Family::so: return "so";
        case Family::sp: return "sp";
    }
    return "?";
}

WeylElement compose(const WeylElement& a, const WeylElement& b) {
    const int m = static_cast<int>(a.perm.size());
    WeylElement c{std::vector<int>(m), std::vector<int>(m)};
    for (int i = 0; i < m; ++i) {
        c.perm[i] = a.perm[b.perm[i]];
        c.sign[i] = a.sign[b.perm[i]] * b.sign[i];
    }
    return c;
}

WeylElement inverse(const WeylElement& w) {
    const int m = static_cast<int>(w.perm.size());
    WeylElement r{std::vector<int>(m), std::vector<int>(m)};
    for (int i = 0; i < m; ++i) {
        r.perm[w.perm[i]] = i;
        r.sign[w.perm[i]] = w.sign[i];
    }
    return r;
}

std::vector<int> weyl_act(const WeylElement& w, const std::vector<int>& v) {
    if (v.size() != w.perm.size()) throw MathError(ErrorKind::DimensionMismatch, "weyl_act: length mismatch");
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[w.perm[i]] = w.sign[i] * v[i];
    return r;
}

bool RootSystem::is_simple() const {
    if (family == Family::gl) return false;
    if (family == Family::so && n == 4) return false;  // D_2 = A_1 x A_1
    return rank >= 1;
}

namespace {

std::vector<WeylElement> signed_perms(int m, bool all_signs, bool even_only) {
    std::vector<WeylElement> out;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int masks = all_signs ? (1 << m) : 1;
        for (int mask = 0; mask < masks; ++mask) {
            if (even_only && __builtin_popcount(mask) % 2) continue;
            WeylElement w{perm, std::vector<int>(m, 1)};
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) w.sign[i] = -1;
            out.push_back(w);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> unit(int m, int i, int s) {
    std::vector<int> v(m, 0);
    v[i] = s;
    return v;
}

}  // namespace

RootSystem build_root_system(Family family, int n) {
    RootSystem rs;
    rs.family = family;
    rs.n = n;
    rs.label = family_name(family) + ":" + std::to_string(n);
    auto unsupported = [&] { throw MathError(ErrorKind::Unsupported, "unsupported root system " + rs.label); };
    switch (family) {
        case Family::gl:
        case Family::sl: {
            if (n < 1 || n > 6 || (family == Family::sl && n < 2)) unsupported();
            rs.ambient = n;
            rs.rank = family == Family::gl ? n : n - 1;
            rs.sum_zero_quotient = family == Family::sl;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    std::vector<int> v(n, 0);
                    v[i] = 1;
                    v[j] = -1;
                    rs.roots.push_back(v);
                }
            for (int d = family == Family::gl ? 1 : 2; d <= n; ++d) rs.degrees.push_back(d);
            rs.weyl = signed_perms(n, false, false);
            break;
        }
        case Family::so:
        case Family::sp: {
            bool odd = n % 2 == 1;
            if (family == Family::sp && odd) unsupported();
            int r = n / 2;
            if (r < 1 || r > 4) unsupported();
            if (family == Family::so && !odd && r < 2) unsupported();
            rs.ambient = r;
            rs.rank = r;
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    for (int si : {1, -1})
                        for (int sj : {1, -1}) {
                            std::vector<int> v(r, 0);
                            v[i] = si;
                            v[j] = sj;
                            rs.roots.push_back(v);
                        }
            bool type_d = family == Family::so && !odd;
            if (!type_d) {
                int len = family == Family::sp ? 2 : 1;
                for (int i = 0; i < r; ++i) {
                    rs.roots.push_back(unit(r, i, len));
                    rs.roots.push_back(unit(r, i, -len));
                }
            }
            if (type_d) {
                for (int d = 2; d <= 2 * r - 2; d += 2) rs.degrees.push_back(d);
                rs.degrees.push_back(r);
                std::sort(rs.degrees.begin(), rs.degrees.end());
            } else {
                for (int d = 2; d <= 2 * r; d += 2) rs.degrees.push_back(d);
            }
            rs.weyl = signed_perms(r, true, type_d);
            break;
        }
    }
    std::sort(rs.roots.begin(), rs.roots.end());
    return rs;
}

RootSystem parse_root_system(const std::string& label) {
    auto colon = label.find(':');
    if (colon == std::string::npos) throw MathError(ErrorKind::Unsupported, "root system label must be family:n");
    std::string fam = label.substr(0, colon);
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(label.substr(colon + 1), &used);
        if (used != label.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw MathError(ErrorKind::Unsupported, "bad rank in root system label " + label);
    }
    Family f;
    if (fam == "gl") f = Family::gl;
    else if (fam == "sl") f = Family::sl;
    else if (fam == "so") f = Family::so;
    else if (fam == "sp") f = Family::sp;
    else throw MathError(ErrorKind::Unsupported, "unknown family " + fam);
    return build_root_system(f, n);
}

std::vector<std::pair<int, int>> signed_cycle_type(const WeylElement& w) {
    const int m = static_cast<int>(w.perm.size());
    std::vector<char> seen(m, 0);
    std::vector<std::pair<int, int>> cycles;
    for (int i = 0; i < m; ++i) {
        if (seen[i]) continue;
        int len = 0, eps = 1;
        for (int j = i; !seen[j]; j = w.perm[j]) {
            seen[j] = 1;
            eps *= w.sign[j];
            ++len;
        }
        cycles.emplace_back(len, eps);
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

MultiSeries reflection_det(const RootSystem& rs, const WeylElement& w, const std::vector<int>& scalar,
                           const SeriesOrder& order) {
    if (static_cast<int>(scalar.size()) != order.nvars())
        throw MathError(ErrorKind::OrderMismatch, "scalar exponent length does not match order");
    // a signed k-cycle with sign product eps contributes 1 - eps*scalar^k
    MultiSeries det = MultiSeries::one(order);
    for (auto [len, eps] : signed_cycle_type(w)) {
        std::vector<int> e(scalar);
        for (int& x : e) x *= len;
        det = det * MultiSeries::one_minus(order, e, Rational(eps));
    }
    if (rs.sum_zero_quotient) det = det * series_inv(MultiSeries::one_minus(order, scalar));
    return det;
}

}  // namespace rephom
