#include "rephom/cli.hpp"

#include "rephom/cehom.hpp"
#include "rephom/errors.hpp"
#include "rephom/identities.hpp"
#include "rephom/parallel.hpp"
#include "rephom/roots.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace rephom {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string name;
    std::string system;
    std::string order;  // raw flag, empty when absent
    int k = 2;
    int n = 0;
    std::string family;
    std::string complex;
    std::string qparam;
    int max_weight = -1;
    std::string weight;
    std::string invariants = "none";
    std::string format = "text";
    int workers = 0;
};

std::vector<int> parse_ints(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad ") + what + ": " + s);
        }
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what);
    return out;
}

// comma-separated bounds for the given variables; a single value broadcasts
SeriesOrder order_for(const RunConfig& cfg, const std::vector<Var>& vars, const std::vector<int>& fallback) {
    std::vector<int> b = cfg.order.empty() ? fallback : parse_ints(cfg.order, "order");
    if (b.size() == 1) b.assign(vars.size(), b[0]);
    if (b.size() != vars.size())
        throw UsageError("--order needs " + std::to_string(vars.size()) + " comma-separated bounds");
    std::vector<std::pair<Var, int>> pairs;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (b[i] < 0) throw UsageError("order bounds must be non-negative");
        pairs.emplace_back(vars[i], b[i]);
    }
    return SeriesOrder(pairs);
}

RootSystem system_of(const RunConfig& cfg) {
    if (cfg.system.empty()) throw UsageError("--system is required");
    return parse_root_system(cfg.system);
}

int need_n(const RunConfig& cfg) {
    if (cfg.n <= 0) throw UsageError("--n is required");
    return cfg.n;
}

std::vector<std::string> exps_header(const SeriesOrder& o) {
    std::vector<std::string> h;
    for (int i = 0; i < o.nvars(); ++i) h.emplace_back(1, var_name(o.var(i)));
    return h;
}

std::string verdict_csv(const IdentityVerdict& v) {
    std::ostringstream os;
    for (const auto& h : exps_header(v.order)) os << h << ',';
    os << "lhs,rhs\n";
    std::map<std::vector<int>, std::pair<Rational, Rational>> rows;
    for (const auto& t : v.lhs.terms()) rows[v.lhs.exps_of(t.key)].first = t.c;
    for (const auto& t : v.rhs.terms()) rows[v.rhs.exps_of(t.key)].second = t.c;
    for (const auto& [e, lr] : rows) {
        for (int x : e) os << x << ',';
        os << lr.first.str() << ',' << lr.second.str() << '\n';
    }
    return os.str();
}

void emit_verdict(const IdentityVerdict& v, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == "json") out << v.to_json().dump(2) << '\n';
    else if (cfg.format == "csv") out << verdict_csv(v);
    else out << v.to_text();
}

int cmd_identity(const RunConfig& cfg, std::ostream& out) {
    const std::string& name = cfg.name;
    IdentityVerdict v;
    bool expected = true;
    if (name == "chevalley-qt") {
        v = chevalley_qt(system_of(cfg), order_for(cfg, {Var::q, Var::t}, {6}));
    } else if (name == "macdonald-qt") {
        v = macdonald_qt(system_of(cfg), order_for(cfg, {Var::q, Var::t}, {6}));
    } else if (name == "macdonald-q") {
        const RootSystem rs = system_of(cfg);
        if (cfg.k < 0) throw UsageError("--k must be non-negative");
        // without --order the truncation is the exact degree, so both sides are complete
        v = macdonald_q(rs, cfg.k, order_for(cfg, {Var::q}, {macdonald_q_degree(rs, cfg.k)}));
    } else if (name == "nekrasov") {
        v = nekrasov_sum(need_n(cfg), order_for(cfg, {Var::q, Var::t}, {6}));
    } else if (name == "rothe") {
        // bounds are given as (N_q, N_v)
        v = rothe_check(order_for(cfg, {Var::q, Var::v}, {6}));
    } else if (name == "dual-numbers") {
        int n = cfg.n;
        if (!cfg.system.empty()) {
            const RootSystem rs = system_of(cfg);
            if (rs.family != Family::gl) throw UsageError("dual-numbers needs a gl system");
            n = rs.n;
        }
        if (n != 1 && n != 2) throw UsageError("dual-numbers supports gl:1 and gl:2");
        v = dual_numbers(n, order_for(cfg, {Var::q}, {6}));
        if (n == 2) {
            // the documented failure: first discrepancy at q^5
            const bool reproduced = !v.equal && v.first_discrepancy && v.first_discrepancy->exp == std::vector<int>{5};
            emit_verdict(v, cfg, out);
            return reproduced ? kExitOk : kExitMismatch;
        }
    } else if (name == "sl-gl-factor") {
        int n = cfg.n;
        if (!cfg.system.empty()) n = system_of(cfg).n;
        if (n < 2) throw UsageError("sl-gl-factor needs --n >= 2 or --system");
        v = sl_gl_factor(n, order_for(cfg, {Var::q, Var::t}, {6}));
    } else if (name == "hyperoct") {
        v = hyperoct_series(need_n(cfg), order_for(cfg, {Var::q, Var::t}, {4}));
    } else {
        throw UsageError("unknown identity: " + name);
    }
    emit_verdict(v, cfg, out);
    return v.equal == expected ? kExitOk : kExitMismatch;
}

// s-polynomial coefficient string, e.g. "2 + s"
std::string s_poly(const std::map<int, Rational>& c) {
    std::string s;
    for (const auto& [d, x] : c) {
        if (x.is_zero()) continue;
        std::string cs = x.str();
        bool neg = cs[0] == '-';
        if (neg) cs.erase(0, 1);
        std::string term;
        if (d == 0) term = cs;
        else term = (cs == "1" ? "" : cs + "*") + (d == 1 ? std::string("s") : "s^" + std::to_string(d));
        if (s.empty()) s = neg ? "-" + term : term;
        else s += (neg ? " - " : " + ") + term;
    }
    return s.empty() ? "0" : s;
}

int cmd_euler(const RunConfig& cfg, std::ostream& out) {
    const std::string& fam = cfg.family;
    MultiSeries series;
    nlohmann::json head;
    if (fam == "En") {
        series = chi_En(need_n(cfg), order_for(cfg, {Var::q, Var::t}, {6}));
        head = {{"family", "En"}, {"n", cfg.n}};
    } else if (fam == "Gn") {
        const int n = need_n(cfg);
        const SeriesOrder qt = order_for(cfg, {Var::q, Var::t}, {6});
        series = G_n(n, G_order(n, qt.bound(0), qt.bound(1)));
        head = {{"family", "Gn"}, {"n", n}};
    } else if (fam == "molien") {
        const RootSystem rs = system_of(cfg);
        series = molien_qt(rs, order_for(cfg, {Var::q, Var::t}, {6}));
        head = {{"family", "molien"}, {"system", rs.label}};
    } else {
        throw UsageError("--family must be En, Gn or molien");
    }
    const SeriesOrder& o = series.order();
    const int iq = o.index_of(Var::q), it = o.index_of(Var::t), is = o.index_of(Var::s);
    std::map<std::pair<int, int>, std::map<int, Rational>> table;
    for (const auto& t : series.terms()) {
        const auto e = series.exps_of(t.key);
        table[{e[iq], e[it]}][is >= 0 ? e[is] : 0] = t.c;
    }
    auto cell = [&](const std::map<int, Rational>& c) {
        return is >= 0 ? s_poly(c) : c.begin()->second.str();
    };
    head["order"] = {o.bound(iq), o.bound(it)};
    if (cfg.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [qt, c] : table) rows.push_back({{"q", qt.first}, {"t", qt.second}, {"coeff", cell(c)}});
        head["coefficients"] = rows;
        out << head.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        out << "q,t,coeff\n";
        for (const auto& [qt, c] : table) out << qt.first << ',' << qt.second << ',' << cell(c) << '\n';
    } else {
        out << "family " << fam;
        if (head.contains("n")) out << "  n=" << cfg.n;
        if (head.contains("system")) out << "  system " << head["system"].get<std::string>();
        out << "\nseries " << (is >= 0 ? "(q,t,s)" : "(q,t)") << "\n";
        out << "q  t  coefficient\n";
        for (const auto& [qt, c] : table) out << qt.first << "  " << qt.second << "  " << cell(c) << '\n';
    }
    return kExitOk;
}

std::optional<Rational> qparam_of(const RunConfig& cfg) {
    if (cfg.qparam.empty()) return std::nullopt;
    try {
        return Rational::parse(cfg.qparam);
    } catch (const std::exception&) {
        throw UsageError("bad --qparam: " + cfg.qparam);
    }
}

WeightBox box_of(const RunConfig& cfg, int rank, int default_max) {
    if (!cfg.weight.empty()) {
        auto w = parse_ints(cfg.weight, "weight");
        if (static_cast<int>(w.size()) != rank)
            throw UsageError("--weight needs " + std::to_string(rank) + " entries");
        for (int x : w)
            if (x < 0) throw UsageError("weights must be non-negative");
        return WeightBox::single(w);
    }
    const int m = cfg.max_weight >= 0 ? cfg.max_weight : default_max;
    return WeightBox::total(rank, m);
}

int cmd_homology(const RunConfig& cfg, std::ostream& out) {
    if (cfg.complex.empty()) throw UsageError("--complex is required");
    ComplexKind kind;
    try {
        kind = kind_from_name(cfg.complex);
    } catch (const MathError&) {
        throw UsageError("unknown complex: " + cfg.complex);
    }
    Action action;
    try {
        action = action_from_name(cfg.invariants);
    } catch (const MathError&) {
        throw UsageError("unknown invariants: " + cfg.invariants);
    }
    std::optional<Rational> q = qparam_of(cfg);
    if ((kind == ComplexKind::qpoly || kind == ComplexKind::diag_qpoly) && !q) q = Rational(2);
    const DGAlgebraSpec alg = build_complex(kind, need_n(cfg), q);
    WeightBox box;
    if (alg.rank == 3 && cfg.weight.empty() && cfg.max_weight < 0) box = WeightBox::single({1, 1, 1});
    else box = box_of(cfg, alg.rank, 5);
    const HomologyReport rep = action == Action::none ? homology_dims(alg, box) : invariant_homology(alg, action, box);
    if (cfg.format == "json") out << rep.to_json().dump(2) << '\n';
    else if (cfg.format == "csv") out << rep.to_csv();
    else out << rep.to_text();
    return kExitOk;
}

int cmd_hcmap(const RunConfig& cfg, std::ostream& out) {
    const int n = need_n(cfg);
    if (n > 3) throw UsageError("hc-map supports n <= 3");
    const Rational q = qparam_of(cfg).value_or(Rational(1));
    if (q.is_zero()) throw UsageError("--qparam must be nonzero");
    const HcReport rep = hc_map_check(n, box_of(cfg, 2, 5), q);
    if (cfg.format == "json") out << rep.to_json().dump(2) << '\n';
    else if (cfg.format == "csv") out << rep.to_csv();
    else out << rep.to_text();
    if (!rep.chain_map()) return kExitInternal;
    const bool met = n <= 2 ? rep.bijective() : rep.surjective();
    return met ? kExitOk : kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"representation homology and constant term identity checks", "rephom"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::string> formats{"text", "json", "csv"};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember(formats));
        sub->add_option("--workers", cfg.workers, "worker threads (default: REPHOM_WORKERS or 1)")
            ->check(CLI::PositiveNumber);
    };

    auto* id = app.add_subcommand("identity", "verify a series identity");
    id->add_option("--name", cfg.name, "identity name")
        ->required()
        ->check(CLI::IsMember({"chevalley-qt", "macdonald-qt", "macdonald-q", "nekrasov", "rothe", "dual-numbers",
                               "sl-gl-factor", "hyperoct"}));
    id->add_option("--system", cfg.system, "root system, e.g. gl:3, so:5, sp:4");
    id->add_option("--order", cfg.order, "per-variable bounds, e.g. 6,6");
    id->add_option("--k", cfg.k, "exponent for macdonald-q");
    id->add_option("--n", cfg.n, "size parameter");
    common(id);

    auto* eu = app.add_subcommand("euler", "Euler characteristic tables");
    eu->add_option("--family", cfg.family, "En, Gn or molien")->required()->check(CLI::IsMember({"En", "Gn", "molien"}));
    eu->add_option("--n", cfg.n, "size parameter");
    eu->add_option("--system", cfg.system, "root system for molien");
    eu->add_option("--order", cfg.order, "bounds N_q,N_t");
    common(eu);

    auto* ho = app.add_subcommand("homology", "homology of a representation complex");
    ho->add_option("--complex", cfg.complex, "xy, qpoly, xyz, diag-xy, diag-qpoly, diag-xyz")->required();
    ho->add_option("--n", cfg.n, "matrix size")->required();
    ho->add_option("--qparam", cfg.qparam, "q as an exact fraction p/q");
    ho->add_option("--max-weight", cfg.max_weight, "all weights with entry sum <= this");
    ho->add_option("--weight", cfg.weight, "a single weight, e.g. 1,1,1");
    ho->add_option("--invariants", cfg.invariants, "gl, sym, hyperoct or none")
        ->check(CLI::IsMember({"gl", "sym", "hyperoct", "none"}));
    common(ho);

    auto* hc = app.add_subcommand("hc-map", "check the Harish-Chandra chain map");
    hc->add_option("--n", cfg.n, "matrix size")->required();
    hc->add_option("--max-weight", cfg.max_weight, "all weights with entry sum <= this");
    hc->add_option("--qparam", cfg.qparam, "q as an exact fraction p/q");
    common(hc);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (cfg.workers > 0) set_worker_count(cfg.workers);

    try {
        if (*id) return cmd_identity(cfg, out);
        if (*eu) return cmd_euler(cfg, out);
        if (*ho) return cmd_homology(cfg, out);
        if (*hc) return cmd_hcmap(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const MathError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::InternalConsistency ? kExitInternal : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace rephom
