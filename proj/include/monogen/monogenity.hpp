#pragma once

#include "arith.hpp"
#include "families.hpp"
#include "index_form.hpp"
#include "maximal_order.hpp"

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace monogen {

enum class Status { NotMonogenic, Inconclusive, Invalid };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::NotMonogenic: return "not-monogenic";
        case Status::Inconclusive: return "inconclusive";
        case Status::Invalid: return "invalid";
    }
    return "?";
}

// modulus | a +- b, from a relation evaluated at a generator where F_i = +-f_i
struct DerivedCondition {
    int id = 0;
    std::string relation;
    Integer modulus;
    std::optional<Rational> a, b;  // nothing when the term is not rational
    bool plus = false, minus = false;
    std::string source;  // "verified" at this parameter, or "sampled" in its residue row

    bool applicable() const { return a && b && modulus > 1; }
    bool holds() const { return !applicable() || plus || minus; }
    std::string str() const {
        std::string s = modulus.get_str() + " | ";
        s += a ? a->get_str() : "?";
        return s + " +- " + (b ? b->get_str() : "?");
    }
};

inline bool divides(const Integer& mod, const Rational& v) {
    return is_integral(v) && (v == 0 || (mod != 0 && v.get_num() % mod == 0));
}

inline std::vector<DerivedCondition> necessary_conditions(const FactorReport& r) {
    std::vector<DerivedCondition> out;
    for (auto& spec : relation_specs(r.params.family)) {
        DerivedCondition c;
        c.id = spec.id;
        c.relation = relation_text(spec);
        if (r.expanded) {
            auto it = std::find_if(r.relations.begin(), r.relations.end(), [&](auto& x) { return x.id == spec.id; });
            require(it != r.relations.end(), "relation " + std::to_string(spec.id) + " was not checked");
            c.modulus = it->effective;
            c.source = "verified";
        } else {
            auto row = table_row_modulus(r.params, spec.id);
            c.modulus = row ? *row : relation_modulus(spec, r.params);
            c.source = "sampled";
        }
        c.a = term_value(r.factors.at(spec.a.factor - 1), spec.a);
        c.b = term_value(r.factors.at(spec.b.factor - 1), spec.b);
        if (c.a && c.b) {
            c.plus = divides(c.modulus, *c.a + *c.b);
            c.minus = divides(c.modulus, *c.a - *c.b);
        }
        out.push_back(std::move(c));
    }
    return out;
}

// ---- table cross-check ----

struct CrossCell {
    int id = 0;
    std::string mod_text, a_text, b_text;
    Rational table_mod, table_a, table_b;
    Integer derived_mod;
    std::optional<Rational> derived_a, derived_b;
    bool table_holds = false;
    bool modulus_agree = false;
    bool values_agree = false;
    bool verdict_agree = false;
};

inline bool table_condition_holds(const Condition& c) {
    if (!is_integral(c.mod) || c.mod == 0) return true;  // not applicable
    Integer mod = abs(c.mod.get_num());
    if (mod == 1) return true;
    bool any_integral = is_integral(c.a + c.b) || is_integral(c.a - c.b);
    if (!any_integral) return true;
    return divides(mod, c.a + c.b) || divides(mod, c.a - c.b);
}

inline std::vector<CrossCell> crosscheck_table(const FamilyParams& p, const std::vector<DerivedCondition>& derived) {
    std::vector<CrossCell> out;
    auto conds = table_conditions(p);
    for (auto& d : derived) {
        if (d.id < 1 || d.id > static_cast<int>(conds.size())) continue;
        const Condition& t = conds[d.id - 1];
        CrossCell c;
        c.id = d.id;
        c.mod_text = t.mod_text;
        c.a_text = t.a_text;
        c.b_text = t.b_text;
        c.table_mod = t.mod;
        c.table_a = t.a;
        c.table_b = t.b;
        c.derived_mod = d.modulus;
        c.derived_a = d.a;
        c.derived_b = d.b;
        c.table_holds = table_condition_holds(t);
        c.modulus_agree = Rational(d.modulus) == abs(t.mod);
        c.values_agree = d.a && d.b &&
                         ((abs(*d.a) == abs(t.a) && abs(*d.b) == abs(t.b)) || (abs(*d.a) == abs(t.b) && abs(*d.b) == abs(t.a)));
        c.verdict_agree = c.table_holds == d.holds();
        out.push_back(std::move(c));
    }
    return out;
}

// ---- verdicts ----

enum class ContentMode { Auto, Expand, Probe };

struct CheckOptions {
    ContentMode mode = ContentMode::Auto;
    int workers = 1;
    bool crosscheck = true;
    std::optional<std::set<int>> columns;  // only these relations decide the verdict
};

struct Verdict {
    Family family = Family::SimplestCubic;
    std::optional<Integer> n;
    Integer m;
    std::optional<FamilyParams> params;
    Status status = Status::Invalid;
    std::string reason;
    std::string mode;  // "expanded" or "probed"
    std::vector<DerivedCondition> conditions;
    std::vector<CrossCell> crosscheck;
    std::string crosscheck_error;

    std::vector<const DerivedCondition*> witnesses() const {
        std::vector<const DerivedCondition*> w;
        for (auto& c : conditions)
            if (!c.holds()) w.push_back(&c);
        return w;
    }
};

// probed verdicts rest on table-row moduli, which hold coefficient-wise in every
// sampled sextic row but not in every degree 6/8 row; smaller degrees always expand
inline bool use_probe(const FamilyParams& p, ContentMode mode) { return p.degree == 12 && mode != ContentMode::Expand; }

inline Verdict check(Family f, std::optional<Integer> n, const Integer& m, const CheckOptions& opt = {}) {
    Verdict v;
    v.family = f;
    v.n = n;
    v.m = m;
    try {
        v.params = validate_params(f, n, m);
    } catch (const InvalidParameters& e) {
        v.status = Status::Invalid;
        v.reason = e.what();
        return v;
    }
    const FamilyParams& p = *v.params;
    OrderReport order = maximal_order_basis(p);
    FactorReport rep = use_probe(p, opt.mode) ? content_report(p, order, opt.workers)
                                              : factor_report(p, order, {Expansion::Modular, opt.workers, true});
    if (!rep.expanded) {
        v.mode = "probed";
    } else {
        v.mode = "expanded";
        if (rep.relations.empty())
            for (auto& rs : relation_specs(p.family)) rep.relations.push_back(check_relation(rs, p, rep.factors));
    }
    require(rep.content_ok, "content identity fails for " + p.label());
    v.conditions = necessary_conditions(rep);
    if (opt.columns) {
        std::vector<DerivedCondition> kept;
        for (auto& c : v.conditions)
            if (opt.columns->count(c.id)) kept.push_back(c);
        v.conditions = std::move(kept);
    }
    v.status = v.witnesses().empty() ? Status::Inconclusive : Status::NotMonogenic;
    if (opt.crosscheck) {
        try {
            v.crosscheck = crosscheck_table(p, v.conditions);
        } catch (const TableLookupError& e) {
            v.crosscheck_error = e.what();
        }
    }
    return v;
}

inline Verdict check(const FamilyParams& p, const CheckOptions& opt = {}) {
    return check(p.family, p.has_n() ? std::optional<Integer>(p.n) : std::nullopt, p.m, opt);
}

// ---- scans ----

struct Range {
    long lo = 0, hi = -1;
    bool empty() const { return hi < lo; }
};

struct ScanJob {
    std::optional<Integer> n;
    Integer m;
};

// runs checks in parallel; results keep the job order
inline std::vector<Verdict> run_checks(Family f, const std::vector<ScanJob>& jobs, const CheckOptions& opt, int workers) {
    std::vector<Verdict> out(jobs.size());
    CheckOptions inner = opt;
    inner.workers = 1;
    parallel_for(jobs.size(), workers, [&](size_t i) { out[i] = check(f, jobs[i].n, jobs[i].m, inner); });
    return out;
}

inline std::vector<Verdict> scan(Family f, std::optional<Range> n_range, Range m_range, const CheckOptions& opt = {},
                                 int workers = 1) {
    std::vector<ScanJob> jobs;
    if (info(f).has_n) {
        require(n_range.has_value(), "this family needs an n range");
        for (long n = n_range->lo; n <= n_range->hi; ++n)
            for (long m = m_range.lo; m <= m_range.hi; ++m) jobs.push_back({Integer(n), Integer(m)});
    } else {
        for (long m = m_range.lo; m <= m_range.hi; ++m) jobs.push_back({std::nullopt, Integer(m)});
    }
    return run_checks(f, jobs, opt, workers);
}

// ---- corollaries ----

struct CorollaryInfo {
    std::string name;
    Family family;
    std::string statement;
    std::set<int> columns;
    long default_limit;
};

inline const std::vector<CorollaryInfo>& corollaries() {
    static const std::vector<CorollaryInfo> list{
        {"quartic_i", Family::PureQuartic, "Q(i, m^(1/4)), m = 1 mod 4 squarefree: survivors have |m| in {3,5,15,17}", {5}, 500},
        {"quartic_bound", Family::PureQuartic,
         "(n mod 8, m mod 8) in {1,5}x{5}, {2,6}x{1,2,3,5,6,7}, {3,7}x{1,3,5,7}: survivors have |m| <= 130, |n| <= 32|m|+32",
         {5, 6}, 200},
        {"simplest_quartic_bound", Family::SimplestQuartic,
         "(n mod 8, m mod 16) not in {1,3,5,7}x{4,12}: survivors have |m| <= 64, |n| <= 4m^2+192", {5, 6}, 100},
        {"sextic_set", Family::Sextic, "survivors have |m| in {2,3,5,6,10,15,30}", {4}, 500},
    };
    return list;
}

inline const CorollaryInfo& corollary_info(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    for (auto& c : corollaries())
        if (c.name == name) return c;
    throw InvalidParameters("unknown corollary '" + name + "'");
}

struct CorollarySummary {
    CorollaryInfo info;
    long limit = 0;
    size_t tested = 0;
    std::vector<Verdict> survivors;
    std::set<Integer> survivor_abs_m;
    bool expectation_met = false;
    std::string expectation_detail;
    double seconds = 0;
};

// smallest |n| with n = r (mod 8) valid together with m, up to `count` of them
inline std::vector<Integer> representative_ns(Family f, long r, const Integer& m, int count) {
    std::vector<Integer> out;
    for (long k = 0; k < 64 && static_cast<int>(out.size()) < count; ++k) {
        for (long s : {1L, -1L}) {
            long n = s > 0 ? r + 8 * k : r - 8 * (k + 1);
            try {
                validate_params(f, Integer(n), m);
                out.emplace_back(n);
                if (static_cast<int>(out.size()) == count) break;
            } catch (const InvalidParameters&) {
            }
        }
    }
    return out;
}

inline CorollarySummary corollary_scan(const std::string& name, long limit = 0, int workers = 1) {
    auto t0 = std::chrono::steady_clock::now();
    CorollarySummary s;
    s.info = corollary_info(name);
    s.limit = limit > 0 ? limit : s.info.default_limit;
    const Family f = s.info.family;
    std::vector<ScanJob> jobs;
    auto valid = [&](std::optional<Integer> n, const Integer& m) {
        try {
            validate_params(f, n, m);
            return true;
        } catch (const InvalidParameters&) {
            return false;
        }
    };
    for (long m = -s.limit; m <= s.limit; ++m) {
        const Integer mz(m);
        const long m8 = mod_nonneg(m, 8LL), m16 = mod_nonneg(m, 16LL);
        if (s.info.name == "quartic_i") {
            if (mod_nonneg(m, 4LL) == 1 && valid(Integer(-1), mz)) jobs.push_back({Integer(-1), mz});
        } else if (s.info.name == "sextic_set") {
            if (valid(std::nullopt, mz)) jobs.push_back({std::nullopt, mz});
        } else {
            for (long r : {1L, 2L, 3L, 5L, 6L, 7L}) {
                bool in;
                if (s.info.name == "quartic_bound") {
                    in = ((r == 1 || r == 5) && m8 == 5) || ((r == 2 || r == 6) && m8 != 0 && m8 != 4) ||
                         ((r == 3 || r == 7) && m8 % 2 == 1);
                } else {
                    in = !(r % 2 == 1 && (m16 == 4 || m16 == 12));
                }
                if (!in) continue;
                for (auto& n : representative_ns(f, r, mz, 2)) jobs.push_back({n, mz});
            }
        }
    }
    CheckOptions opt;
    opt.columns = s.info.columns;
    opt.crosscheck = false;
    auto verdicts = run_checks(f, jobs, opt, workers);
    s.tested = verdicts.size();
    for (auto& v : verdicts) {
        if (v.status != Status::Inconclusive) continue;
        s.survivor_abs_m.insert(abs(v.m));
        s.survivors.push_back(std::move(v));
    }
    std::string bad;
    if (s.info.name == "quartic_i") {
        s.expectation_met = s.survivor_abs_m == std::set<Integer>{3, 5, 15, 17};
    } else if (s.info.name == "sextic_set") {
        const std::set<Integer> allowed{2, 3, 5, 6, 10, 15, 30};
        s.expectation_met = std::includes(allowed.begin(), allowed.end(), s.survivor_abs_m.begin(), s.survivor_abs_m.end());
    } else {
        const bool pq = s.info.name == "quartic_bound";
        s.expectation_met = true;
        for (auto& v : s.survivors) {
            Integer am = abs(v.m), an = abs(*v.n);
            bool ok = pq ? (am <= 130 && an <= 32 * am + 32) : (am <= 64 && an <= 4 * am * am + 192);
            if (!ok) {
                s.expectation_met = false;
                bad += " (" + v.n->get_str() + "," + v.m.get_str() + ")";
            }
        }
    }
    s.expectation_detail = s.expectation_met ? "holds" : "violated" + bad;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

}  // namespace monogen
