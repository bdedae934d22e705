#include <monogen/monogenity.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace monogen;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kInvalid = 2, kInvariant = 3, kMismatch = 4;

struct RunConfig {
    std::string command;
    std::string family;
    std::string n_text, m_text;
    std::string format = "human";
    std::string output;
    uint64_t seed = 0;
    int workers = 1;
    int samples = 2;
    int trials = -1;
    long limit = 0;
    std::string name;
    std::string content = "auto";
    bool dump_factors = false;
    bool verbose = false;
};

struct Output {
    json doc;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::ostringstream human;
    int code = kOk;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Integer parse_integer(const std::string& s, const char* what) {
    Integer z;
    std::string t = s;
    if (!t.empty() && t[0] == '=') t.erase(0, 1);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || z.set_str(t, 10) != 0) throw InvalidParameters(std::string("bad integer for ") + what + ": '" + s + "'");
    return z;
}

Range parse_range(const std::string& s, const char* what) {
    auto pos = s.find("..");
    Integer lo = parse_integer(pos == std::string::npos ? s : s.substr(0, pos), what);
    Integer hi = pos == std::string::npos ? lo : parse_integer(s.substr(pos + 2), what);
    if (!lo.fits_slong_p() || !hi.fits_slong_p()) throw InvalidParameters(std::string(what) + " range is too large");
    return {lo.get_si(), hi.get_si()};
}

Family family_of(const RunConfig& c) {
    if (c.family.empty()) throw InvalidParameters("--family is required");
    return parse_family(c.family);
}

std::optional<Integer> n_of(const RunConfig& c, Family f) {
    if (!info(f).has_n) {
        if (!c.n_text.empty()) throw InvalidParameters("family " + std::string(info(f).cli) + " takes no n");
        return std::nullopt;
    }
    if (c.n_text.empty()) throw InvalidParameters("-n is required for family " + std::string(info(f).cli));
    return parse_integer(c.n_text, "n");
}

Integer m_of(const RunConfig& c) {
    if (c.m_text.empty()) throw InvalidParameters("-m is required");
    return parse_integer(c.m_text, "m");
}

std::string factor_string(const Integer& z, const std::vector<Integer>& hints) {
    if (z == 0) return "0";
    std::string s = z < 0 ? "-" : "";
    bool first = true;
    std::map<Integer, unsigned> fs;
    try {
        fs = factorize(abs(z), hints);
    } catch (const InvalidParameters&) {
        return z.get_str();
    }
    for (auto& [p, e] : fs) {
        s += (first ? "" : "*") + p.get_str() + (e > 1 ? "^" + std::to_string(e) : "");
        first = false;
    }
    return first ? s + "1" : s;
}

std::string element_str(const TowerPtr& K, const std::vector<Rational>& row) { return row_element(K, row).str(); }

std::string q(const Rational& x) { return x.get_str(); }
std::string q(const Integer& x) { return x.get_str(); }

json params_json(const FamilyParams& p) {
    json j;
    j["family"] = info(p.family).cli;
    if (p.has_n()) j["n"] = q(p.n);
    j["m"] = q(p.m);
    j["degree"] = p.degree;
    j["residues"] = residue_label(p);
    return j;
}

ContentMode content_mode(const RunConfig& c) {
    if (c.content == "expand") return ContentMode::Expand;
    if (c.content == "probe") return ContentMode::Probe;
    return ContentMode::Auto;
}

// ---- basis ----

void cmd_basis(const RunConfig& c, Output& out) {
    Family f = family_of(c);
    FamilyParams p = validate_params(f, n_of(c, f), m_of(c));
    auto K = field_ring(p);
    OrderReport order = maximal_order_basis(p);
    json j;
    j["params"] = params_json(p);
    json basis = json::array();
    for (auto& row : order.basis) basis.push_back(element_str(K, row));
    j["basis"] = basis;
    j["discriminant"] = q(order.discriminant);
    j["initial_discriminant"] = q(order.initial_discriminant);
    json primes = json::array();
    for (auto& x : order.primes) primes.push_back(q(x));
    j["primes"] = primes;
    json log = json::array();
    for (auto& s : order.log) {
        json lam = json::array();
        for (auto& x : s.lambda) lam.push_back(q(x));
        log.push_back({{"p", q(s.p)}, {"lambda", lam}, {"row", s.row}, {"disc_before", q(s.disc_before)}, {"disc_after", q(s.disc_after)}});
    }
    j["log"] = log;
    j["crt_fallback"] = order.crt_fallback;

    json table;
    bool match = false;
    try {
        auto tc = verify_table_basis(p, order);
        const TableRow& row = table_row(p, "basis");
        match = tc.match();
        table["row"] = tc.row_id;
        table["integral"] = tc.integral();
        table["discriminant"] = q(tc.table_discriminant);
        table["change_det"] = q(tc.change_det);
        table["match"] = match;
        if (!match && !row.erratum_basis.empty()) {
            auto ec = verify_table_basis(p, order, true);
            table["erratum_match"] = ec.match();
            table["erratum_note"] = row.erratum_note;
        }
    } catch (const TableLookupError& e) {
        table["error"] = e.what();
    }
    j["table"] = table;
    out.doc = j;
    if (!match) out.code = kMismatch;

    out.header = {"index", "element"};
    for (size_t i = 0; i < basis.size(); ++i) out.rows.push_back({std::to_string(i + 1), basis[i].get<std::string>()});

    auto& h = out.human;
    h << p.label() << " (" << residue_label(p) << ")\n";
    for (size_t i = 0; i < basis.size(); ++i) h << "  w" << i + 1 << " = " << basis[i].get<std::string>() << "\n";
    h << "D_K = " << q(order.discriminant) << " = " << factor_string(order.discriminant, prime_hints(p)) << "\n";
    if (c.verbose) {
        h << "initial discriminant " << q(order.initial_discriminant) << "\n";
        for (auto& s : order.log) h << "  p=" << q(s.p) << " replace row " << s.row + 1 << ": " << q(s.disc_before) << " -> " << q(s.disc_after) << "\n";
    }
    if (table.contains("error")) {
        h << "table: " << table["error"].get<std::string>() << "\n";
    } else {
        h << "table row " << table["row"].get<std::string>() << ": " << (match ? "match" : "mismatch") << "\n";
        if (table.contains("erratum_match"))
            h << "  erratum reading: " << (table["erratum_match"].get<bool>() ? "match" : "mismatch") << " ("
              << table["erratum_note"].get<std::string>() << ")\n";
    }
}

// ---- check / scan ----

json verdict_json(const Verdict& v) {
    json j;
    j["family"] = info(v.family).cli;
    if (v.n) j["n"] = q(*v.n);
    j["m"] = q(v.m);
    j["status"] = status_name(v.status);
    if (v.status == Status::Invalid) {
        j["reason"] = v.reason;
        return j;
    }
    j["mode"] = v.mode;
    j["residues"] = residue_label(*v.params);
    json conds = json::array();
    for (auto& d : v.conditions) {
        json cj;
        cj["id"] = d.id;
        cj["relation"] = d.relation;
        cj["modulus"] = q(d.modulus);
        cj["a"] = d.a ? json(q(*d.a)) : json();
        cj["b"] = d.b ? json(q(*d.b)) : json();
        cj["plus"] = d.plus;
        cj["minus"] = d.minus;
        cj["holds"] = d.holds();
        cj["source"] = d.source;
        conds.push_back(cj);
    }
    j["conditions"] = conds;
    json w = json::array();
    for (auto* d : v.witnesses()) w.push_back(d->str());
    j["witnesses"] = w;
    if (!v.crosscheck_error.empty()) j["crosscheck_error"] = v.crosscheck_error;
    json cc = json::array();
    for (auto& x : v.crosscheck)
        cc.push_back({{"id", x.id},
                      {"table", x.mod_text + " | " + x.a_text + " +- " + x.b_text},
                      {"table_values", q(x.table_mod) + " | " + q(x.table_a) + " +- " + q(x.table_b)},
                      {"modulus_agree", x.modulus_agree},
                      {"values_agree", x.values_agree},
                      {"verdict_agree", x.verdict_agree}});
    j["crosscheck"] = cc;
    return j;
}

std::vector<std::string> verdict_row(const Verdict& v) {
    std::string w;
    for (auto* d : v.witnesses()) w += (w.empty() ? "" : "; ") + d->str();
    return {info(v.family).cli, v.n ? q(*v.n) : "", q(v.m), status_name(v.status), v.mode, w, v.reason};
}

const std::vector<std::string> kVerdictHeader{"family", "n", "m", "status", "mode", "witnesses", "reason"};

void verdict_human(std::ostream& h, const Verdict& v, bool detail) {
    h << info(v.family).name;
    if (v.n) h << " n=" << q(*v.n);
    h << " m=" << q(v.m) << ": " << status_name(v.status);
    if (v.status == Status::Invalid) {
        h << " (" << v.reason << ")\n";
        return;
    }
    auto w = v.witnesses();
    if (!w.empty()) {
        h << ", witness";
        for (auto* d : w) h << " \"" << d->str() << " fails\"";
    }
    h << "\n";
    if (!detail) return;
    for (auto& d : v.conditions)
        h << "  [" << d.id << "] " << d.relation << " -> " << d.str() << (d.holds() ? "  holds" : "  FAILS") << " (" << d.source << ")\n";
    for (auto& x : v.crosscheck)
        if (!(x.modulus_agree && x.values_agree && x.verdict_agree))
            h << "  table column " << x.id << " (" << x.mod_text << " | " << x.a_text << " +- " << x.b_text << ") differs\n";
    if (!v.crosscheck_error.empty()) h << "  table: " << v.crosscheck_error << "\n";
}

json factors_json(const FactorReport& r, bool dump) {
    json fs = json::array();
    for (auto& f : r.factors) {
        json fj{{"index", f.index}, {"degree", f.degree()}, {"f", f.f_str()}, {"f_square", q(f.f_square())}};
        if (dump && r.expanded) fj["G"] = to_string(f.G);
        fs.push_back(fj);
    }
    return fs;
}

void cmd_check(const RunConfig& c, Output& out) {
    Family f = family_of(c);
    CheckOptions opt;
    opt.mode = content_mode(c);
    opt.workers = c.workers;
    Verdict v = check(f, n_of(c, f), m_of(c), opt);
    if (v.status == Status::Invalid) throw InvalidParameters(v.reason);
    out.doc = verdict_json(v);
    if (c.dump_factors) {
        auto order = maximal_order_basis(*v.params);
        auto rep = use_probe(*v.params, opt.mode) ? content_report(*v.params, order, c.workers)
                                                  : factor_report(*v.params, order, {Expansion::Modular, c.workers, false});
        out.doc["factors"] = factors_json(rep, true);
        for (auto& fj : out.doc["factors"]) {
            out.human << "  F" << fj["index"].get<int>() << ": f = " << fj["f"].get<std::string>() << "\n";
            if (fj.contains("G")) out.human << "    G = " << fj["G"].get<std::string>() << "\n";
        }
    }
    std::ostringstream head;
    verdict_human(head, v, true);
    std::string tail = out.human.str();
    out.human.str(head.str() + tail);
    out.human.seekp(0, std::ios::end);
    out.header = kVerdictHeader;
    out.rows.push_back(verdict_row(v));
}

json status_counts(const std::vector<Verdict>& vs) {
    std::map<std::string, size_t> counts{{"not-monogenic", 0}, {"inconclusive", 0}, {"invalid", 0}};
    for (auto& v : vs) ++counts[status_name(v.status)];
    json j;
    for (auto& [k, n] : counts) j[k] = n;
    return j;
}

void cmd_scan(const RunConfig& c, Output& out) {
    Family f = family_of(c);
    std::optional<Range> nr;
    if (info(f).has_n) {
        if (c.n_text.empty()) throw InvalidParameters("-n range is required for family " + std::string(info(f).cli));
        nr = parse_range(c.n_text, "n");
    } else if (!c.n_text.empty()) {
        throw InvalidParameters("family " + std::string(info(f).cli) + " takes no n");
    }
    if (c.m_text.empty()) throw InvalidParameters("-m range is required");
    Range mr = parse_range(c.m_text, "m");
    CheckOptions opt;
    opt.mode = content_mode(c);
    auto vs = (nr && nr->empty()) ? std::vector<Verdict>{} : scan(f, nr, mr, opt, c.workers);
    json recs = json::array();
    for (auto& v : vs) {
        recs.push_back(verdict_json(v));
        out.rows.push_back(verdict_row(v));
        if (v.status != Status::Invalid || c.verbose) verdict_human(out.human, v, false);
    }
    out.header = kVerdictHeader;
    json counts = status_counts(vs);
    out.doc = {{"family", info(f).cli}, {"records", recs}, {"summary", {{"total", vs.size()}, {"counts", counts}}}};
    out.human << "summary: " << vs.size() << " pairs";
    for (auto& [k, n] : counts.items()) out.human << ", " << k << " " << n.get<size_t>();
    out.human << "\n";
}

void cmd_corollary(const RunConfig& c, Output& out) {
    if (c.name.empty()) throw InvalidParameters("--name is required");
    const CorollaryInfo& ci = corollary_info(c.name);
    if (c.limit < 0) throw InvalidParameters("--limit must be nonnegative");
    auto s = corollary_scan(ci.name, c.limit, c.workers);
    json surv = json::array();
    for (auto& v : s.survivors) {
        surv.push_back(verdict_json(v));
        out.rows.push_back(verdict_row(v));
    }
    json abs_m = json::array();
    for (auto& m : s.survivor_abs_m) abs_m.push_back(q(m));
    std::string name = ci.name;
    std::replace(name.begin(), name.end(), '_', '-');
    out.doc = {{"name", name},
               {"family", info(ci.family).cli},
               {"statement", ci.statement},
               {"limit", s.limit},
               {"tested", s.tested},
               {"survivors", surv},
               {"survivor_abs_m", abs_m},
               {"expectation_met", s.expectation_met},
               {"detail", s.expectation_detail}};
    out.header = kVerdictHeader;
    auto& h = out.human;
    h << name << ": " << ci.statement << "\n";
    h << "tested " << s.tested << " parameters with |m| <= " << s.limit << ", " << s.survivors.size() << " survivors\n";
    for (auto& v : s.survivors) verdict_human(h, v, false);
    h << "survivor |m|: {";
    bool first = true;
    for (auto& m : s.survivor_abs_m) h << (first ? "" : ",") << q(m), first = false;
    h << "}\n" << (s.expectation_met ? "expectation met" : "expectation NOT met") << ": " << s.expectation_detail << "\n";
    std::cerr << "corollary " << name << " took " << s.seconds << " s\n";
    if (!s.expectation_met) out.code = kInvariant;
}

// ---- oracle ----

struct OracleRun {
    int trials = 0, agree = 0;
    double expand_seconds = 0, oracle_seconds = 0;
    std::vector<std::pair<std::vector<long long>, std::pair<Integer, Integer>>> mismatches;
};

OracleRun run_oracle(const FamilyParams& p, const OrderReport& order, const FactorReport& rep, int trials, uint64_t seed) {
    OracleRun r;
    r.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < trials; ++t) {
        std::vector<long long> x(p.degree - 1);
        for (auto& v : x) v = dist(rng);
        Integer a = index_eval(rep, x), b = index_oracle(p, order.basis, order.discriminant, x);
        if (a == b) ++r.agree;
        else r.mismatches.push_back({x, {a, b}});
    }
    r.oracle_seconds = seconds_since(t0);
    return r;
}

void cmd_oracle(const RunConfig& c, Output& out) {
    Family f = family_of(c);
    FamilyParams p = validate_params(f, n_of(c, f), m_of(c));
    int trials = c.trials < 0 ? 20 : c.trials;
    json j;
    j["params"] = params_json(p);
    j["trials"] = trials;
    if (trials == 0) {
        j["agree"] = 0;
        out.doc = j;
        out.human << p.label() << ": no trials\n";
        return;
    }
    auto t0 = std::chrono::steady_clock::now();
    OrderReport order = maximal_order_basis(p);
    double order_seconds = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    FactorReport rep = factor_report(p, order, {Expansion::Modular, c.workers, true});
    double expand_seconds = seconds_since(t0);
    OracleRun r = run_oracle(p, order, rep, trials, c.seed);
    j["agree"] = r.agree;
    j["identity"] = rep.identity_ok();
    j["factors"] = factors_json(rep, c.dump_factors);
    json mm = json::array();
    for (auto& [x, ab] : r.mismatches) mm.push_back({{"x", x}, {"eval", q(ab.first)}, {"oracle", q(ab.second)}});
    j["mismatches"] = mm;
    j["seconds"] = {{"order", order_seconds}, {"expansion", expand_seconds}, {"oracle", r.oracle_seconds}};
    out.doc = j;
    out.header = {"family", "n", "m", "trials", "agree", "identity", "order_s", "expansion_s", "oracle_s"};
    auto fmt = [](double s) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(3) << s;
        return os.str();
    };
    out.rows.push_back({info(f).cli, p.has_n() ? q(p.n) : "", q(p.m), std::to_string(trials), std::to_string(r.agree),
                        rep.identity_ok() ? "true" : "false", fmt(order_seconds), fmt(expand_seconds), fmt(r.oracle_seconds)});
    auto& h = out.human;
    h << p.label() << ": " << r.agree << "/" << trials << " agree\n";
    for (auto& fj : j["factors"]) {
        h << "  F" << fj["index"].get<int>() << " degree " << fj["degree"].get<int>() << ", f = " << fj["f"].get<std::string>() << "\n";
        if (fj.contains("G")) h << "    G = " << fj["G"].get<std::string>() << "\n";
    }
    h << "identity (prod f_i)^2 = |D_K|: " << (rep.identity_ok() ? "holds" : "FAILS") << "\n";
    h << "time: order " << fmt(order_seconds) << " s, expansion " << fmt(expand_seconds) << " s, oracle " << fmt(r.oracle_seconds) << " s\n";
    if (r.agree != trials || !rep.identity_ok()) out.code = kInvariant;
}

// ---- verify-tables ----

void cmd_verify_tables(const RunConfig& c, Output& out) {
    if (c.samples < 1) throw InvalidParameters("--samples must be at least 1");
    std::vector<Family> fams;
    if (c.family.empty() || c.family == "all")
        for (auto& i : all_families()) fams.push_back(i.id);
    else
        fams.push_back(parse_family(c.family));
    int trials = c.trials < 0 ? 5 : c.trials;

    json rows = json::array();
    size_t checked = 0, failed = 0;
    out.header = {"family", "row", "n", "m", "basis", "erratum", "identity", "relations_row", "relations_literal", "crosscheck", "oracle", "pass"};
    auto& h = out.human;
    for (Family f : fams) {
        const Table& t = load_table(f, "basis");
        h << info(f).cli << ": " << t.rows.size() << " rows\n";
        for (auto& row : t.rows) {
            ++checked;
            auto samples = sample_params(f, row, c.samples, c.seed);
            json rj{{"family", info(f).cli}, {"row", row.id}};
            json sj = json::array();
            bool row_pass = true;
            for (auto& p : samples) {
                OrderReport order = maximal_order_basis(p);
                TableCheck tc = verify_table_basis(p, order);
                std::optional<bool> erratum;
                if (!tc.match() && !row.erratum_basis.empty()) erratum = verify_table_basis(p, order, true).match();
                FactorReport rep = factor_report(p, order, {Expansion::Modular, c.workers, true});
                bool rel_row = true, rel_lit = true;
                for (auto& r : rep.relations) {
                    rel_row = rel_row && r.row_holds;
                    rel_lit = rel_lit && r.holds;
                }
                bool cross = true;
                std::string cross_detail;
                try {
                    for (auto& x : crosscheck_table(p, necessary_conditions(rep)))
                        if (!(x.modulus_agree && x.values_agree && x.verdict_agree)) {
                            cross = false;
                            cross_detail += (cross_detail.empty() ? "" : ",") + std::to_string(x.id);
                        }
                } catch (const TableLookupError& e) {
                    cross = false;
                    cross_detail = e.what();
                }
                OracleRun orc = run_oracle(p, order, rep, trials, c.seed);
                bool pass = tc.match() && rep.identity_ok() && rel_row && cross && orc.agree == trials;
                row_pass = row_pass && pass;
                json one{{"n", p.has_n() ? json(q(p.n)) : json()},
                         {"m", q(p.m)},
                         {"basis", tc.match()},
                         {"erratum", erratum ? json(*erratum) : json()},
                         {"identity", rep.identity_ok()},
                         {"relations_row", rel_row},
                         {"relations_literal", rel_lit},
                         {"crosscheck", cross},
                         {"oracle", std::to_string(orc.agree) + "/" + std::to_string(trials)},
                         {"pass", pass}};
                if (!cross) one["crosscheck_columns"] = cross_detail;
                sj.push_back(one);
                auto b = [](bool x) { return std::string(x ? "ok" : "FAIL"); };
                out.rows.push_back({info(f).cli, row.id, p.has_n() ? q(p.n) : "", q(p.m), b(tc.match()),
                                    erratum ? b(*erratum) : "", b(rep.identity_ok()), b(rel_row), b(rel_lit), b(cross),
                                    one["oracle"].get<std::string>(), b(pass)});
                h << "  row " << row.id << " " << p.label() << ": basis " << b(tc.match());
                if (erratum) h << " (erratum " << b(*erratum) << ")";
                h << ", identity " << b(rep.identity_ok()) << ", relations " << b(rel_row) << " (literal " << b(rel_lit)
                  << "), crosscheck " << b(cross);
                if (!cross) h << " [" << cross_detail << "]";
                h << ", oracle " << one["oracle"].get<std::string>() << "\n";
            }
            if (samples.empty()) h << "  row " << row.id << ": no valid parameters in this residue class\n";
            rj["samples"] = sj;
            rj["pass"] = row_pass;
            if (!row_pass) ++failed;
            rows.push_back(rj);
        }
    }
    out.doc = {{"seed", c.seed}, {"samples", c.samples}, {"rows", rows}, {"summary", {{"rows", checked}, {"failed", failed}}}};
    h << "summary: " << checked << " rows checked, " << failed << " failed\n";
    if (failed) out.code = kMismatch;
}

// ---- output ----

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

void emit(const RunConfig& c, Output& out) {
    std::ostringstream os;
    if (c.format == "json") {
        json doc{{"schema", 1}, {"command", c.command}};
        for (auto& [k, v] : out.doc.items()) doc[k] = v;
        doc["exit_code"] = out.code;
        os << doc.dump(2) << "\n";
    } else if (c.format == "csv") {
        auto line = [&](const std::vector<std::string>& r) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
            os << "\n";
        };
        line(out.header);
        for (auto& r : out.rows) line(r);
    } else {
        os << out.human.str();
    }
    if (c.output.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw InvalidParameters("cannot write " + c.output);
        f << os.str();
    }
}

int env_workers() {
    if (const char* w = std::getenv("MONOGEN_WORKERS")) {
        int n = std::atoi(w);
        if (n >= 1) return n;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monogen: integral bases, index forms and monogenity of composite number fields"};
    app.require_subcommand(1);
    RunConfig c;
    c.workers = env_workers();

    auto add_family = [&](CLI::App* s) { s->add_option("--family", c.family, "family name, e.g. quad-pure-quartic"); };
    auto add_nm = [&](CLI::App* s, const char* what) {
        s->add_option("-n,--n", c.n_text, what)->allow_extra_args(false);
        s->add_option("-m,--m", c.m_text, what)->allow_extra_args(false);
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
        s->add_option("--output,-o", c.output, "write output to this file");
        s->add_option("--workers", c.workers, "worker threads (default MONOGEN_WORKERS or 1)")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "seed for randomized checks");
        s->add_flag("-v,--verbose", c.verbose, "more detail");
    };
    auto add_content = [&](CLI::App* s) {
        s->add_option("--content", c.content, "auto, expand or probe (probing applies to degree 12 only)")->check(CLI::IsMember({"auto", "expand", "probe"}));
    };

    auto* basis = app.add_subcommand("basis", "maximal-order basis, D_K and table match");
    auto* chk = app.add_subcommand("check", "monogenity verdict with witnesses");
    auto* scn = app.add_subcommand("scan", "verdicts over ranges a..b of n and m");
    auto* cor = app.add_subcommand("corollary", "reproduce a corollary");
    auto* ver = app.add_subcommand("verify-tables", "check every table row on sampled parameters");
    auto* orc = app.add_subcommand("oracle", "compare the factored index form with sqrt|D(theta)/D_K|");
    for (auto* s : {basis, chk, scn, cor, ver, orc}) add_common(s);
    for (auto* s : {basis, chk, scn, ver, orc}) add_family(s);
    for (auto* s : {basis, chk, orc}) add_nm(s, "parameter");
    add_nm(scn, "inclusive range a..b or a single value");
    for (auto* s : {chk, scn}) add_content(s);
    for (auto* s : {chk, orc}) s->add_flag("--dump-factors", c.dump_factors, "print the G_i polynomials");
    cor->add_option("--name", c.name, "quartic-i, quartic-bound, simplest-quartic-bound or sextic-set");
    cor->add_option("--limit", c.limit, "bound on |m| (default: the corollary's own)");
    ver->add_option("--samples", c.samples, "parameters per row");
    ver->add_option("--trials", c.trials, "oracle trials per sample (default 5)");
    orc->add_option("--trials", c.trials, "random x vectors (default 20)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kOk : kInvalid;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();

    Output out;
    try {
        if (c.command == "basis") cmd_basis(c, out);
        else if (c.command == "check") cmd_check(c, out);
        else if (c.command == "scan") cmd_scan(c, out);
        else if (c.command == "corollary") cmd_corollary(c, out);
        else if (c.command == "verify-tables") cmd_verify_tables(c, out);
        else if (c.command == "oracle") cmd_oracle(c, out);
        emit(c, out);
    } catch (const InvalidParameters& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInvariant;
    }
    return out.code;
}
