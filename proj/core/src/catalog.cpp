#include "kirbycalc/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace kirby {

using ordered_json = nlohmann::ordered_json;

extern const char* kEmbeddedCatalogJson;  // generated from data/berge_catalog.json

std::string family_name(Family f) {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::IV: return "IV";
        case Family::V: return "V";
        case Family::VI: return "VI";
        case Family::SpA: return "SpA";
        case Family::SpB: return "SpB";
        case Family::SpC: return "SpC";
        case Family::SpD: return "SpD";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    static const std::map<std::string, Family> names = {
        {"I", Family::I},     {"II", Family::II},   {"III", Family::III},
        {"IV", Family::IV},   {"V", Family::V},     {"VI", Family::VI},
        {"SpA", Family::SpA}, {"SpB", Family::SpB}, {"SpC", Family::SpC},
        {"SpD", Family::SpD}, {"IX", Family::SpA},  {"X", Family::SpB},
        {"XI", Family::SpC},  {"XII", Family::SpD}};
    auto it = names.find(s);
    if (it == names.end()) throw CatalogError("unknown family '" + s + "'");
    return it->second;
}

std::vector<Family> all_families() {
    return {Family::I,   Family::II,  Family::III, Family::IV,  Family::V,
            Family::VI,  Family::SpA, Family::SpB, Family::SpC, Family::SpD};
}

// ---------------- tangle templates ----------------

namespace {

struct SexprParser {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string token() {
        skip();
        size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
               s[pos] != '(' && s[pos] != ')')
            ++pos;
        return s.substr(start, pos - start);
    }

    TangleTemplate node() {
        skip();
        if (pos >= s.size() || s[pos] != '(')
            throw ParseError("expected '(' in tangle template");
        ++pos;
        std::string head = token();
        TangleTemplate t;
        if (head == "slot") {
            t.kind = TangleTemplate::Kind::Slot;
        } else if (head == "twist") {
            t.kind = TangleTemplate::Kind::Twist;
            skip();
            size_t start = pos;
            int depth = 0;
            while (pos < s.size() && (depth > 0 || s[pos] != ')')) {
                if (s[pos] == '(') ++depth;
                if (s[pos] == ')') --depth;
                ++pos;
            }
            t.twist = Expr::parse(s.substr(start, pos - start));
        } else if (head == "leaf") {
            t.kind = TangleTemplate::Kind::Leaf;
            skip();
            size_t start = pos;
            int depth = 0;
            while (pos < s.size() && (depth > 0 || s[pos] != ')')) {
                if (s[pos] == '(') ++depth;
                if (s[pos] == ')') --depth;
                ++pos;
            }
            std::string body = s.substr(start, pos - start);
            // split on the top-level '/'
            int d = 0;
            size_t slash = std::string::npos;
            for (size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(') ++d;
                if (body[i] == ')') --d;
                if (body[i] == '/' && d == 0) {
                    slash = i;
                    break;
                }
            }
            if (slash == std::string::npos)
                throw ParseError("leaf needs num/den: '" + body + "'");
            t.num = Expr::parse(body.substr(0, slash));
            t.den = Expr::parse(body.substr(slash + 1));
        } else if (head == "hsum" || head == "vstack") {
            t.kind = head == "hsum" ? TangleTemplate::Kind::HSum
                                    : TangleTemplate::Kind::VStack;
            while (true) {
                skip();
                if (pos < s.size() && s[pos] == ')') break;
                t.kids.push_back(node());
            }
        } else {
            throw ParseError("unknown tangle node '" + head + "'");
        }
        skip();
        if (pos >= s.size() || s[pos] != ')')
            throw ParseError("expected ')' in tangle template");
        ++pos;
        return t;
    }
};

}  // namespace

TangleTemplate TangleTemplate::parse(const std::string& sexpr) {
    SexprParser p{sexpr};
    TangleTemplate t = p.node();
    p.skip();
    if (p.pos != sexpr.size()) throw ParseError("trailing input in tangle template");
    return t;
}

TangleExpr TangleTemplate::instantiate(const Env& env) const {
    switch (kind) {
        case Kind::Slot: return TangleExpr::make_slot();
        case Kind::Twist: return TangleExpr::make_twist(twist.eval(env));
        case Kind::Leaf: return TangleExpr::make_leaf(Slope(num.eval(env), den.eval(env)));
        case Kind::HSum:
        case Kind::VStack: {
            std::vector<TangleExpr> ks;
            ks.reserve(kids.size());
            for (const auto& k : kids) ks.push_back(k.instantiate(env));
            return kind == Kind::HSum ? TangleExpr::hsum(std::move(ks))
                                      : TangleExpr::vstack(std::move(ks));
        }
    }
    return TangleExpr::make_slot();
}

std::string TangleTemplate::sexpr() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Slot: os << "(slot)"; break;
        case Kind::Twist: os << "(twist " << twist.text() << ")"; break;
        case Kind::Leaf: os << "(leaf " << num.text() << "/" << den.text() << ")"; break;
        case Kind::HSum:
        case Kind::VStack:
            os << (kind == Kind::HSum ? "(hsum" : "(vstack");
            for (const auto& k : kids) os << " " << k.sexpr();
            os << ")";
            break;
    }
    return os.str();
}

// ---------------- catalog loading ----------------

Catalog Catalog::from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    if (!j.contains("families")) throw CatalogError("catalog has no 'families' object");
    Catalog cat;
    for (auto& [name, rec] : j.at("families").items()) {
        Family f = family_from_string(name);
        CatalogRecord r;
        r.kind = rec.at("kind").get<std::string>();
        for (auto& p : rec.at("params")) r.params.push_back(p.get<std::string>());
        r.rho_s3 = Slope::parse(rec.value("rho_s3", std::string("1/0")));
        r.rho_lens = Slope::parse(rec.at("rho_lens").get<std::string>());
        r.delta = Slope::parse(rec.at("delta").get<std::string>());
        r.mirror = rec.at("mirror").get<bool>();
        r.knot_id = rec.value("knot", 5);
        for (auto& kv : rec.at("lets"))
            r.lets.emplace_back(kv.at(0).get<std::string>(),
                                Expr::parse(kv.at(1).get<std::string>()));
        for (auto& c : rec.at("coeffs"))
            r.coeffs.emplace_back(Expr::parse(c.at(0).get<std::string>()),
                                  Expr::parse(c.at(1).get<std::string>()));
        if (r.coeffs.size() != 4)
            throw CatalogError("family " + name + " needs exactly 4 coefficients");
        r.tangle = TangleTemplate::parse(rec.at("template").get<std::string>());
        if (rec.contains("grid"))
            for (auto& [k, v] : rec.at("grid").items())
                r.grid[k] = {v.at(0).get<long long>(), v.at(1).get<long long>()};
        if (rec.contains("constants"))
            for (auto& [k, v] : rec.at("constants").items())
                r.constants[k] = Int(v.get<long long>());
        r.notes = rec.value("notes", std::string());
        cat.records_[f] = std::move(r);
    }
    return cat;
}

Catalog Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

const Catalog& Catalog::embedded() {
    static const Catalog cat = from_json(kEmbeddedCatalogJson);
    return cat;
}

const CatalogRecord& Catalog::record(Family f) const {
    auto it = records_.find(f);
    if (it == records_.end())
        throw CatalogError("catalog has no record for family " + family_name(f));
    return it->second;
}

// ---------------- parameters ----------------

namespace {

Int get_param(const FamilyParams& fp, const std::string& name) {
    auto it = fp.values.find(name);
    if (it == fp.values.end())
        throw CatalogError("family " + family_name(fp.family) +
                           " needs parameter '" + name + "'");
    return it->second;
}

Int gcd_abs(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

void check_valid(const Catalog& cat, const FamilyParams& fp) {
    const CatalogRecord& rec = cat.record(fp.family);
    for (const auto& p : rec.params) get_param(fp, p);
    for (const auto& [k, v] : fp.values) {
        if (std::find(rec.params.begin(), rec.params.end(), k) == rec.params.end())
            throw CatalogError("family " + family_name(fp.family) +
                               " does not take parameter '" + k + "'");
    }
    if (rec.kind == "free_pqrs") {
        Int p = get_param(fp, "p"), q = get_param(fp, "q");
        Int r = get_param(fp, "r"), s = get_param(fp, "s");
        if (gcd_abs(p, q) != 1)
            throw CatalogError("invalid parameters: gcd(p,q) must be 1");
        Int u = p * s - q * r;
        if (u != 1 && u != -1) {
            std::ostringstream os;
            os << "invalid parameters: |p*s - q*r| must be 1, got " << (u < 0 ? -u : u);
            throw CatalogError(os.str());
        }
    } else if (rec.kind == "pKe") {
        Int e = get_param(fp, "eps");
        if (e != 1 && e != -1)
            throw CatalogError("invalid parameters: eps must be +1 or -1");
    }
}

Env build_env(const Catalog& cat, const FamilyParams& fp) {
    const CatalogRecord& rec = cat.record(fp.family);
    Env env;
    for (const auto& [k, v] : rec.constants) env[k] = v;
    for (const auto& [k, v] : fp.values) env[k] = v;
    for (const auto& [name, e] : rec.lets) env[name] = e.eval(env);
    return env;
}

namespace {

std::vector<Slope> eval_coeffs(const CatalogRecord& rec, const Env& env) {
    std::vector<Slope> out;
    for (const auto& [n, d] : rec.coeffs) {
        Int nn = n.eval(env), dd = d.eval(env);
        if (nn == 0 && dd == 0) throw CatalogError("coefficient evaluates to 0/0");
        out.emplace_back(nn, dd);
    }
    return out;
}

std::vector<std::string> degenerate_flags_for(const Catalog& cat, const FamilyParams& fp,
                                              const Env& env,
                                              const std::vector<Slope>& coeffs) {
    const CatalogRecord& rec = cat.record(fp.family);
    std::vector<std::string> flags;
    auto slope_flag = [&flags](const std::string& what, const Slope& s) {
        if (s.is_infinity()) flags.push_back(what + " = 1/0");
        else if (s.is_zero()) flags.push_back(what + " = 0/1");
    };
    if (rec.kind == "free_pqrs") {
        slope_flag("p/q", Slope(get_param(fp, "p"), get_param(fp, "q")));
        slope_flag("r/s", Slope(get_param(fp, "r"), get_param(fp, "s")));
    } else if (rec.kind == "pKe") {
        Int p = get_param(fp, "p"), K = get_param(fp, "K"), e = get_param(fp, "eps");
        if (p == 0) flags.push_back("p = 0");
        Int rf = 2 * e + (2 * p + e) * K, sf = e + p * K;
        if (rf == 0 || sf == 0) {
            Slope rs = (rf == 0 && sf == 0) ? Slope(0) : Slope(rf, sf);
            slope_flag("r/s", rs);
        }
    } else {  // sporadic: the core slope's denominator is the first coefficient's
        // denominator, covered by the stored-slope rule below
    }
    for (size_t i = 0; i < coeffs.size(); ++i)
        slope_flag("coefficient C" + std::to_string(i + 1), coeffs[i]);
    // lens fraction becoming 1/0: the companion two-bridge link is the unknot
    auto ln = env.find("LN");
    auto ld = env.find("LD");
    if (ln != env.end() && ld != env.end() && ld->second == 0)
        flags.push_back("lens fraction = 1/0");
    return flags;
}

}  // namespace

bool is_degenerate(const Catalog& cat, const FamilyParams& fp) {
    Env env = build_env(cat, fp);
    const CatalogRecord& rec = cat.record(fp.family);
    std::vector<Slope> coeffs;
    try {
        coeffs = eval_coeffs(rec, env);
    } catch (const CatalogError&) {
        return true;
    }
    return !degenerate_flags_for(cat, fp, env, coeffs).empty();
}

BergeDescription surgery_description(const Catalog& cat, const FamilyParams& fp) {
    check_valid(cat, fp);
    const CatalogRecord& rec = cat.record(fp.family);
    Env env = build_env(cat, fp);
    std::vector<Slope> coeffs = eval_coeffs(rec, env);

    BergeDescription out;
    out.knot_component = rec.knot_id;
    out.rho_s3 = rec.rho_s3;
    out.rho_lens = rec.rho_lens;
    out.delta = rec.delta;
    out.degenerate_flags = degenerate_flags_for(cat, fp, env, coeffs);

    TwistRegionGraph d = rec.mirror ? mirror(mt5c()) : mt5c();
    for (int i = 0; i < 4; ++i) d = fill(d, i + 1, coeffs[i]);
    // the knot slot stays meridionally unfilled (coefficient 1/0)
    if (d.has(rec.knot_id)) d.set_knot(rec.knot_id, true);
    out.diagram = d;
    out.tangle = rec.tangle.instantiate(env);
    return out;
}

std::pair<TangleExpr, Slope> tangle_description(const Catalog& cat,
                                                const FamilyParams& fp) {
    check_valid(cat, fp);
    const CatalogRecord& rec = cat.record(fp.family);
    Env env = build_env(cat, fp);
    return {rec.tangle.instantiate(env), rec.delta};
}

// ---------------- verification ----------------

std::string VerificationReport::json() const {
    ordered_json j;
    j["schema"] = 1;
    j["family"] = family_name(params.family);
    {
        ordered_json pj;
        std::vector<std::string> keys;
        for (const auto& [k, v] : params.values) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        for (const auto& k : keys) pj[k] = params.values.at(k).convert_to<long long>();
        j["params"] = pj;
    }
    j["s3"] = {{"terminal", s3_exact.str()},
               {"cert_len", s3_certificate.steps.size()}};
    {
        ordered_json lj;
        lj["h1"] = lens_homology.str();
        if (lens_certificate) {
            lj["terminal"] = lens_certificate->terminal.str();
            lj["cert_len"] = lens_certificate->steps.size();
        } else {
            lj["terminal"] = nullptr;
            lj["cert_len"] = nullptr;
        }
        j["lens"] = lj;
    }
    if (tangle_two_bridge) {
        j["tangle"] = {{"p", tangle_two_bridge->p.str()},
                       {"q", tangle_two_bridge->q.str()}};
    } else {
        j["tangle"] = nullptr;
    }
    j["consistent"] = consistent;
    j["degenerate_flags"] = degenerate_flags;
    j["notes"] = notes;
    return j.dump();
}

VerificationReport verify(const Catalog& cat, const FamilyParams& fp,
                          long long budget) {
    BergeDescription desc = surgery_description(cat, fp);
    VerificationReport rep;
    rep.params = fp;
    rep.degenerate_flags = desc.degenerate_flags;

    std::vector<std::string> notes;

    // (i) trivial filling: the remaining chain must reduce exactly to S^3
    TwistRegionGraph s3d = fill(desc.diagram, desc.knot_component, desc.rho_s3);
    for (int id : s3d.ids())
        if (s3d.coeff(id).is_infinity()) s3d = fill(s3d, id, Slope::infinity());
    try {
        ChainReduction red = reduce_path_union(s3d);
        rep.s3_exact = red.terminal;
        rep.s3_certificate = red.certificate;
    } catch (const MoveError& e) {
        rep.s3_exact = ClosedManifoldClass::unresolved(e.what());
    }

    // (ii) lens filling: homology oracle plus certificate search
    TwistRegionGraph ld = fill(desc.diagram, desc.knot_component, desc.rho_lens);
    rep.lens_homology = ld.first_homology();
    SimplifyResult sr = simplify(ld, budget);
    rep.lens_smallest = sr.smallest_reached;
    if (sr.resolved) {
        rep.lens_certificate = sr.certificate;
        if (sr.certificate.terminal.is_lens_like())
            rep.lens_class = sr.certificate.terminal;
    }

    // (iii) the tangle route
    try {
        auto fr_unknot =
            fraction(insert(desc.tangle, RationalTangle{Slope::infinity()}));
        rep.unknot_claim =
            fr_unknot && (fr_unknot->is_infinity() || fr_unknot->num() == 1 ||
                          fr_unknot->num() == -1);
        if (!rep.unknot_claim) notes.push_back("infinity insertion is not an unknot");
        auto fr_lens = fraction(insert(desc.tangle, RationalTangle{desc.delta}));
        if (fr_lens) {
            rep.tangle_two_bridge = two_bridge_from_fraction(*fr_lens);
            rep.tangle_lens = double_branched_cover(*rep.tangle_two_bridge);
        } else {
            notes.push_back("tangle fraction did not resolve");
        }
    } catch (const TangleError& e) {
        notes.push_back(std::string("tangle route failed: ") + e.what());
    }

    // (iv) consistency
    bool ok = rep.s3_exact.kind == ClosedManifoldClass::Kind::ThreeSphere;
    if (!ok) notes.push_back("trivial filling did not reduce to S3");
    if (!rep.lens_homology.cyclic()) {
        ok = false;
        notes.push_back("lens filling has non-cyclic first homology");
    }
    std::vector<ClosedManifoldClass> resolved;
    if (rep.lens_class) resolved.push_back(*rep.lens_class);
    if (rep.tangle_lens) resolved.push_back(*rep.tangle_lens);
    for (size_t i = 0; i + 1 < resolved.size(); ++i)
        if (!lens_equivalent(resolved[i], resolved[i + 1], false)) {
            ok = false;
            notes.push_back("lens classifications disagree: " + resolved[i].str() +
                            " vs " + resolved[i + 1].str());
        }
    if (rep.lens_homology.finite())
        for (const auto& c : resolved) {
            Int n = rep.lens_homology.order();
            if (c.kind == ClosedManifoldClass::Kind::Lens && c.p != n) {
                ok = false;
                notes.push_back("lens order disagrees with |H1|");
            }
            if (c.kind == ClosedManifoldClass::Kind::ThreeSphere && n != 1) {
                ok = false;
                notes.push_back("S3 classification disagrees with |H1|");
            }
        }
    if (!rep.unknot_claim) ok = false;
    rep.consistent = ok;

    std::ostringstream ns;
    for (size_t i = 0; i < notes.size(); ++i) ns << (i ? "; " : "") << notes[i];
    rep.notes = ns.str();
    return rep;
}

// ---------------- sweeping ----------------

std::string SweepSummary::json() const {
    ordered_json j;
    j["schema"] = 1;
    j["total"] = total;
    j["consistent"] = consistent;
    j["inconsistent"] = inconsistent;
    j["lens_resolved"] = lens_resolved;
    j["degenerate_skipped"] = degenerate_skipped;
    return j.dump();
}

std::vector<FamilyParams> enumerate_grid(const Catalog& cat, Family f,
                                         const SweepRanges& overrides) {
    std::size_t degenerate_count = 0;
    return enumerate_grid_counting(cat, f, overrides, degenerate_count);
}

std::vector<FamilyParams> enumerate_grid_counting(const Catalog& cat, Family f,
                                                  const SweepRanges& overrides,
                                                  std::size_t& degenerate_count) {
    const CatalogRecord& rec = cat.record(f);
    std::map<std::string, std::pair<long long, long long>> ranges = rec.grid;
    for (const auto& [k, v] : overrides) {
        if (std::find(rec.params.begin(), rec.params.end(), k) == rec.params.end())
            throw CatalogError("family " + family_name(f) + " has no parameter '" + k +
                               "'");
        ranges[k] = v;
    }
    for (const auto& [k, v] : ranges)
        if (v.first > v.second) throw CatalogError("empty range for '" + k + "'");

    std::vector<FamilyParams> out;
    auto consider = [&](FamilyParams fp) {
        try {
            check_valid(cat, fp);
        } catch (const CatalogError&) {
            return;
        }
        if (is_degenerate(cat, fp)) {
            ++degenerate_count;
            return;
        }
        out.push_back(std::move(fp));
    };

    if (rec.kind == "free_pqrs") {
        auto [plo, phi] = ranges.at("p");
        auto [qlo, qhi] = ranges.at("q");
        auto [rlo, rhi] = ranges.at("r");
        auto [slo, shi] = ranges.at("s");
        for (long long p = plo; p <= phi; ++p)
            for (long long q = qlo; q <= qhi; ++q) {
                if (gcd_abs(Int(p), Int(q)) != 1) continue;
                for (long long r = rlo; r <= rhi; ++r)
                    for (long long s = slo; s <= shi; ++s) {
                        long long u = p * s - q * r;
                        if (u != 1 && u != -1) continue;
                        FamilyParams fp;
                        fp.family = f;
                        fp.values = {{"p", Int(p)}, {"q", Int(q)}, {"r", Int(r)},
                                     {"s", Int(s)}};
                        consider(std::move(fp));
                    }
            }
    } else if (rec.kind == "pKe") {
        auto [plo, phi] = ranges.at("p");
        auto [klo, khi] = ranges.at("K");
        for (long long p = plo; p <= phi; ++p)
            for (long long K = klo; K <= khi; ++K)
                for (int e : {+1, -1}) {
                    FamilyParams fp;
                    fp.family = f;
                    fp.values = {{"p", Int(p)}, {"K", Int(K)}, {"eps", Int(e)}};
                    consider(std::move(fp));
                }
    } else {
        auto [nlo, nhi] = ranges.at("n");
        for (long long n = nlo; n <= nhi; ++n) {
            FamilyParams fp;
            fp.family = f;
            fp.values = {{"n", Int(n)}};
            consider(std::move(fp));
        }
    }
    return out;
}

std::vector<VerificationReport> sweep(const Catalog& cat, Family f,
                                      const SweepRanges& overrides, long long budget,
                                      int jobs, SweepSummary& summary) {
    std::size_t degenerate_count = 0;
    std::vector<FamilyParams> tuples =
        enumerate_grid_counting(cat, f, overrides, degenerate_count);
    if (tuples.empty()) throw CatalogError("empty sweep grid");

    std::vector<VerificationReport> reports(tuples.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tuples.size()) break;
            reports[i] = verify(cat, tuples[i], budget);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    summary = {};
    summary.total = reports.size();
    summary.degenerate_skipped = degenerate_count;
    for (const auto& r : reports) {
        if (r.consistent) ++summary.consistent;
        else ++summary.inconsistent;
        if (r.lens_certificate) ++summary.lens_resolved;
    }
    return reports;
}

}  // namespace kirby
