#include "kirbycalc/simplify.hpp"

#include <deque>
#include <memory>
#include <set>
#include <sstream>

namespace kirby {

std::string MoveStep::line() const {
    std::ostringstream os;
    os << "MOVE " << move << " " << target << " " << (params.empty() ? "-" : params)
       << " " << digest;
    return os.str();
}

MoveStep MoveStep::parse_line(const std::string& line) {
    std::istringstream is(line);
    std::string kw;
    MoveStep s;
    is >> kw >> s.move >> s.target >> s.params >> s.digest;
    if (kw != "MOVE" || s.move.empty() || s.digest.empty())
        throw ParseError("bad certificate step: '" + line + "'");
    if (s.params == "-") s.params.clear();
    return s;
}

std::string RewriteCertificate::str() const {
    std::ostringstream os;
    os << "INITIAL\n" << initial_text << "END\n";
    for (const auto& s : steps) os << s.line() << "\n";
    os << "TERMINAL " << terminal.str() << "\n";
    return os.str();
}

RewriteCertificate RewriteCertificate::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "INITIAL")
        throw ParseError("certificate must start with INITIAL");
    RewriteCertificate cert;
    std::ostringstream init;
    while (std::getline(in, line) && line != "END") init << line << "\n";
    cert.initial_text = init.str();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("TERMINAL ", 0) == 0) {
            std::string t = line.substr(9);
            if (t == "S3") cert.terminal = ClosedManifoldClass::three_sphere();
            else if (t == "S1xS2") cert.terminal = ClosedManifoldClass::s1xs2();
            else if (t.rfind("L(", 0) == 0) {
                auto comma = t.find(',');
                cert.terminal = ClosedManifoldClass::lens(
                    Int(t.substr(2, comma - 2)),
                    Int(t.substr(comma + 1, t.size() - comma - 2)));
            } else {
                cert.terminal = ClosedManifoldClass::unresolved(t);
            }
            return cert;
        }
        cert.steps.push_back(MoveStep::parse_line(line));
    }
    throw ParseError("certificate missing TERMINAL line");
}

TwistRegionGraph apply_step(const TwistRegionGraph& d, const MoveStep& s) {
    if (s.move == "delete-inf") {
        if (!d.coeff(s.target).is_infinity())
            throw MoveError("delete-inf on a finite coefficient");
        TwistRegionGraph out = d;
        out.erase(s.target);
        return out;
    }
    if (s.move == "blow-down") return blow_down(d, s.target);
    if (s.move == "slam-dunk") return slam_dunk(d, s.target);
    if (s.move == "twist-end") {
        if (s.params.rfind("t=", 0) != 0)
            throw MoveError("twist-end step needs a t= parameter");
        return rolfsen_twist_end(d, s.target, Int(s.params.substr(2)));
    }
    throw MoveError("unknown move '" + s.move + "'");
}

namespace {

// Terminal when no twist regions remain and at most one component is not a
// trivial S^3 summand; the class is that component's (or S^3 for the empty
// diagram). Diagrams with two or more nontrivial isolated summands are
// connected sums the move set cannot merge; they are left to the search.
std::optional<ClosedManifoldClass> classify_terminal(const TwistRegionGraph& d) {
    for (int id : d.ids())
        if (d.degree(id) > 0) return std::nullopt;
    std::vector<ClosedManifoldClass> nontrivial;
    for (int id : d.ids()) {
        auto c = lens_from_fraction(d.coeff(id));
        if (c.kind != ClosedManifoldClass::Kind::ThreeSphere) nontrivial.push_back(c);
    }
    if (nontrivial.empty()) return ClosedManifoldClass::three_sphere();
    if (nontrivial.size() == 1) return nontrivial[0];
    return std::nullopt;
}

struct Candidate {
    MoveStep step;  // digest filled after application
    TwistRegionGraph result;
};

std::vector<Candidate> children(const TwistRegionGraph& d) {
    std::vector<Candidate> out;
    auto push = [&out](const char* name, int id, std::string params,
                       TwistRegionGraph&& g) {
        MoveStep s;
        s.move = name;
        s.target = id;
        s.params = std::move(params);
        s.digest = g.digest();
        out.push_back({std::move(s), std::move(g)});
    };
    for (int id : d.ids())
        if (d.coeff(id).is_infinity()) {
            TwistRegionGraph g = d;
            g.erase(id);
            push("delete-inf", id, "", std::move(g));
        }
    for (int id : d.ids()) {
        const Slope& c = d.coeff(id);
        if (!(c.is_integer() && (c.num() == 1 || c.num() == -1))) continue;
        auto nb = d.neighbours(id);
        if (nb.size() > 2) continue;
        bool ok = true;
        for (auto [b, l] : nb)
            if (l != 1 && l != -1) ok = false;
        if (ok) push("blow-down", id, "", blow_down(d, id));
    }
    for (int id : d.ids()) {
        auto nb = d.neighbours(id);
        if (nb.size() != 1 || (nb[0].second != 1 && nb[0].second != -1)) continue;
        const Slope& c = d.coeff(id);
        if (c.is_infinity()) continue;
        push("slam-dunk", id, "", slam_dunk(d, id));
    }
    for (int id : d.ids()) {
        // end twist aimed at a +-1 integer coefficient
        const Slope& c = d.coeff(id);
        if (!(c.num() == 1 || c.num() == -1) || c.den() == 1) continue;
        auto nb = d.neighbours(id);
        if (nb.size() > 1) continue;
        if (nb.size() == 1 && nb[0].second != 1 && nb[0].second != -1) continue;
        Int t = (Int(1) - c.den()) / c.num();  // c.num() is +-1
        std::ostringstream ps;
        ps << "t=" << t;
        push("twist-end", id, ps.str(), rolfsen_twist_end(d, id, t));
    }
    return out;
}

}  // namespace

SimplifyResult simplify(const TwistRegionGraph& d, long long budget) {
    // relabel through the canonical text so certificate targets are stable
    std::string text = d.canonical_text();
    TwistRegionGraph start = TwistRegionGraph::parse_text(text);

    SimplifyResult res;
    res.smallest_reached = start.size();

    struct Node {
        TwistRegionGraph g;
        int parent;
        MoveStep step;
    };
    std::vector<Node> nodes;
    nodes.push_back({start, -1, {}});
    if (auto t = classify_terminal(start)) {
        res.resolved = true;
        res.certificate = {text, {}, *t};
        return res;
    }
    std::set<std::string> seen{start.digest()};
    std::deque<int> queue{0};
    long long expanded = 0;
    while (!queue.empty() && expanded < budget) {
        int cur = queue.front();
        queue.pop_front();
        ++expanded;
        for (auto& cand : children(nodes[cur].g)) {
            if (!seen.insert(cand.step.digest).second) continue;
            res.smallest_reached = std::min(res.smallest_reached, cand.result.size());
            nodes.push_back({std::move(cand.result), cur, std::move(cand.step)});
            int idx = static_cast<int>(nodes.size()) - 1;
            if (auto t = classify_terminal(nodes[idx].g)) {
                std::vector<MoveStep> steps;
                for (int i = idx; i > 0; i = nodes[i].parent)
                    steps.push_back(nodes[i].step);
                std::reverse(steps.begin(), steps.end());
                res.resolved = true;
                res.certificate = {text, std::move(steps), *t};
                return res;
            }
            queue.push_back(idx);
        }
    }
    res.resolved = false;
    return res;
}

ReplayOutcome replay(const RewriteCertificate& cert) {
    ReplayOutcome out;
    TwistRegionGraph d;
    try {
        d = TwistRegionGraph::parse_text(cert.initial_text);
    } catch (const std::exception& e) {
        out.diagnosis = std::string("initial diagram does not parse: ") + e.what();
        return out;
    }
    AbelianGroup h0 = d.first_homology();
    for (size_t i = 0; i < cert.steps.size(); ++i) {
        try {
            d = apply_step(d, cert.steps[i]);
        } catch (const std::exception& e) {
            out.diagnosis = "step " + std::to_string(i + 1) + " does not apply: " + e.what();
            return out;
        }
        if (d.digest() != cert.steps[i].digest) {
            out.diagnosis = "step " + std::to_string(i + 1) + " digest mismatch";
            return out;
        }
        if (!(d.first_homology() == h0)) {
            out.diagnosis = "step " + std::to_string(i + 1) + " changed first homology";
            return out;
        }
    }
    auto t = classify_terminal(d);
    if (!t) {
        out.diagnosis = "final diagram is not terminal";
        return out;
    }
    if (!(*t == cert.terminal)) {
        out.diagnosis = "terminal classification mismatch: replay gives " + t->str() +
                        ", certificate says " + cert.terminal.str();
        return out;
    }
    out.ok = true;
    return out;
}

namespace {

// Folds one path component by slam dunks from its low end, appending steps.
// Returns the class of that component.
ClosedManifoldClass fold_component(TwistRegionGraph& d, std::vector<int> order,
                                   std::vector<MoveStep>& steps) {
    while (order.size() > 1) {
        int end = order.front();
        if (d.coeff(end).is_infinity()) {
            // created by a 0-framed dunk; the trivially filled circle vanishes
            d.erase(end);
            MoveStep s{"delete-inf", end, "", d.digest()};
            steps.push_back(s);
            order.erase(order.begin());
            continue;
        }
        d = slam_dunk(d, end);
        MoveStep s{"slam-dunk", end, "", d.digest()};
        steps.push_back(s);
        order.erase(order.begin());
    }
    // the final single vertex stays in place; the terminal diagram is the
    // disjoint union of such vertices
    return lens_from_fraction(d.coeff(order.front()));
}

ChainReduction reduce_impl(const TwistRegionGraph& d, bool single_only) {
    for (int id : d.ids())
        if (d.coeff(id).is_infinity())
            throw MoveError("chain reduction requires finite coefficients");
    std::string text = d.canonical_text();
    TwistRegionGraph g = TwistRegionGraph::parse_text(text);
    auto comps = g.connected_components();
    if (single_only && comps.size() != 1)
        throw MoveError("expected a single linear chain");
    std::vector<MoveStep> steps;
    std::vector<ClosedManifoldClass> classes;
    for (const auto& comp : comps) {
        auto po = g.path_order(comp);
        if (!po) throw MoveError("component is a cycle, not a linear chain");
        classes.push_back(fold_component(g, *po, steps));
    }
    ClosedManifoldClass total = ClosedManifoldClass::three_sphere();
    std::vector<ClosedManifoldClass> nontrivial;
    for (auto& c : classes)
        if (c.kind != ClosedManifoldClass::Kind::ThreeSphere) nontrivial.push_back(c);
    if (nontrivial.size() == 1) total = nontrivial[0];
    if (nontrivial.size() > 1) {
        std::string desc;
        for (auto& c : nontrivial) desc += (desc.empty() ? "" : " # ") + c.str();
        total = ClosedManifoldClass::unresolved("connected sum " + desc);
    }
    ChainReduction out;
    out.terminal = total;
    out.certificate = {text, std::move(steps), total};
    return out;
}

}  // namespace

ChainReduction lens_from_linear_chain(const TwistRegionGraph& d) {
    return reduce_impl(d, true);
}

ChainReduction reduce_path_union(const TwistRegionGraph& d) {
    return reduce_impl(d, false);
}

}  // namespace kirby
