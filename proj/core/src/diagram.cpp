#include "kirbycalc/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace kirby {

int TwistRegionGraph::index_of(int id) const {
    for (size_t i = 0; i < comps_.size(); ++i)
        if (comps_[i].id == id) return static_cast<int>(i);
    return -1;
}

int TwistRegionGraph::add_component(const Slope& coeff, bool knot) {
    int id = next_id_++;
    comps_.push_back({id, coeff, knot});
    return id;
}

void TwistRegionGraph::add_component_with_id(int id, const Slope& coeff, bool knot) {
    if (has(id)) throw MoveError("duplicate component id " + std::to_string(id));
    comps_.push_back({id, coeff, knot});
    std::sort(comps_.begin(), comps_.end(),
              [](const Component& a, const Component& b) { return a.id < b.id; });
    next_id_ = std::max(next_id_, id + 1);
}

void TwistRegionGraph::add_edge(int a, int b, long long linking) {
    if (a == b) throw MoveError("self-loop");
    if (!has(a) || !has(b)) throw MoveError("edge endpoint missing");
    if (linking == 0) return;
    auto key = std::minmax(a, b);
    if (edges_.count({key.first, key.second})) throw MoveError("duplicate edge");
    edges_[{key.first, key.second}] = linking;
}

const Slope& TwistRegionGraph::coeff(int id) const {
    int i = index_of(id);
    if (i < 0) throw MoveError("unknown component id " + std::to_string(id));
    return comps_[i].coeff;
}

void TwistRegionGraph::set_coeff(int id, const Slope& s) {
    int i = index_of(id);
    if (i < 0) throw MoveError("unknown component id " + std::to_string(id));
    comps_[i].coeff = s;
}

bool TwistRegionGraph::knot_marker(int id) const {
    int i = index_of(id);
    if (i < 0) throw MoveError("unknown component id " + std::to_string(id));
    return comps_[i].knot;
}

void TwistRegionGraph::set_knot(int id, bool marker) {
    int i = index_of(id);
    if (i < 0) throw MoveError("unknown component id " + std::to_string(id));
    comps_[i].knot = marker;
}

void TwistRegionGraph::erase(int id) {
    int i = index_of(id);
    if (i < 0) throw MoveError("unknown component id " + std::to_string(id));
    comps_.erase(comps_.begin() + i);
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->first.first == id || it->first.second == id)
            it = edges_.erase(it);
        else
            ++it;
    }
}

std::vector<int> TwistRegionGraph::ids() const {
    std::vector<int> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.id);
    return out;
}

int TwistRegionGraph::degree(int id) const {
    int d = 0;
    for (const auto& [k, l] : edges_)
        if (k.first == id || k.second == id) ++d;
    return d;
}

std::vector<std::pair<int, long long>> TwistRegionGraph::neighbours(int id) const {
    std::vector<std::pair<int, long long>> out;
    for (const auto& [k, l] : edges_) {
        if (k.first == id) out.emplace_back(k.second, l);
        else if (k.second == id) out.emplace_back(k.first, l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long TwistRegionGraph::linking(int a, int b) const {
    auto key = std::minmax(a, b);
    auto it = edges_.find({key.first, key.second});
    return it == edges_.end() ? 0 : it->second;
}

void TwistRegionGraph::set_linking(int a, int b, long long l) {
    auto key = std::minmax(a, b);
    if (l == 0)
        edges_.erase({key.first, key.second});
    else
        edges_[{key.first, key.second}] = l;
}

std::vector<std::vector<int>> TwistRegionGraph::connected_components() const {
    std::vector<std::vector<int>> out;
    std::vector<int> all = ids();
    std::map<int, bool> seen;
    for (int start : all) {
        if (seen[start]) continue;
        std::vector<int> comp, stack{start};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (seen[x]) continue;
            seen[x] = true;
            comp.push_back(x);
            for (auto [b, l] : neighbours(x))
                if (!seen[b]) stack.push_back(b);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::optional<std::vector<int>> TwistRegionGraph::path_order(
    const std::vector<int>& comp) const {
    if (comp.size() == 1) return comp;
    std::vector<int> ends;
    for (int a : comp)
        if (degree(a) <= 1) ends.push_back(a);
    if (ends.empty()) return std::nullopt;  // cycle
    std::vector<int> order{*std::min_element(ends.begin(), ends.end())};
    int prev = -1;
    while (true) {
        int cur = order.back(), nxt = -1;
        for (auto [b, l] : neighbours(cur))
            if (b != prev) { nxt = b; break; }
        if (nxt < 0) break;
        prev = cur;
        order.push_back(nxt);
    }
    if (order.size() != comp.size()) return std::nullopt;
    return order;
}

void TwistRegionGraph::check_shape() const {
    for (const auto& c : comps_)
        if (degree(c.id) > 2)
            throw MoveError("component " + std::to_string(c.id) + " has degree > 2");
}

IntMatrix TwistRegionGraph::presentation_matrix() const {
    TwistRegionGraph d = *this;
    for (int id : d.ids())
        if (d.coeff(id).is_infinity()) d.erase(id);
    std::vector<int> v = d.ids();
    std::map<int, size_t> idx;
    for (size_t i = 0; i < v.size(); ++i) idx[v[i]] = i;
    IntMatrix m(v.size(), std::vector<Int>(v.size(), 0));
    for (size_t i = 0; i < v.size(); ++i) {
        const Slope& c = d.coeff(v[i]);
        m[i][i] = c.num();
        for (auto [b, l] : d.neighbours(v[i])) m[i][idx[b]] += c.den() * l;
    }
    return m;
}

AbelianGroup TwistRegionGraph::first_homology() const {
    return smith_normal_form(presentation_matrix()).cokernel;
}

namespace {

struct Encoded {
    std::string text;
    std::vector<int> order;  // original ids in encoded order
};

std::string encode_seq(const std::vector<Slope>& cs, const std::vector<long long>& ls,
                       bool cycle, size_t n) {
    std::ostringstream os;
    os << "shape " << (cycle ? "cycle" : "path") << " " << n << "\ncoeffs";
    for (const auto& c : cs) os << " " << c.str();
    os << "\nlinkings";
    for (long long l : ls) os << " " << l;
    os << "\n";
    return os.str();
}

}  // namespace

std::string TwistRegionGraph::canonical_text() const {
    std::vector<std::string> blocks;
    for (const auto& comp : connected_components()) {
        auto po = path_order(comp);
        std::string best;
        if (po) {
            // path: forward vs reversed
            for (int dir = 0; dir < 2; ++dir) {
                std::vector<int> ord = *po;
                if (dir) std::reverse(ord.begin(), ord.end());
                std::vector<Slope> cs;
                std::vector<long long> ls;
                for (size_t i = 0; i < ord.size(); ++i) {
                    cs.push_back(coeff(ord[i]));
                    if (i + 1 < ord.size()) ls.push_back(linking(ord[i], ord[i + 1]));
                }
                std::string enc = encode_seq(cs, ls, false, ord.size());
                if (best.empty() || enc < best) best = enc;
            }
        } else {
            // cycle: walk it once, then minimize over rotations and reflections
            std::vector<int> ord{comp[0]};
            int prev = -1;
            while (ord.size() < comp.size()) {
                int cur = ord.back(), nxt = -1;
                for (auto [b, l] : neighbours(cur))
                    if (b != prev) { nxt = b; break; }
                prev = cur;
                ord.push_back(nxt);
            }
            size_t n = ord.size();
            for (int dir = 0; dir < 2; ++dir) {
                std::vector<int> o = ord;
                if (dir) std::reverse(o.begin(), o.end());
                for (size_t rot = 0; rot < n; ++rot) {
                    std::vector<Slope> cs;
                    std::vector<long long> ls;
                    for (size_t i = 0; i < n; ++i) {
                        int a = o[(rot + i) % n];
                        int b = o[(rot + i + 1) % n];
                        cs.push_back(coeff(a));
                        ls.push_back(linking(a, b));
                    }
                    std::string enc = encode_seq(cs, ls, true, n);
                    if (best.empty() || enc < best) best = enc;
                }
            }
        }
        blocks.push_back(best);
    }
    std::sort(blocks.begin(), blocks.end());
    std::string out;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += "\n";
        out += blocks[i];
    }
    return out;
}

std::string TwistRegionGraph::digest() const {
    std::string text = canonical_text();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

TwistRegionGraph TwistRegionGraph::parse_text(const std::string& text) {
    TwistRegionGraph d;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw, shape;
        size_t n = 0;
        ls >> kw >> shape >> n;
        if (kw != "shape" || (shape != "cycle" && shape != "path") || n == 0)
            throw ParseError("bad diagram block header: '" + line + "'");
        bool cycle = shape == "cycle";
        if (!std::getline(in, line)) throw ParseError("missing coeffs line");
        std::istringstream cs(line);
        cs >> kw;
        if (kw != "coeffs") throw ParseError("expected coeffs line, got '" + line + "'");
        std::vector<int> local;
        for (size_t i = 0; i < n; ++i) {
            std::string tok;
            if (!(cs >> tok)) throw ParseError("too few coefficients");
            local.push_back(d.add_component(Slope::parse(tok)));
        }
        size_t nl = cycle ? n : n - 1;
        if (cycle && n < 3) throw ParseError("cycle needs at least 3 components");
        if (!std::getline(in, line)) throw ParseError("missing linkings line");
        std::istringstream lks(line);
        lks >> kw;
        if (kw != "linkings") throw ParseError("expected linkings line, got '" + line + "'");
        for (size_t i = 0; i < nl; ++i) {
            long long l;
            if (!(lks >> l)) throw ParseError("too few linkings");
            d.add_edge(local[i], local[(i + 1) % n], l);
        }
    }
    d.check_shape();
    return d;
}

TwistRegionGraph mt5c() {
    TwistRegionGraph d;
    for (int i = 0; i < 5; ++i) d.add_component(Slope::infinity());
    const long long signs[5] = {+1, -1, +1, -1, +1};
    for (int i = 0; i < 5; ++i) d.add_edge(i + 1, (i + 1) % 5 + 1, signs[i]);
    return d;
}

TwistRegionGraph mirror(const TwistRegionGraph& d) {
    TwistRegionGraph out;
    for (int id : d.ids()) out.add_component_with_id(id, neg(d.coeff(id)), d.knot_marker(id));
    for (int id : d.ids())
        for (auto [b, l] : d.neighbours(id))
            if (id < b) out.add_edge(id, b, -l);
    return out;
}

TwistRegionGraph fill(const TwistRegionGraph& d, int id, const Slope& s) {
    TwistRegionGraph out = d;
    if (!out.has(id)) throw MoveError("fill: unknown component id " + std::to_string(id));
    if (s.is_infinity())
        out.erase(id);  // meridional filling restores the solid torus
    else
        out.set_coeff(id, s);
    return out;
}

TwistRegionGraph slam_dunk(const TwistRegionGraph& d, int end_id) {
    auto nb = d.neighbours(end_id);
    if (nb.size() != 1)
        throw MoveError("slam dunk: component " + std::to_string(end_id) +
                        " is not a degree-1 end");
    if (std::abs(nb[0].second) != 1)
        throw MoveError("slam dunk: end is not a meridian (|linking| != 1)");
    const Slope& r = d.coeff(end_id);
    if (r.is_infinity()) throw MoveError("slam dunk: end coefficient is 1/0; use fill");
    TwistRegionGraph out = d;
    // neighbour a -> a - 1/r; r = 0 leaves the neighbour at 1/0 (it is then a
    // trivially filled component and gets deleted by the caller or the search)
    Slope a = out.coeff(nb[0].first);
    out.set_coeff(nb[0].first,
                  sub(a, Slope(Int(conventions::kSlamDunkSign) * r.den(), r.num())));
    out.erase(end_id);
    return out;
}

TwistRegionGraph rolfsen_twist_end(const TwistRegionGraph& d, int end_id, const Int& t) {
    auto nb = d.neighbours(end_id);
    if (nb.size() > 1)
        throw MoveError("rolfsen twist: component " + std::to_string(end_id) +
                        " has degree 2 (mid-chain twists are outside the diagram class)");
    if (nb.size() == 1 && std::abs(nb[0].second) != 1)
        throw MoveError("rolfsen twist: more than one strand passes the disk");
    TwistRegionGraph out = d;
    const Slope& c = d.coeff(end_id);
    out.set_coeff(end_id,
                  Slope(c.num(), c.den() + t * c.num() * conventions::kTwistSelfSign));
    if (nb.size() == 1) {
        Slope a = out.coeff(nb[0].first);
        out.set_coeff(nb[0].first, add(a, Slope(t, 1)));  // shift by t * lk^2 = t
    }
    return out;
}

TwistRegionGraph blow_down(const TwistRegionGraph& d, int id) {
    const Slope& c = d.coeff(id);
    if (!(c.is_integer() && (c.num() == 1 || c.num() == -1)))
        throw MoveError("blow down: coefficient of " + std::to_string(id) +
                        " is not +1 or -1");
    auto nb = d.neighbours(id);
    if (nb.size() > 2) throw MoveError("blow down: degree > 2");
    for (auto [b, l] : nb)
        if (std::abs(l) != 1)
            throw MoveError("blow down: incident twist region has |linking| != 1");
    int eps = static_cast<int>(c.num());
    TwistRegionGraph out = d;
    for (auto [b, l] : nb) {
        Slope a = out.coeff(b);
        out.set_coeff(b, Slope(a.num() + conventions::kBlowDownShift * eps * a.den(),
                               a.den()));
    }
    if (nb.size() == 2) {
        long long la = nb[0].second, lb = nb[1].second;
        long long cur = out.linking(nb[0].first, nb[1].first);
        out.set_linking(nb[0].first, nb[1].first,
                        cur + conventions::kBlowDownShift * eps * la * lb);
    }
    out.erase(id);
    return out;
}

TwistRegionGraph amalgamate_parallel(const TwistRegionGraph& d, int a, int b) {
    auto na = d.neighbours(a), nb = d.neighbours(b);
    if (na.size() != 1 || nb.size() != 1 || na[0].first != nb[0].first)
        throw MoveError("amalgamate: components are not parallel meridians");
    if (std::abs(na[0].second) != 1 || std::abs(nb[0].second) != 1 ||
        na[0].second != nb[0].second)
        throw MoveError("amalgamate: linkings differ in sign or are not clasps");
    // 1/r = 1/r1 + 1/r2; the double-zero case means 1/r = infinity, so r = 0
    const Slope &r1 = d.coeff(a), &r2 = d.coeff(b);
    Slope r(0);
    if (r1.is_zero() && r2.is_zero())
        r = Slope(0);
    else
        r = recip(add(recip(r1), recip(r2)));
    TwistRegionGraph out = d;
    out.set_coeff(a, r);
    out.erase(b);
    return out;
}

}  // namespace kirby
