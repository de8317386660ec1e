#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/rational.hpp"
#include "kirbycalc/smith.hpp"

namespace kirby {

struct MoveError : std::runtime_error {
    explicit MoveError(const std::string& m) : std::runtime_error(m) {}
};

// Sign conventions for the moves, calibrated once against the homology oracle
// (see the calibration battery in the test suite) and frozen here.
namespace conventions {
// slam dunk: neighbour coefficient a -> a - kSlamDunkSign / r
inline constexpr int kSlamDunkSign = +1;
// end Rolfsen twist by t: p/q -> p/(q + t*p*kTwistSelfSign), neighbour += t
inline constexpr int kTwistSelfSign = +1;
// blow down of an eps-framed component: neighbours shift by kBlowDownShift*eps,
// the neighbour pair's linking shifts by kBlowDownShift*eps*la*lb
inline constexpr int kBlowDownShift = -1;
}  // namespace conventions

// A surgery diagram in the path/cycle class: unknotted components carrying
// rational coefficients, adjacent ones joined by integer-weighted two-strand
// twist regions. Degree <= 2 everywhere, no self-loops, one edge per pair.
class TwistRegionGraph {
public:
    struct Component {
        int id;
        Slope coeff;
        bool knot = false;  // optional marker for the distinguished component
    };

    TwistRegionGraph() = default;

    int add_component(const Slope& coeff, bool knot = false);          // fresh id
    void add_component_with_id(int id, const Slope& coeff, bool knot = false);
    void add_edge(int a, int b, long long linking);

    bool has(int id) const { return index_of(id) >= 0; }
    const Slope& coeff(int id) const;
    void set_coeff(int id, const Slope& s);
    bool knot_marker(int id) const;
    void set_knot(int id, bool marker);
    void erase(int id);  // removes the component and its incident edges

    std::size_t size() const { return comps_.size(); }
    bool empty() const { return comps_.empty(); }
    std::vector<int> ids() const;
    int degree(int id) const;
    // neighbours sorted by id, with the linking of the joining twist region
    std::vector<std::pair<int, long long>> neighbours(int id) const;
    long long linking(int a, int b) const;  // 0 if not adjacent
    void set_linking(int a, int b, long long l);

    std::vector<std::vector<int>> connected_components() const;
    // vertex order of a path component (smaller end first); nullopt for a cycle
    std::optional<std::vector<int>> path_order(const std::vector<int>& comp) const;

    void check_shape() const;  // throws MoveError on a shape violation

    AbelianGroup first_homology() const;  // infinity components deleted first
    IntMatrix presentation_matrix() const;

    // Canonical serialization: per-component minimization over path reversal /
    // cycle rotation+reflection, components sorted; this is also the text format.
    std::string canonical_text() const;
    std::string digest() const;  // FNV-1a 64 over canonical_text, hex

    static TwistRegionGraph parse_text(const std::string& text);  // ids 1..n

private:
    int index_of(int id) const;
    std::vector<Component> comps_;                       // sorted by id
    std::map<std::pair<int, int>, long long> edges_;     // key (min,max), value != 0
    int next_id_ = 1;
};

// The minimally twisted five-component chain ring: a 5-cycle of unknots,
// all coefficients 1/0, clasp signs (+1,-1,+1,-1,+1) around the cycle.
TwistRegionGraph mt5c();

TwistRegionGraph mirror(const TwistRegionGraph& d);
// Replace the coefficient; filling with 1/0 deletes the component.
TwistRegionGraph fill(const TwistRegionGraph& d, int id, const Slope& s);

// Kirby moves. Preconditions throw MoveError.
TwistRegionGraph slam_dunk(const TwistRegionGraph& d, int end_id);
TwistRegionGraph rolfsen_twist_end(const TwistRegionGraph& d, int end_id, const Int& t);
TwistRegionGraph blow_down(const TwistRegionGraph& d, int id);
TwistRegionGraph amalgamate_parallel(const TwistRegionGraph& d, int a, int b);

}  // namespace kirby
