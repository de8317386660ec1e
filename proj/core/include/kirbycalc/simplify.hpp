#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/classify.hpp"
#include "kirbycalc/diagram.hpp"

namespace kirby {

// One applied move: name, target component id (in the certificate's own
// labelling), extra parameters, and the digest of the resulting diagram.
struct MoveStep {
    std::string move;    // delete-inf | blow-down | slam-dunk | twist-end
    int target = 0;
    std::string params;  // e.g. "t=-3", or "-" when none
    std::string digest;

    std::string line() const;
    static MoveStep parse_line(const std::string& line);
};

// Replayable witness of a simplification. The initial diagram is stored in
// the canonical text format; step targets refer to the ids assigned by
// parsing that text (1..n in reading order).
struct RewriteCertificate {
    std::string initial_text;
    std::vector<MoveStep> steps;
    ClosedManifoldClass terminal;

    std::string str() const;
    static RewriteCertificate parse(const std::string& text);
};

struct SimplifyResult {
    bool resolved = false;
    RewriteCertificate certificate;        // valid when resolved
    std::size_t smallest_reached = 0;      // components in the smallest diagram seen
};

// Bounded breadth-first search over the move set, preferring 1/0 deletions,
// then blow-downs, then slam dunks, then end twists that create +-1
// coefficients. Deterministic for a fixed budget. budget caps expansions.
SimplifyResult simplify(const TwistRegionGraph& d, long long budget = 4000);

struct ReplayOutcome {
    bool ok = false;
    std::string diagnosis;
};

// Re-applies each step, recomputing the digest and checking first homology
// invariance at every stage; confirms the terminal classification.
ReplayOutcome replay(const RewriteCertificate& cert);

// Deterministic reduction of a single all-finite linear chain by iterated
// slam dunks from the low end; returns the classification and a certificate.
struct ChainReduction {
    ClosedManifoldClass terminal;
    RewriteCertificate certificate;
};
ChainReduction lens_from_linear_chain(const TwistRegionGraph& d);

// Reduction of a disjoint union of finite-coefficient paths (used by the
// verification harness after meridional deletions): every path is folded,
// trivial summands are dropped, and the combined class is returned.
ChainReduction reduce_path_union(const TwistRegionGraph& d);

// The move the simplify search applies, exposed for replay.
TwistRegionGraph apply_step(const TwistRegionGraph& d, const MoveStep& s);

}  // namespace kirby
