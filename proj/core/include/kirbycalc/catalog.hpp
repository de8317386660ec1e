#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/classify.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/expr.hpp"
#include "kirbycalc/rational.hpp"
#include "kirbycalc/simplify.hpp"
#include "kirbycalc/tangle.hpp"

namespace kirby {

struct CatalogError : std::runtime_error {
    explicit CatalogError(const std::string& m) : std::runtime_error(m) {}
};

enum class Family { I, II, III, IV, V, VI, SpA, SpB, SpC, SpD };

std::string family_name(Family f);
// Accepts I..VI, SpA..SpD and the alternative numbering IX..XII.
Family family_from_string(const std::string& s);
std::vector<Family> all_families();

// Tangle template with expression-valued leaves and twist boxes; instantiated
// per parameter tuple into a TangleExpr with one open slot.
struct TangleTemplate {
    enum class Kind { Leaf, Slot, Twist, HSum, VStack };
    Kind kind = Kind::Slot;
    Expr num, den;                      // Leaf
    Expr twist;                         // Twist
    std::vector<TangleTemplate> kids;   // HSum / VStack

    static TangleTemplate parse(const std::string& sexpr);
    TangleExpr instantiate(const Env& env) const;
    std::string sexpr() const;
};

struct CatalogRecord {
    std::string kind;  // free_pqrs | pKe | sporadic
    std::vector<std::string> params;
    Slope rho_s3, rho_lens;
    Slope delta;
    bool mirror = false;
    int knot_id = 5;
    std::vector<std::pair<std::string, Expr>> lets;
    std::vector<std::pair<Expr, Expr>> coeffs;  // four (num, den) pairs for C1..C4
    TangleTemplate tangle;
    std::map<std::string, std::pair<long long, long long>> grid;
    std::map<std::string, Int> constants;
    std::string notes;
};

class Catalog {
public:
    static Catalog from_json(const std::string& json_text);
    static Catalog load_file(const std::string& path);
    static const Catalog& embedded();  // the default data compiled in

    const CatalogRecord& record(Family f) const;

private:
    std::map<Family, CatalogRecord> records_;
};

struct FamilyParams {
    Family family = Family::I;
    std::map<std::string, Int> values;  // p, q, r, s, n, K, eps as applicable
};

// Throws CatalogError naming the violated invariant.
void check_valid(const Catalog& cat, const FamilyParams& fp);
// Parameter environment: values, sporadic constants and the data-file lets.
Env build_env(const Catalog& cat, const FamilyParams& fp);

struct BergeDescription {
    TwistRegionGraph diagram;  // chain ring (or its mirror), four components filled
    int knot_component = 5;
    Slope rho_s3, rho_lens;
    TangleExpr tangle;  // one open slot
    Slope delta;
    std::vector<std::string> degenerate_flags;
};

BergeDescription surgery_description(const Catalog& cat, const FamilyParams& fp);
std::pair<TangleExpr, Slope> tangle_description(const Catalog& cat,
                                                const FamilyParams& fp);

struct VerificationReport {
    FamilyParams params;
    ClosedManifoldClass s3_exact;
    RewriteCertificate s3_certificate;
    AbelianGroup lens_homology;
    std::optional<RewriteCertificate> lens_certificate;
    std::size_t lens_smallest = 0;  // smallest diagram the search reached
    std::optional<ClosedManifoldClass> lens_class;    // from the certificate
    std::optional<TwoBridgeLink> tangle_two_bridge;
    std::optional<ClosedManifoldClass> tangle_lens;
    bool unknot_claim = false;  // infinity insertion has numerator +-1
    bool consistent = false;
    std::vector<std::string> degenerate_flags;
    std::string notes;

    std::string json() const;  // one line, stable key order
};

VerificationReport verify(const Catalog& cat, const FamilyParams& fp,
                          long long budget = 4000);

struct SweepSummary {
    std::size_t total = 0;
    std::size_t consistent = 0;
    std::size_t inconsistent = 0;
    std::size_t lens_resolved = 0;
    std::size_t degenerate_skipped = 0;

    std::string json() const;
};

using SweepRanges = std::map<std::string, std::pair<long long, long long>>;

// All valid, nondegenerate tuples of the default (or overridden) grid,
// in deterministic sorted order.
std::vector<FamilyParams> enumerate_grid(const Catalog& cat, Family f,
                                         const SweepRanges& overrides = {});
std::vector<FamilyParams> enumerate_grid_counting(const Catalog& cat, Family f,
                                                  const SweepRanges& overrides,
                                                  std::size_t& degenerate_count);
// Degenerate = a characteristic or stored slope becomes 0 or 1/0, or the
// lens-side fraction becomes 1/0.
bool is_degenerate(const Catalog& cat, const FamilyParams& fp);

std::vector<VerificationReport> sweep(const Catalog& cat, Family f,
                                      const SweepRanges& overrides, long long budget,
                                      int jobs, SweepSummary& summary);

}  // namespace kirby
