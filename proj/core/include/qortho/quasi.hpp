#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qortho/families.hpp"
#include "qortho/recurrence.hpp"

namespace qortho {

enum class Extreme { LeftExit, RightExit, AllInside, Undetermined };
const char* to_string(Extreme e);

struct QuasiVerdict {
    unsigned n = 0;
    unsigned order = 0;
    std::vector<Scalar> coeffs; // a_{n,0..k}; a_{n,i} multiplies P_{n-i}
    int zero_count = 0;         // distinct real zeros inside the open support
    bool perturbed = false;     // a support endpoint was itself a zero
    Extreme extreme = Extreme::Undetermined; // from root isolation
};

// Expands the shifted monic P_n in the base family. Throws NotOrthogonal
// unless region_check(base) is Orthogonal.
QuasiVerdict quasi_order(const FamilySpec& base, const ShiftSpec& shift, unsigned n);
// Same, for an arbitrary nonzero polynomial of degree n (normalized to monic).
QuasiVerdict quasi_order_poly(const FamilySpec& base, const Poly& q);

// P_n(point) / P_{n-1}(point); Domain error when the denominator vanishes.
Scalar f_ratio(const FamilySpec& base, unsigned n, const Scalar& point);

struct Order1Endpoint {
    Extreme verdict = Extreme::Undetermined;   // sign criterion
    Extreme isolation = Extreme::Undetermined; // root isolation of the shifted polynomial
    Scalar a_n;
    std::optional<Scalar> left, right; // -a_n - f_n(e) at finite endpoints
    int beyond_left = -1, beyond_right = -1; // isolated zeros outside; -1 for infinite ends
    bool agree() const { return verdict == isolation; }
};
// Entry must have depth 1.
Order1Endpoint endpoint_classify_order1(const FamilySpec& base, const CatalogEntry& entry, unsigned n);

// F(e) = f_n f_{n-1} + a_n f_{n-1} + b_n. Q(e) = P_{n-2}(e) F(e), so F(e) < 0
// exactly when an odd number of zeros of Q lie beyond e.
enum class Beyond { Odd, Even, Infinite };
const char* to_string(Beyond b);

struct Order2Endpoint {
    Scalar a_n, b_n;
    std::optional<Scalar> F_left, F_right;
    Beyond left = Beyond::Infinite, right = Beyond::Infinite;
    int beyond_left = -1, beyond_right = -1; // isolation counts
    int real_zeros = 0;                      // distinct real zeros of Q
    unsigned n = 0;
    bool realness_criterion() const { return b_n.is_real() && b_n.sign() < 0; }
    bool agree() const;
};
// Entry must have depth 2.
Order2Endpoint endpoint_classify_order2(const FamilySpec& base, const CatalogEntry& entry, unsigned n);

enum class InterlaceVariant { QuasiBelow, QuasiAbove, PartialInner };
const char* to_string(InterlaceVariant v);

enum class Certificate { Certified, Refuted, Inconclusive };
const char* to_string(Certificate c);

struct InterlaceResult {
    Certificate status = Certificate::Inconclusive;
    mpq_class width;                 // largest box width at the final comparison
    std::string detail;
    std::vector<std::string> order;  // labels in increasing order, e.g. "x5,1"
    std::vector<std::pair<std::string, std::pair<mpq_class, mpq_class>>> boxes;
};

// Pure comparison of already isolated, sorted boxes. QuasiBelow/QuasiAbove
// are the full chains over Q (n zeros), P_n (n) and P_{n-1} (n-1); PartialInner
// asks for exactly one Q zero in each gap of P_{n-1} (n_roots is ignored).
// Overlapping boxes from different sets give Inconclusive.
InterlaceResult interlace_check(const std::vector<RootBox>& q_roots, const std::vector<RootBox>& n_roots,
                                const std::vector<RootBox>& n1_roots, InterlaceVariant pattern);

// Exact points placed into a chain.
struct ChainPoint {
    enum class Pos { Front, AfterFirst, BeforeLast, End };
    std::string label;
    mpq_class value;
    Pos pos = Pos::Front;
};

// Isolates, refines to `width`, then keeps halving overlapping boxes until
// all items are disjoint (cap 2^-256). A shared zero (exact gcd test) refutes.
InterlaceResult certify_interlace(const Poly& q, const Poly& pn, const Poly& pn1, InterlaceVariant pattern,
                                  const std::vector<ChainPoint>& points, const mpq_class& width);

struct PartialInterlace {
    Scalar C_n, b_n;      // C_n from the base three-term recurrence, b_n = sigma_2
    int sign_b_minus_C = 0; // criterion: > 0 predicts the interlacing
    InterlaceResult pattern;
    bool agree() const { return (sign_b_minus_C > 0) == (pattern.status == Certificate::Certified); }
};
// Entry must have depth 2.
PartialInterlace partial_interlace_check(const FamilySpec& base, const CatalogEntry& entry, unsigned n,
                                         const mpq_class& width);

enum class ClaimVerdict { Pass, Fail, Inconclusive, Skipped, Error };
const char* to_string(ClaimVerdict v);

struct Claim {
    std::string id;
    std::string source_tag;
    ClaimVerdict verdict = ClaimVerdict::Error;
    std::vector<std::pair<std::string, std::string>> witness;
};

struct SuiteOptions {
    mpq_class width = mpq_class(1, 1000000000000UL);
    unsigned jobs = 1;
};

struct SuiteReport {
    FamilySpec base;
    unsigned n = 0;
    std::vector<Claim> claims; // sorted by id
    // 0 all pass/skipped, 1 any fail or error, 3 otherwise inconclusive
    int exit_code() const;
    const Claim* find(const std::string& id) const;
};

// Runs every claim applicable to the family. Throws NotOrthogonal unless the
// base is Orthogonal; per-claim errors are recorded, not thrown.
SuiteReport theorem_suite(const FamilySpec& base, unsigned n, const SuiteOptions& opt = {});
std::string suite_report_json(const SuiteReport& r);

// Instances satisfying the claims' hypotheses, one or more per family.
std::vector<FamilySpec> suite_instances(FamilyId id);
bool has_suite(FamilyId id);

} // namespace qortho
