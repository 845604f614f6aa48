#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qortho/families.hpp"

namespace qortho {

enum class ShiftAction { DivideByQ, SubtractK, AddK };

struct ParamShift {
    std::string param;
    ShiftAction action = ShiftAction::DivideByQ;
    long k = 1;
};

// Simultaneous parameter shifts, e.g. "alpha/q^2,beta/q" or "a-1,c-1".
struct ShiftSpec {
    std::vector<ParamShift> shifts;

    static ShiftSpec parse(std::string_view text);
    // Throws InvalidSpec on an empty shift, k < 1, or a repeated parameter.
    void validate() const;
    // Same actions with every k multiplied by m.
    ShiftSpec times(long m) const;
    FamilySpec apply(const FamilySpec& base) const;
    std::string str() const;
};

struct CatalogEntry {
    std::string id;
    FamilyId family;
    ShiftSpec shift;
    unsigned depth = 1;
    std::string source_tag;
    // sigma_1..sigma_J at (n, params); sigma_0 = 1 is implied
    std::function<std::vector<Scalar>(long, const FamilySpec&)> tail;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(std::string_view id);

// Parameter instance at which the entry is exercised by tests, the CLI and the suite.
FamilySpec reference_spec(const CatalogEntry& entry);

// sigma_0..sigma_J. Requires n >= J; a vanishing denominator throws Degenerate.
std::vector<Scalar> catalog_coeffs(const CatalogEntry& entry, unsigned n, const FamilySpec& params);

struct VerifyResult {
    bool holds = false;
    Poly residual;
};
// shifted P_n - sum sigma_j base P_{n-j}
VerifyResult verify_coeffs(const FamilySpec& base, const ShiftSpec& shift, unsigned n,
                           const std::vector<Scalar>& sigma);
VerifyResult verify_entry(const CatalogEntry& entry, unsigned n, const FamilySpec& params);

struct DiscoveryResult {
    bool found = false;
    std::vector<Scalar> coeffs; // sigma_0..sigma_J when found
    int offending_index = -1;   // largest i < n-J with a nonzero expansion coefficient
};
DiscoveryResult discover_coeffs(const FamilySpec& base, const ShiftSpec& shift, unsigned n, unsigned J);

// Substitute entries into each other: chain[0] is applied last (outermost).
// The combined shift is the sum of the chain's shifts.
std::vector<Scalar> compose_chain(const std::vector<const CatalogEntry*>& chain, unsigned n, const FamilySpec& params);
std::vector<Scalar> compose_entries(const CatalogEntry& entry, unsigned k, unsigned n, const FamilySpec& params);
ShiftSpec chain_shift(const std::vector<const CatalogEntry*>& chain);

// Shifts that admit no constant-coefficient combination, with their base instances.
struct NegativeControl {
    std::string id;
    FamilySpec base;
    ShiftSpec shift;
};
const std::vector<NegativeControl>& negative_controls();

// JSON audit index: id, family, shift, depth, source_tag per entry.
std::string catalog_manifest_json();

} // namespace qortho
