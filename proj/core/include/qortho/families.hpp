#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qortho/poly.hpp"
#include "qortho/roots.hpp"

namespace qortho {

enum class FamilyId {
    BigQJacobi,
    BigQLaguerre,
    QHahn,
    AffineQKrawtchouk,
    QuantumQKrawtchouk,
    LittleQJacobi,
    LittleQLaguerre,
    QLaguerre,
    AlSalamCarlitzI,
    AskeyWilson,
    QRacah,
    Wilson,
    Racah,
    ContinuousHahn,
    QKrawtchouk,
    QMeixner,
    AlSalamCarlitzII,
    Bessel,
};

struct FamilyInfo {
    FamilyId id;
    const char* name; // cli / config spelling, e.g. "big-q-jacobi"
    std::vector<std::string> params; // excluding N
    bool has_q;
    bool finite; // carries N
    Lattice lattice;
};

const FamilyInfo& family_info(FamilyId id);
const std::vector<FamilyInfo>& all_families();
FamilyId family_from_name(std::string_view name);
const char* to_string(FamilyId id);

struct FamilySpec {
    FamilyId id = FamilyId::BigQJacobi;
    std::map<std::string, Scalar> params;
    std::optional<long> N;

    const Scalar& get(const std::string& name) const;
    bool has(const std::string& name) const { return params.count(name) != 0; }
    FamilySpec with(const std::string& name, const Scalar& value) const;
    Lattice lattice() const { return family_info(id).lattice; }
    QBase q() const;

    // Throws InvalidSpec unless names/arity match and q, N are in range.
    void validate() const;
    // "family=...;name=value;..." with params in name order, N last
    std::string str() const;
};

FamilySpec make_spec(FamilyId id, std::initializer_list<std::pair<const std::string, Scalar>> params,
                     std::optional<long> N = std::nullopt);

// key=value lines; '#' starts a comment. Errors carry "<source>:<line>".
FamilySpec parse_spec(std::string_view text, const std::string& source = "<config>");
FamilySpec load_spec(const std::string& path);

// Monic P_n. Gaussian results are rejected unless allow_complex is set.
Poly monic_poly(const FamilySpec& spec, unsigned n, bool allow_complex = false);
std::vector<Poly> monic_basis(const FamilySpec& spec, unsigned nmax, bool allow_complex = false);

enum class RegionStatus { Orthogonal, QuasiCandidate, Invalid };
const char* to_string(RegionStatus s);

struct RegionVerdict {
    RegionStatus status = RegionStatus::Invalid;
    std::vector<std::string> notes; // "ok: ..." or "violated: ..."
};
RegionVerdict region_check(const FamilySpec& spec);

struct Support {
    Bound lo, hi; // nullopt = infinite
    std::string str() const;
};
Support support_interval(const FamilySpec& spec);

// Discrete support: lattice values at x = 0..N and weights with w(0) = 1.
bool has_discrete_weight(FamilyId id);
std::vector<Scalar> lattice_points(const FamilySpec& spec);
std::vector<Scalar> discrete_weights(const FamilySpec& spec);
Scalar discrete_moment(const FamilySpec& spec, const Poly& p, unsigned m);

struct GaussMoment {
    mpq_class value; // midpoint of the enclosure
    mpq_class bound; // |exact - value| <= bound
    unsigned nodes = 0;
};
GaussMoment gauss_moment(const FamilySpec& spec, const Poly& p, unsigned m, const mpq_class& node_width);

} // namespace qortho
