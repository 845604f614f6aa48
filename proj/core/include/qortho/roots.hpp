#pragma once

#include <optional>
#include <vector>

#include "qortho/poly.hpp"

namespace qortho {

// Open isolating interval (lo, hi) for one real zero.
// sign_lo/sign_hi are signs of the squarefree part, so they always differ.
struct RootBox {
    mpq_class lo, hi;
    int sign_lo = 0, sign_hi = 0;
    unsigned multiplicity = 1;

    mpq_class width() const { return hi - lo; }
    mpq_class midpoint() const { return (lo + hi) / 2; }
};

// nullopt stands for -inf on the left and +inf on the right
using Bound = std::optional<mpq_class>;

// Sturm sequence of a squarefree real polynomial.
class SturmChain {
public:
    explicit SturmChain(const std::vector<mpq_class>& squarefree);
    int variations_at(const mpq_class& x) const;
    int variations_at_minus_inf() const;
    int variations_at_plus_inf() const;
    // distinct roots in (lo, hi); endpoints must not be roots
    int count(const Bound& lo, const Bound& hi) const;
    const std::vector<mpq_class>& poly() const { return seq_.front(); }

private:
    std::vector<std::vector<mpq_class>> seq_;
};

// Real polynomial carrying the real zeros of p: p itself when real,
// gcd(Re p, Im p) otherwise.
std::vector<mpq_class> real_zero_carrier(const Poly& p);
std::vector<mpq_class> squarefree_part(const std::vector<mpq_class>& p);
int sign_at(const std::vector<mpq_class>& p, const mpq_class& x);
mpq_class eval_at(const std::vector<mpq_class>& p, const mpq_class& x);

std::vector<RootBox> sturm_isolate(const Poly& p);
RootBox refine_root(const Poly& p, const RootBox& box, const mpq_class& target_width);
RootBox refine_root_sq(const std::vector<mpq_class>& squarefree, const RootBox& box, const mpq_class& target_width);

struct RootCount {
    int count = 0;
    bool perturbed = false; // an endpoint was a root and got shifted inward
    Bound lo_used, hi_used;
};
RootCount count_roots_in(const Poly& p, const Bound& lo, const Bound& hi);

} // namespace qortho
