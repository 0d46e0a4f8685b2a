#pragma once

// Witness comparison of two Sigma1 formulas and the Rosser separator built
// from it.

#include "metaprop/arith/arithmetize.hpp"
#include "metaprop/resets/resets.hpp"

namespace metaprop::arith {

class FreeVariableMismatch : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::string unused_name(const std::string& base, const std::set<std::string>& avoid) {
    return avoid.count(base) ? fresh_name(base, avoid) : base;
}

}  // namespace detail

// exists y1 ... exists yk M  becomes  exists w exists y1 <= w ... exists yk <= w M,
// so a single existential remains. A Delta0 formula gets a vacuous one.
inline FormulaPtr pack(const FormulaPtr& f) {
    if (classify(f) == FormulaClass::other)
        throw NotSigma1("not a Sigma1 formula: " + print(f));
    auto shape = sigma1_shape(f);
    if (shape.vars.size() == 1)
        return f;
    std::set<std::string> avoid;
    collect_all_vars(f, avoid);
    std::string w = detail::unused_name("w", avoid);
    FormulaPtr m = shape.matrix;
    for (std::size_t k = shape.vars.size(); k-- > 0;)
        m = exists_le(shape.vars[k], var(w), m);
    return exists(w, m);
}

struct WitnessComparison {
    FormulaPtr sigma, sigma_prime;
    std::string x;         // the shared free variable
    std::string y, z;      // bound names used in lt and le
    FormulaPtr phi0, phi1; // packed matrices, free in x and y
    FormulaPtr lt;         // exists y (phi0(y) and forall z <= y not phi1(z))
    FormulaPtr le;         // exists y (phi1(y) and forall z < y not phi0(z))
};

inline WitnessComparison witness_compare(const FormulaPtr& sigma, const FormulaPtr& sigma_prime) {
    auto fa = free_vars(sigma), fb = free_vars(sigma_prime);
    if (fa.size() != 1 || fa != fb)
        throw FreeVariableMismatch("both formulas need the same single free variable");
    auto pa = pack(sigma), pb = pack(sigma_prime);
    std::set<std::string> avoid;
    collect_all_vars(pa, avoid);
    collect_all_vars(pb, avoid);
    WitnessComparison wc{sigma, sigma_prime, *fa.begin(), "", "", nullptr, nullptr, nullptr, nullptr};
    wc.y = detail::unused_name("Y", avoid);
    avoid.insert(wc.y);
    wc.z = detail::unused_name("Z", avoid);
    wc.phi0 = substitute(pa->subs[0], pa->name, var(wc.y));
    wc.phi1 = substitute(pb->subs[0], pb->name, var(wc.y));
    auto at_z = [&](const FormulaPtr& f) { return substitute(f, wc.y, var(wc.z)); };
    wc.lt = exists(wc.y, conj(wc.phi0, forall_le(wc.z, var(wc.y), neg(at_z(wc.phi1)))));
    wc.le = exists(wc.y, conj(wc.phi1, forall_lt(wc.z, var(wc.y), neg(at_z(wc.phi0)))));
    return wc;
}

// Certificate that R refutes lt(n): the least phi1 witness m at n comes
// strictly before any phi0 witness. nullopt when there is none below b, or
// when a phi0 witness comes first.
inline std::optional<Certificate> comparison_refute(const WitnessComparison& wc, const Natural& n, const Natural& b) {
    auto concl = neg(substitute(wc.lt, wc.x, numeral(n)));
    const auto& ex = concl->subs[0];
    const auto& phi0 = ex->subs[0]->subs[0];
    const auto& guard = ex->subs[0]->subs[1];
    const auto& phi1 = guard->subs[0]->subs[0];
    const std::string& y = ex->name;
    const std::string& z = guard->name;
    Env env;
    std::optional<Natural> m;
    for (Natural i = 0; i <= b && !m; ++i) {
        env = {{z, i}};
        if (eval_delta0(phi1, env))
            m = i;
    }
    if (!m)
        return std::nullopt;
    for (Natural i = 0; i < *m; ++i) {
        env = {{y, i}};
        if (eval_delta0(phi0, env))
            return std::nullopt;
    }
    detail::Collector c;
    env = {{z, *m}};
    c.justify(phi1, true, env);
    for (Natural i = 0; i < *m; ++i) {
        env = {{y, i}};
        c.justify(phi0, false, env);
    }
    c.keys.insert({Scheme::Ax4, {*m}});
    c.keys.insert({Scheme::Ax5, {*m}});
    return Certificate{concl, Kind::comparison_refutation, {*m}, detail::instances(c.keys)};
}

// psi = lt(sigma, sigma'): R proves psi(n) on A and refutes it on B when
// A = {sigma} and B = {sigma'} are disjoint.
struct RosserSeparator {
    WitnessComparison wc;
    FormulaPtr psi;
};

inline RosserSeparator rosser_separator(const FormulaPtr& sigma, const FormulaPtr& sigma_prime) {
    auto wc = witness_compare(sigma, sigma_prime);
    auto psi = wc.lt;
    return RosserSeparator{std::move(wc), std::move(psi)};
}

// From a pair of one-counter programs; other programs raise NotArithmetizable.
inline RosserSeparator rosser_separator(const resets::DisjointPair& p) {
    return rosser_separator(domain_formula(p.left.index), domain_formula(p.right.index));
}

inline std::optional<Certificate> rosser_prove(const RosserSeparator& r, const Natural& n, const Natural& b) {
    return sigma1_prove(substitute(r.psi, r.wc.x, numeral(n)), b);
}

inline std::optional<Certificate> rosser_refute(const RosserSeparator& r, const Natural& n, const Natural& b) {
    return comparison_refute(r.wc, n, b);
}

}  // namespace metaprop::arith
