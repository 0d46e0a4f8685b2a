#pragma once

// Certificates for the constructive fragment of R.
//
// A certificate names a conclusion, the least witnesses for its existential
// parts, and the exact set of Ax1-Ax5 instances the replay of its proof
// uses. Replay of a ground Delta0 sentence follows the usual facts about R:
// closed terms are evaluated through Ax1/Ax2, false equations are refuted by
// Ax3, t <= u is proved by the Ax1 instance (u-t) + t = u and refuted by Ax4
// at u together with Ax3 against each of 0..u, and a bounded quantifier over
// x <= t is discharged by Ax4 at t (universal case) or by one Ax1 instance
// and a least instance (existential case).

#include "metaprop/arith/axioms.hpp"
#include "metaprop/logic/classify.hpp"
#include "metaprop/logic/eval.hpp"

#include <set>

namespace metaprop::arith {

enum class Kind { sigma1_truth, comparison_refutation, function_definition, strong_rep };

inline const char* to_string(Kind k) {
    switch (k) {
    case Kind::sigma1_truth: return "sigma1_truth";
    case Kind::comparison_refutation: return "comparison_refutation";
    case Kind::function_definition: return "function_definition";
    case Kind::strong_rep: return "strong_rep";
    }
    return "?";
}

struct Certificate {
    FormulaPtr conclusion;
    Kind kind = Kind::sigma1_truth;
    std::vector<Natural> witnesses;
    std::vector<AxiomInstance> cited_axioms;
};

class NotSigma1 : public Error {
public:
    using Error::Error;
};

// ---- emitting ----------------------------------------------------------------

namespace detail {

// Collects the instances a replay needs. Truth values come from the logic
// evaluator; the checker below decides them on its own.
class Collector {
public:
    std::set<AxiomKey> keys;

    Natural term(const TermPtr& t, const Env& env) {
        const Term* cur = t.get();
        Natural offset = 0;
        while (cur->kind == Term::Kind::App && cur->name == "S") {
            ++offset;
            cur = cur->args[0].get();
        }
        if (cur->kind == Term::Kind::Var)
            return env.at(cur->name) + offset;
        if (cur->name == "0")
            return offset;
        Natural a = term(cur->args[0], env), b = term(cur->args[1], env);
        if (cur->name == "+") {
            keys.insert({Scheme::Ax1, {a, b}});
            return a + b + offset;
        }
        keys.insert({Scheme::Ax2, {a, b}});
        return a * b + offset;
    }

    void justify(const FormulaPtr& f, bool want, Env& env) {
        using K = Formula::Kind;
        switch (f->kind) {
        case K::Eq: {
            Natural a = term(f->terms[0], env), b = term(f->terms[1], env);
            if ((a == b) != want)
                throw Error("replay: equation has the wrong truth value");
            if (!want)
                keys.insert({Scheme::Ax3, {a, b}});
            return;
        }
        case K::Le: {
            Natural a = term(f->terms[0], env), b = term(f->terms[1], env);
            if ((a <= b) != want)
                throw Error("replay: inequality has the wrong truth value");
            if (want) {
                keys.insert({Scheme::Ax1, {b - a, a}});
            } else {
                keys.insert({Scheme::Ax4, {b}});
                for (Natural i = 0; i <= b; ++i)
                    keys.insert({Scheme::Ax3, {a, i}});
            }
            return;
        }
        case K::Not: justify(f->subs[0], !want, env); return;
        case K::And:
        case K::Or: {
            bool conj = f->kind == K::And;
            if (want == conj) {
                justify(f->subs[0], want, env);
                justify(f->subs[1], want, env);
            } else {
                // one side decides: the leftmost with the right value
                bool first = eval_delta0(f->subs[0], env);
                justify(first == want ? f->subs[0] : f->subs[1], want, env);
            }
            return;
        }
        case K::Imp: {
            if (!want) {
                justify(f->subs[0], true, env);
                justify(f->subs[1], false, env);
            } else if (!eval_delta0(f->subs[0], env)) {
                justify(f->subs[0], false, env);
            } else {
                justify(f->subs[1], true, env);
            }
            return;
        }
        case K::ExistsLe:
        case K::ForallLe: {
            Natural bound = term(f->terms[0], env);
            bool ex = f->kind == K::ExistsLe;
            auto saved = env.find(f->name) == env.end() ? std::nullopt : std::optional<Natural>(env[f->name]);
            if (want != ex) {
                // every instance: Ax4 at the bound
                keys.insert({Scheme::Ax4, {bound}});
                for (Natural i = 0; i <= bound; ++i) {
                    env[f->name] = i;
                    justify(f->subs[0], want, env);
                }
            } else {
                // least instance with the wanted value
                Natural i = 0;
                for (;; ++i) {
                    if (i > bound)
                        throw Error("replay: bounded quantifier has the wrong truth value");
                    env[f->name] = i;
                    if (eval_delta0(f->subs[0], env) == want)
                        break;
                }
                keys.insert({Scheme::Ax1, {bound - i, i}});
                justify(f->subs[0], want, env);
            }
            if (saved)
                env[f->name] = *saved;
            else
                env.erase(f->name);
            return;
        }
        default: throw NotDelta0("replay needs a Delta0 formula");
        }
    }
};

inline std::vector<AxiomInstance> instances(const std::set<AxiomKey>& keys) {
    std::vector<AxiomInstance> out;
    for (const auto& [s, p] : keys)
        out.push_back(axiom(s, p));
    return out;
}

}  // namespace detail

// Certificate that R proves the true Sigma1 sentence phi; nullopt when no
// witness is found below b.
inline std::optional<Certificate> sigma1_prove(const FormulaPtr& phi, const Natural& b) {
    if (!is_sentence(phi))
        throw NotSigma1("not a sentence");
    if (classify(phi) == FormulaClass::other)
        throw NotSigma1("not a Sigma1 sentence: " + print(phi));
    auto shape = sigma1_shape(phi);
    auto r = eval_sigma1(phi, b);
    if (!r.found)
        return std::nullopt;
    Env env;
    for (std::size_t k = 0; k < shape.vars.size(); ++k)
        env[shape.vars[k]] = r.witness[k];
    detail::Collector c;
    c.justify(shape.matrix, true, env);
    return Certificate{phi, Kind::sigma1_truth, r.witness, detail::instances(c.keys)};
}

// Certificate for a true Delta0 sentence that is the instance psi(n) of a
// strongly representing formula, or of its negation.
inline Certificate strong_rep_certificate(const FormulaPtr& psi, const std::string& x, const Natural& n) {
    auto inst = substitute(psi, x, numeral(n));
    if (!is_sentence(inst) || !is_delta0(inst))
        throw NotDelta0("strong representation instance must be a Delta0 sentence");
    FormulaPtr concl = eval_delta0(inst) ? inst : neg(inst);
    detail::Collector c;
    Env env;
    c.justify(concl, true, env);
    return Certificate{concl, Kind::strong_rep, {}, detail::instances(c.keys)};
}

// ---- checking ---------------------------------------------------------------

namespace detail {

// Plain arithmetic, used only to pick branches and to confirm that
// witnesses are least. Never consults the certificate.
inline std::optional<Natural> meta_term(const TermPtr& t, const std::map<std::string, Natural>& env) {
    Natural off = 0;
    const Term* cur = t.get();
    while (cur->kind == Term::Kind::App && cur->name == "S" && cur->args.size() == 1) {
        ++off;
        cur = cur->args[0].get();
    }
    if (cur->kind == Term::Kind::Var) {
        auto it = env.find(cur->name);
        if (it == env.end())
            return std::nullopt;
        return it->second + off;
    }
    if (cur->name == "0" && cur->args.empty())
        return off;
    if (cur->args.size() != 2 || (cur->name != "+" && cur->name != "*"))
        return std::nullopt;
    auto a = meta_term(cur->args[0], env), b = meta_term(cur->args[1], env);
    if (!a || !b)
        return std::nullopt;
    Natural v = cur->name == "+" ? Natural(*a + *b) : Natural(*a * *b);
    return v + off;
}

inline std::optional<bool> meta_truth(const FormulaPtr& f, std::map<std::string, Natural>& env) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Eq:
    case K::Le: {
        auto a = meta_term(f->terms[0], env), b = meta_term(f->terms[1], env);
        if (!a || !b)
            return std::nullopt;
        return f->kind == K::Eq ? *a == *b : *a <= *b;
    }
    case K::Not: {
        auto v = meta_truth(f->subs[0], env);
        return v ? std::optional<bool>(!*v) : std::nullopt;
    }
    case K::And:
    case K::Or:
    case K::Imp: {
        auto a = meta_truth(f->subs[0], env), b = meta_truth(f->subs[1], env);
        if (!a || !b)
            return std::nullopt;
        if (f->kind == K::And)
            return *a && *b;
        if (f->kind == K::Or)
            return *a || *b;
        return !*a || *b;
    }
    case K::ExistsLe:
    case K::ForallLe: {
        auto bound = meta_term(f->terms[0], env);
        if (!bound)
            return std::nullopt;
        bool ex = f->kind == K::ExistsLe;
        auto saved = env.count(f->name) ? std::optional<Natural>(env[f->name]) : std::nullopt;
        std::optional<bool> res = !ex;
        for (Natural i = 0; i <= *bound; ++i) {
            env[f->name] = i;
            auto v = meta_truth(f->subs[0], env);
            if (!v) {
                res = std::nullopt;
                break;
            }
            if (*v == ex) {
                res = ex;
                break;
            }
        }
        if (saved)
            env[f->name] = *saved;
        else
            env.erase(f->name);
        return res;
    }
    default: return std::nullopt;
    }
}

inline std::optional<Natural> numeral_value(const TermPtr& t) {
    Natural n = 0;
    const Term* cur = t.get();
    while (cur->kind == Term::Kind::App && cur->name == "S" && cur->args.size() == 1) {
        ++n;
        cur = cur->args[0].get();
    }
    if (cur->kind == Term::Kind::App && cur->name == "0" && cur->args.empty())
        return n;
    return std::nullopt;
}

// Replays a proof (want = true) or refutation (want = false) of a Delta0
// formula under an assignment of numerals, reading closed-term values only
// off the cited Ax1/Ax2 sentences.
class Replayer {
public:
    explicit Replayer(const std::map<AxiomKey, FormulaPtr>& cited) : cited_(cited) {}

    std::set<AxiomKey> used;
    bool ok = true;

    bool run(const FormulaPtr& f, bool want, std::map<std::string, Natural>& env) {
        step(f, want, env);
        return ok;
    }

private:
    const std::map<AxiomKey, FormulaPtr>& cited_;

    bool use(const AxiomKey& k) {
        if (!cited_.count(k))
            return ok = false;
        used.insert(k);
        return true;
    }

    std::optional<Natural> value(const TermPtr& t, const std::map<std::string, Natural>& env) {
        Natural off = 0;
        const Term* cur = t.get();
        while (cur->kind == Term::Kind::App && cur->name == "S" && cur->args.size() == 1) {
            ++off;
            cur = cur->args[0].get();
        }
        if (cur->kind == Term::Kind::Var) {
            auto it = env.find(cur->name);
            if (it == env.end())
                return std::nullopt;
            return it->second + off;
        }
        if (cur->name == "0" && cur->args.empty())
            return off;
        if (cur->args.size() != 2 || (cur->name != "+" && cur->name != "*"))
            return std::nullopt;
        auto a = value(cur->args[0], env), b = value(cur->args[1], env);
        if (!a || !b)
            return std::nullopt;
        AxiomKey k{cur->name == "+" ? Scheme::Ax1 : Scheme::Ax2, {*a, *b}};
        if (!use(k))
            return std::nullopt;
        // the value is whatever the cited sentence says it is
        auto v = numeral_value(cited_.at(k)->terms[1]);
        if (!v)
            return std::nullopt;
        return *v + off;
    }

    void step(const FormulaPtr& f, bool want, std::map<std::string, Natural>& env) {
        using K = Formula::Kind;
        if (!ok)
            return;
        switch (f->kind) {
        case K::Eq:
        case K::Le: {
            auto a = value(f->terms[0], env), b = value(f->terms[1], env);
            if (!a || !b) {
                ok = false;
                return;
            }
            if (f->kind == K::Eq) {
                if ((*a == *b) != want)
                    ok = false;
                else if (!want)
                    use({Scheme::Ax3, {*a, *b}});
            } else if ((*a <= *b) != want) {
                ok = false;
            } else if (want) {
                use({Scheme::Ax1, {*b - *a, *a}});
            } else {
                use({Scheme::Ax4, {*b}});
                for (Natural i = 0; i <= *b && ok; ++i)
                    use({Scheme::Ax3, {*a, i}});
            }
            return;
        }
        case K::Not: step(f->subs[0], !want, env); return;
        case K::And:
        case K::Or:
        case K::Imp: {
            // Imp a b behaves as Or (not a) b
            bool neg_first = f->kind == K::Imp;
            bool conj = f->kind == K::And;
            bool w0 = neg_first ? !want : want;
            if (want == conj) {
                step(f->subs[0], w0, env);
                step(f->subs[1], want, env);
                return;
            }
            auto first = meta_truth(f->subs[0], env);
            if (!first) {
                ok = false;
                return;
            }
            if (*first == w0)
                step(f->subs[0], w0, env);
            else
                step(f->subs[1], want, env);
            return;
        }
        case K::ExistsLe:
        case K::ForallLe: {
            auto bound = value(f->terms[0], env);
            if (!bound) {
                ok = false;
                return;
            }
            bool ex = f->kind == K::ExistsLe;
            auto saved = env.count(f->name) ? std::optional<Natural>(env[f->name]) : std::nullopt;
            if (want != ex) {
                use({Scheme::Ax4, {*bound}});
                for (Natural i = 0; i <= *bound && ok; ++i) {
                    env[f->name] = i;
                    step(f->subs[0], want, env);
                }
            } else {
                bool found = false;
                for (Natural i = 0; i <= *bound; ++i) {
                    env[f->name] = i;
                    auto v = meta_truth(f->subs[0], env);
                    if (!v)
                        break;
                    if (*v == want) {
                        use({Scheme::Ax1, {*bound - i, i}});
                        step(f->subs[0], want, env);
                        found = true;
                        break;
                    }
                }
                if (!found)
                    ok = false;
            }
            if (saved)
                env[f->name] = *saved;
            else
                env.erase(f->name);
            return;
        }
        default: ok = false; return;
        }
    }
};

// Leading unbounded existential block and its matrix, independent of classify.
inline std::pair<std::vector<std::string>, FormulaPtr> split_block(FormulaPtr f) {
    std::vector<std::string> vs;
    while (f->kind == Formula::Kind::Exists) {
        vs.push_back(f->name);
        f = f->subs[0];
    }
    return {vs, f};
}

// Tuples before w in the sigma1 search order: by largest component, then lexicographic.
inline bool tuple_before(const std::vector<Natural>& a, const std::vector<Natural>& w) {
    Natural ma = *std::max_element(a.begin(), a.end()), mw = *std::max_element(w.begin(), w.end());
    if (ma != mw)
        return ma < mw;
    return a < w;
}

inline bool least_tuple(const std::vector<std::string>& vs, const FormulaPtr& m, const std::vector<Natural>& w) {
    if (vs.empty())
        return true;
    Natural top = *std::max_element(w.begin(), w.end());
    std::vector<Natural> t(vs.size(), 0);
    std::map<std::string, Natural> env;
    while (true) {
        if (tuple_before(t, w)) {
            for (std::size_t k = 0; k < vs.size(); ++k)
                env[vs[k]] = t[k];
            auto v = meta_truth(m, env);
            if (!v || *v)
                return false;
        }
        std::size_t k = vs.size();
        while (k > 0) {
            --k;
            if (t[k] < top) {
                ++t[k];
                break;
            }
            t[k] = 0;
            if (k == 0)
                return true;
        }
    }
}

}  // namespace detail

// True iff the witnesses are the least ones and the cited instances are
// well formed and exactly those the replay of the conclusion's proof uses.
inline bool check_certificate(const Certificate& c) {
    using K = Formula::Kind;
    if (!c.conclusion || !is_sentence(c.conclusion))
        return false;
    std::map<AxiomKey, FormulaPtr> cited;
    for (const auto& a : c.cited_axioms) {
        if (a.scheme > Scheme::Ax5 || !well_formed(a))
            return false;
        if (!cited.emplace(key(a), a.sentence).second)
            return false;
    }
    detail::Replayer rp(cited);
    std::map<std::string, Natural> env;

    auto least_single = [&](const FormulaPtr& m, const std::string& v, const Natural& w) {
        for (Natural i = 0; i < w; ++i) {
            env[v] = i;
            auto t = detail::meta_truth(m, env);
            if (!t || *t)
                return false;
        }
        env.erase(v);
        return true;
    };
    // the shared tail of the comparison and definition templates: phi at m,
    // not-phi below m, and the Ax4/Ax5 case split at m
    auto split_at = [&](const FormulaPtr& pos, const std::string& pv, const FormulaPtr& negf, const std::string& nv,
                        const Natural& m) {
        env = {{pv, m}};
        if (!rp.run(pos, true, env))
            return false;
        for (Natural i = 0; i < m; ++i) {
            env = {{nv, i}};
            if (!rp.run(negf, false, env))
                return false;
        }
        for (Scheme s : {Scheme::Ax4, Scheme::Ax5}) {
            AxiomKey k{s, {m}};
            if (!cited.count(k))
                return false;
            rp.used.insert(k);
        }
        return true;
    };

    switch (c.kind) {
    case Kind::sigma1_truth: {
        auto [vs, m] = detail::split_block(c.conclusion);
        if (vs.size() != c.witnesses.size() || !is_delta0(m))
            return false;
        if (!detail::least_tuple(vs, m, c.witnesses))
            return false;
        for (std::size_t k = 0; k < vs.size(); ++k)
            env[vs[k]] = c.witnesses[k];
        if (!rp.run(m, true, env))
            return false;
        break;
    }
    case Kind::strong_rep: {
        if (!c.witnesses.empty() || !is_delta0(c.conclusion))
            return false;
        if (!rp.run(c.conclusion, true, env))
            return false;
        break;
    }
    case Kind::comparison_refutation: {
        // not exists y (phi0(y) and forall z <= y not phi1(z))
        const auto& f = c.conclusion;
        if (f->kind != K::Not || f->subs[0]->kind != K::Exists || c.witnesses.size() != 1)
            return false;
        const auto& ex = f->subs[0];
        const std::string& y = ex->name;
        const auto& body = ex->subs[0];
        if (body->kind != K::And)
            return false;
        const auto& phi0 = body->subs[0];
        const auto& guard = body->subs[1];
        if (guard->kind != K::ForallLe || guard->terms[0]->kind != Term::Kind::Var || guard->terms[0]->name != y ||
            guard->subs[0]->kind != K::Not)
            return false;
        const std::string& z = guard->name;
        const auto& phi1 = guard->subs[0]->subs[0];
        if (!is_delta0(phi0) || !is_delta0(phi1))
            return false;
        const Natural& m = c.witnesses[0];
        if (!least_single(phi1, z, m))
            return false;
        if (!split_at(phi1, z, phi0, y, m))
            return false;
        break;
    }
    case Kind::function_definition: {
        // forall y ((phi(y) -> y = m) and (y = m -> phi(y))),
        // phi(y) = theta(y) and forall z <= y (z = y or not theta(z))
        const auto& f = c.conclusion;
        if (f->kind != K::Forall || c.witnesses.size() != 1)
            return false;
        const std::string& y = f->name;
        const auto& body = f->subs[0];
        if (body->kind != K::And || body->subs[0]->kind != K::Imp || body->subs[1]->kind != K::Imp)
            return false;
        const auto& a = body->subs[0]->subs[0];
        const auto& e1 = body->subs[0]->subs[1];
        const auto& e2 = body->subs[1]->subs[0];
        if (!equal(a, body->subs[1]->subs[1]) || !equal(e1, e2) || e1->kind != K::Eq)
            return false;
        const Natural& m = c.witnesses[0];
        auto rhs = detail::numeral_value(e1->terms[1]);
        if (e1->terms[0]->kind != Term::Kind::Var || e1->terms[0]->name != y || !rhs || *rhs != m)
            return false;
        if (a->kind != K::And)
            return false;
        const auto& theta = a->subs[0];
        const auto& guard = a->subs[1];
        if (guard->kind != K::ForallLe || guard->terms[0]->kind != Term::Kind::Var || guard->terms[0]->name != y)
            return false;
        const std::string& z = guard->name;
        auto expect = disj(eq(var(z), var(y)), neg(substitute(theta, y, var(z))));
        if (!equal(guard->subs[0], expect) || !is_delta0(theta))
            return false;
        if (!least_single(theta, y, m))
            return false;
        if (!split_at(theta, y, theta, y, m))
            return false;
        break;
    }
    }
    std::set<AxiomKey> all;
    for (const auto& [k, _] : cited)
        all.insert(k);
    return rp.used == all;
}

}  // namespace metaprop::arith
