#pragma once

#include <utility>
#include <vector>

namespace metaprop::testing {

// Hand-checked truth values in N.
inline const std::vector<std::pair<const char*, bool>>& curated_succ() {
    static const std::vector<std::pair<const char*, bool>> v{
        {"(forall x (not (= (S x) x)))", true},
        {"(exists x (= (S x) 0))", false},
        {"(forall x (or (= x 0) (exists y (= x (S y)))))", true},
        {"(forall x (forall y (imp (= (S x) (S y)) (= x y))))", true},
        {"(exists x (= x (S (S 0))))", true},
        {"(forall x (exists y (= y (S x))))", true},
        {"(exists x (forall y (not (= (S y) x))))", true},
        {"(exists x (and (not (= x 0)) (forall y (not (= (S y) x)))))", false},
        {"(forall x (exists y (= (S y) x)))", false},
        {"(forall x (not (= (S (S (S x))) x)))", true},
        {"(exists x (exists y (and (not (= x y)) (= (S x) (S y)))))", false},
        {"(forall x (forall y (or (= x y) (not (= x y)))))", true},
        {"(exists x (and (= (S x) (S (S (S 0)))) (= x (S (S 0)))))", true},
        {"(exists x (and (not (= x 0)) (and (not (= x (S 0))) (not (= x (S (S 0)))))))", true},
        {"(forall x (or (= x 0) (or (= x (S 0)) (= x (S (S 0))))))", false},
        {"(forall x (exists y (and (not (= y x)) (not (= y (S x))))))", true},
        {"(exists x (forall y (= y x)))", false},
        {"(forall x (forall y (imp (= (S (S x)) y) (not (= y 0)))))", true},
        {"(forall x (forall y (imp (= (S x) y) (not (= x y)))))", true},
        {"(exists x (exists y (= (S (S x)) (S y))))", true},
        {"(forall x (exists y (exists z (and (= (S y) z) (= z (S (S x)))))))", true},
        {"(forall y (imp (not (= y 0)) (exists x (= (S x) y))))", true},
        {"(forall y (imp (not (= y (S 0))) (exists x (= (S (S x)) y))))", false},
        {"(forall y (imp (and (not (= y 0)) (not (= y (S 0)))) (exists x (= (S (S x)) y))))", true},
        {"(= (S (S 0)) (S (S 0)))", true},
        {"(not (= (S 0) 0))", true},
        {"(exists x (exists y (exists z (and (not (= x y)) (and (not (= y z)) (not (= x z)))))))", true},
        {"(forall x (forall y (forall z (or (= x y) (or (= y z) (= x z))))))", false},
        {"(exists x (= (S x) x))", false},
        {"(forall x (exists y (or (= x (S y)) (= x 0))))", true},
    };
    return v;
}

}  // namespace metaprop::testing
