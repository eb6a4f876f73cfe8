// Prints K on M_{3,n}, its κ₁-form and the rigid Δ_{1,∅} part of |mK|.
#include "mgn/mgn.hpp"

#include <iostream>

int main(int argc, char** argv) {
    int n = argc > 1 ? std::stoi(argv[1]) : 3;
    auto k = mgn::canonical_class(3, n);
    std::cout << "K = " << k.to_string() << "\n";

    auto kb = mgn::to_kappa_basis(k);
    std::cout << "K = " << mgn::to_string(kb.kappa1) << "*kappa1 " << kb.rest.to_string() << "\n";

    auto tail = mgn::CoarseBoundaryDivisor::separating(1, mgn::MarkingSet{});
    for (int m = 1; m <= 3; ++m) {
        auto r = mgn::rigid_component(mgn::Rational(m) * k, tail);
        std::cout << "rigid part of |" << m << "K|: " << (r ? mgn::to_string(*r) : "none") << "*" << tail.name() << "\n";
    }
    std::cout << mgn::to_json(k).dump(2) << "\n";
}
