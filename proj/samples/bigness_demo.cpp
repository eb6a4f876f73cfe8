// Certificates for a few n, then the first n where K - sH - tD has a
// non-negative boundary part.
#include "mgn/mgn.hpp"

#include <iostream>

int main() {
    for (int n : {14, 15, 16, 56}) {
        auto c = mgn::certify(n);
        std::cout << "n=" << n << " s=" << mgn::to_string(c.s) << " t=" << mgn::to_string(c.t) << " "
                  << (c.verdict == mgn::Verdict::Pass ? "pass" : "fail") << " (" << c.binding << " "
                  << mgn::to_string(c.binding_value) << ")\n";
    }

    auto d = mgn::difference_class_omega_form(15);
    std::cout << "K - sH - tD on M_{3,15}, omega form:\n";
    for (const auto& [key, r] : d.known.terms()) std::cout << "  " << key.name() << " " << mgn::to_string(r) << "\n";
}
