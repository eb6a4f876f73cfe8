// Quasi-reflection reduction and junior elements for a few cyclic actions.
#include "mgn/mgn.hpp"

#include <iostream>

using namespace mgn::reid_tai;

int main() {
    for (const auto& action : {CyclicAction(4, {1, 2, 0}), CyclicAction(6, {1, 2, 0}), CyclicAction(6, {4, 2, 3})}) {
        auto red = reduce_quasi_reflections(action);
        std::cout << action.to_string() << " -> " << red.reduced.to_string() << ": ";
        auto juniors = junior_elements(red.reduced);
        if (juniors.empty()) {
            std::cout << "canonical\n";
            continue;
        }
        std::cout << "junior g^" << juniors.front().power << " of age " << mgn::to_string(juniors.front().age);
        if (auto beta = minimal_relative_vanishing(red.reduced, 0)) std::cout << ", forms lift once b1 >= " << mgn::to_string(*beta) << "*m";
        std::cout << "\n";
    }

    for (const auto& row : table1_catalog())
        std::cout << "(" << row.case_number << ") g=" << row.genus << " age " << mgn::to_string(row.age()) << "\n";
}
