#pragma once

#include <vector>

#include "adelic/elements.hpp"

namespace adelic {

struct ApproxTarget {
    Place place;
    FieldElement value;
};

// an x with phi_{v1}(x) > 1 and phi_{v2}(x) < 1; v1 != v2
FieldElement separating_element(const NumberField& K, const Place& v1, const Place& v2);

// x^m / (1 + x^m), exact; rejects the pole 1 + x^m = 0
FieldElement zm_sequence(const FieldElement& x, unsigned long m);

// phi_v(x - target) < eps at every listed place, checked exactly before
// returning; throws budget_error if the iteration budget runs out
FieldElement weak_approximation(const NumberField& K, const std::vector<ApproxTarget>& targets,
                                const Rational& eps);

// the independent certificate: exact valuations at finite places, exact
// absolute-value comparisons at archimedean ones
bool weak_approximation_check(const std::vector<ApproxTarget>& targets, const Rational& eps,
                              const FieldElement& x);

}  // namespace adelic
