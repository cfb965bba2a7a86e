// Walks one instance through the library: exact minimum over N, then the
// constructions that turn a signed integer basis into bases over N.

#include <iostream>

#include "addbasis/addbasis.hpp"

int main() {
  using addbasis::ElementSet;

  const auto family = addbasis::gen_power_family(2);
  std::cout << "A = " << family.targets << "\n";
  std::cout << "C = " << family.witness << " covers A over Z: " << std::boolalpha
            << addbasis::is_k_basis(family.witness, family.targets, 2).covered << "\n";

  const auto exact = addbasis::ell_over_domain(family.targets, 2, addbasis::Domain::NaturalNumbers);
  std::cout << "minimum 2-basis over N: " << exact.witness << " (size " << exact.optimal_size
            << (exact.exact ? ", proven" : ", window only") << ")\n";
  for (const auto& [target, cert] : exact.certificates) {
    std::cout << "  " << target << " =";
    for (const auto& part : cert.parts) std::cout << " " << part;
    std::cout << "\n";
  }

  const ElementSet dyadic = addbasis::dyadic_two_basis(family.witness);
  std::cout << "dyadic 2-basis from C: " << dyadic << " (size " << dyadic.size() << ")\n";

  const ElementSet triple = addbasis::k_fold_sumset(family.witness, 3).non_negative_part();
  const ElementSet natural = addbasis::natural_k_basis(triple, family.witness, 3);
  std::cout << "3-basis over N for 3C ∩ N (" << triple.size() << " targets): size " << natural.size()
            << ", covers: " << addbasis::is_k_basis(natural, triple, 3).covered << "\n";

  const ElementSet rational{addbasis::Rational::reduce(1, 3), addbasis::Rational::reduce(2, 3)};
  const ElementSet rounded = addbasis::round_to_integer_basis(rational);
  std::cout << "rounding " << rational << " gives " << rounded << "; 3-fold sums " << addbasis::k_fold_sumset(rational, 3)
            << "\n";
  return 0;
}
