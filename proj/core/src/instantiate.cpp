#include "quiverks/algebra.hpp"
#include "quiverks/decompose.hpp"
#include "quiverks/fitting.hpp"
#include "quiverks/matrix.hpp"
#include "quiverks/pairing.hpp"
#include "quiverks/poly.hpp"
#include "quiverks/rep.hpp"

namespace qks {

std::string_view certainty_name(Certainty c) noexcept {
  switch (c) {
    case Certainty::Proven:
      return "proven";
    case Certainty::MonteCarlo:
      return "monte-carlo";
    case Certainty::Uncertified:
      return "uncertified";
  }
  return "unknown";
}

template class Matrix<PrimeField>;
template class Matrix<RationalField>;
template class Poly<PrimeField>;
template class Poly<RationalField>;
template class EndAlgebra<PrimeField>;
template class EndAlgebra<RationalField>;
template struct Representation<PrimeField>;
template struct Representation<RationalField>;
template struct Pairing<PrimeField>;
template struct Pairing<RationalField>;

template Decomposition<PrimeField> krull_schmidt(const Representation<PrimeField>&, Rng&, const PathRelations&, bool);
template Decomposition<RationalField> krull_schmidt(const Representation<RationalField>&, Rng&, const PathRelations&,
                                                    bool);
template std::optional<IsoWitness<PrimeField>> is_isomorphic(const Representation<PrimeField>&,
                                                             const Representation<PrimeField>&, Rng&);
template std::optional<IsoWitness<RationalField>> is_isomorphic(const Representation<RationalField>&,
                                                                const Representation<RationalField>&, Rng&);
template FittingSplit<PrimeField> fitting_split(const Representation<PrimeField>&, const Morphism<PrimeField>&);
template PairingDecomposition<PrimeField> orthogonal_decompose(const Pairing<PrimeField>&, Rng&, bool);
template std::optional<IsometryWitness<PrimeField>> isometry_test(const Pairing<PrimeField>&,
                                                                  const Pairing<PrimeField>&, Rng&);
template EndAlgebra<PrimeField> end_via_centralizers(const Representation<PrimeField>&);

}  // namespace qks
