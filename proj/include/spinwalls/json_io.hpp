#pragma once

#include "spinwalls/index_theory.hpp"
#include "spinwalls/lattice.hpp"
#include "spinwalls/rational.hpp"
#include "spinwalls/stable_pairs.hpp"
#include "spinwalls/surface.hpp"
#include "spinwalls/walls.hpp"

#include <json.hpp>

namespace spinwalls {

// Field order is part of the output contract, hence ordered_json.
using Json = nlohmann::ordered_json;

/// Integral values as a number, others as [num, den].
Json to_json(const Rational& r);
Json to_json(const LatticeVector& v);
Json to_json(const CoordinateBox& box);
Json to_json(const Signature& s);
Json lattice_info_json(const IntegerLattice& lattice);
Json to_json(const DiracIndex& chi);
Json to_json(const InstantonDimension& d);
Json to_json(const WallClass& w);
Json to_json(const WallEnumeration& e);
Json to_json(const EmptinessCertificate& c);
Json to_json(const SurfaceReport& s);
Json to_json(const Multiplicity& m);
Json to_json(const FlipChain& chain);
Json to_json(const BarlowReport& b);

} // namespace spinwalls
