#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "harmlens/census.hpp"
#include "harmlens/critical_curves.hpp"
#include "harmlens/lensing.hpp"
#include "harmlens/polynomial.hpp"
#include "harmlens/rational.hpp"
#include "harmlens/solver.hpp"
#include "harmlens/verify.hpp"

namespace harmlens {

using Json = nlohmann::json;

// Complex scalars serialize as [re, im]; polynomials as coefficient lists in
// ascending powers. Object keys are emitted sorted, so serialization of
// equal values is byte-identical.

Json to_json(Cx z);
Cx complex_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const HarmonicZero& z);
Json to_json(const SolveReport& report);

Json to_json(const LensConfig& config);
Json to_json(const ImageSet& images);
Json to_json(const RadialBlob& blob);
Json to_json(const ExtendedImageSet& images);
Json to_json(const CurveSet& curves);
Json to_json(const CensusResult& census);
Json to_json(const VerifyReport& report);

// Lens input file: {"gamma": g, "sigma_sign": +-1,
// "masses": [{"m": m, "z": [x, y]}, ...], "source": [x, y]}.
// A mass entry with an "R" key is an extended blob of that support radius;
// either all masses carry "R" or none do.
struct LensInput {
    LensConfig config;
    std::vector<RadialBlob> blobs;
    Cx source{};
    bool extended = false;
};
LensInput lens_input_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// dump(2) with a trailing newline; the single serialization used everywhere
// so byte-comparing outputs is meaningful.
std::string dump_pretty(const Json& j);

}  // namespace harmlens
