#include "harmlens/io.hpp"

#include <cmath>
#include <fstream>

#include "harmlens/errors.hpp"

namespace harmlens {

namespace {

Json json_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_or_null(Cx z) {
    if (!is_finite(z)) return Json(nullptr);
    return Json::array({z.real(), z.imag()});
}

double number_at(const Json& j, std::size_t k) {
    if (!j.is_array() || j.size() <= k || !j[k].is_number()) {
        throw ParseError("expected a numeric array element");
    }
    return j[k].get<double>();
}

}  // namespace

Json to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

Cx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("complex scalar must be a [re, im] pair");
    }
    return {number_at(j, 0), number_at(j, 1)};
}

Json to_json(const Polynomial& p) {
    Json out = Json::array();
    for (Cx c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be an array of [re, im] pairs");
    std::vector<Cx> coeffs;
    coeffs.reserve(j.size());
    for (const Json& c : j) coeffs.push_back(complex_from_json(c));
    return Polynomial(std::move(coeffs));
}

Json to_json(const Rational& r) {
    return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

Rational rational_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
        throw ParseError("rational function must be {\"num\": [...], \"den\": [...]}");
    }
    return Rational(polynomial_from_json(j["num"]), polynomial_from_json(j["den"]));
}

Json to_json(const HarmonicZero& z) {
    Json out;
    out["location"] = to_json(z.location);
    out["residual"] = z.residual;
    out["r_prime_abs"] = json_or_null(z.r_prime_abs);
    out["jacobian"] = json_or_null(z.jacobian);
    out["orientation"] = to_string(z.orientation);
    out["index"] = z.index.has_value() ? Json(*z.index) : Json(nullptr);
    return out;
}

Json to_json(const SolveReport& report) {
    Json out;
    out["degree_n"] = report.degree_n;
    Json zeros = Json::array();
    for (const HarmonicZero& z : report.zeros) zeros.push_back(to_json(z));
    out["zeros"] = std::move(zeros);
    Json poles = Json::array();
    for (const PoleOrder& p : report.pole_orders) {
        poles.push_back(Json{{"location", to_json(p.location)}, {"order", p.order}});
    }
    out["pole_orders"] = std::move(poles);
    out["n_plus"] = report.n_plus;
    out["n_minus"] = report.n_minus;
    out["n_singular"] = report.n_singular;
    out["pole_order_sum"] = report.pole_order_sum;
    out["bound_5n5_ok"] = report.bound_5n5_ok;
    out["bound_2n2_ok"] = report.bound_2n2_ok;
    out["large_circle_radius"] = report.large_circle_radius;
    out["winding_large_circle"] =
        report.winding_large_circle ? Json(*report.winding_large_circle) : Json(nullptr);
    out["argument_principle_ok"] =
        report.argument_principle_ok ? Json(*report.argument_principle_ok) : Json(nullptr);
    out["perturbation_applied"] =
        report.perturbation_applied ? to_json(*report.perturbation_applied) : Json(nullptr);
    out["candidate_count"] = report.candidate_count;
    return out;
}

Json to_json(const LensConfig& config) {
    Json masses = Json::array();
    for (const PointMass& m : config.masses) {
        masses.push_back(Json{{"m", m.mass}, {"z", to_json(m.position)}});
    }
    return Json{{"gamma", config.gamma},
                {"sigma_sign", config.sigma_sign},
                {"masses", std::move(masses)}};
}

Json to_json(const ImageSet& images) {
    Json out;
    Json list = Json::array();
    for (const HarmonicZero& z : images.images) list.push_back(to_json(z));
    out["images"] = std::move(list);
    out["source"] = to_json(images.source);
    out["n"] = images.n;
    out["bound"] = images.bound;
    out["parity_ok"] = images.parity_ok ? Json(*images.parity_ok) : Json(nullptr);
    out["source_on_caustic"] = images.source_on_caustic;
    out["report"] = to_json(images.report);
    return out;
}

Json to_json(const RadialBlob& blob) {
    return Json{{"center", to_json(blob.center)},
                {"total_mass", blob.mass},
                {"support_radius", blob.support_radius}};
}

Json to_json(const ExtendedImageSet& images) {
    Json out;
    out["point_images"] = to_json(images.point_images);
    Json outside = Json::array();
    for (const HarmonicZero& z : images.outside) outside.push_back(to_json(z));
    out["outside"] = std::move(outside);
    Json inside = Json::array();
    for (const HarmonicZero& z : images.inside_support) inside.push_back(to_json(z));
    out["inside_support"] = std::move(inside);
    Json exclusions = Json::array();
    for (const RadialBlob& b : images.exclusions) exclusions.push_back(to_json(b));
    out["exclusions"] = std::move(exclusions);
    out["bound"] = images.bound;
    return out;
}

Json to_json(const CurveSet& curves) {
    Json out;
    out["bbox"] = Json{{"x_min", curves.bbox.x_min},
                       {"x_max", curves.bbox.x_max},
                       {"y_min", curves.bbox.y_min},
                       {"y_max", curves.bbox.y_max}};
    out["resolution"] = curves.resolution;
    Json polylines = Json::array();
    for (const auto& poly : curves.polylines) {
        Json line = Json::array();
        for (Cx v : poly) line.push_back(point_or_null(v));
        polylines.push_back(std::move(line));
    }
    out["polylines"] = std::move(polylines);
    Json caustics = Json::array();
    for (const auto& caustic : curves.caustics) {
        Json line = Json::array();
        for (Cx v : caustic) line.push_back(point_or_null(v));
        caustics.push_back(std::move(line));
    }
    out["caustics"] = std::move(caustics);
    Json regions = Json::array();
    for (const RegionInfo& region : curves.regions) {
        regions.push_back(Json{{"sample", to_json(region.sample)},
                               {"orientation", to_string(region.orientation)},
                               {"unbounded", region.unbounded},
                               {"cell_count", region.cell_count}});
    }
    out["regions"] = std::move(regions);
    return out;
}

Json to_json(const CensusResult& census) {
    Json out;
    out["seed"] = census.seed;
    Json degrees = Json::array();
    for (const DegreeCensus& d : census.per_degree) {
        Json entry;
        entry["degree"] = d.degree;
        entry["trials"] = d.trials;
        entry["max_zeros"] = d.max_zeros;
        entry["max_n_plus"] = d.max_n_plus;
        entry["zero_bound"] = d.zero_bound();
        entry["preserving_bound"] = d.preserving_bound();
        entry["within_bounds"] = d.within_bounds();
        Json histogram = Json::array();
        for (const auto& [count, trials] : d.zero_histogram) {
            histogram.push_back(Json::array({count, trials}));
        }
        entry["zero_histogram"] = std::move(histogram);
        entry["perturbed_trials"] = d.perturbed_trials;
        entry["singular_trials"] = d.singular_trials;
        Json violations = Json::array();
        for (const ViolationReproducer& v : d.violations) {
            violations.push_back(Json{{"seed", v.seed},
                                      {"degree", v.degree},
                                      {"trial", v.trial},
                                      {"function", to_json(v.function)},
                                      {"zero_count", v.zero_count},
                                      {"n_plus", v.n_plus}});
        }
        entry["violations"] = std::move(violations);
        degrees.push_back(std::move(entry));
    }
    out["degrees"] = std::move(degrees);
    out["all_within_bounds"] = census.all_within_bounds();
    return out;
}

Json to_json(const VerifyReport& report) {
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    }
    return Json{{"checks", std::move(checks)}, {"all_ok", report.all_ok()}};
}

LensInput lens_input_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("lens configuration must be a JSON object");
    LensInput input;
    if (j.contains("gamma")) {
        if (!j["gamma"].is_number()) throw ParseError("gamma must be a number");
        input.config.gamma = j["gamma"].get<double>();
    }
    if (j.contains("sigma_sign")) {
        if (!j["sigma_sign"].is_number_integer()) throw ParseError("sigma_sign must be +1 or -1");
        input.config.sigma_sign = j["sigma_sign"].get<int>();
    }
    if (!j.contains("masses") || !j["masses"].is_array() || j["masses"].empty()) {
        throw ParseError("lens configuration needs a non-empty \"masses\" array");
    }
    std::size_t with_radius = 0;
    for (const Json& entry : j["masses"]) {
        if (!entry.is_object() || !entry.contains("m") || !entry.contains("z") ||
            !entry["m"].is_number()) {
            throw ParseError("each mass must be {\"m\": mass, \"z\": [x, y]}");
        }
        const double m = entry["m"].get<double>();
        const Cx z = complex_from_json(entry["z"]);
        input.config.masses.push_back(PointMass{m, z});
        if (entry.contains("R")) {
            if (!entry["R"].is_number()) throw ParseError("R must be a number");
            input.blobs.push_back(RadialBlob{z, m, entry["R"].get<double>()});
            with_radius += 1;
        }
    }
    if (with_radius != 0 && with_radius != j["masses"].size()) {
        throw ParseError("either every mass carries \"R\" or none does");
    }
    input.extended = with_radius != 0;
    if (j.contains("source")) input.source = complex_from_json(j["source"]);
    return input;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << dump_pretty(j);
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace harmlens
