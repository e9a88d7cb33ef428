#include "dbb/algebra.hpp"

#include "dbb/error.hpp"
#include "dbb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace dbb {

PathAlgebra PathAlgebra::metric() {
    return PathAlgebra("metric", Kind::Metric, [](double a, double b) { return a + b; });
}

PathAlgebra PathAlgebra::ultrametric() {
    return PathAlgebra("ultrametric", Kind::Ultrametric,
                       [](double a, double b) { return std::max(a, b); });
}

PathAlgebra PathAlgebra::custom(std::string name, LengthFn length) {
    if (!length) {
        throw Error(ErrorCode::InvalidInput, "path algebra '" + name + "' has no length function");
    }
    return PathAlgebra(std::move(name), Kind::Custom, std::move(length));
}

namespace {

constexpr double kLawTolerance = 1e-9;

bool close(double x, double y) {
    if (x == y) {
        return true;
    }
    if (std::isnan(x) || std::isnan(y) || std::isinf(x) || std::isinf(y)) {
        return false;
    }
    return std::abs(x - y) <= kLawTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

double sample_length(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double pick = unit(rng);
    if (pick < 0.1) {
        return 0.0;
    }
    if (pick < 0.3) {
        return std::floor(unit(rng) * 11.0);
    }
    return unit(rng) * 100.0;
}

std::optional<LawViolation> check_sample(const PathAlgebra& alg, double a, double b, double c) {
    auto fail = [&](std::string law, double x, double y) {
        std::ostringstream os;
        os.precision(17);
        os << x << " vs " << y;
        return LawViolation{std::move(law), a, b, c, os.str()};
    };

    const double ab = alg.extend(a, b);
    if (!(ab >= 0.0) || std::isinf(ab)) {
        return fail("closure", ab, ab);
    }
    if (const double ba = alg.extend(b, a); !close(ab, ba)) {
        return fail("commutativity", ab, ba);
    }
    const double left = alg.extend(ab, c);
    const double right = alg.extend(a, alg.extend(b, c));
    if (!close(left, right)) {
        return fail("associativity", left, right);
    }
    if (const double id = alg.extend(a, 0.0); !close(id, a)) {
        return fail("identity", id, a);
    }
    if (alg.extend(a, kUnreachable) != kUnreachable || alg.extend(kUnreachable, a) != kUnreachable) {
        return fail("absorption", alg.extend(a, kUnreachable), kUnreachable);
    }
    // a <= a + c and b <= b + c must not decrease the length.
    const double bigger = alg.extend(a + c, b + c);
    if (bigger < ab && !close(bigger, ab)) {
        return fail("monotonicity", ab, bigger);
    }
    return std::nullopt;
}

} // namespace

LawReport check_algebra_laws(const PathAlgebra& alg, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) {
        throw Error(ErrorCode::InvalidInput, "law check needs at least one sample");
    }
    LawReport report;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const double a = sample_length(rng);
        const double b = sample_length(rng);
        const double c = sample_length(rng);
        ++report.samples;
        if (auto v = check_sample(alg, a, b, c)) {
            report.violation = std::move(v);
            break;
        }
    }
    return report;
}

ProximityAlgebra conjugate_proximity_algebra(const PathAlgebra& alg) {
    ProximityAlgebra out;
    out.name = alg.name();
    out.conorm = [](double p, double q) { return std::max(p, q); };
    switch (alg.kind()) {
    case PathAlgebra::Kind::Ultrametric:
        out.norm = [](double p, double q) { return std::min(p, q); };
        break;
    default:
        out.norm = [alg](double p, double q) {
            return distance_to_proximity(alg.extend(proximity_to_distance(p), proximity_to_distance(q)));
        };
        break;
    }
    return out;
}

AlgebraRegistry::AlgebraRegistry() {
    algebras_.emplace("metric", PathAlgebra::metric());
    algebras_.emplace("ultrametric", PathAlgebra::ultrametric());
}

const PathAlgebra& AlgebraRegistry::add(std::string name, LengthFn length) {
    if (contains(name)) {
        throw Error(ErrorCode::InvalidInput, "measure '" + name + "' is already registered");
    }
    auto alg = PathAlgebra::custom(name, std::move(length));
    auto report = check_algebra_laws(alg, kRegistrationSamples);
    if (!report.lawful()) {
        const auto& v = *report.violation;
        std::ostringstream os;
        os.precision(17);
        os << "measure '" << name << "' violates " << v.law << " at (" << v.a << ", " << v.b
           << ", " << v.c << "): " << v.detail;
        throw Error(ErrorCode::UnlawfulAlgebra, os.str());
    }
    return algebras_.emplace(std::move(name), std::move(alg)).first->second;
}

const PathAlgebra& AlgebraRegistry::get(const std::string& name) const {
    auto it = algebras_.find(name);
    if (it == algebras_.end()) {
        throw Error(ErrorCode::UnknownMeasure, "unknown measure '" + name + "'");
    }
    return it->second;
}

std::vector<std::string> AlgebraRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, alg] : algebras_) {
        out.push_back(name);
    }
    return out;
}

} // namespace dbb
