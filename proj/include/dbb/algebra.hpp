#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dbb {

/// Closure length of an unreachable pair; absorbing for every path algebra.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

using LengthFn = std::function<double(double, double)>;

/// Shortest-path algebra on distances: paths are aggregated with min and a
/// path's length is the left fold of `extend` over its edge weights.
///
/// `extend` must be commutative, associative, monotone, have 0 as identity and
/// never shrink its arguments; kUnreachable is absorbing regardless of the
/// user-supplied function.
class PathAlgebra {
public:
    enum class Kind { Metric, Ultrametric, Custom };

    static PathAlgebra metric();
    static PathAlgebra ultrametric();
    static PathAlgebra custom(std::string name, LengthFn length);

    const std::string& name() const noexcept { return name_; }
    Kind kind() const noexcept { return kind_; }

    double extend(double a, double b) const {
        switch (kind_) {
        case Kind::Metric: return a + b;
        case Kind::Ultrametric: return a < b ? b : a;
        case Kind::Custom: break;
        }
        if (a == kUnreachable || b == kUnreachable) {
            return kUnreachable;
        }
        return length_(a, b);
    }

    // f is fixed to min for shortest-path closures.
    static double aggregate(double a, double b) noexcept { return b < a ? b : a; }

private:
    PathAlgebra(std::string name, Kind kind, LengthFn length)
        : name_(std::move(name)), kind_(kind), length_(std::move(length)) {}

    std::string name_;
    Kind kind_;
    LengthFn length_;
};

inline double g_extend(const PathAlgebra& alg, double a, double b) { return alg.extend(a, b); }

struct LawViolation {
    std::string law;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::string detail;
};

struct LawReport {
    std::size_t samples = 0;
    std::optional<LawViolation> violation;

    bool lawful() const noexcept { return !violation.has_value(); }
};

/// Spot-checks the algebra laws on random samples and returns the first
/// counterexample found. Deterministic for a given seed.
LawReport check_algebra_laws(const PathAlgebra& alg, std::size_t samples,
                             std::uint64_t seed = 0x5eed);

/// t-conorm / t-norm pair acting on proximities in [0, 1].
struct ProximityAlgebra {
    std::string name;
    std::function<double(double, double)> conorm;
    std::function<double(double, double)> norm;
};

/// The proximity algebra isomorphic to `alg` under d = 1/p - 1: the conorm is
/// max and the norm is phi^-1(g(phi(p), phi(q))).
ProximityAlgebra conjugate_proximity_algebra(const PathAlgebra& alg);

/// Named algebras available to the CLI. Metric and ultrametric are always
/// present; further entries are law-checked when added.
class AlgebraRegistry {
public:
    static constexpr std::size_t kRegistrationSamples = 10'000;

    AlgebraRegistry();

    /// Throws Error(UnlawfulAlgebra) with the witness when the check fails.
    const PathAlgebra& add(std::string name, LengthFn length);
    /// Throws Error(UnknownMeasure).
    const PathAlgebra& get(const std::string& name) const;
    bool contains(const std::string& name) const { return algebras_.count(name) != 0; }
    std::vector<std::string> names() const;

private:
    std::map<std::string, PathAlgebra> algebras_;
};

} // namespace dbb
