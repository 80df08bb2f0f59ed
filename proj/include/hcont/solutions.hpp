#pragma once

#include "hcont/error.hpp"
#include "hcont/polynomial.hpp"
#include "hcont/scalar.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcont {

enum class SolutionStatus { Regular, Singular, AtInfinity, Failed };

std::string_view toString(SolutionStatus s);
SolutionStatus solutionStatusFromString(std::string_view s);

/// Inverse condition numbers below this mark a solution as singular.
inline constexpr double kSingularThreshold = 1e-8;

/// Default endpoint clustering tolerance, relative to max(1, ||x||_inf).
inline constexpr double kDefaultClusterTol = 1e-6;

/// One numerical solution together with its diagnostics.
struct SolutionPoint {
    std::vector<Complex> coordinates;
    double t = 1.0;   ///< tracking parameter value at which the point was produced
    double err = 0.0; ///< magnitude of the last Newton update
    double rco = 1.0; ///< inverse condition estimate of the Jacobian
    double res = 0.0; ///< residual ||f(x)||_inf
    SolutionStatus status = SolutionStatus::Regular;
    int multiplicity = 1;

    /// Coordinates at precisionBits after refinement, empty otherwise.
    std::vector<BigComplex> precise;
    long precisionBits = 53;

    bool isFinite() const { return status == SolutionStatus::Regular || status == SolutionStatus::Singular; }
};

struct RefinementSettings {
    long precisionBits = 256;
    int maxIterations = 30;
    /// Stop early once the residual drops below this value (0 disables).
    double targetResidual = 0.0;
};

class RefinementDivergedError : public Error {
public:
    RefinementDivergedError(const std::string& what, SolutionPoint original)
        : Error(what), original_(std::move(original)) {}

    const SolutionPoint& original() const noexcept { return original_; }

private:
    SolutionPoint original_;
};

/// Newton's method at cfg.precisionBits. Exact (rational) coefficients are
/// re-rounded at that precision. Iterates until the update norm drops below
/// 2^(-precisionBits/2) or maxIterations is reached. When errHistory is
/// given, the norm of every update is appended to it.
SolutionPoint newtonRefine(const PolySystem& s, const SolutionPoint& p, const RefinementSettings& cfg,
                           std::vector<double>* errHistory = nullptr);

/// Points whose k-th coordinate has magnitude at most tol, in input order.
std::vector<SolutionPoint> zeroFilter(std::span<const SolutionPoint> points, std::size_t k, double tol);

/// Points whose k-th coordinate has magnitude above tol, in input order.
std::vector<SolutionPoint> nonZeroFilter(std::span<const SolutionPoint> points, std::size_t k, double tol);

/// Greedy clustering under the infinity norm. Points are visited by
/// increasing residual; a point joins the first cluster whose representative
/// lies within clusterTol * max(1, ||rep||_inf), otherwise it starts a new
/// cluster. Representatives carry the summed multiplicity of their cluster.
std::vector<SolutionPoint> deduplicate(std::span<const SolutionPoint> points, double clusterTol = kDefaultClusterTol);

/// Solution JSON: an array of objects with fields t, coordinates ([re, im]
/// pairs), err, rco, res, status, multiplicity.
std::string solutionsToJson(std::span<const SolutionPoint> points);
std::vector<SolutionPoint> solutionsFromJson(std::string_view json);

/// Formats a double with 17 significant digits as a JSON number (null when
/// not finite).
std::string jsonNumber(double v);

} // namespace hcont
