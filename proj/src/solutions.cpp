#include "hcont/solutions.hpp"

#include "hcont/linalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace hcont {

std::string_view toString(SolutionStatus s) {
    switch (s) {
    case SolutionStatus::Regular: return "regular";
    case SolutionStatus::Singular: return "singular";
    case SolutionStatus::AtInfinity: return "atInfinity";
    case SolutionStatus::Failed: return "failed";
    }
    return "failed";
}

SolutionStatus solutionStatusFromString(std::string_view s) {
    if (s == "regular") return SolutionStatus::Regular;
    if (s == "singular") return SolutionStatus::Singular;
    if (s == "atInfinity") return SolutionStatus::AtInfinity;
    if (s == "failed") return SolutionStatus::Failed;
    throw Error("unknown solution status '" + std::string(s) + "'");
}

SolutionPoint newtonRefine(const PolySystem& s, const SolutionPoint& p, const RefinementSettings& cfg,
                           std::vector<double>* errHistory) {
    if (!s.isSquare()) throw Error("newtonRefine needs a square system");
    if (cfg.precisionBits < 53) throw Error("refinement precision must be at least 53 bits");
    if (p.coordinates.size() != s.variableCount()) throw Error("newtonRefine: point has wrong dimension");
    if (!p.isFinite()) throw Error("newtonRefine: only regular or singular points can be refined");

    PrecisionScope scope(cfg.precisionBits);
    std::vector<BigComplex> x;
    x.reserve(s.variableCount());
    if (!p.precise.empty() && p.precise.size() == p.coordinates.size()) {
        x = p.precise;
    } else {
        for (const auto& z : p.coordinates) x.push_back(fromComplex<BigComplex>(z));
    }

    const double stopAt = std::ldexp(1.0, -static_cast<int>(cfg.precisionBits / 2));
    double err = std::numeric_limits<double>::infinity();
    double previous = std::numeric_limits<double>::infinity();
    int growth = 0;
    for (int iter = 0; iter < cfg.maxIterations; ++iter) {
        Matrix<BigComplex> jac;
        std::vector<BigComplex> f = s.evaluate(std::span<const BigComplex>(x), jac);
        for (auto& v : f) v = -v;
        std::vector<BigComplex> dx;
        try {
            dx = LuFactorization<BigComplex>(std::move(jac)).solve(f);
        } catch (const SingularMatrixError&) {
            throw RefinementDivergedError("Jacobian is singular at the working precision", p);
        }
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += dx[k];
        err = normInf(dx);
        if (errHistory) errHistory->push_back(err);
        growth = err > previous ? growth + 1 : 0;
        if (growth >= 3 || !std::isfinite(err)) throw RefinementDivergedError("Newton refinement diverged", p);
        previous = err;
        if (err < stopAt) break;
        if (cfg.targetResidual > 0.0 && normInf(s.evaluate(std::span<const BigComplex>(x))) < cfg.targetResidual) break;
    }

    Matrix<BigComplex> jac;
    const std::vector<BigComplex> f = s.evaluate(std::span<const BigComplex>(x), jac);
    SolutionPoint out = p;
    out.err = err;
    out.res = normInf(f);
    try {
        out.rco = LuFactorization<BigComplex>(std::move(jac)).inverseConditionEstimate();
    } catch (const SingularMatrixError&) {
        out.rco = 0.0;
    }
    out.status = out.rco < kSingularThreshold ? SolutionStatus::Singular : SolutionStatus::Regular;
    out.coordinates.clear();
    for (const auto& z : x) out.coordinates.push_back(toComplex(z));
    out.precise = std::move(x);
    out.precisionBits = cfg.precisionBits;
    return out;
}

namespace {

void checkIndex(std::span<const SolutionPoint> points, std::size_t k) {
    for (const auto& p : points) {
        if (k >= p.coordinates.size()) {
            throw Error("coordinate index " + std::to_string(k) + " out of range for a point with " +
                        std::to_string(p.coordinates.size()) + " coordinates");
        }
    }
}

} // namespace

std::vector<SolutionPoint> zeroFilter(std::span<const SolutionPoint> points, std::size_t k, double tol) {
    checkIndex(points, k);
    std::vector<SolutionPoint> out;
    for (const auto& p : points)
        if (std::abs(p.coordinates[k]) <= tol) out.push_back(p);
    return out;
}

std::vector<SolutionPoint> nonZeroFilter(std::span<const SolutionPoint> points, std::size_t k, double tol) {
    checkIndex(points, k);
    std::vector<SolutionPoint> out;
    for (const auto& p : points)
        if (!(std::abs(p.coordinates[k]) <= tol)) out.push_back(p);
    return out;
}

std::vector<SolutionPoint> deduplicate(std::span<const SolutionPoint> points, double clusterTol) {
    if (!(clusterTol > 0.0)) throw Error("cluster tolerance must be positive");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a].res < points[b].res; });

    std::vector<SolutionPoint> reps;
    for (std::size_t idx : order) {
        const SolutionPoint& p = points[idx];
        bool merged = false;
        for (auto& rep : reps) {
            if (rep.coordinates.size() != p.coordinates.size()) continue;
            double dist = 0.0;
            for (std::size_t k = 0; k < p.coordinates.size(); ++k)
                dist = std::max(dist, std::abs(rep.coordinates[k] - p.coordinates[k]));
            const double scale = std::max(1.0, normInf(rep.coordinates));
            if (dist <= clusterTol * scale) {
                rep.multiplicity += p.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) reps.push_back(p);
    }
    return reps;
}

std::string jsonNumber(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string bigNumber(const BigFloat& v) {
    std::string s = v.toString();
    if (s == "nan" || s == "inf" || s == "-inf") return "null";
    return s;
}

double readNumber(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) return std::stod(j.get<std::string>());
    return j.get<double>();
}

/// DOM builder that keeps the literal text of long floating point numbers,
/// so refined coordinates survive a round trip.
class LiteralKeepingParser : public nlohmann::detail::json_sax_dom_parser<nlohmann::json> {
public:
    using Base = nlohmann::detail::json_sax_dom_parser<nlohmann::json>;
    using Base::Base;

    bool number_float(double value, const std::string& literal) {
        if (literal.size() > 24) {
            std::string copy = literal;
            return Base::string(copy);
        }
        return Base::number_float(value, literal);
    }
};

nlohmann::json parseKeepingLiterals(std::string_view json) {
    nlohmann::json doc;
    LiteralKeepingParser sax(doc);
    nlohmann::json::sax_parse(json.begin(), json.end(), &sax);
    return doc;
}

BigFloat readBig(const nlohmann::json& j, long bits) {
    if (j.is_string()) return BigFloat::fromString(j.get<std::string>(), bits);
    return BigFloat(readNumber(j), bits);
}

} // namespace

std::string solutionsToJson(std::span<const SolutionPoint> points) {
    std::string out = "[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const SolutionPoint& p = points[i];
        out += i ? ",\n  {" : "\n  {";
        out += "\"t\": " + jsonNumber(p.t) + ", \"coordinates\": [";
        const bool precise = p.precise.size() == p.coordinates.size() && !p.precise.empty();
        for (std::size_t k = 0; k < p.coordinates.size(); ++k) {
            out += k ? ", [" : "[";
            if (precise) {
                out += bigNumber(p.precise[k].re) + ", " + bigNumber(p.precise[k].im);
            } else {
                out += jsonNumber(p.coordinates[k].real()) + ", " + jsonNumber(p.coordinates[k].imag());
            }
            out += "]";
        }
        out += "], \"err\": " + jsonNumber(p.err);
        out += ", \"rco\": " + jsonNumber(p.rco);
        out += ", \"res\": " + jsonNumber(p.res);
        out += ", \"status\": \"" + std::string(toString(p.status)) + "\"";
        out += ", \"multiplicity\": " + std::to_string(p.multiplicity);
        if (precise) out += ", \"precisionBits\": " + std::to_string(p.precisionBits);
        out += "}";
    }
    out += points.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<SolutionPoint> solutionsFromJson(std::string_view json) {
    nlohmann::json doc;
    try {
        doc = parseKeepingLiterals(json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid solution JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error("solution JSON must be an array");
    std::vector<SolutionPoint> points;
    for (const auto& item : doc) {
        try {
            SolutionPoint p;
            for (const auto& c : item.at("coordinates")) p.coordinates.emplace_back(readNumber(c.at(0)), readNumber(c.at(1)));
            p.t = readNumber(item.value("t", nlohmann::json(1.0)));
            p.err = readNumber(item.value("err", nlohmann::json(0.0)));
            p.rco = readNumber(item.value("rco", nlohmann::json(1.0)));
            p.res = readNumber(item.value("res", nlohmann::json(0.0)));
            p.status = solutionStatusFromString(item.value("status", std::string("regular")));
            p.multiplicity = item.value("multiplicity", 1);
            if (item.contains("precisionBits")) {
                p.precisionBits = item.at("precisionBits").get<long>();
                if (p.precisionBits < 53) throw Error("precisionBits must be at least 53");
                for (const auto& c : item.at("coordinates"))
                    p.precise.push_back({readBig(c.at(0), p.precisionBits), readBig(c.at(1), p.precisionBits)});
            }
            points.push_back(std::move(p));
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("malformed solution record: ") + e.what());
        }
    }
    return points;
}

} // namespace hcont
