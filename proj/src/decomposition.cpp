#include "hcont/decomposition.hpp"

#include "hcont/parser.hpp"
#include "hcont/random.hpp"
#include "hcont/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

namespace hcont {

std::string_view toString(Irreducibility v) {
    switch (v) {
    case Irreducibility::True: return "true";
    case Irreducibility::False: return "false";
    case Irreducibility::Unknown: return "unknown";
    }
    return "unknown";
}

Irreducibility irreducibilityFromString(std::string_view s) {
    if (s == "true") return Irreducibility::True;
    if (s == "false") return Irreducibility::False;
    if (s == "unknown") return Irreducibility::Unknown;
    throw Error("unknown irreducibility flag '" + std::string(s) + "'");
}

std::vector<LaurentPolynomial> SliceSet::polynomials(const std::vector<std::string>& variables) const {
    std::vector<LaurentPolynomial> out;
    for (std::size_t j = 0; j < coefficients.rows(); ++j) {
        const auto row = coefficients.row(j);
        out.push_back(affineLinear(variables, std::span<const Complex>(row.data(), row.size())));
    }
    return out;
}

SliceSet SliceSet::random(std::size_t count, std::size_t variables, std::uint64_t seed) {
    Rng rng(seed);
    SliceSet s{ComplexMatrix(count, variables + 1)};
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t k = 0; k <= variables; ++k) s.coefficients(j, k) = rng.unitComplex();
    return s;
}

SliceSet SliceSet::through(std::span<const Complex> x) const {
    SliceSet s = *this;
    const std::size_t n = coefficients.cols() - 1;
    if (x.size() != n) throw Error("slice set and point have different dimensions");
    for (std::size_t j = 0; j < coefficients.rows(); ++j) {
        Complex c = 0.0;
        for (std::size_t k = 0; k < n; ++k) c -= coefficients(j, k) * x[k];
        s.coefficients(j, n) = c;
    }
    return s;
}

std::vector<LaurentPolynomial> WitnessSet::squaredUp() const {
    std::vector<LaurentPolynomial> out;
    for (std::size_t i = 0; i < randomization.rows(); ++i) {
        const auto row = randomization.row(i);
        out.push_back(linearCombination(equations.polynomials(), std::span<const Complex>(row.data(), row.size())));
    }
    return out;
}

PolySystem WitnessSet::slicedSystem(const SliceSet& s) const {
    auto polys = squaredUp();
    for (auto& p : s.polynomials(equations.variables())) polys.push_back(std::move(p));
    return PolySystem(equations.variables(), std::move(polys));
}

WitnessSet WitnessSet::restrictedTo(std::span<const std::size_t> indices) const {
    WitnessSet w = *this;
    w.points.clear();
    for (auto i : indices) w.points.push_back(points.at(i));
    return w;
}

std::vector<std::pair<std::size_t, std::size_t>> NumericalVariety::signature() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [d, sets] : components)
        for (const auto& w : sets) out.emplace_back(d, w.degree());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

namespace {

std::vector<PathResult> track(const WitnessSet& w, const SliceSet& from, const SliceSet& to,
                              std::span<const std::vector<Complex>> starts, const DecompositionSettings& cfg,
                              std::uint64_t seed) {
    const Homotopy h = makeHomotopy(w.slicedSystem(from), w.slicedSystem(to), seed);
    return trackPaths(h, starts, cfg.tracker, cfg.tasks);
}

std::vector<std::vector<Complex>> coordinatesOf(std::span<const SolutionPoint> points) {
    std::vector<std::vector<Complex>> out;
    for (const auto& p : points) out.push_back(p.coordinates);
    return out;
}

bool close(std::span<const Complex> a, std::span<const Complex> b, double tol) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d <= tol * std::max(1.0, normInf(b));
}

/// Index of the point of `points` matching x, or npos.
std::size_t matchPoint(std::span<const Complex> x, std::span<const SolutionPoint> points, double tol) {
    std::size_t best = static_cast<std::size_t>(-1);
    double bestDistance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!close(x, points[i].coordinates, tol)) continue;
        double d = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - points[i].coordinates[k]));
        if (d < bestDistance) {
            bestDistance = d;
            best = i;
        }
    }
    return best;
}

/// Positions of the witness points with the constant of the first slice
/// shifted by 0, h and 2h.
struct TraceData {
    std::vector<std::vector<Complex>> shifted[3];
};

TraceData traceData(const WitnessSet& w, std::span<const std::size_t> indices, const DecompositionSettings& cfg,
                    std::uint64_t seed) {
    if (w.dimension == 0) throw Error("trace test needs a positive-dimensional witness set");
    TraceData data;
    std::vector<std::vector<Complex>> starts;
    for (auto i : indices) starts.push_back(w.points.at(i).coordinates);
    data.shifted[0] = starts;
    Rng rng(seed);
    const std::size_t n = w.equations.variableCount();
    for (int s = 1; s <= 2; ++s) {
        SliceSet moved = w.slices;
        moved.coefficients(0, n) += Complex(s * cfg.traceStep, 0.0);
        const auto paths = track(w, w.slices, moved, starts, cfg, rng.split());
        for (const auto& p : paths) {
            if (!p.endpoint.isFinite()) throw InconclusiveError("trace test: a path failed");
            data.shifted[s].push_back(p.endpoint.coordinates);
        }
    }
    return data;
}

/// Trace linearity for a block given as positions into the TraceData rows.
bool traceIsLinear(const TraceData& data, std::span<const std::size_t> rows, const DecompositionSettings& cfg) {
    const std::size_t n = data.shifted[0].front().size();
    std::vector<Complex> sums[3];
    double scale = 1.0;
    for (int s = 0; s < 3; ++s) {
        sums[s].assign(n, Complex(0.0));
        for (auto r : rows)
            for (std::size_t k = 0; k < n; ++k) sums[s][k] += data.shifted[s][r][k];
        scale = std::max(scale, normInf(sums[s]));
    }
    double second = 0.0;
    for (std::size_t k = 0; k < n; ++k) second = std::max(second, std::abs(sums[0][k] - 2.0 * sums[1][k] + sums[2][k]));
    return second < cfg.traceTol * scale;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

    std::vector<std::vector<std::size_t>> blocks() {
        std::map<std::size_t, std::vector<std::size_t>> byRoot;
        for (std::size_t i = 0; i < parent_.size(); ++i) byRoot[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [root, members] : byRoot) out.push_back(std::move(members));
        return out;
    }

private:
    std::vector<std::size_t> parent_;
};

std::string complexMatrixJson(const ComplexMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out += j ? ", [" : "[";
            out += jsonNumber(m(i, j).real()) + ", " + jsonNumber(m(i, j).imag()) + "]";
        }
        out += "]";
    }
    return out + "]";
}

ComplexMatrix complexMatrixFromJson(const nlohmann::json& j, std::size_t cols) {
    ComplexMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != cols) throw Error("witness JSON: matrix row has wrong length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = {j[i][k].at(0).get<double>(), j[i][k].at(1).get<double>()};
    }
    return m;
}

} // namespace

WitnessSet witnessSuperset(const PolySystem& s, std::size_t d, const DecompositionSettings& cfg, std::uint64_t seed) {
    const std::size_t n = s.variableCount();
    const std::size_t k = s.size();
    if (d >= n) throw Error("witness set dimension must be below the number of variables");
    Rng rng(seed);
    WitnessSet w;
    w.equations = s;
    w.dimension = d;
    w.slices = SliceSet::random(d, n, rng.split());
    if (k < n - d) {
        w.randomization = ComplexMatrix(0, k);
        return w;
    }
    w.randomization = ComplexMatrix(n - d, k);
    for (std::size_t i = 0; i < n - d; ++i)
        for (std::size_t j = 0; j < k; ++j) w.randomization(i, j) = rng.unitComplex();

    SolveSettings solve;
    solve.tracker = cfg.tracker;
    solve.tracker.seed = rng.split();
    solve.start = StartKind::TotalDegree;
    solve.clusterTol = cfg.clusterTol;
    solve.tasks = cfg.tasks;
    const PolySystem sliced = w.slicedSystem();
    for (const auto& p : solveSystem(sliced, solve)) {
        if (normInf(s.evaluate<Complex>(p.coordinates)) < cfg.junkResidual) w.points.push_back(p);
    }
    return w;
}

std::vector<PathResult> moveSlices(const WitnessSet& w, const SliceSet& target, std::span<const std::vector<Complex>> starts,
                                   const DecompositionSettings& cfg, std::uint64_t seed) {
    return track(w, w.slices, target, starts, cfg, seed);
}

bool membershipTest(std::span<const Complex> x, const WitnessSet& w, const DecompositionSettings& cfg,
                    std::uint64_t seed) {
    if (w.points.empty()) return false;
    if (x.size() != w.equations.variableCount()) throw Error("membership test: point has wrong dimension");
    try {
        if (normInf(w.equations.evaluate<Complex>(x)) > cfg.junkResidual) return false;
    } catch (const EvaluationError&) {
        return false;
    }
    const SliceSet through = w.slices.through(x);
    const auto starts = coordinatesOf(w.points);
    const auto paths = moveSlices(w, through, starts, cfg, seed);
    bool anyFinished = false;
    for (const auto& p : paths) {
        if (!p.endpoint.isFinite()) continue;
        anyFinished = true;
        if (close(p.endpoint.coordinates, x, cfg.clusterTol)) return true;
    }
    if (!anyFinished) throw InconclusiveError("membership test: every path failed");
    return false;
}

bool traceTest(std::span<const std::size_t> block, const WitnessSet& w, const DecompositionSettings& cfg,
               std::uint64_t seed) {
    if (block.empty()) throw Error("trace test needs a nonempty block");
    const TraceData data = traceData(w, block, cfg, seed);
    std::vector<std::size_t> rows(block.size());
    std::iota(rows.begin(), rows.end(), 0);
    return traceIsLinear(data, rows, cfg);
}

std::vector<WitnessSet> monodromyBreakup(const WitnessSet& w, const DecompositionSettings& cfg, std::uint64_t seed) {
    const std::size_t m = w.degree();
    if (m == 0) return {};
    if (m == 1 || w.dimension == 0) {
        std::vector<WitnessSet> out;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t idx[] = {i};
            out.push_back(w.restrictedTo(idx));
            out.back().isIrreducible = Irreducibility::True;
        }
        return out;
    }
    Rng rng(seed);
    const std::size_t n = w.equations.variableCount();
    const auto starts = coordinatesOf(w.points);
    UnionFind uf(m);
    std::optional<TraceData> traces;
    bool certified = false;
    int quiet = 0;
    for (int loop = 0; loop < cfg.maxLoops && !certified; ++loop) {
        const SliceSet l1 = SliceSet::random(w.dimension, n, rng.split());
        const SliceSet l2 = SliceSet::random(w.dimension, n, rng.split());
        const std::uint64_t s1 = rng.split(), s2 = rng.split(), s3 = rng.split();

        auto leg = [&](const SliceSet& from, const SliceSet& to, const std::vector<std::vector<Complex>>& xs,
                       std::uint64_t legSeed) -> std::optional<std::vector<std::vector<Complex>>> {
            const auto paths = track(w, from, to, xs, cfg, legSeed);
            std::vector<std::vector<Complex>> out;
            for (const auto& p : paths) {
                if (p.endpoint.status != SolutionStatus::Regular) return std::nullopt;
                out.push_back(p.endpoint.coordinates);
            }
            return out;
        };
        auto a = leg(w.slices, l1, starts, s1);
        if (!a) continue;
        auto b = leg(l1, l2, *a, s2);
        if (!b) continue;
        auto c = leg(l2, w.slices, *b, s3);
        if (!c) continue;

        std::vector<std::size_t> perm(m);
        std::vector<bool> hit(m, false);
        bool valid = true;
        for (std::size_t i = 0; i < m && valid; ++i) {
            perm[i] = matchPoint((*c)[i], w.points, cfg.clusterTol);
            valid = perm[i] < m && !hit[perm[i]];
            if (valid) hit[perm[i]] = true;
        }
        if (!valid) continue;

        bool merged = false;
        for (std::size_t i = 0; i < m; ++i) merged = uf.unite(i, perm[i]) || merged;
        quiet = merged ? 0 : quiet + 1;
        const auto blocks = uf.blocks();
        if (blocks.size() == 1) {
            certified = true;
        } else if (quiet >= cfg.stableLoops) {
            if (!traces) {
                std::vector<std::size_t> all(m);
                std::iota(all.begin(), all.end(), 0);
                try {
                    traces = traceData(w, all, cfg, rng.split());
                } catch (const InconclusiveError&) {
                    quiet = 0;
                    continue;
                }
            }
            certified = std::all_of(blocks.begin(), blocks.end(),
                                    [&](const auto& blk) { return traceIsLinear(*traces, blk, cfg); });
            quiet = 0;
        }
    }

    auto blocks = uf.blocks();
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
    std::vector<WitnessSet> out;
    for (const auto& blk : blocks) {
        out.push_back(w.restrictedTo(blk));
        out.back().isIrreducible = certified ? Irreducibility::True : Irreducibility::Unknown;
    }
    return out;
}

NumericalVariety numericalIrreducibleDecomposition(const PolySystem& s, const DecompositionSettings& cfg,
                                                   std::uint64_t seed) {
    const std::size_t n = s.variableCount();
    Rng rng(seed);
    NumericalVariety out;
    for (std::size_t d = n; d-- > 0;) {
        const std::uint64_t supersetSeed = rng.split();
        const std::uint64_t breakupSeed = rng.split();
        const std::uint64_t memberSeed = rng.split();
        WitnessSet w = witnessSuperset(s, d, cfg, supersetSeed);
        if (w.points.empty()) continue;

        bool uncertain = false;
        std::vector<SolutionPoint> kept;
        for (const auto& p : w.points) {
            bool junk = false;
            for (const auto& [higher, sets] : out.components) {
                for (const auto& comp : sets) {
                    try {
                        junk = membershipTest(p.coordinates, comp, cfg, memberSeed);
                    } catch (const InconclusiveError&) {
                        uncertain = true;
                    }
                    if (junk) break;
                }
                if (junk) break;
            }
            if (!junk) kept.push_back(p);
        }
        w.points = std::move(kept);
        if (w.points.empty()) continue;

        auto pieces = monodromyBreakup(w, cfg, breakupSeed);
        if (uncertain)
            for (auto& piece : pieces) piece.isIrreducible = Irreducibility::Unknown;
        out.components[d] = std::move(pieces);
    }
    return out;
}

std::string witnessSetToJson(const WitnessSet& w) {
    nlohmann::json eq = w.equations.toString();
    std::string out = "{\"dimension\": " + std::to_string(w.dimension);
    out += ", \"degree\": " + std::to_string(w.degree());
    out += ", \"isIrreducible\": \"" + std::string(toString(w.isIrreducible)) + "\"";
    out += ", \"equations\": " + eq.dump();
    out += ", \"randomization\": " + complexMatrixJson(w.randomization);
    out += ", \"slices\": " + complexMatrixJson(w.slices.coefficients);
    std::string points = solutionsToJson(w.points);
    while (!points.empty() && points.back() == '\n') points.pop_back();
    out += ", \"points\": " + points + "}";
    return out;
}

WitnessSet witnessSetFromJson(std::string_view json) {
    try {
        const auto doc = nlohmann::json::parse(json);
        WitnessSet w;
        w.equations = parseSystem(doc.at("equations").get<std::string>());
        w.dimension = doc.at("dimension").get<std::size_t>();
        w.isIrreducible = irreducibilityFromString(doc.value("isIrreducible", std::string("unknown")));
        w.randomization = complexMatrixFromJson(doc.at("randomization"), w.equations.size());
        w.slices.coefficients = complexMatrixFromJson(doc.at("slices"), w.equations.variableCount() + 1);
        w.points = solutionsFromJson(doc.at("points").dump());
        if (w.slices.dimension() != w.dimension) throw Error("witness JSON: slice count differs from the dimension");
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid witness JSON: ") + e.what());
    }
}

std::string numericalVarietyToJson(const NumericalVariety& v) {
    std::string out = "{\"components\": [";
    bool first = true;
    for (auto it = v.components.rbegin(); it != v.components.rend(); ++it) {
        for (const auto& w : it->second) {
            out += first ? "\n  " : ",\n  ";
            out += witnessSetToJson(w);
            first = false;
        }
    }
    out += first ? "]}\n" : "\n]}\n";
    return out;
}

} // namespace hcont
