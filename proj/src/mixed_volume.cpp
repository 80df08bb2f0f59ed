#include "hcont/mixed_volume.hpp"

#include "hcont/lp.hpp"
#include "hcont/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hcont {

namespace {

constexpr double kLpTol = 1e-9;
constexpr int kMaxRelifts = 5;

using Int128 = __int128;

Int128 checkedMul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in exact determinant");
    return r;
}

Int128 checkedSub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in exact determinant");
    return r;
}

struct DegenerateLift {};

struct Edge {
    std::size_t a;
    std::size_t b;
};

class CellEnumerator {
public:
    CellEnumerator(std::span<const SupportSet> supports, std::vector<std::vector<double>> lifts)
        : supports_(supports), lifts_(std::move(lifts)), n_(supports.size()) {}

    std::vector<MixedCell> run() {
        edges_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t m = supports_[i].points.size();
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t b = a + 1; b < m; ++b) {
                    std::vector<lp::Constraint> eq;
                    std::vector<lp::Constraint> in;
                    appendConstraints(i, {a, b}, eq, in);
                    if (lp::findFeasiblePoint(n_, eq, in, kLpTol)) edges_[i].push_back({a, b});
                }
            }
            if (edges_[i].empty()) return {};
        }
        chooseOrder();
        offsets_.assign(n_ + 1, 0);
        for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + edges_[i].size();
        const std::size_t total = offsets_[n_];
        compat_.assign(total * total, -1);
        chosen_.assign(n_, 0);
        std::vector<lp::Constraint> eq;
        std::vector<lp::Constraint> in;
        search(0, eq, in);
        return std::move(cells_);
    }

private:
    /// Lifted-minimality constraints making edge (a, b) of support i lowest.
    void appendConstraints(std::size_t i, Edge e, std::vector<lp::Constraint>& eq,
                           std::vector<lp::Constraint>& in) const {
        const auto& pts = supports_[i].points;
        const auto& w = lifts_[i];
        lp::Constraint c;
        c.a.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) c.a[k] = pts[e.a][k] - pts[e.b][k];
        c.b = w[e.b] - w[e.a];
        eq.push_back(c);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            if (p == e.a || p == e.b) continue;
            lp::Constraint d;
            d.a.resize(n_);
            for (std::size_t k = 0; k < n_; ++k) d.a[k] = pts[p][k] - pts[e.a][k];
            d.b = w[e.a] - w[p];
            in.push_back(std::move(d));
        }
    }

    /// Starts with the support having the fewest lower edges, then repeatedly
    /// takes the support that shares the most varying coordinates with those
    /// already placed.
    void chooseOrder() {
        std::vector<std::vector<bool>> active(n_, std::vector<bool>(n_, false));
        for (std::size_t i = 0; i < n_; ++i) {
            const auto& pts = supports_[i].points;
            for (std::size_t k = 0; k < n_; ++k)
                for (const auto& p : pts)
                    if (p[k] != pts.front()[k]) active[i][k] = true;
        }
        std::vector<bool> placed(n_, false);
        std::vector<bool> covered(n_, false);
        order_.clear();
        for (std::size_t step = 0; step < n_; ++step) {
            std::size_t best = n_;
            long bestScore = std::numeric_limits<long>::min();
            for (std::size_t i = 0; i < n_; ++i) {
                if (placed[i]) continue;
                long shared = 0;
                for (std::size_t k = 0; k < n_; ++k)
                    if (active[i][k] && covered[k]) ++shared;
                const long score = shared * 1000 - static_cast<long>(edges_[i].size());
                if (score > bestScore) {
                    bestScore = score;
                    best = i;
                }
            }
            placed[best] = true;
            order_.push_back(best);
            for (std::size_t k = 0; k < n_; ++k)
                if (active[best][k]) covered[k] = true;
        }
    }

    bool compatible(std::size_t i, std::size_t ei, std::size_t j, std::size_t ej) {
        const std::size_t total = offsets_[n_];
        const std::size_t gi = offsets_[i] + ei;
        const std::size_t gj = offsets_[j] + ej;
        signed char& slot = compat_[gi * total + gj];
        if (slot < 0) {
            std::vector<lp::Constraint> eq;
            std::vector<lp::Constraint> in;
            appendConstraints(i, edges_[i][ei], eq, in);
            appendConstraints(j, edges_[j][ej], eq, in);
            slot = lp::findFeasiblePoint(n_, eq, in, kLpTol) ? 1 : 0;
            compat_[gj * total + gi] = slot;
        }
        return slot == 1;
    }

    void search(std::size_t depth, std::vector<lp::Constraint>& eq, std::vector<lp::Constraint>& in) {
        const std::size_t i = order_[depth];
        for (std::size_t e = 0; e < edges_[i].size(); ++e) {
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) ok = compatible(order_[d], chosen_[d], i, e);
            if (!ok) continue;
            const std::size_t eqSize = eq.size();
            const std::size_t inSize = in.size();
            appendConstraints(i, edges_[i][e], eq, in);
            chosen_[depth] = e;
            if (depth + 1 == n_) {
                leaf(eq, in);
            } else if (depth == 0 || lp::findFeasiblePoint(n_, eq, in, kLpTol)) {
                search(depth + 1, eq, in);
            }
            eq.resize(eqSize);
            in.resize(inSize);
        }
    }

    void leaf(const std::vector<lp::Constraint>& eq, const std::vector<lp::Constraint>& in) {
        std::vector<std::vector<std::int64_t>> diff(n_, std::vector<std::int64_t>(n_));
        std::vector<std::pair<std::size_t, std::size_t>> edges(n_);
        for (std::size_t d = 0; d < n_; ++d) {
            const std::size_t i = order_[d];
            const Edge e = edges_[i][chosen_[d]];
            edges[i] = {e.a, e.b};
            for (std::size_t k = 0; k < n_; ++k)
                diff[i][k] = supports_[i].points[e.b][k] - supports_[i].points[e.a][k];
        }
        const std::int64_t volume = integerAbsDeterminant(diff);
        if (volume == 0) return;
        auto v = lp::findFeasiblePoint(n_, eq, {}, kLpTol);
        if (!v) return;
        bool isCell = true;
        for (const auto& c : in) {
            double slack = -c.b;
            for (std::size_t k = 0; k < n_; ++k) slack += c.a[k] * (*v)[k];
            const double scale = 1.0 + std::abs(c.b);
            if (std::abs(slack) <= kLpTol * scale) throw DegenerateLift{};
            if (slack < 0.0) isCell = false;
        }
        if (!isCell) return;
        cells_.push_back({std::move(edges), std::move(*v), volume});
    }

    std::span<const SupportSet> supports_;
    std::vector<std::vector<double>> lifts_;
    std::size_t n_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> offsets_;
    std::vector<signed char> compat_;
    std::vector<std::size_t> chosen_;
    std::vector<MixedCell> cells_;
};

std::vector<std::vector<double>> drawLifts(std::span<const SupportSet> supports, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> lifts;
    for (const auto& s : supports) {
        std::vector<double> w;
        for (std::size_t k = 0; k < s.points.size(); ++k) {
            double x = rng.uniform();
            while (x == std::floor(x)) x = rng.uniform();
            w.push_back(x);
        }
        lifts.push_back(std::move(w));
    }
    return lifts;
}

} // namespace

std::int64_t integerAbsDeterminant(std::vector<std::vector<std::int64_t>> input) {
    const std::size_t n = input.size();
    std::vector<std::vector<Int128>> m(n, std::vector<Int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = input[i][j];
    Int128 previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = checkedSub(checkedMul(m[i][j], m[k][k]), checkedMul(m[i][k], m[k][j])) / previous;
            }
        }
        previous = m[k][k];
    }
    Int128 det = n == 0 ? 1 : m[n - 1][n - 1] * sign;
    if (det < 0) det = -det;
    if (det > std::numeric_limits<std::int64_t>::max()) throw Error("determinant exceeds 64 bits");
    return static_cast<std::int64_t>(det);
}

std::vector<SupportSet> extractSupports(const PolySystem& s) {
    std::vector<SupportSet> out;
    out.reserve(s.size());
    for (const auto& p : s.polynomials()) {
        SupportSet set;
        for (const auto& t : p.terms()) set.points.push_back(t.exponents);
        std::sort(set.points.begin(), set.points.end());
        out.push_back(std::move(set));
    }
    return out;
}

MixedSubdivision enumerateMixedCells(std::span<const SupportSet> supports, std::uint64_t seed) {
    const std::size_t n = supports.size();
    for (const auto& s : supports) {
        if (s.points.empty()) throw Error("empty support");
        for (const auto& p : s.points)
            if (p.size() != n) throw Error("number of supports must equal the ambient dimension");
        std::set<ExponentVector> distinct(s.points.begin(), s.points.end());
        if (distinct.size() != s.points.size()) throw Error("support points must be distinct");
    }
    std::uint64_t attemptSeed = seed;
    for (int attempt = 0; attempt <= kMaxRelifts; ++attempt) {
        auto lifts = drawLifts(supports, attemptSeed);
        try {
            CellEnumerator enumerator(supports, lifts);
            MixedSubdivision out;
            out.cells = enumerator.run();
            out.seed = attemptSeed;
            for (std::size_t i = 0; i < n; ++i) out.supports.push_back({supports[i], lifts[i]});
            for (const auto& c : out.cells) out.mixedVolume += static_cast<std::uint64_t>(c.volume);
            return out;
        } catch (const DegenerateLift&) {
            attemptSeed = Rng(attemptSeed).split();
        }
    }
    throw DegenerateLiftingError("lifting stayed degenerate after " + std::to_string(kMaxRelifts) + " retries");
}

std::uint64_t mixedVolume(std::span<const SupportSet> supports, bool stable, std::uint64_t seed) {
    if (!stable) return enumerateMixedCells(supports, seed).mixedVolume;
    std::vector<SupportSet> augmented(supports.begin(), supports.end());
    for (auto& s : augmented) {
        ExponentVector origin(supports.size(), 0);
        if (std::find(s.points.begin(), s.points.end(), origin) == s.points.end()) s.points.push_back(origin);
    }
    return enumerateMixedCells(augmented, seed).mixedVolume;
}

std::uint64_t mixedVolume(const PolySystem& s, bool stable, std::uint64_t seed) {
    if (!s.isSquare()) throw Error("mixed volume needs as many equations as unknowns");
    const auto supports = extractSupports(s);
    return mixedVolume(supports, stable, seed);
}

} // namespace hcont
