#include "hcont/decomposition.hpp"
#include "hcont/mixed_volume.hpp"
#include "hcont/parser.hpp"
#include "hcont/solutions.hpp"
#include "hcont/solver.hpp"
#include "hcont/tracker.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace hcont;

struct Common {
    std::uint64_t seed = 0;
    unsigned tasks = 1;
    std::string output;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeOutput(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw Error("cannot write " + c.output);
    out << text;
}

std::uint64_t resolveSeed(std::uint64_t seed) {
    if (seed == 0) {
        std::random_device rd;
        while (seed == 0) seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::cerr << "seed: " << seed << "\n";
    return seed;
}

void addCommon(CLI::App* app, Common& c, bool random) {
    if (random) {
        app->add_option("--seed", c.seed, "random seed (0 draws one from the system entropy source)");
        app->add_option("--tasks", c.tasks, "worker threads for path tracking")->check(CLI::PositiveNumber);
    }
    app->add_option("-o,--output", c.output, "output file (default: standard output)");
}

void reportCounts(const SolveReport& r) {
    std::cerr << "paths " << r.paths << ", finite " << r.finite << ", at infinity " << r.atInfinity << ", failed "
              << r.failed << ", distinct solutions " << r.solutions.size() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial homotopy continuation"};
    app.require_subcommand(1);

    Common common;

    std::string systemPath;
    std::string startKind = "polyhedral";
    auto* solve = app.add_subcommand("solve", "solve a square system");
    solve->add_option("system", systemPath, "system file")->required()->check(CLI::ExistingFile);
    solve->add_option("--start", startKind, "start system")->check(CLI::IsMember({"polyhedral", "total-degree"}));
    addCommon(solve, common, true);

    bool stable = false;
    auto* mixvol = app.add_subcommand("mixvol", "mixed volume of the supports");
    mixvol->add_option("system", systemPath, "system file")->required()->check(CLI::ExistingFile);
    mixvol->add_flag("--stable", stable, "stable mixed volume (supports augmented with the origin)");
    addCommon(mixvol, common, true);

    std::string startSystemPath;
    std::string startPointsPath;
    auto* track = app.add_subcommand("track", "track paths from given start solutions");
    track->add_option("system", systemPath, "target system file")->required()->check(CLI::ExistingFile);
    track->add_option("--start-system", startSystemPath, "start system file")->required()->check(CLI::ExistingFile);
    track->add_option("--start-points", startPointsPath, "start solutions (JSON)")->required()->check(CLI::ExistingFile);
    addCommon(track, common, true);

    std::string solutionsPath;
    long precisionBits = 256;
    auto* refine = app.add_subcommand("refine", "Newton refinement at higher precision");
    refine->add_option("system", systemPath, "system file")->required()->check(CLI::ExistingFile);
    refine->add_option("solutions", solutionsPath, "solutions (JSON)")->required()->check(CLI::ExistingFile);
    refine->add_option("--precision-bits", precisionBits, "working precision in bits")->check(CLI::Range(53L, 1L << 20));
    addCommon(refine, common, false);

    std::size_t index = 0;
    double tol = 1e-10;
    bool zero = false;
    bool nonzero = false;
    auto* filter = app.add_subcommand("filter", "select solutions by the size of one coordinate");
    filter->add_option("solutions", solutionsPath, "solutions (JSON)")->required()->check(CLI::ExistingFile);
    filter->add_option("--index", index, "coordinate index, counted from 0")->required();
    filter->add_option("--tol", tol, "magnitude threshold");
    auto* zeroFlag = filter->add_flag("--zero", zero, "keep points whose coordinate is at most tol");
    auto* nonzeroFlag = filter->add_flag("--nonzero", nonzero, "keep points whose coordinate exceeds tol");
    zeroFlag->excludes(nonzeroFlag);
    addCommon(filter, common, false);

    auto* decompose = app.add_subcommand("decompose", "numerical irreducible decomposition");
    decompose->add_option("system", systemPath, "system file")->required()->check(CLI::ExistingFile);
    addCommon(decompose, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (filter->parsed() && zero == nonzero) {
        std::cerr << "error: filter needs exactly one of --zero or --nonzero\n";
        return 1;
    }

    try {
        if (solve->parsed()) {
            const PolySystem s = parseSystemFile(systemPath);
            SolveSettings cfg;
            cfg.tracker.seed = resolveSeed(common.seed);
            cfg.tasks = common.tasks;
            cfg.start = startKind == "total-degree" ? StartKind::TotalDegree : StartKind::Automatic;
            const SolveReport r = solveSystemDetailed(s, cfg);
            reportCounts(r);
            writeOutput(common, solutionsToJson(r.solutions));
        } else if (mixvol->parsed()) {
            const PolySystem s = parseSystemFile(systemPath);
            const std::uint64_t mv = mixedVolume(s, stable, resolveSeed(common.seed));
            writeOutput(common, std::to_string(mv) + "\n");
        } else if (track->parsed()) {
            const PolySystem f = parseSystemFile(systemPath);
            const PolySystem g = parseSystemFile(startSystemPath);
            const auto starts = solutionsFromJson(readFile(startPointsPath));
            TrackerSettings cfg;
            cfg.seed = resolveSeed(common.seed);
            const Homotopy h = makeHomotopy(g, f, cfg.seed);
            std::vector<std::vector<Complex>> xs;
            for (const auto& p : starts) xs.push_back(p.coordinates);
            std::vector<SolutionPoint> out;
            for (auto& r : trackPaths(h, xs, cfg, common.tasks)) out.push_back(std::move(r.endpoint));
            writeOutput(common, solutionsToJson(out));
        } else if (refine->parsed()) {
            const PolySystem s = parseSystemFile(systemPath);
            const auto points = solutionsFromJson(readFile(solutionsPath));
            RefinementSettings cfg;
            cfg.precisionBits = precisionBits;
            std::vector<SolutionPoint> out;
            for (std::size_t i = 0; i < points.size(); ++i) {
                try {
                    out.push_back(newtonRefine(s, points[i], cfg));
                } catch (const RefinementDivergedError& e) {
                    std::cerr << "point " << i << ": " << e.what() << "; kept unrefined\n";
                    out.push_back(e.original());
                }
            }
            writeOutput(common, solutionsToJson(out));
        } else if (filter->parsed()) {
            const auto points = solutionsFromJson(readFile(solutionsPath));
            const auto out = zero ? zeroFilter(points, index, tol) : nonZeroFilter(points, index, tol);
            std::cerr << out.size() << " of " << points.size() << " points kept\n";
            writeOutput(common, solutionsToJson(out));
        } else if (decompose->parsed()) {
            const PolySystem s = parseSystemFile(systemPath);
            DecompositionSettings cfg;
            cfg.tasks = common.tasks;
            const NumericalVariety v = numericalIrreducibleDecomposition(s, cfg, resolveSeed(common.seed));
            for (const auto& [d, k] : v.signature()) std::cerr << "component of dimension " << d << ", degree " << k << "\n";
            writeOutput(common, numericalVarietyToJson(v));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
