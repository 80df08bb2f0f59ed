#include "testing.hpp"

#include "hcont/solutions.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace hcont;

namespace {

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() / ("hcont_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

/// Runs the CLI with stdout and stderr captured to files; returns the exit code.
int run(const Workspace& ws, const std::string& args) {
    const std::string cmd = std::string("\"") + HCONT_CLI + "\" " + args + " > \"" + ws.path("stdout") + "\" 2> \"" +
                            ws.path("stderr") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("usage errors exit with 1") {
    Workspace ws;
    CHECK(run(ws, "") == 1);
    CHECK(run(ws, "frobnicate") == 1);
    CHECK(run(ws, "solve") == 1);
    CHECK(run(ws, "solve /no/such/file.sys") == 1);
    CHECK(run(ws, "solve " HCONT_DATA_DIR "/minors.sys --start sideways") == 1);
    write(ws.path("s.json"), "[]");
    CHECK(run(ws, "filter " + ws.path("s.json") + " --index 0") == 1);
    CHECK(run(ws, "filter " + ws.path("s.json") + " --index 0 --zero --nonzero") == 1);
}

TEST_CASE("computation errors exit with 2") {
    Workspace ws;
    write(ws.path("bad.sys"), "2\nx^2 +* 1;\ny;");
    CHECK(run(ws, "solve " + ws.path("bad.sys") + " --seed 1") == 2);
    CHECK(read(ws.path("stderr")).find("error:") != std::string::npos);
    CHECK(run(ws, "solve " HCONT_DATA_DIR "/minors.sys --seed 1") == 2);
    write(ws.path("s.json"), "[{\"coordinates\": [[1, 0]]}]");
    CHECK(run(ws, "filter " + ws.path("s.json") + " --index 3 --zero") == 2);
    write(ws.path("broken.json"), "[{");
    CHECK(run(ws, "filter " + ws.path("broken.json") + " --index 0 --zero") == 2);
}

TEST_CASE("solve writes solution JSON and echoes the seed") {
    Workspace ws;
    write(ws.path("q.sys"), "2\nx^2 - 1;\ny - x;");
    REQUIRE(run(ws, "solve " + ws.path("q.sys") + " --seed 123 -o " + ws.path("out.json")) == 0);
    CHECK(read(ws.path("stderr")).find("seed: 123") != std::string::npos);
    CHECK(read(ws.path("stdout")).empty());
    const auto sols = solutionsFromJson(read(ws.path("out.json")));
    CHECK(sols.size() == 2);

    REQUIRE(run(ws, "solve " + ws.path("q.sys")) == 0);
    const std::string err = read(ws.path("stderr"));
    const auto at = err.find("seed: ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stoull(err.substr(at + 6)) != 0);
    CHECK(solutionsFromJson(read(ws.path("stdout"))).size() == 2);
}

TEST_CASE("fixed seeds give byte-identical output") {
    Workspace ws;
    write(ws.path("c.sys"), "3\nx^2 + y*z - 1;\ny^2 - x*z + 2;\nz^2 + x + y - 3;");
    for (const char* start : {"polyhedral", "total-degree"}) {
        const std::string base = "solve " + ws.path("c.sys") + " --seed 77 --start " + start;
        REQUIRE(run(ws, base + " -o " + ws.path("a.json")) == 0);
        REQUIRE(run(ws, base + " -o " + ws.path("b.json")) == 0);
        REQUIRE(run(ws, base + " --tasks 8 -o " + ws.path("c.json")) == 0);
        CHECK(read(ws.path("a.json")) == read(ws.path("b.json")));
        CHECK(read(ws.path("a.json")) == read(ws.path("c.json")));
        CHECK(solutionsFromJson(read(ws.path("a.json"))).size() == 8);
    }
}

TEST_CASE("mixvol") {
    Workspace ws;
    write(ws.path("q.sys"), "2\nx^2 + y^2 - 1;\nx - y;");
    REQUIRE(run(ws, "mixvol " + ws.path("q.sys") + " --seed 3") == 0);
    CHECK(read(ws.path("stdout")) == "2\n");
    write(ws.path("z.sys"), "2\nx*y + x;\nx*y + y;");
    REQUIRE(run(ws, "mixvol " + ws.path("z.sys") + " --seed 3") == 0);
    const int plain = std::stoi(read(ws.path("stdout")));
    REQUIRE(run(ws, "mixvol " + ws.path("z.sys") + " --seed 3 --stable") == 0);
    CHECK(std::stoi(read(ws.path("stdout"))) >= plain);
}

TEST_CASE("filter and refine") {
    Workspace ws;
    write(ws.path("s.json"), R"([{"coordinates": [[1, 0], [1e-25, 0]]}, {"coordinates": [[2, 0], [0.5, 0]]}])");
    REQUIRE(run(ws, "filter " + ws.path("s.json") + " --index 1 --tol 1e-19 --zero") == 0);
    const auto zero = solutionsFromJson(read(ws.path("stdout")));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].coordinates[0] == Complex(1.0));
    REQUIRE(run(ws, "filter " + ws.path("s.json") + " --index 1 --tol 1e-19 --nonzero") == 0);
    CHECK(solutionsFromJson(read(ws.path("stdout"))).size() == 1);

    write(ws.path("r.sys"), "1\nx^2 - 2;");
    write(ws.path("r.json"), R"([{"coordinates": [[1.4142, 0]]}])");
    REQUIRE(run(ws, "refine " + ws.path("r.sys") + " " + ws.path("r.json") + " --precision-bits 300") == 0);
    const std::string out = read(ws.path("stdout"));
    CHECK(out.find("1.41421356237309504880168872420969807856967187537694807317667973799") != std::string::npos);
    const auto refined = solutionsFromJson(out);
    REQUIRE(refined.size() == 1);
    CHECK(refined[0].precisionBits == 300);
    CHECK(refined[0].res < 1e-80);
}

TEST_CASE("track follows given start points") {
    Workspace ws;
    write(ws.path("g.sys"), "1\nx^2 - 1;");
    write(ws.path("f.sys"), "1\nx^2 - 4;");
    write(ws.path("p.json"), R"([{"coordinates": [[1, 0]]}, {"coordinates": [[-1, 0]]}])");
    REQUIRE(run(ws, "track " + ws.path("f.sys") + " --start-system " + ws.path("g.sys") + " --start-points " +
                        ws.path("p.json") + " --seed 5") == 0);
    const auto ends = solutionsFromJson(read(ws.path("stdout")));
    REQUIRE(ends.size() == 2);
    CHECK(std::abs(ends[0].coordinates[0] - 2.0) < 1e-10);
    CHECK(std::abs(ends[1].coordinates[0] + 2.0) < 1e-10);
}

TEST_CASE("decompose") {
    Workspace ws;
    REQUIRE(run(ws, "decompose " HCONT_DATA_DIR "/minors.sys --seed 2") == 0);
    const std::string out = read(ws.path("stdout"));
    CHECK(out.find("\"degree\": 4") != std::string::npos);
    const std::string err = read(ws.path("stderr"));
    CHECK(err.find("component of dimension 5, degree 4") != std::string::npos);
    CHECK(err.find("component of dimension 5, degree 2") != std::string::npos);
}
