#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ET14_CLI_PATH;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "et14_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("generate emits the closure coefficients") {
    const fs::path out = work_dir() / "gen.jsonl";
    CHECK(run("generate --order 3 --psi 'mu^4 * lam^-1' --out " + out.string()) == 0);
    const std::string rep = slurp(out);
    // the ten second-order h-coefficient keys
    for (const char* key : {"(0,0,0)", "(0,1,0)", "(2,0,0)", "(1,0,1)", "(0,2,0)", "(0,0,2)",
                            "(2,1,0)", "(1,1,1)", "(0,3,0)", "(0,1,2)"})
        CHECK(rep.find("\"h-coeff\",\"key\":\"" + std::string(key)) != std::string::npos);
    CHECK(rep.find("\"label\"") != std::string::npos);
}

TEST_CASE("verify passes on a sound closure and is seed-deterministic") {
    const fs::path free = work_dir() / "free.json";
    write_file(free, R"({"seeds": {"1": "lam^-1"}, "consts": {"0,2": "1/2"}})");
    const fs::path a = work_dir() / "a.jsonl";
    const fs::path b = work_dir() / "b.jsonl";
    const std::string common =
        "verify --order 3 --psi 'mu^4 * lam^-1' --free " + free.string() + " --seed 777 --out ";
    CHECK(run(common + a.string()) == 0);
    CHECK(run(common + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("\"status\":\"fail\"") == std::string::npos);
}

TEST_CASE("verify flags a tampered table with the recursion label") {
    const fs::path out = work_dir() / "tampered.jsonl";
    CHECK(run("verify --order 3 --psi 'mu^4 * lam^-1' --tamper 1,1 --out " + out.string()) == 1);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"id\":\"eq-17.1\",\"status\":\"fail\"") != std::string::npos);
}

TEST_CASE("closure2 evaluates the reference gas") {
    const fs::path mat = work_dir() / "mat.txt";
    write_file(mat,
               "param c_v = 5/2\n"
               "p = rho * T\n"
               "epsilon = c_v * T\n"
               "phi001 = 7 * rho * T^2\n"
               "phi011 = -27 * rho * T^3\n");
    const fs::path states = work_dir() / "states.json";
    write_file(states,
               R"([{"rho":"1","T":"1","pi":"1","q":["1","0","0"],)"
               R"("fdev":["0","0","0","0","0","0"]}])");
    const fs::path out = work_dir() / "closure2.jsonl";
    CHECK(run("closure2 --material " + mat.string() + " --states " + states.string() +
              " --out " + out.string()) == 0);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"h2\":\"-2/15\"") != std::string::npos);
    CHECK(rep.find("\"h4\":\"-7\"") != std::string::npos);
    CHECK(rep.find("\"K\":\"4/7\"") != std::string::npos);
    CHECK(rep.find("\"hk\":[\"5/7\",\"0\",\"0\"]") != std::string::npos);

    // the monatomic gas is degenerate: reported, nonzero exit, no crash
    const fs::path mono = work_dir() / "mono.txt";
    write_file(mono,
               "p = rho * T\n"
               "epsilon = 3/2 * T\n"
               "phi001 = 5 * rho * T^2\n"
               "phi011 = -21 * rho * T^3\n");
    const fs::path out2 = work_dir() / "mono.jsonl";
    CHECK(run("closure2 --material " + mono.string() + " --states " + states.string() +
              " --out " + out2.string()) == 1);
    CHECK(slurp(out2).find("SingularState") != std::string::npos);
}

TEST_CASE("transform round-trips") {
    const fs::path out = work_dir() / "transform.jsonl";
    CHECK(run("transform --velocity 0,0,0 --moments 2,0,0,0,1,0,0,1,0,1,6,0,0,0 "
              "--lagrange 1,0,0,0,1,0,0,1,0,1,2,0,0,0 --out " +
              out.string()) == 0);
    const std::string rep = slurp(out);
    // identity at zero velocity
    CHECK(rep.find("\"recomposed\":[\"2\",\"0\",\"0\",\"0\",\"1\",\"0\",\"0\",\"1\",\"0\","
                   "\"1\",\"6\",\"0\",\"0\",\"0\"]") != std::string::npos);
    CHECK(rep.find("\"status\":\"fail\"") == std::string::npos);

    CHECK(run("transform --velocity 1,-2,1/3 --lagrange 1,2,3,4,5,6,7,8,9,10,11,12,13,14 "
              "--out " + (work_dir() / "t2.jsonl").string()) == 0);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(run("generate --order 3 --psi 'mu^4 $ lam'") == 2);
    CHECK(run("closure2 --material /nonexistent --states /nonexistent") == 2);
}
