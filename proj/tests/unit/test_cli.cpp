// End-to-end tests that drive the installed binary through a shell, checking
// outputs, diagnostics, and the exit-code contract (0 frame, 2 not a frame,
// 1 input error).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zpframe/io.hpp"

#include "helpers.hpp"

using namespace zpframe;
namespace fs = std::filesystem;

namespace {

const std::string cli = ZPFRAME_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "zpframe_cli_test";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path dir = work_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string command =
      cli + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::string write_signal(const std::string& name, const Signal& x) {
  const fs::path path = work_dir() / name;
  std::ofstream out(path);
  out << signal_to_json(x).dump();
  return path.string();
}

}  // namespace

TEST_CASE("report: tight delta window exits 0 with A = B = 3") {
  const std::string window = write_signal("delta7.json", Signal::delta(7, 0));
  const auto result = run("report --p 7 --order-m 3 --window " + window);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.out);
  CHECK(j["is_frame"] == true);
  CHECK(j["is_tight"] == true);
  CHECK(std::abs(j["A"].get<double>() - 3.0) < 1e-12);
  CHECK(std::abs(j["B"].get<double>() - 3.0) < 1e-12);
}

TEST_CASE("report: all-ones window is not a frame, exit 2") {
  const std::string window = write_signal("ones7.json", Signal::constant(7, 1.0));
  const auto result = run("report --p 7 --order-m 3 --window " + window);
  CHECK(result.exit_code == 2);
  CHECK(json::parse(result.out)["is_frame"] == false);
}

TEST_CASE("report: non-prime p is an input error, exit 1") {
  const std::string window = write_signal("junk.json", Signal::delta(7, 0));
  const auto result = run("report --p 6 --order-m 1 --window " + window);
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("prime") != std::string::npos);
}

TEST_CASE("report: malformed window file names the problem") {
  const fs::path path = work_dir() / "broken.json";
  {
    std::ofstream out(path);
    out << R"({"p": 7, "re": [1, 0, 0, 0, 0, 0, 0]})";  // im missing
  }
  const auto result = run("report --p 7 --order-m 3 --window " + path.string());
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("\"im\"") != std::string::npos);

  const std::string short_sig = write_signal("short.json", Signal::delta(5, 0));
  const auto mismatch = run("report --p 7 --order-m 3 --window " + short_sig);
  CHECK(mismatch.exit_code == 1);
  CHECK(mismatch.err.find("expected p = 7") != std::string::npos);

  const auto bad_m = run("report --p 7 --order-m 4 --window " + short_sig);
  CHECK(bad_m.exit_code == 1);
  CHECK(bad_m.err.find("divide") != std::string::npos);
}

TEST_CASE("report --verify embeds oracle agreement") {
  const std::string window = write_signal("delta11.json", Signal::delta(11, 0));
  const auto result = run("report --p 11 --order-m 5 --verify --seed 3 --window " + window);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.out);
  REQUIRE(j.contains("verify"));
  CHECK(j["verify"]["spectrum_min_deviation"].get<double>() < 1e-8);
  CHECK(j["verify"]["spectrum_max_deviation"].get<double>() < 1e-8);
  const double naive = j["verify"]["probe_energy_naive"].get<double>();
  const double closed = j["verify"]["probe_energy_closed_form"].get<double>();
  CHECK(std::abs(naive - closed) < 1e-10 * naive);
}

TEST_CASE("coeffs: delta against delta over the full index set") {
  const std::string window = write_signal("delta5.json", Signal::delta(5, 0));
  const auto result =
      run("coeffs --p 5 --full --window " + window + " --signal " + window);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.out);
  REQUIRE(j["entries"].size() == 20);
  for (const auto& entry : j["entries"]) {
    const int64_t k = entry[1].get<int64_t>();
    const double re = entry[2].get<double>();
    const double im = entry[3].get<double>();
    if (k == 0) {
      CHECK(std::abs(re - 1.0) < 1e-12);
    } else {
      CHECK(std::abs(re) < 1e-12);
    }
    CHECK(std::abs(im) < 1e-12);
  }
}

TEST_CASE("coeffs: zero signal gives an all-zero grid") {
  const std::string window = write_signal("delta5b.json", Signal::delta(5, 0));
  const std::string zero = write_signal("zero5.json", Signal::zeros(5));
  const auto result = run("coeffs --p 5 --full --window " + window + " --signal " + zero);
  REQUIRE(result.exit_code == 0);
  for (const auto& entry : json::parse(result.out)["entries"]) {
    CHECK(entry[2].get<double>() == 0.0);
    CHECK(entry[3].get<double>() == 0.0);
  }
}

TEST_CASE("coeffs --verify reports the fourier/direct deviation") {
  const std::string window = write_signal("rand7w.json", test_helpers::random_signal(7, 81));
  const std::string signal = write_signal("rand7x.json", test_helpers::random_signal(7, 82));
  const auto result = run("coeffs --p 7 --order-m 3 --verify --window " + window +
                          " --signal " + signal);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.out);
  REQUIRE(j.contains("verify_max_abs_deviation"));
  CHECK(j["verify_max_abs_deviation"].get<double>() < 1e-10);
}

TEST_CASE("coeffs --format csv emits the m,k,re,im table") {
  const std::string window = write_signal("delta5c.json", Signal::delta(5, 0));
  const auto result = run("coeffs --p 5 --full --format csv --window " + window +
                          " --signal " + window);
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,k,re,im");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 20);
}

TEST_CASE("group: frozen tables") {
  const auto r7 = run("group --p 7 --order-m 3");
  REQUIRE(r7.exit_code == 0);
  const json j7 = json::parse(r7.out);
  CHECK(j7["order"] == 42);
  CHECK(j7["epsilon"] == 3);
  CHECK(j7["cosets"] == json({{1, 2, 4}, {3, 6, 5}}));

  const auto r5 = run("group --p 5 --full");
  REQUIRE(r5.exit_code == 0);
  const json j5 = json::parse(r5.out);
  REQUIRE(j5["cosets"].size() == 1);
  auto coset = j5["cosets"][0].get<std::vector<int64_t>>();
  std::sort(coset.begin(), coset.end());
  CHECK(coset == std::vector<int64_t>{1, 2, 3, 4});

  const auto r13 = run("group --p 13 --order-m 4");
  REQUIRE(r13.exit_code == 0);
  CHECK(json::parse(r13.out)["subgroup"] == json({1, 5, 8, 12}));
}

TEST_CASE("spectrum command reports eigenvalues") {
  const std::string window = write_signal("delta7s.json", Signal::delta(7, 0));
  const auto result = run("spectrum --p 7 --order-m 3 --window " + window);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.out);
  CHECK(std::abs(j["A"].get<double>() - 3.0) < 1e-12);
  CHECK(std::abs(j["B"].get<double>() - 3.0) < 1e-12);
  CHECK(j["spectrum"]["cosets"].size() == 2);
}

TEST_CASE("dual: residual for a frame window, exit 2 otherwise") {
  const std::string window = write_signal("delta11d.json", Signal::delta(11, 0));
  const auto result = run("dual --p 11 --order-m 5 --seed 17 --window " + window);
  REQUIRE(result.exit_code == 0);
  CHECK(json::parse(result.out)["relative_residual"].get<double>() < 1e-12);

  const std::string ones = write_signal("ones11.json", Signal::constant(11, 1.0));
  const auto bad = run("dual --p 11 --order-m 5 --window " + ones);
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("not a frame") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::string window = write_signal("det7.json", test_helpers::random_signal(7, 99));
  const std::string signal = write_signal("det7x.json", test_helpers::random_signal(7, 98));
  const std::string base = "coeffs --p 7 --full --seed 5 --window " + window +
                           " --signal " + signal;
  const auto first = run(base);
  const auto second = run(base);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);

  const std::string rep = "report --p 7 --order-m 3 --verify --seed 5 --window " + window;
  CHECK(run(rep).out == run(rep).out);

  const std::string dual = "dual --p 7 --order-m 6 --seed 21 --window " + window;
  const auto d1 = run(dual);
  const auto d2 = run(dual);
  REQUIRE(d1.exit_code == 0);
  CHECK(d1.out == d2.out);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const std::string window = write_signal("out7.json", Signal::delta(7, 0));
  const fs::path out_file = work_dir() / "report.json";
  const auto direct = run("report --p 7 --order-m 3 --window " + window);
  const auto filed =
      run("report --p 7 --order-m 3 --window " + window + " --out " + out_file.string());
  REQUIRE(filed.exit_code == 0);
  CHECK(slurp(out_file) == direct.out);
}
