#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = WAVENET_CLI_PATH;
const std::string kData = WAVENET_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() / ("wavenet_cli_" + std::to_string(counter++) + ".log");
  const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  fs::remove(log);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("sweep --inject in").exit_code == 2);          // missing --network
  CHECK(run_cli("gate nosuchgate").exit_code == 2);
  CHECK(run_cli("shor --n 15 --a 11 --mode bogus").exit_code == 2);
  CHECK(run_cli("shor --n 14 --a 3").exit_code == 2);          // invalid instance
  CHECK(run_cli("evolve --cells 4").exit_code == 2);           // too few cells
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("malformed network file exits 2 and leaves no partial output") {
  const fs::path bad = tmp_file("bad_net.json");
  std::ofstream(bad) << "{\"nodes\": [\"A\"], \"unexpected\": 1}";
  const fs::path out = tmp_file("bad_sweep.csv");
  fs::remove(out);
  const RunResult r =
      run_cli("sweep --network " + bad.string() + " --inject in --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
  fs::remove(bad);
}

TEST_CASE("unknown inject port exits 2") {
  const RunResult r = run_cli("sweep --network " + kData + "/straight.json --inject nope --out " +
                              tmp_file("x.csv").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep writes a CSV with the expected header and is deterministic") {
  const fs::path out1 = tmp_file("sweep1.csv");
  const fs::path out2 = tmp_file("sweep2.csv");
  const std::string base = "sweep --network " + kData + "/mixing.json --inject in0 "
                           "--k-min 0.1 --k-max 3.0 --steps 32 --out ";
  CHECK(run_cli(base + out1.string()).exit_code == 0);
  CHECK(run_cli(base + out2.string()).exit_code == 0);
  const std::string text1 = slurp(out1);
  CHECK(text1.substr(0, 2) == "k,");
  CHECK(text1.find("abs_") != std::string::npos);
  CHECK(text1.find("arg_") != std::string::npos);
  // 32 data rows plus header
  CHECK(std::count(text1.begin(), text1.end(), '\n') == 33);
  CHECK(text1 == slurp(out2));
  fs::remove(out1);
  fs::remove(out2);
}

TEST_CASE("sweep output is identical with WAVENET_THREADS set") {
  const fs::path serial = tmp_file("sweep_serial.csv");
  const fs::path parallel = tmp_file("sweep_par.csv");
  const std::string base = "sweep --network " + kData + "/yjunction.json --inject leg1 "
                           "--k-min 0.2 --k-max 5.0 --steps 64 --out ";
  CHECK(run_cli(base + serial.string()).exit_code == 0);
  const std::string cmd = "WAVENET_THREADS=4 " + kCli + " " + base + parallel.string() +
                          " > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(serial) == slurp(parallel));
  fs::remove(serial);
  fs::remove(parallel);
}

TEST_CASE("gate subcommand prints PASS for catalog gates") {
  for (const std::string name : {"mixing", "hadamard", "cnot", "toffoli", "phase:1.5708"}) {
    const RunResult r = run_cli("gate " + name);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("PASS") != std::string::npos);
    CHECK(r.stdout_text.find("unitarity residual") != std::string::npos);
  }
  CHECK(run_cli("gate mixing").stdout_text.find("network-vs-closed-form") != std::string::npos);
}

TEST_CASE("shor subcommand writes the result JSON") {
  const fs::path out = tmp_file("shor.json");
  const RunResult r = run_cli("shor --n 15 --a 11 --mode compiled --samples 16 --seed 7 --out " +
                              out.string());
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["N"] == 15);
  CHECK(j["a"] == 11);
  CHECK(j["n"] == 2);
  CHECK(j["m"] == 4);
  CHECK(j["r"] == 2);
  CHECK(j["factors"] == nlohmann::json({3, 5}));
  CHECK(j["retries"] == 0);
  CHECK(j["register_marginal"]["0"].get<double>() == doctest::Approx(0.5));
  CHECK(j["register_marginal"]["2"].get<double>() == doctest::Approx(0.5));
  CHECK(j["register_marginal"].size() == 2);
  REQUIRE(j["samples"].size() == 16);
  for (const auto& y : j["samples"]) CHECK((y == 0 || y == 2));
  fs::remove(out);
}

TEST_CASE("shor reference mode factors 15 with base 7") {
  const fs::path out = tmp_file("shor_ref.json");
  const RunResult r = run_cli("shor --n 15 --a 7 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["r"] == 4);
  CHECK(j["factors"] == nlohmann::json({3, 5}));
  fs::remove(out);
}

TEST_CASE("shor with a base that only yields trivial factors exits 3") {
  const RunResult r = run_cli("shor --n 15 --a 14 --out " + tmp_file("shor14.json").string());
  CHECK(r.exit_code == 3);
}

TEST_CASE("evolve writes an energy CSV with stable totals") {
  const fs::path out = tmp_file("evolve.csv");
  const RunResult r = run_cli("evolve --cells 64 --steps 400 --k-mode 3 --sample-interval 50 --out " +
                              out.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "step,time,U_E,U_M,U_T,norm");
  double first_u_t = -1;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string field;
    double u_t = 0;
    for (int i = 0; i <= 4 && std::getline(ls, field, ','); ++i) {
      if (i == 4) u_t = std::stod(field);
    }
    if (first_u_t < 0) {
      first_u_t = u_t;
    } else {
      CHECK(u_t == doctest::Approx(first_u_t).epsilon(1e-9));
    }
  }
  CHECK(rows == 9);  // steps 0, 50, ..., 400
  fs::remove(out);
}
