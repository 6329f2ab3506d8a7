#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rmt/cli.hpp"
#include "rmt/io.hpp"

using namespace rmt;

TEST_CASE("complex literal parsing") {
  CHECK(io::parse_complex("2.0+3.5i") == Complex(2.0, 3.5));
  CHECK(io::parse_complex("2-3.5i") == Complex(2.0, -3.5));
  CHECK(io::parse_complex("1") == Complex(1.0, 0.0));
  CHECK(io::parse_complex("-0.5") == Complex(-0.5, 0.0));
  CHECK(io::parse_complex("1e-2+3i") == Complex(0.01, 3.0));
  CHECK(io::parse_complex("3i") == Complex(0.0, 3.0));
  CHECK_THROWS_AS((void)io::parse_complex("1+bogus"), GuardError);
  CHECK_THROWS_AS((void)io::parse_complex(""), GuardError);
}

TEST_CASE("format round trip at 17 significant digits") {
  const double v = 0.1234567890123456789;
  CHECK(std::stod(io::format_g17(v)) == v);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli::run({"moments", "--n", "4", "--r", "1+bogusi", "--samples",
                  "500", "--out", "cli_test_bad.csv"}) == 2);
  CHECK(cli::run({"moments", "--n", "4", "--r", "1", "--samples", "10",
                  "--out", "cli_test_bad.csv"}) == 2);
  CHECK(cli::run({"excised", "--n", "4", "--chi", "-3", "--bins", "5",
                  "--samples", "20000"}) == 2);
  CHECK(cli::run({"ratios-check", "--n", "3", "--k", "4"}) == 2);
  CHECK(cli::run({"lfun", "--kmax", "3", "--X", "50"}) == 2);  // kappa missing
  CHECK(cli::run({"nonsense"}) == 2);
}

TEST_CASE("identities command") {
  CHECK(cli::run({"identities", "--kmax", "6"}) == 0);
  CHECK(cli::run({"identities", "--kmax", "2"}) == 0);
}

TEST_CASE("moments command produces a table and a replayable manifest") {
  const std::string out = "cli_moments_test.csv";
  CHECK(cli::run({"moments", "--ensemble", "so", "--n", "4", "--r", "1",
                  "--phi", "2.0+3.5i", "--samples", "2000", "--seed", "9",
                  "--out", out}) == 0);
  std::ifstream f(out);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(header ==
        "r,predicted_re,predicted_im,mc_re,mc_im,stderr_re,stderr_im,zscore");
  CHECK(!row.empty());
  f.close();
  // replay reproduces the CSV bit-identically
  std::string first_run;
  {
    std::ifstream g(out);
    std::stringstream ss;
    ss << g.rdbuf();
    first_run = ss.str();
  }
  CHECK(cli::run({"replay", out + ".manifest.json"}) == 0);
  std::string second_run;
  {
    std::ifstream g(out);
    std::stringstream ss;
    ss << g.rdbuf();
    second_run = ss.str();
  }
  CHECK(first_run == second_run);
  std::remove(out.c_str());
  std::remove((out + ".manifest.json").c_str());
}

TEST_CASE("lfun data errors exit 4") {
  {
    std::ofstream f("cli_zeros_bad.csv");
    f << "not-a-record\n";
  }
  CHECK(cli::run({"lfun", "--X", "40", "--pmax", "200", "--grid", "4",
                  "--zeros", "cli_zeros_bad.csv", "--out-prefix",
                  "cli_lfun_test"}) == 4);
  std::remove("cli_zeros_bad.csv");
  std::remove("cli_lfun_test_prediction.csv");
  std::remove("cli_lfun_test_manifest.json");
}
