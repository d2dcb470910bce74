#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BIOASSAY_CLI + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(BIOASSAY_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("fit") {
  Run r = cli("fit --model weibull-cdf --input " + data("survival_weibull.csv"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["converged"] == true);
  CHECK(j["theta_hat"].size() == 2);
  CHECK(j["schema"] == "survival");

  r = cli("fit --model mm --theta 1,2 --input " + data("mm_regression.csv"));
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["theta_hat"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-3));

  CHECK(cli("fit --model mm --theta 1,2,3 --input " + data("mm_regression.csv")).code == 2);
  CHECK(cli("fit --model mm --input " + data("empty.csv")).code == 2);
  CHECK(cli("fit --model nope --input " + data("mm_regression.csv")).code == 2);
  CHECK(cli("fit --model mm --input " + data("bad_row.csv")).code == 2);
  CHECK(cli("fit --model mm --input " + data("missing.csv")).code == 2);
}

TEST_CASE("bad CSV reports the line") {
  const std::string cmd = std::string("\"") + BIOASSAY_CLI + "\" fit --model mm --input " +
                          data("bad_row.csv") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 1024> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(out.find("line 3") != std::string::npos);
}

TEST_CASE("curves") {
  Run r = cli("curves --model gompertz");
  REQUIRE(r.code == 0);
  std::size_t rows = 0;
  for (char c : r.out) rows += c == '\n';
  CHECK(rows == 501);
  CHECK(r.out.rfind("u,gompertz\n0.01,", 0) == 0);
  const double first = std::stod(r.out.substr(r.out.find(',', 12) + 1));
  CHECK(first == doctest::Approx(std::exp(std::exp(0.01))).epsilon(1e-10));

  r = cli("curves --model logistic --theta 1,1,1 --grid 0.001:1:10");
  REQUIRE(r.code == 0);
  const double near0 = std::stod(r.out.substr(r.out.find(',', 12) + 1));
  CHECK(std::fabs(near0 - 0.5) < 1e-3);

  r = cli("curves --preset janoschek-vs-bertalanffy");
  CHECK(r.out.rfind("u,janoschek,bertalanffy\n", 0) == 0);
  CHECK(cli("curves --preset janoschek-vs-bertalanffy").out == r.out);

  r = cli("curves --model mm --grid -1:1:5");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("u,mm\n0,", 0) == 0);
  r = cli("curves --model tanh --format svg");
  CHECK(r.out.find("<polyline") != std::string::npos);
  CHECK(cli("curves --model tanh --format png").code == 2);
  CHECK(cli("curves --model tanh --grid 1:0:5").code == 2);
}

TEST_CASE("lp") {
  Run r = cli("lp --model one-hit --theta 1 --p 0.6321205588");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["Lp"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["risk_type"] == "total");

  r = cli("lp --model one-hit --theta 0.5 --p 0.01 --confidence 0.95 --input " + data("quantal_onehit.csv"));
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["vsd"].get<double>() < j["Lp"].get<double>());
  CHECK(j["vsd"].get<double>() > 0);

  CHECK(cli("lp --model one-hit --theta 1 --p 1.5").code == 2);
  CHECK(cli("lp --model mm --theta 1,1 --p 0.1").code == 2);
}

TEST_CASE("eff") {
  Run r = cli("eff --rho12 0 --rhoy21 0");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["eff"] == 1.0);
  CHECK(j["class"] == "unity");
  CHECK(cli("eff --rho12 1 --rhoy21 0").code == 2);
}

TEST_CASE("fisher") {
  Run r = cli("fisher --model exp-time-power --theta 2,3 --design 1");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["info"]["entries"][0][0] == 1.0);
  CHECK(j["info"]["entries"][1][1] == 0.0);
  CHECK(j["rank"] == 1);
  r = cli("fisher --model weibull-cdf --theta 1,1.5 --input " + data("survival_weibull.csv"));
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["second_derivatives"][0][0].get<double>() < 0);
  CHECK(cli("fisher --model weibull-reconstructed --theta 1,0,1,1 --design 0").code == 2);
}

TEST_CASE("tables") {
  Run r = cli("tables --integer --classify r2,c1 --input " + data("diptych.json"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["consistent"] == true);
  CHECK(!j["witness"].is_null());
  CHECK(!j["integer_witness"].is_null());
  CHECK(j["classification"] == "occupied");
  CHECK(cli("tables --input " + data("mm_regression.csv")).code == 2);
}

TEST_CASE("simulate-bd") {
  Run a = cli("simulate-bd --b 1 --d 1 --i0 3 --t-end 2 --seed 9");
  Run b = cli("simulate-bd --b 1 --d 1 --i0 3 --t-end 2 --seed 9");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("t,population\n0,3\n", 0) == 0);
  Run env = cli("simulate-bd --b 1 --d 1 --i0 3 --t-end 2 --replicates 20");
  Run env2 = cli("simulate-bd --b 1 --d 1 --i0 3 --t-end 2 --replicates 20 --seed 0");
  CHECK(env.out == env2.out);
  Run h = cli("simulate-bd --b 1 --d 1 --t-end 1 --replicates 500 --bins 4 --seed 3");
  REQUIRE(h.code == 0);
  CHECK(h.out.rfind("t_lo,t_hi,t_mid,hazard,events,exposure,threshold\n", 0) == 0);
  CHECK(cli("simulate-bd --b 0 --d 0").code == 2);
  const std::string withenv = std::string("BIOASSAY_SEED=9 \"") + BIOASSAY_CLI +
                              "\" simulate-bd --b 1 --d 1 --i0 3 --t-end 2";
  FILE* pipe = popen(withenv.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(out == a.out);
}

TEST_CASE("usage errors") {
  CHECK(cli("").code != 0);
  CHECK(cli("frobnicate").code != 0);
}
