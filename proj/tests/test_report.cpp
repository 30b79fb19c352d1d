#include <doctest.h>

#include <limits>
#include <numbers>

#include "brennan/catalog.hpp"
#include "brennan/report.hpp"

using namespace brennan;
using report::Json;

TEST_CASE("float formatting") {
  CHECK(report::format_double(std::numbers::pi) == "3.141592653590e+00");
  CHECK(report::format_double(-2.5e-10) == "-2.500000000000e-10");
  CHECK(report::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(report::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(report::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("dump keeps field order and formats floats") {
  Json j;
  j["zeta"] = 1.5;
  j["alpha"] = report::number(std::numeric_limits<double>::infinity());
  j["count"] = 3;
  j["flag"] = true;
  j["list"] = Json::array({0.25, "x"});
  j["empty"] = Json::object();
  const std::string expected =
      "{\n"
      "  \"zeta\": 1.500000000000e+00,\n"
      "  \"alpha\": \"inf\",\n"
      "  \"count\": 3,\n"
      "  \"flag\": true,\n"
      "  \"list\": [\n"
      "    2.500000000000e-01,\n"
      "    \"x\"\n"
      "  ],\n"
      "  \"empty\": {}\n"
      "}\n";
  CHECK(report::dump(j) == expected);
}

TEST_CASE("serialization is deterministic") {
  const auto pair = parse_map("cardioid*moebius:0.25,0.25,0.4");
  const auto a = report::dump(report::to_json(brennan_integral(pair, 3.0)));
  const auto b = report::dump(report::to_json(brennan_integral(pair, 3.0)));
  CHECK(a == b);
  const auto rows1 = brennan_scan(make_koebe(), 1.0, 4.5, 0.5);
  const auto rows2 = brennan_scan(make_koebe(), 1.0, 4.5, 0.5);
  CHECK(report::scan_csv(rows1) == report::scan_csv(rows2));
}

TEST_CASE("csv layouts") {
  const auto rows = brennan_scan(make_identity(), 1.0, 2.0, 0.5);
  const auto csv = report::scan_csv(rows);
  CHECK(csv.rfind("s,value,tail,classification\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("1.000000000000e+00,3.141592653590e+00,") != std::string::npos);
}

TEST_CASE("envelope fields") {
  const auto env = report::envelope("integrate", Json::object(), Json::array(), Json::object());
  std::vector<std::string> keys;
  for (auto it = env.begin(); it != env.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "inputs", "result", "diagnostics"});
}
