#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "grwick/instance_gen.hpp"
#include "grwick/io.hpp"
#include "grwick/randgen.hpp"
#include "grwick/report.hpp"

using namespace grwick;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

struct FileGuard {
  std::filesystem::path p;
  explicit FileGuard(std::filesystem::path path) : p(std::move(path)) {}
  ~FileGuard() { std::filesystem::remove(p); }
};

}  // namespace

TEST_CASE("scalar serialization round-trips") {
  for (const Scalar& s :
       {Scalar::rational(3, 5), Scalar::rational(-7, 2), Scalar(0), Scalar(12),
        Scalar::exact_complex(mpq_class(1, 2), mpq_class(-1, 3)),
        Scalar::floating(0.25), Scalar::floating(-1.5, 2.75)}) {
    Scalar back = scalar_from_json(scalar_to_json(s));
    CHECK(back == s);
    CHECK(back.exact() == s.exact());
  }
  // exact reals serialize as fraction strings, floats as numbers
  CHECK(scalar_to_json(Scalar::rational(3, 5)).is_string());
  CHECK(scalar_to_json(Scalar::floating(0.5)).is_number());
  CHECK(scalar_to_json(Scalar::imaginary()).is_array());

  CHECK_THROWS_AS(scalar_from_json(Json::parse("\"not-a-fraction\"")), std::runtime_error);
  CHECK_THROWS_AS(scalar_from_json(Json::parse("[\"1/2\", 0.5]")), std::runtime_error);
  CHECK_THROWS_AS(scalar_from_json(Json::parse("{}")), std::runtime_error);
}

TEST_CASE("element serialization round-trips") {
  Rng rng(131);
  Signature s(2, 3, 2);
  for (int rep = 0; rep < 6; ++rep) {
    ElementSpec spec;
    spec.terms = 5;
    spec.allow_constant = true;
    spec.float_coeffs = (rep % 2 == 1);
    Element<Scalar> f = random_element(rng, s, spec);
    Element<Scalar> back = element_from_json(element_to_json(f));
    CHECK(back == f);
    CHECK(back.sig == s);
  }

  CHECK_THROWS_AS(element_from_json(Json::parse("{}")), std::runtime_error);
  // terms must stay inside the declared signature
  Json j = element_to_json(Element<Scalar>::v_gen(Signature(0, 2, 1), 0, 1));
  j["signature"]["v"] = 1;
  CHECK_THROWS_AS(element_from_json(j), std::runtime_error);
  Json j2 = element_to_json(Element<Scalar>::a_gen(Signature(2, 2, 1), 1));
  j2["signature"]["a"] = 1;
  CHECK_THROWS_AS(element_from_json(j2), std::runtime_error);
}

TEST_CASE("covariance serialization round-trips") {
  Rng rng(137);
  for (int rep = 0; rep < 4; ++rep) {
    Covariance c = rep % 2 ? random_float_covariance(rng, 4) : random_covariance(rng, 4);
    Covariance back = covariance_from_json(covariance_to_json(c));
    CHECK(back.dim == c.dim);
    for (int i = 0; i < c.dim; ++i)
      for (int j = 0; j < c.dim; ++j) CHECK(back.at(i, j) == c.at(i, j));
  }

  CHECK_THROWS_AS(covariance_from_json(Json::parse("{}")), std::runtime_error);
  // entries below or on the diagonal are rejected
  CHECK_THROWS_AS(
      covariance_from_json(Json::parse(
          R"({"dim": 2, "upper": [[1, 0, "1/2", "0"]]})")),
      std::runtime_error);
  CHECK_THROWS_AS(
      covariance_from_json(Json::parse(
          R"({"dim": 2, "upper": [[0, 0, "1/2", "0"]]})")),
      std::runtime_error);
  CHECK_THROWS_AS(
      covariance_from_json(Json::parse(
          R"({"dim": 2, "upper": [[0, 5, "1/2", "0"]]})")),
      std::runtime_error);
}

TEST_CASE("fock setup serialization round-trips") {
  Rng rng(139);
  FockSetup fs = random_fock_setup(rng, 2, 4, true);
  FockSetup back = fock_setup_from_json(fock_setup_to_json(fs));
  CHECK(back.h == fs.h);
  REQUIRE(back.dim() == fs.dim());
  for (int i = 0; i < fs.dim(); ++i) {
    CHECK(back.gens[i].side == fs.gens[i].side);
    CHECK(back.gens[i].tau == fs.gens[i].tau);
    CHECK(back.gens[i].w == fs.gens[i].w);
  }

  CHECK_THROWS_AS(fock_setup_from_json(Json::parse("{}")), std::runtime_error);
  CHECK_THROWS_AS(fock_setup_from_json(Json::parse(
                      R"({"h": 1, "generators": [{"side": 2, "tau": "0", "w": [["1", "0"]]}]})")),
                  std::runtime_error);
}

TEST_CASE("json files") {
  auto path = temp_file("grwick_io_test.json");
  FileGuard guard(path);
  Json j{{"dim", 2}, {"upper", Json::array({Json::array({0, 1, "1/3", "0"})})}};
  write_json_file(path.string(), j);
  Json back = read_json_file(path.string());
  CHECK(back == j);
  CHECK(covariance_from_json(back).at(0, 1) == Scalar::rational(1, 3));

  CHECK_THROWS_AS(read_json_file("/nonexistent/grwick.json"), std::runtime_error);

  auto bad = temp_file("grwick_io_bad.json");
  FileGuard guard2(bad);
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(read_json_file(bad.string()), std::runtime_error);
}

TEST_CASE("doubles format deterministically and round-trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.25) == "-2.25");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");

  Rng rng(149);
  for (int rep = 0; rep < 50; ++rep) {
    double v = (rng.unit() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(7)));
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("report records and summary") {
  ReportWriter w;
  w.add_equality("alpha", true, "x", "x");
  w.add_bound("beta", 1.0, 2.0, true);
  w.add_bound("gamma", 3.0, 2.0, false);
  CHECK(w.total() == 3);
  CHECK(w.failures() == 1);

  std::string line = check_record_line(w.records()[1]);
  Json j = Json::parse(line);
  CHECK(j["name"] == "beta");
  CHECK(j["lhs"] == "1");
  CHECK(j["rhs"] == "2");
  CHECK(j["holds"] == true);
  CHECK(j["margin"] == "1");

  ReportWriter other;
  other.add_equality("delta", true);
  w.merge(other);
  CHECK(w.total() == 4);

  // records are stable across writes; only the summary line varies
  std::ostringstream s1, s2;
  w.write_lines(s1, false);
  w.write_lines(s2, true);
  CHECK(s2.str().substr(0, s1.str().size()) == s1.str());
  std::string tail = s2.str().substr(s1.str().size());
  Json summary = Json::parse(tail);
  CHECK(summary["summary"] == true);
  CHECK(summary["total"] == 4);
  CHECK(summary["failures"] == 1);
  CHECK(summary.contains("timestamp"));

  int lines = 0;
  std::istringstream in(s2.str());
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 5);
}
