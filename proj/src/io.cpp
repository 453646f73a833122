#include "grwick/io.hpp"

#include <fstream>
#include <stdexcept>

namespace grwick {

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class rational_parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::runtime_error("malformed rational: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (s.exact()) {
    if (s.is_real()) return rational_str(s.re_rational());
    return Json::array({rational_str(s.re_rational()), rational_str(s.im_rational())});
  }
  std::complex<double> z = s.to_complex();
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const Json& j) {
  auto part = [](const Json& p, bool& exact) -> std::pair<mpq_class, double> {
    if (p.is_string()) {
      exact = true;
      return {rational_parse(p.get<std::string>()), 0.0};
    }
    if (p.is_number()) {
      exact = false;
      return {mpq_class(0), p.get<double>()};
    }
    throw std::runtime_error("malformed scalar part");
  };
  if (j.is_string() || j.is_number()) {
    bool exact = false;
    auto [q, f] = part(j, exact);
    return exact ? Scalar::exact_complex(q, 0) : Scalar::floating(f, 0.0);
  }
  if (j.is_array() && j.size() == 2) {
    bool e1 = false, e2 = false;
    auto [qr, fr] = part(j[0], e1);
    auto [qi, fi] = part(j[1], e2);
    if (e1 != e2) throw std::runtime_error("scalar mixes exact and floating parts");
    return e1 ? Scalar::exact_complex(qr, qi) : Scalar::floating(fr, fi);
  }
  throw std::runtime_error("malformed scalar");
}

Json element_to_json(const Element<Scalar>& f) {
  const Signature& s = f.sig;
  Json terms = Json::array();
  for (const auto& [mask, c] : f.terms) {
    Json t;
    std::uint64_t am = 0;
    for (int g = 0; g < s.a_gens; ++g)
      if (mask.test(s.a_bit(g))) am |= std::uint64_t(1) << g;
    t["a_mask"] = am;
    Json vm = Json::array();
    for (int copy = 0; copy < s.copies; ++copy) {
      std::uint64_t m = 0;
      for (int i = 0; i < s.dim; ++i)
        if (mask.test(s.v_bit(copy, i))) m |= std::uint64_t(1) << i;
      vm.push_back(m);
    }
    t["v_masks"] = std::move(vm);
    if (c.exact()) {
      t["re"] = rational_str(c.re_rational());
      t["im"] = rational_str(c.im_rational());
    } else {
      std::complex<double> z = c.to_complex();
      t["re"] = z.real();
      t["im"] = z.imag();
    }
    terms.push_back(std::move(t));
  }
  return Json{{"signature", {{"a", s.a_gens}, {"v", s.dim}, {"copies", s.copies}}},
              {"terms", std::move(terms)}};
}

Element<Scalar> element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("signature") || !j.contains("terms"))
    throw std::runtime_error("malformed element");
  const Json& sj = j["signature"];
  Signature s(sj.at("a").get<int>(), sj.at("v").get<int>(), sj.at("copies").get<int>());
  Element<Scalar> f(s);
  for (const Json& t : j["terms"]) {
    std::uint64_t am = t.at("a_mask").get<std::uint64_t>();
    if (s.a_gens < 64 && (am >> s.a_gens) != 0)
      throw std::runtime_error("element term uses coefficient generators outside the signature");
    Mask mask;
    for (int g = 0; g < s.a_gens; ++g)
      if (am & (std::uint64_t(1) << g)) mask.set(s.a_bit(g));
    const Json& vms = t.at("v_masks");
    if (static_cast<int>(vms.size()) != s.copies)
      throw std::runtime_error("element term has wrong copy count");
    for (int copy = 0; copy < s.copies; ++copy) {
      std::uint64_t m = vms[std::size_t(copy)].get<std::uint64_t>();
      if (s.dim < 64 && (m >> s.dim) != 0)
        throw std::runtime_error("element term uses generators outside the signature");
      for (int i = 0; i < s.dim; ++i)
        if (m & (std::uint64_t(1) << i)) mask.set(s.v_bit(copy, i));
    }
    Scalar re = scalar_from_json(t.at("re"));
    Scalar im = scalar_from_json(t.at("im"));
    Scalar c = re.exact() && im.exact()
                   ? Scalar::exact_complex(re.re_rational(), im.re_rational())
                   : Scalar::floating(re.to_double(), im.to_double());
    f.add_term(mask, c);
  }
  return f;
}

Json covariance_to_json(const Covariance& c) {
  Json upper = Json::array();
  for (int i = 0; i < c.dim; ++i) {
    for (int j = i + 1; j < c.dim; ++j) {
      const Scalar& v = c.at(i, j);
      if (v.is_zero()) continue;
      Json re, im;
      if (v.exact()) {
        re = rational_str(v.re_rational());
        im = rational_str(v.im_rational());
      } else {
        std::complex<double> z = v.to_complex();
        re = z.real();
        im = z.imag();
      }
      upper.push_back(Json::array({i, j, re, im}));
    }
  }
  return Json{{"dim", c.dim}, {"upper", std::move(upper)}};
}

Covariance covariance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("upper"))
    throw std::runtime_error("malformed covariance");
  int dim = j.at("dim").get<int>();
  if (dim < 0 || dim > 64) throw std::runtime_error("covariance dimension out of range");
  Covariance c(dim);
  for (const Json& e : j["upper"]) {
    if (!e.is_array() || e.size() != 4) throw std::runtime_error("malformed covariance entry");
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b < 0 || a >= dim || b >= dim || a >= b)
      throw std::runtime_error("covariance entry indices out of range");
    Scalar re = scalar_from_json(e[2]);
    Scalar im = scalar_from_json(e[3]);
    Scalar v = re.exact() && im.exact()
                   ? Scalar::exact_complex(re.re_rational(), im.re_rational())
                   : Scalar::floating(re.to_double(), im.to_double());
    c.set(a, b, v);
  }
  return c;
}

Json fock_setup_to_json(const FockSetup& fs) {
  Json gens = Json::array();
  for (const FockGenerator& g : fs.gens) {
    Json w = Json::array();
    for (const Scalar& x : g.w) {
      Json re, im;
      if (x.exact()) {
        re = rational_str(x.re_rational());
        im = rational_str(x.im_rational());
      } else {
        std::complex<double> z = x.to_complex();
        re = z.real();
        im = z.imag();
      }
      w.push_back(Json::array({re, im}));
    }
    gens.push_back(Json{{"side", g.side},
                        {"tau", rational_str(g.tau.re_rational())},
                        {"w", std::move(w)}});
  }
  return Json{{"h", fs.h}, {"generators", std::move(gens)}};
}

FockSetup fock_setup_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("h") || !j.contains("generators"))
    throw std::runtime_error("malformed fock setup");
  FockSetup fs;
  fs.h = j.at("h").get<int>();
  if (fs.h < 0 || fs.h > 20) throw std::runtime_error("fock dimension out of range");
  for (const Json& gj : j["generators"]) {
    FockGenerator g;
    g.side = gj.at("side").get<int>();
    if (g.side != 0 && g.side != 1) throw std::runtime_error("fock generator side must be 0 or 1");
    g.tau = Scalar::exact_complex(rational_parse(gj.at("tau").get<std::string>()), 0);
    for (const Json& wj : gj.at("w")) {
      if (!wj.is_array() || wj.size() != 2) throw std::runtime_error("malformed fock vector");
      Scalar re = scalar_from_json(wj[0]);
      Scalar im = scalar_from_json(wj[1]);
      g.w.push_back(Scalar::exact_complex(re.re_rational(), im.re_rational()));
    }
    if (static_cast<int>(g.w.size()) != fs.h)
      throw std::runtime_error("fock vector dimension mismatch");
    fs.gens.push_back(std::move(g));
  }
  return fs;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace grwick
