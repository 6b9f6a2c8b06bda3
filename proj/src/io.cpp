#include <certilatt/io.hpp>

#include <certilatt/errors.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace certilatt {

using nlohmann::json;

mpz_class parse_integer(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (!j.is_string()) throw ParseError("expected an integer, got " + j.dump());
  const std::string s = j.get<std::string>();
  mpz_class z;
  const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos ||
      z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) {
    throw ParseError("malformed integer \"" + s + "\"");
  }
  return z;
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational");
  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const mpz_class num = parse_integer(json(s.substr(0, slash)));
    const mpz_class den = parse_integer(json(s.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  const std::size_t dot = s.find('.');
  if (dot == std::string::npos) return mpq_class(parse_integer(json(s)));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t scale = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed number \"" + s + "\"");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
  mpq_class q(parse_integer(json(digits)), den);
  q.canonicalize();
  return q;
}

mpq_class parse_rational(const json& j) {
  if (j.is_number_integer() || (j.is_string() && j.get<std::string>().find_first_of("/.") == std::string::npos))
    return mpq_class(parse_integer(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

namespace {

template <typename T, typename F>
Matrix<T> parse_matrix(const json& j, const char* what, F parse) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a non-empty array of rows");
  std::vector<std::vector<T>> rows;
  for (const json& row : j) {
    if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
    std::vector<T> r;
    for (const json& x : row) r.push_back(parse(x));
    if (!rows.empty() && r.size() != rows.front().size()) throw ParseError(std::string(what) + " is ragged");
    rows.push_back(std::move(r));
  }
  if (rows.front().empty()) throw ParseError(std::string(what) + " has empty rows");
  return Matrix<T>::from_rows(rows);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  return j.at(key);
}

}  // namespace

LatticeFile parse_lattice(const json& j) {
  const json& g = field(j, "gram");
  const std::string kind = field(g, "kind").is_string() ? g.at("kind").get<std::string>() : "";
  LatticeFile out;
  out.kind = kind;
  out.gram_json = g;
  if (kind == "exact") {
    out.input.gram = GramExact::from(parse_matrix<mpz_class>(field(g, "entries"), "gram entries", parse_integer));
  } else if (kind == "approx") {
    const mpz_class n = parse_integer(field(g, "accuracy"));
    if (n < 0 || n > 1'000'000) throw ParseError("accuracy out of range");
    out.input.gram = GramApprox::from(parse_matrix<mpz_class>(field(g, "entries"), "gram entries", parse_integer),
                                      static_cast<unsigned>(n.get_ui()));
  } else if (kind == "rational") {
    const RatMatrix m = parse_matrix<mpq_class>(field(g, "entries"), "gram entries",
                                                [](const json& x) { return parse_rational(x); });
    if (!m.is_square() || !m.is_symmetric()) throw ParseError("Gram matrix must be square and symmetric");
    out.input.gram = std::make_shared<RationalGramOracle>(m);
  } else {
    throw ParseError("gram kind must be \"exact\", \"approx\" or \"rational\"");
  }
  out.input.vectors = parse_matrix<mpz_class>(field(j, "vectors"), "vectors", parse_integer);
  if (j.contains("ambient_dim")) {
    const mpz_class d = parse_integer(j.at("ambient_dim"));
    if (d != static_cast<unsigned long>(out.input.ambient_dim()))
      throw ParseError("ambient_dim does not match the Gram matrix");
  }
  out.input.validate();
  return out;
}

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

LatticeFile read_lattice_file(const std::string& path) { return parse_lattice(read_json(path)); }

json to_json(const mpz_class& x) { return x.get_str(); }

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const mpz_class& x : m.row(i)) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

json lattice_to_json(const LatticeFile& f, const IntMatrix& vectors) {
  json out;
  out["ambient_dim"] = f.input.ambient_dim();
  out["gram"] = f.gram_json;
  out["vectors"] = to_json(vectors);
  return out;
}

namespace {

FieldElement parse_element(const json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d)
    throw ParseError("field element must have " + std::to_string(d) + " coordinates: " + j.dump());
  std::vector<mpq_class> q;
  for (const json& x : j) q.push_back(parse_rational(x));
  return FieldElement::from_rationals(q);
}

}  // namespace

FieldFile parse_field(const json& j) {
  const json& pj = field(j, "poly");
  if (!pj.is_array() || pj.size() < 2) throw ParseError("\"poly\" must list at least two coefficients");
  std::vector<mpz_class> coeffs;
  for (const json& c : pj) coeffs.push_back(parse_integer(c));
  FieldFile out{Polynomial(std::move(coeffs)), {}, std::nullopt};
  // Reject early so callers get ParseError rather than a late failure.
  NumberField check(out.poly);
  const std::size_t d = out.poly.degree();

  if (j.contains("basis")) {
    // [[coordinate rows], denominator] or just the rows.
    const json& b = j.at("basis");
    json rows = b;
    mpz_class den = 1;
    if (b.is_array() && b.size() == 2 && b[0].is_array() && !b[1].is_array()) {
      rows = b[0];
      den = parse_integer(b[1]);
      if (den <= 0) throw ParseError("basis denominator must be positive");
    }
    if (!rows.is_array() || rows.size() != d) throw ParseError("basis must have " + std::to_string(d) + " rows");
    for (const json& r : rows) {
      FieldElement e = parse_element(r, d);
      out.basis.push_back(FieldElement::make(e.coords, e.denom * den));
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<mpz_class> c(d, mpz_class(0));
      c[i] = 1;
      out.basis.push_back(FieldElement::make(std::move(c)));
    }
  }

  if (j.contains("ideal")) {
    const json& ij = j.at("ideal");
    if (ij.contains("two_element")) {
      const json& t = ij.at("two_element");
      if (!t.is_array() || t.size() != 2) throw ParseError("two_element needs exactly two elements");
      out.ideal = TwoElement{parse_element(t[0], d), parse_element(t[1], d)};
    } else if (ij.contains("z_basis")) {
      const json& z = ij.at("z_basis");
      if (!z.is_array() || z.empty()) throw ParseError("z_basis must be a non-empty array");
      ZBasis zb;
      for (const json& e : z) zb.elements.push_back(parse_element(e, d));
      out.ideal = std::move(zb);
    } else {
      throw ParseError("ideal must contain \"two_element\" or \"z_basis\"");
    }
  }
  return out;
}

FieldFile read_field_file(const std::string& path) { return parse_field(read_json(path)); }

}  // namespace certilatt
