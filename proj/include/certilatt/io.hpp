#pragma once

// JSON lattice and field files. Big integers travel as decimal strings;
// plain JSON integers are accepted on input.

#include <certilatt/lattice.hpp>
#include <certilatt/numberfield.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace certilatt {

// Gram kinds: "exact" (integers), "approx" (integers plus "accuracy") and
// "rational" (entries "p/q", served through a rational oracle).
struct LatticeFile {
  LatticeInput input;
  std::string kind;
  nlohmann::json gram_json;  // echoed verbatim on output
};

// All parse functions throw ParseError.
mpz_class parse_integer(const nlohmann::json& j);
// "p/q", integers and decimals such as "0.99".
mpq_class parse_rational(const std::string& s);
mpq_class parse_rational(const nlohmann::json& j);

LatticeFile parse_lattice(const nlohmann::json& j);
LatticeFile read_lattice_file(const std::string& path);  // "-" reads stdin

nlohmann::json to_json(const mpz_class& x);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json lattice_to_json(const LatticeFile& f, const IntMatrix& vectors);

struct FieldFile {
  Polynomial poly;
  std::vector<FieldElement> basis;  // power basis when absent
  std::optional<IdealSpec> ideal;
};

FieldFile parse_field(const nlohmann::json& j);
FieldFile read_field_file(const std::string& path);

nlohmann::json read_json(const std::string& path);

}  // namespace certilatt
