// Copyright 2026 The toricheight Authors
// SPDX-License-Identifier: Apache-2.0

#include "toricheight/serialization.hpp"

#include <charconv>
#include <limits>

#include "toricheight/errors.hpp"

namespace toricheight {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InvalidInput((path.empty() ? std::string("/") : path) + ": " + message);
}

std::int64_t small_integer(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

Exponents parse_exponent_key(const std::string& key, std::size_t variables, const std::string& path) {
  Exponents e;
  if (key.empty()) {
    if (variables != 0) fail(path, "empty exponent key for a polynomial in " + std::to_string(variables) + " variables");
    return e;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = key.find(',', start);
    const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::uint32_t value = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || end != part.data() + part.size() || part.empty()) {
      fail(path, "bad exponent tuple '" + key + "'");
    }
    e.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (e.size() != variables) {
    fail(path, "exponent tuple '" + key + "' has " + std::to_string(e.size()) + " entries, expected " +
                   std::to_string(variables));
  }
  return e;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

nlohmann::json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

Integer integer_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Integer n;
    if (s.empty() || n.set_str(s, 10) != 0) fail(path, "'" + s + "' is not a decimal integer");
    return n;
  }
  fail(path, "expected an integer");
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

nlohmann::json polynomial_to_json(const IntPolynomial& poly) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [e, c] : poly.terms()) {
    std::string key;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i > 0) key += ',';
      key += std::to_string(e[i]);
    }
    out[key] = integer_to_json(c);
  }
  return out;
}

IntPolynomial polynomial_from_json(const nlohmann::json& j, std::size_t variables, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a map from exponent tuples to coefficients");
  IntPolynomial::TermMap terms;
  for (const auto& [key, value] : j.items()) {
    const std::string child = path + "/" + escape_pointer(key);
    auto e = parse_exponent_key(key, variables, child);
    if (terms.count(e)) fail(child, "duplicate monomial");
    terms.emplace(std::move(e), integer_from_json(value, child));
  }
  IntPolynomial poly(variables, std::move(terms));
  if (poly.is_zero()) fail(path, "polynomial is zero");
  return poly;
}

nlohmann::json factored_to_json(const FactoredElement& gamma) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [v, e] : gamma.factors()) {
    if (v.is_prime()) {
      factors.push_back({{"kind", "prime"}, {"p", integer_to_json(v.prime_value())}, {"exp", e}});
    } else {
      factors.push_back({{"kind", "poly"}, {"terms", polynomial_to_json(v.poly())}, {"exp", e}});
    }
  }
  return {{"sign", gamma.sign()}, {"factors", factors}};
}

FactoredElement factored_from_json(const nlohmann::json& j, std::size_t variables, const std::string& path) {
  if (j.is_number_integer() || j.is_string()) {
    const Integer n = integer_from_json(j, path);
    if (n == 0) fail(path, "zero is not a field element of the multiplicative group");
    return FactoredElement::integer(n);
  }
  if (!j.is_object()) fail(path, "expected a factored element {\"sign\", \"factors\"}");
  for (const auto& [key, value] : j.items()) {
    if (key != "sign" && key != "factors") fail(path + "/" + escape_pointer(key), "unknown field");
  }
  int sign = 1;
  if (j.contains("sign")) {
    const auto s = small_integer(j["sign"], path + "/sign");
    if (s != 1 && s != -1) fail(path + "/sign", "sign must be 1 or -1");
    sign = static_cast<int>(s);
  }
  FactoredElement out = sign == 1 ? FactoredElement::one() : FactoredElement::integer(-1);
  if (!j.contains("factors")) return out;
  const auto& factors = j["factors"];
  if (!factors.is_array()) fail(path + "/factors", "expected an array");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const std::string fp = path + "/factors/" + std::to_string(k);
    const auto& f = factors[k];
    if (!f.is_object()) fail(fp, "expected an object");
    if (!f.contains("kind") || !f["kind"].is_string()) fail(fp + "/kind", "missing kind (prime or poly)");
    const auto kind = f["kind"].get<std::string>();
    const auto exp = f.contains("exp") ? small_integer(f["exp"], fp + "/exp") : 1;
    if (exp == 0 || exp > std::numeric_limits<int>::max() || exp < std::numeric_limits<int>::min()) {
      fail(fp + "/exp", "exponent must be a nonzero int");
    }
    if (kind == "prime") {
      if (!f.contains("p")) fail(fp + "/p", "missing prime");
      const Integer p = integer_from_json(f["p"], fp + "/p");
      try {
        out = out * FactoredElement::prime_power(p, static_cast<int>(exp));
      } catch (const std::exception& e) {
        fail(fp + "/p", e.what());
      }
    } else if (kind == "poly") {
      if (!f.contains("terms")) fail(fp + "/terms", "missing terms");
      const auto poly = polynomial_from_json(f["terms"], variables, fp + "/terms");
      try {
        out = out * FactoredElement::from_polynomial(poly, static_cast<int>(exp));
      } catch (const std::exception& e) {
        fail(fp + "/terms", e.what());
      }
    } else {
      fail(fp + "/kind", "unknown kind '" + kind + "' (expected prime or poly)");
    }
  }
  return out;
}

LatticePoint lattice_point_from_json(const nlohmann::json& j, std::size_t dimension, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  if (j.size() != dimension) {
    fail(path, "has " + std::to_string(j.size()) + " coordinates, expected " + std::to_string(dimension));
  }
  LatticePoint p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(small_integer(j[i], path + "/" + std::to_string(i)));
  return p;
}

}  // namespace toricheight
