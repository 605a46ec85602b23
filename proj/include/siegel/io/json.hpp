#pragma once

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "siegel/cyclotomic/cycmatrix.hpp"
#include "siegel/fourier/expansion.hpp"
#include "siegel/lattice/lattice.hpp"
#include "siegel/metaplectic/word.hpp"

namespace siegel::io {

using json = nlohmann::ordered_json;
using fourier::cplx;

/// 17 significant digits, so the same double always prints the same way.
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Doubles are stored as numbers rounded through the fixed format.
inline json num(double x) { return json::parse(std::isfinite(x) ? fmt_double(x) : "null"); }
inline json num(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

/// Integer entries print as numbers, others as "p/q".
inline json to_json(const Rational& r) { return is_integer(r) ? json(to_i64(r)) : json(r.get_str()); }

inline json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(Errc::ParseError, "expected integer or \"p/q\" string, got " + j.dump());
}

inline RatMatrix rat_matrix_from(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(Errc::ParseError, "expected a nonempty matrix");
  RatMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != m.cols()) throw Error(Errc::ParseError, "ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from(j[i][k]);
  }
  return m;
}

inline IntMatrix int_matrix_from(const json& j) {
  RatMatrix r = rat_matrix_from(j);
  if (!is_integral(r)) throw Error(Errc::ParseError, "expected an integer matrix");
  return to_integer(r);
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

/// Lattice file: {"gram": [[...]], "name": "..."} or a bare Gram matrix.
inline lattice::EvenLattice lattice_from(const json& j) {
  if (j.is_array()) return lattice::EvenLattice(int_matrix_from(j));
  if (!j.contains("gram")) throw Error(Errc::ParseError, "lattice JSON needs a \"gram\" field");
  return lattice::EvenLattice(int_matrix_from(j["gram"]), j.value("name", std::string{}));
}

inline json to_json(const lattice::EvenLattice& L) {
  json j;
  j["name"] = L.name();
  j["gram"] = to_json(L.gram());
  return j;
}

inline json value_json(const cplx& v) { return num(v); }
inline json value_json(const cyclotomic::CycNumber& v) {
  if (v.is_rational()) return to_json(v.rational_part());
  json c = json::array();
  for (const auto& x : v.coeffs()) c.push_back(to_json(x));
  return json{{"conductor", v.conductor()}, {"coeffs", c}};
}

inline void value_from(const json& j, cplx& v) {
  if (j.is_array() && j.size() == 2) v = cplx(j[0].get<double>(), j[1].get<double>());
  else if (j.is_number()) v = j.get<double>();
  else throw Error(Errc::ParseError, "numeric coefficient must be a number or [re, im]");
}
inline void value_from(const json& j, cyclotomic::CycNumber& v) {
  if (j.is_object()) {
    auto f = cyclotomic::CyclotomicField::get(j.at("conductor").get<std::int64_t>());
    std::vector<Rational> c;
    for (const auto& x : j.at("coeffs")) c.push_back(rational_from(x));
    v = cyclotomic::CycNumber(f, std::move(c));
  } else {
    Rational r = rational_from(j);
    v = r == 0 ? cyclotomic::CycNumber() : cyclotomic::CycNumber(cyclotomic::CyclotomicField::get(1), r);
  }
}

template <class V>
json to_json(const fourier::TruncatedExpansion<V>& f) {
  json j;
  j["genus"] = f.genus();
  j["weight"] = f.weight().get_str();
  j["cutoff"] = f.cutoff().get_str();
  j["backend"] = f.backend();
  json cs = json::array();
  for (const auto& [key, v] : f.table()) {
    json e;
    e["alpha"] = key.alpha;
    e["T"] = to_json(key.T);
    e["value"] = value_json(v);
    cs.push_back(e);
  }
  j["coeffs"] = cs;
  return j;
}

template <class V>
fourier::TruncatedExpansion<V> expansion_from(const json& j, lattice::DiscPtr D) {
  try {
    fourier::TruncatedExpansion<V> f(D, j.at("genus").get<int>(), rational_from(j.at("weight")), rational_from(j.at("cutoff")));
    for (const auto& e : j.at("coeffs")) {
      V v;
      value_from(e.at("value"), v);
      RatMatrix T = f.genus() == 0 ? RatMatrix(0, 0) : rat_matrix_from(e.at("T"));
      f.set(e.at("alpha").get<lattice::DiscTuple>(), T, v);
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

/// Word: [{"S":null},{"T":[[1]]},{"R":[[-1]]}] or {"letters": [...], "branch_flip": n}.
inline metaplectic::Word word_from(const json& j, int g) {
  using metaplectic::Letter;
  metaplectic::Word w;
  w.genus = g;
  const json& letters = j.is_object() ? j.at("letters") : j;
  if (j.is_object()) w.branch_flip = j.value("branch_flip", 0);
  if (!letters.is_array()) throw Error(Errc::ParseError, "word must be a list of letters");
  for (const auto& l : letters) {
    if (!l.is_object() || l.size() != 1) throw Error(Errc::ParseError, "letter must be a one-key object: " + l.dump());
    const auto& [tag, arg] = *l.items().begin();
    if (tag == "S") {
      w.letters.push_back(Letter::S());
      continue;
    }
    IntMatrix m = int_matrix_from(arg);
    if (m.rows() != std::size_t(g) || m.cols() != std::size_t(g)) throw Error(Errc::DimensionMismatch, "letter matrix must be g x g");
    if (tag == "T") w.letters.push_back(Letter::T(m));
    else if (tag == "R") w.letters.push_back(Letter::R(m));
    else throw Error(Errc::ParseError, "unknown letter " + tag);
  }
  return w;
}

inline json to_json(const metaplectic::Word& w) {
  json letters = json::array();
  for (const auto& l : w.letters) {
    switch (l.kind) {
      case metaplectic::Letter::Kind::S: letters.push_back({{"S", nullptr}}); break;
      case metaplectic::Letter::Kind::T: letters.push_back({{"T", to_json(l.mat)}}); break;
      case metaplectic::Letter::Kind::R: letters.push_back({{"R", to_json(l.mat)}}); break;
    }
  }
  return json{{"letters", letters}, {"branch_flip", w.branch_flip}};
}

inline json to_json(const cyclotomic::CycMatrix& m, bool exact) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.entry_is_zero(i, j)) row.push_back(exact ? json(0) : num(cplx(0)));
      else if (exact) row.push_back(value_json(m.entry(i, j)));
      else row.push_back(num(m.entry(i, j).to_complex()));
    }
    rows.push_back(row);
  }
  return rows;
}

inline json error_json(const Error& e) { return json{{"error", {{"kind", e.kind()}, {"detail", e.detail()}}}}; }

}  // namespace siegel::io
