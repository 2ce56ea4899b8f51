#pragma once

/**
 * @file format.hpp
 * @brief Textual exchange formats: field elements as generator exponents
 *        ("Z" for zero), points and vectors as colon-separated exponent
 *        lists, linear sets and spread sets as JSON documents.
 */

#include <sstream>
#include <string>

#include <json.hpp>

#include "semifield.hpp"

namespace linset {

inline std::string fe_to_string(Fe a) { return a.is_zero() ? "Z" : std::to_string(a.v); }

inline Fe fe_from_string(const GaloisField& F, const std::string& s) {
  if (s == "Z" || s == "z") return fe_zero();
  return F.from_exp(std::stoll(s));
}

inline std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ":";
    os << fe_to_string(v[i]);
  }
  return os.str();
}

inline Vec vec_from_string(const GaloisField& F, const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) v.push_back(fe_from_string(F, tok));
  return v;
}

/// `GF(p^e)` or `GF(p)`.
inline std::pair<long long, int> parse_field_spec(const std::string& s) {
  auto fail = [&] { throw Error("bad field spec '" + s + "', expected GF(p^e)"); };
  if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')') fail();
  std::string body = s.substr(3, s.size() - 4);
  auto caret = body.find('^');
  long long p = 0;
  int e = 1;
  try {
    if (caret == std::string::npos) {
      p = std::stoll(body);
    } else {
      p = std::stoll(body.substr(0, caret));
      e = std::stoi(body.substr(caret + 1));
    }
  } catch (const std::exception&) {
    fail();
  }
  return {p, e};
}

// ---- linear set files -------------------------------------------------------

inline nlohmann::ordered_json linear_set_to_json(const Tower& tw, const FqLinearSet& L) {
  nlohmann::ordered_json j;
  j["p"] = tw.p();
  j["h"] = tw.h();
  j["t"] = tw.t();
  j["n"] = tw.n();
  j["r"] = L.sp.r;
  j["coord_degree"] = L.sp.coord_d;
  j["base_degree"] = L.base_d;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < L.rank(); ++i) rows.push_back(vec_to_string(L.basis.row(i)));
  j["basis"] = rows;
  return j;
}

struct LoadedLinearSet {
  std::shared_ptr<Tower> tower;
  FqLinearSet set;
};

inline LoadedLinearSet linear_set_from_json(const nlohmann::json& j) {
  auto tower = std::make_shared<Tower>(j.at("p").get<long long>(), j.at("h").get<int>(),
                                       j.at("t").get<int>(), j.at("n").get<int>());
  ProjSpace sp{tower.get(), j.at("coord_degree").get<int>(), j.at("r").get<int>()};
  std::vector<Vec> rows;
  for (const auto& s : j.at("basis")) rows.push_back(vec_from_string(tower->F(), s.get<std::string>()));
  FqLinearSet L = make_linear_set(sp, j.at("base_degree").get<int>(), rows);
  return LoadedLinearSet{tower, std::move(L)};
}

// ---- spread set files -------------------------------------------------------

inline nlohmann::ordered_json spread_set_to_json(const Tower& tw, const SpreadSetSemifield& C,
                                                 const std::string& family_guess = "") {
  nlohmann::ordered_json j;
  j["q"] = tw.q();
  j["t"] = tw.t();
  j["n"] = tw.n();
  if (!family_guess.empty()) j["family"] = family_guess;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& f : C.basis) rows.push_back(vec_to_string(f.c));
  j["basis"] = rows;
  return j;
}

struct LoadedSpreadSet {
  std::shared_ptr<Tower> tower;
  SpreadSetSemifield set;
  std::string family_guess;
};

inline LoadedSpreadSet spread_set_from_json(const nlohmann::json& j) {
  long long q = j.at("q").get<long long>();
  int t = j.at("t").get<int>(), n = j.at("n").get<int>();
  long long p = q;
  int h = 1;
  for (long long d = 2; d * d <= p; ++d)
    while (p % d == 0 && p != d) {
      p /= d;
      ++h;
    }
  if (!is_prime(p)) throw Error("spread set file: q is not a prime power");
  if (ipow(p, h) != q) throw Error("spread set file: q is not a prime power");
  auto tower = std::make_shared<Tower>(p, h, t, n);
  EndoSpace E = endo_space(*tower, tower->d_qt(), tower->d_qnt());
  std::vector<QPoly> basis;
  for (const auto& s : j.at("basis")) {
    QPoly f{vec_from_string(tower->F(), s.get<std::string>())};
    if (static_cast<int>(f.c.size()) != n) throw Error("spread set file: wrong coefficient count");
    basis.push_back(f);
  }
  LoadedSpreadSet out{tower, make_spread_set(E, tower->h(), std::move(basis)),
                      j.contains("family") ? j.at("family").get<std::string>() : ""};
  return out;
}

inline nlohmann::ordered_json subspace_to_json(const ProjSubspace& s) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < s.basis.rows; ++i) rows.push_back(vec_to_string(s.basis.row(i)));
  return rows;
}

}  // namespace linset
