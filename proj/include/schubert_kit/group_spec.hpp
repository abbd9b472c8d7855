#pragma once

#include "schubert_kit/errors.hpp"
#include "schubert_kit/root_datum.hpp"

#include <json.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace schubert_kit {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

inline SimpleType parse_simple_type(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
  case 'A': return SimpleType::A;
  case 'B': return SimpleType::B;
  case 'C': return SimpleType::C;
  case 'D': return SimpleType::D;
  case 'E': return SimpleType::E;
  case 'F': return SimpleType::F;
  case 'G': return SimpleType::G;
  default: throw InvalidInput(std::string("unknown simple type '") + c + "'");
  }
}

inline int parse_positive_int(std::string_view s, const char *what) {
  if (s.empty())
    throw InvalidInput(std::string("missing ") + what);
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidInput(std::string("malformed ") + what + " '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
    if (v > 1000)
      throw InvalidInput(std::string(what) + " too large");
  }
  return v;
}

inline FactorSpec parse_factor(std::string_view token) {
  const std::string t = trim(token);
  const auto colon = t.find(':');
  if (colon == std::string::npos || colon < 2)
    throw InvalidInput("factor '" + t + "' must look like <Type><rank>:<sc|adjoint>");
  FactorSpec f;
  f.type = parse_simple_type(t[0]);
  f.rank = parse_positive_int(std::string_view(t).substr(1, colon - 1), "rank");
  const std::string iso = t.substr(colon + 1);
  if (iso == "sc")
    f.isogeny = Isogeny::SimplyConnected;
  else if (iso == "adjoint" || iso == "ad")
    f.isogeny = Isogeny::Adjoint;
  else
    throw InvalidInput("unknown isogeny '" + iso + "' (text form accepts sc or adjoint)");
  check_type_rank(f.type, f.rank);
  return f;
}

} // namespace detail

/// Parse `A3:adjoint x D4:sc +T1` (factors joined by `x`, optional central torus).
inline GroupSpec parse_group_spec(std::string_view text) {
  GroupSpec spec;
  std::string body = detail::trim(text);
  if (const auto plus = body.find('+'); plus != std::string::npos) {
    const std::string torus = detail::trim(std::string_view(body).substr(plus + 1));
    if (torus.size() < 2 || (torus[0] != 'T' && torus[0] != 't'))
      throw InvalidInput("central torus must be written +T<r>");
    spec.central_torus_rank = detail::parse_positive_int(std::string_view(torus).substr(1), "torus rank");
    body = detail::trim(std::string_view(body).substr(0, plus));
  }
  if (body.empty()) {
    if (spec.central_torus_rank == 0)
      throw InvalidInput("empty group spec");
    return spec;
  }
  // a bare `T<r>` is a pure torus
  if ((body[0] == 'T' || body[0] == 't') && body.find(':') == std::string::npos) {
    spec.central_torus_rank += detail::parse_positive_int(std::string_view(body).substr(1), "torus rank");
    return spec;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    const bool sep = i == body.size() || ((body[i] == 'x' || body[i] == 'X') && i > 0 &&
                                          (std::isspace(static_cast<unsigned char>(body[i - 1])) ||
                                           std::isalpha(static_cast<unsigned char>(body[i - 1])) ||
                                           std::isdigit(static_cast<unsigned char>(body[i - 1]))));
    if (sep) {
      spec.factors.push_back(detail::parse_factor(std::string_view(body).substr(start, i - start)));
      start = i + 1;
    }
  }
  return spec;
}

/// JSON form: {"factors":[{"type":"D","rank":4,"isogeny":"intermediate","lattice":[[...],...]}],
/// "central_torus_rank":0}. Lattice columns generate X_* in fundamental-coweight coordinates.
inline GroupSpec parse_group_spec_json(const nlohmann::json &j) {
  GroupSpec spec;
  try {
    spec.central_torus_rank = j.value("central_torus_rank", 0);
    for (const auto &f : j.at("factors")) {
      FactorSpec fs;
      const std::string type = f.at("type").get<std::string>();
      if (type.size() != 1)
        throw InvalidInput("type must be one letter");
      fs.type = detail::parse_simple_type(type[0]);
      fs.rank = f.at("rank").get<int>();
      check_type_rank(fs.type, fs.rank);
      const std::string iso = f.value("isogeny", std::string("sc"));
      if (iso == "sc")
        fs.isogeny = Isogeny::SimplyConnected;
      else if (iso == "adjoint")
        fs.isogeny = Isogeny::Adjoint;
      else if (iso == "intermediate") {
        fs.isogeny = Isogeny::Intermediate;
        const auto &rows = f.at("lattice");
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows.at(0).size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != m.cols())
            throw InvalidInput("ragged lattice matrix");
          for (std::size_t k = 0; k < m.cols(); ++k)
            m(i, k) = rows[i][k].get<std::int64_t>();
        }
        fs.lattice = m;
      } else
        throw InvalidInput("unknown isogeny '" + iso + "'");
      spec.factors.push_back(std::move(fs));
    }
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput(std::string("malformed group JSON: ") + e.what());
  }
  return spec;
}

/// Accepts either the text grammar or a JSON object (detected by a leading '{').
inline GroupSpec parse_group_argument(std::string_view arg) {
  const std::string t = detail::trim(arg);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception &e) {
      throw InvalidInput(std::string("malformed group JSON: ") + e.what());
    }
    return parse_group_spec_json(j);
  }
  return parse_group_spec(t);
}

} // namespace schubert_kit
