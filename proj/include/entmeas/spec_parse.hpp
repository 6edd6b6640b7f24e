// spec_parse.hpp
// Compact CLI grammar for FamilySpec plus JSON round-tripping.
//
//   bell:P0,P1,P2,P3            mcb:d=D,p=P0;P1;...      iso:d=D,lambda=L
//   dicke:N=N,k=K0;K1;...       dmix:N=N,terms=K@W;K@W   smolin
//   dur:N=N,x=X                 asp:d=D,N=N              abasis:N=N
//   gas:d=D,p=P,k=K             ghz:N=N,d=D              pbasis:dims=D1;D2,index=I

#pragma once

#include "entmeas/families.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>

namespace entmeas {

struct SpecParseError : std::runtime_error {
  size_t position;
  SpecParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_number(const std::string& tok, size_t pos) {
  // accept plain decimals and simple fractions "a/b"
  auto slash = tok.find('/');
  try {
    if (slash != std::string::npos) {
      double num = std::stod(tok.substr(0, slash));
      double den = std::stod(tok.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator");
      return num / den;
    }
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception& e) {
    throw SpecParseError(std::string("bad number '") + tok + "': " + e.what(), pos);
  }
}

inline int parse_int(const std::string& tok, size_t pos) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw SpecParseError("bad integer '" + tok + "'", pos);
  return v;
}

// key=value fields separated by commas; returns (key, value, offset-of-value)
inline std::vector<std::tuple<std::string, std::string, size_t>> parse_fields(
    const std::string& body, size_t base) {
  std::vector<std::tuple<std::string, std::string, size_t>> out;
  size_t start = 0;
  while (start <= body.size()) {
    size_t end = body.find(',', start);
    if (end == std::string::npos) end = body.size();
    std::string field = body.substr(start, end - start);
    auto eq = field.find('=');
    if (eq == std::string::npos)
      throw SpecParseError("expected key=value in '" + field + "'", base + start);
    out.emplace_back(field.substr(0, eq), field.substr(eq + 1), base + start + eq + 1);
    if (end == body.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace detail

inline FamilySpec parse_spec(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string body = (colon == std::string::npos) ? "" : text.substr(colon + 1);
  size_t base = (colon == std::string::npos) ? text.size() : colon + 1;

  FamilySpec spec;
  if (head == "bell") {
    spec.family = Family::BellDiagonal;
    auto toks = detail::split(body, ',');
    if (toks.size() != 4) throw SpecParseError("bell needs 4 weights", base);
    for (auto& t : toks) spec.probs.push_back(detail::parse_number(t, base));
  } else if (head == "smolin") {
    spec.family = Family::Smolin;
    if (!body.empty()) throw SpecParseError("smolin takes no parameters", base);
  } else {
    auto fields = detail::parse_fields(body, base);
    auto get = [&](const std::string& key) -> std::pair<std::string, size_t> {
      for (auto& [k, v, pos] : fields)
        if (k == key) return {v, pos};
      throw SpecParseError("missing field '" + key + "' for " + head, base);
    };
    if (head == "mcb") {
      spec.family = Family::MCB;
      spec.d = detail::parse_int(get("d").first, get("d").second);
      auto [pv, ppos] = get("p");
      for (auto& t : detail::split(pv, ';')) spec.probs.push_back(detail::parse_number(t, ppos));
    } else if (head == "iso") {
      spec.family = Family::Isotropic;
      spec.d = detail::parse_int(get("d").first, get("d").second);
      auto [lv, lpos] = get("lambda");
      spec.lambda = detail::parse_number(lv, lpos);
    } else if (head == "dicke") {
      spec.family = Family::Dicke;
      spec.N = detail::parse_int(get("N").first, get("N").second);
      auto [kv, kpos] = get("k");
      for (auto& t : detail::split(kv, ';')) spec.kvec.push_back(detail::parse_int(t, kpos));
    } else if (head == "dmix") {
      spec.family = Family::DickeMixture;
      spec.N = detail::parse_int(get("N").first, get("N").second);
      auto [tv, tpos] = get("terms");
      for (auto& t : detail::split(tv, ';')) {
        auto at = t.find('@');
        if (at == std::string::npos)
          throw SpecParseError("dmix term must be k@weight, got '" + t + "'", tpos);
        spec.mixture.emplace_back(detail::parse_int(t.substr(0, at), tpos),
                                  detail::parse_number(t.substr(at + 1), tpos));
      }
    } else if (head == "dur") {
      spec.family = Family::Dur;
      spec.N = detail::parse_int(get("N").first, get("N").second);
      auto [xv, xpos] = get("x");
      spec.x = detail::parse_number(xv, xpos);
    } else if (head == "asp") {
      spec.family = Family::AntisymProjectorState;
      spec.d = detail::parse_int(get("d").first, get("d").second);
      spec.N = detail::parse_int(get("N").first, get("N").second);
    } else if (head == "abasis") {
      spec.family = Family::AntisymBasis;
      spec.N = detail::parse_int(get("N").first, get("N").second);
    } else if (head == "gas") {
      spec.family = Family::GeneralizedAntisym;
      spec.d = detail::parse_int(get("d").first, get("d").second);
      spec.p = detail::parse_int(get("p").first, get("p").second);
      spec.k = detail::parse_int(get("k").first, get("k").second);
    } else if (head == "ghz") {
      spec.family = Family::GHZ;
      spec.N = detail::parse_int(get("N").first, get("N").second);
      spec.d = detail::parse_int(get("d").first, get("d").second);
    } else if (head == "pbasis") {
      spec.family = Family::ProductBasis;
      auto [dv, dpos] = get("dims");
      for (auto& t : detail::split(dv, ';')) spec.dims.push_back(detail::parse_int(t, dpos));
      spec.index = detail::parse_int(get("index").first, get("index").second);
    } else {
      throw SpecParseError("unknown family '" + head + "'", 0);
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(e.what(), 0);
  }
  return spec;
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::BellDiagonal: return "bell";
    case Family::MCB: return "mcb";
    case Family::Isotropic: return "iso";
    case Family::Dicke: return "dicke";
    case Family::DickeMixture: return "dmix";
    case Family::Smolin: return "smolin";
    case Family::Dur: return "dur";
    case Family::AntisymProjectorState: return "asp";
    case Family::AntisymBasis: return "abasis";
    case Family::GeneralizedAntisym: return "gas";
    case Family::GHZ: return "ghz";
    case Family::ProductBasis: return "pbasis";
  }
  return "?";
}

inline std::string to_spec_string(const FamilySpec& s) {
  std::ostringstream o;
  o.precision(17);
  o << family_name(s.family);
  auto join = [&](const auto& v, char sep) {
    std::ostringstream j;
    j.precision(17);
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) j << sep;
      j << v[i];
    }
    return j.str();
  };
  switch (s.family) {
    case Family::BellDiagonal: o << ":" << join(s.probs, ','); break;
    case Family::MCB: o << ":d=" << s.d << ",p=" << join(s.probs, ';'); break;
    case Family::Isotropic: o << ":d=" << s.d << ",lambda=" << s.lambda; break;
    case Family::Dicke: o << ":N=" << s.N << ",k=" << join(s.kvec, ';'); break;
    case Family::DickeMixture: {
      o << ":N=" << s.N << ",terms=";
      for (size_t i = 0; i < s.mixture.size(); ++i) {
        if (i) o << ';';
        o << s.mixture[i].first << '@' << s.mixture[i].second;
      }
      break;
    }
    case Family::Smolin: break;
    case Family::Dur: o << ":N=" << s.N << ",x=" << s.x; break;
    case Family::AntisymProjectorState: o << ":d=" << s.d << ",N=" << s.N; break;
    case Family::AntisymBasis: o << ":N=" << s.N; break;
    case Family::GeneralizedAntisym:
      o << ":d=" << s.d << ",p=" << s.p << ",k=" << s.k;
      break;
    case Family::GHZ: o << ":N=" << s.N << ",d=" << s.d; break;
    case Family::ProductBasis:
      o << ":dims=" << join(s.dims, ';') << ",index=" << s.index;
      break;
  }
  return o.str();
}

inline nlohmann::json spec_to_json(const FamilySpec& s) {
  nlohmann::json j;
  j["family"] = family_name(s.family);
  switch (s.family) {
    case Family::BellDiagonal: j["p"] = s.probs; break;
    case Family::MCB: j["d"] = s.d; j["p"] = s.probs; break;
    case Family::Isotropic: j["d"] = s.d; j["lambda"] = s.lambda; break;
    case Family::Dicke: j["N"] = s.N; j["k"] = s.kvec; break;
    case Family::DickeMixture: {
      j["N"] = s.N;
      nlohmann::json terms = nlohmann::json::array();
      for (auto& [k, w] : s.mixture) terms.push_back({{"k", k}, {"weight", w}});
      j["terms"] = terms;
      break;
    }
    case Family::Smolin: break;
    case Family::Dur: j["N"] = s.N; j["x"] = s.x; break;
    case Family::AntisymProjectorState: j["d"] = s.d; j["N"] = s.N; break;
    case Family::AntisymBasis: j["N"] = s.N; break;
    case Family::GeneralizedAntisym: j["d"] = s.d; j["p"] = s.p; j["k"] = s.k; break;
    case Family::GHZ: j["N"] = s.N; j["d"] = s.d; break;
    case Family::ProductBasis: j["dims"] = s.dims; j["index"] = s.index; break;
  }
  return j;
}

inline FamilySpec spec_from_json(const nlohmann::json& j) {
  FamilySpec s;
  std::string name = j.at("family").get<std::string>();
  auto match = [&](Family f) { return family_name(f) == name; };
  if (match(Family::BellDiagonal)) {
    s.family = Family::BellDiagonal;
    s.probs = j.at("p").get<std::vector<double>>();
  } else if (match(Family::MCB)) {
    s.family = Family::MCB;
    s.d = j.at("d").get<int>();
    s.probs = j.at("p").get<std::vector<double>>();
  } else if (match(Family::Isotropic)) {
    s.family = Family::Isotropic;
    s.d = j.at("d").get<int>();
    s.lambda = j.at("lambda").get<double>();
  } else if (match(Family::Dicke)) {
    s.family = Family::Dicke;
    s.N = j.at("N").get<int>();
    s.kvec = j.at("k").get<std::vector<int>>();
  } else if (match(Family::DickeMixture)) {
    s.family = Family::DickeMixture;
    s.N = j.at("N").get<int>();
    for (auto& t : j.at("terms"))
      s.mixture.emplace_back(t.at("k").get<int>(), t.at("weight").get<double>());
  } else if (match(Family::Smolin)) {
    s.family = Family::Smolin;
  } else if (match(Family::Dur)) {
    s.family = Family::Dur;
    s.N = j.at("N").get<int>();
    s.x = j.at("x").get<double>();
  } else if (match(Family::AntisymProjectorState)) {
    s.family = Family::AntisymProjectorState;
    s.d = j.at("d").get<int>();
    s.N = j.at("N").get<int>();
  } else if (match(Family::AntisymBasis)) {
    s.family = Family::AntisymBasis;
    s.N = j.at("N").get<int>();
  } else if (match(Family::GeneralizedAntisym)) {
    s.family = Family::GeneralizedAntisym;
    s.d = j.at("d").get<int>();
    s.p = j.at("p").get<int>();
    s.k = j.at("k").get<int>();
  } else if (match(Family::GHZ)) {
    s.family = Family::GHZ;
    s.N = j.at("N").get<int>();
    s.d = j.at("d").get<int>();
  } else if (match(Family::ProductBasis)) {
    s.family = Family::ProductBasis;
    s.dims = j.at("dims").get<std::vector<int>>();
    s.index = j.at("index").get<long>();
  } else {
    throw std::invalid_argument("unknown family in JSON: " + name);
  }
  s.validate();
  return s;
}

// State serialization: {layout: {dims, labels}, kind, data}.
inline nlohmann::json state_to_json(const QuantumState& s) {
  nlohmann::json j;
  j["layout"] = {{"dims", s.layout().dims()}, {"labels", s.layout().labels()}};
  if (s.is_pure()) {
    j["kind"] = "pure";
    nlohmann::json data = nlohmann::json::array();
    for (long i = 0; i < s.vector().size(); ++i)
      data.push_back({s.vector()(i).real(), s.vector()(i).imag()});
    j["data"] = data;
  } else {
    j["kind"] = "mixed";
    nlohmann::json data = nlohmann::json::array();
    const Mat& m = s.matrix();
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
    j["data"] = data;
  }
  return j;
}

inline QuantumState state_from_json(const nlohmann::json& j) {
  PartyLayout layout(j.at("layout").at("dims").get<std::vector<int>>(),
                     j.at("layout").at("labels").get<std::vector<std::string>>());
  const auto& data = j.at("data");
  if (j.at("kind") == "pure") {
    Vec v(layout.total_dim());
    for (long i = 0; i < v.size(); ++i)
      v(i) = cxd(data[static_cast<size_t>(i)][0].get<double>(), data[static_cast<size_t>(i)][1].get<double>());
    return QuantumState::pure(std::move(v), layout);
  }
  long dt = layout.total_dim();
  Mat m(dt, dt);
  for (long r = 0; r < dt; ++r)
    for (long c = 0; c < dt; ++c) {
      const auto& e = data[static_cast<size_t>(r * dt + c)];
      m(r, c) = cxd(e[0].get<double>(), e[1].get<double>());
    }
  return QuantumState::mixed(std::move(m), layout);
}

}  // namespace entmeas
