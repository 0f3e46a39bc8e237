#include "mipkit/presentation.hpp"

#include <fmt/format.h>

#include <cctype>
#include <optional>
#include <sstream>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"

namespace mipkit {

std::string Presentation::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line, const char* what) {
  if (s.empty()) throw ParseError(line, fmt::format("expected {}", what));
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, fmt::format("bad {} '{}'", what, s));
  }
  if (pos != s.size()) throw ParseError(line, fmt::format("bad {} '{}'", what, s));
  return static_cast<int>(v);
}

int parse_gen(const std::string& s, int m, int line) {
  if (s.size() < 2 || s[0] != 'g') throw ParseError(line, fmt::format("expected generator, got '{}'", s));
  int i = parse_int(s.substr(1), line, "generator index");
  if (i < 1 || i > m) throw ParseError(line, fmt::format("generator g{} out of range", i));
  return i - 1;
}

Elem parse_word(const std::string& text, int p, int m, int floor, int line) {
  Elem w(m);
  std::string t = text;
  for (char& c : t)
    if (c == '*') c = ' ';
  auto toks = split_ws(t);
  if (toks.empty()) throw ParseError(line, "empty word");
  if (toks.size() == 1 && toks[0] == "1") return w;
  int last = -1;
  for (const auto& tok : toks) {
    auto caret = tok.find('^');
    int k = parse_gen(tok.substr(0, caret), m, line);
    int e = caret == std::string::npos ? 1 : parse_int(tok.substr(caret + 1), line, "exponent");
    if (k <= floor) throw ParseError(line, fmt::format("non-weighted presentation: word uses g{}", k + 1));
    if (k <= last) throw ParseError(line, "word generators must be strictly increasing");
    if (e < 1 || e >= p) throw ParseError(line, fmt::format("exponent {} outside 1..{}", e, p - 1));
    w[k] = static_cast<std::uint8_t>(e);
    last = k;
  }
  return w;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::optional<int> p, m;
  Metadata meta;
  std::vector<std::optional<Elem>> powers;
  std::vector<std::vector<std::optional<Elem>>> comms;
  std::istringstream in{std::string(text)};
  int line = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line;
    std::string s = trim(raw);
    if (s.rfind("#@", 0) == 0) {
      std::string body = trim(s.substr(2));
      auto colon = body.find(':');
      if (colon != std::string::npos) meta.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
      continue;
    }
    if (auto hash = s.find('#'); hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    std::string lhs = s, rhs;
    if (auto eq = s.find('='); eq != std::string::npos) {
      lhs = trim(s.substr(0, eq));
      rhs = trim(s.substr(eq + 1));
    }
    auto toks = split_ws(lhs);
    const std::string& kw = toks[0];
    if (kw == "p") {
      if (toks.size() != 2 || !rhs.empty()) throw ParseError(line, "expected 'p <prime>'");
      if (p) throw ParseError(line, "duplicate 'p' line");
      p = parse_int(toks[1], line, "prime");
      if (!fp::is_prime(*p) || *p > 127) throw ParseError(line, fmt::format("{} is not a supported prime", *p));
    } else if (kw == "gens") {
      if (toks.size() != 2 || !rhs.empty()) throw ParseError(line, "expected 'gens <m>'");
      if (!p) throw ParseError(line, "'gens' before 'p'");
      if (m) throw ParseError(line, "duplicate 'gens' line");
      m = parse_int(toks[1], line, "generator count");
      if (*m < 0 || *m > kMaxGens) throw ParseError(line, fmt::format("generator count must be in 0..{}", kMaxGens));
      powers.assign(*m, std::nullopt);
      comms.assign(*m, std::vector<std::optional<Elem>>(*m));
    } else if (kw == "pow") {
      if (!m) throw ParseError(line, "'pow' before 'gens'");
      if (toks.size() != 2 || rhs.empty()) throw ParseError(line, "expected 'pow g<i> = <word>'");
      int i = parse_gen(toks[1], *m, line);
      if (powers[i]) throw ParseError(line, fmt::format("duplicate power relation for g{}", i + 1));
      powers[i] = parse_word(rhs, *p, *m, i, line);
    } else if (kw == "comm") {
      if (!m) throw ParseError(line, "'comm' before 'gens'");
      if (toks.size() != 3 || rhs.empty()) throw ParseError(line, "expected 'comm g<j> g<i> = <word>'");
      int j = parse_gen(toks[1], *m, line);
      int i = parse_gen(toks[2], *m, line);
      if (j <= i) throw ParseError(line, "comm g<j> g<i> requires j > i");
      if (comms[j][i]) throw ParseError(line, fmt::format("duplicate commutator relation for g{} g{}", j + 1, i + 1));
      comms[j][i] = parse_word(rhs, *p, *m, j, line);
    } else {
      throw ParseError(line, fmt::format("unknown directive '{}'", kw));
    }
  }
  if (!p) throw ParseError(0, "missing 'p' line");
  if (!m) throw ParseError(0, "missing 'gens' line");
  std::vector<Elem> pw;
  std::vector<std::vector<Elem>> cm(*m, std::vector<Elem>(*m, Elem(*m)));
  for (int i = 0; i < *m; ++i) {
    pw.push_back(powers[i].value_or(Elem(*m)));
    for (int k = 0; k < i; ++k) cm[i][k] = comms[i][k].value_or(Elem(*m));
  }
  return Presentation{PcGroup(*p, std::move(pw), std::move(cm)), std::move(meta)};
}

std::string serialize_presentation(const PcGroup& g, const Metadata& meta) {
  auto word = [](const Elem& w) {
    std::string s;
    for (int k = 0; k < w.size(); ++k) {
      if (!w[k]) continue;
      if (!s.empty()) s += ' ';
      s += fmt::format("g{}^{}", k + 1, w[k]);
    }
    return s.empty() ? std::string("1") : s;
  };
  std::string out;
  for (const auto& [k, v] : meta) out += fmt::format("#@ {}: {}\n", k, v);
  out += fmt::format("p {}\ngens {}\n", g.prime(), g.ngens());
  for (int i = 0; i < g.ngens(); ++i)
    if (!g.power_relation(i).is_identity()) out += fmt::format("pow g{} = {}\n", i + 1, word(g.power_relation(i)));
  for (int j = 0; j < g.ngens(); ++j)
    for (int i = 0; i < j; ++i)
      if (!g.comm_relation(j, i).is_identity())
        out += fmt::format("comm g{} g{} = {}\n", j + 1, i + 1, word(g.comm_relation(j, i)));
  return out;
}

}  // namespace mipkit
