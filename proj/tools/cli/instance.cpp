#include "instance.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polyrank::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  if (s.empty() || s.size() > 6) fail(line, "bad count '" + s + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail(line, "bad count '" + s + "'");
  return std::stoul(s);
}

// "{ (0,1)=2, (1,1)=0 }" -> points and values
FunctionTable parse_table(const std::string& body, const Ring& ring, std::size_t n, std::size_t line) {
  std::vector<Point> pts;
  std::vector<Elem> vals;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
  };
  auto number = [&]() -> Elem {
    skip();
    const std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (start == i || i - start > 9) fail(line, "table: expected a number");
    const auto v = std::stoul(body.substr(start, i - start));
    if (v >= ring.size()) fail(line, "table: entry " + std::to_string(v) + " outside the ring");
    return static_cast<Elem>(v);
  };
  skip();
  while (i < body.size()) {
    if (body[i] != '(') fail(line, "table: expected '('");
    ++i;
    Point p;
    for (;;) {
      p.push_back(number());
      while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
      if (i < body.size() && body[i] == ',') {
        ++i;
        continue;
      }
      if (i < body.size() && body[i] == ')') {
        ++i;
        break;
      }
      fail(line, "table: unterminated point");
    }
    if (p.size() != n) fail(line, "table: point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i >= body.size() || body[i] != '=') fail(line, "table: expected '='");
    ++i;
    vals.push_back(number());
    pts.push_back(std::move(p));
    skip();
  }
  try {
    return FunctionTable(ring, n, std::move(pts), std::move(vals));
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

}  // namespace

const MultiPoly& Instance::poly(const std::string& name) const {
  auto it = polys.find(name);
  if (it == polys.end()) throw InputError("no polynomial named '" + name + "'");
  return it->second;
}

const FunctionTable& Instance::table(const std::string& name) const {
  auto it = tables.find(name);
  if (it == tables.end()) throw InputError("no function table named '" + name + "'");
  return it->second;
}

PolyCollection Instance::collection(const std::string& names) const {
  std::vector<MultiPoly> ps;
  std::stringstream ss(names);
  std::string item;
  while (std::getline(ss, item, ',')) ps.push_back(poly(trim(item)));
  if (ps.empty()) throw InputError("empty collection");
  for (const auto& p : ps)
    if (p.num_vars() != ps.front().num_vars()) throw InputError("collection mixes variable counts");
  return PolyCollection(std::move(ps));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Instance parse_instance(std::string_view text) {
  Instance inst;
  inst.digest = fnv1a_hex(text);
  bool have_ring = false, have_vars = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t at = lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(at, "expected 'key: value'");
    std::string key = trim(std::string_view(line).substr(0, colon));
    std::string value = trim(std::string_view(line).substr(colon + 1));

    if (key == "ring") {
      if (have_ring) fail(at, "ring given twice");
      try {
        inst.ring = ring_from_text(value);
      } catch (const Error& e) {
        fail(at, e.what());
      }
      have_ring = true;
      continue;
    }
    if (key == "vars") {
      if (have_vars) fail(at, "vars given twice");
      inst.vars = parse_count(value, at);
      have_vars = true;
      continue;
    }

    std::size_t n = inst.vars;
    bool own_n = false;
    if (const auto br = key.find('['); br != std::string::npos) {
      if (key.back() != ']') fail(at, "bad key '" + key + "'");
      n = parse_count(key.substr(br + 1, key.size() - br - 2), at);
      own_n = true;
      key = trim(std::string_view(key).substr(0, br));
    }
    if (!is_identifier(key)) fail(at, "bad key '" + key + "'");
    if (!have_ring || (!have_vars && !own_n)) fail(at, "'" + key + "' before ring and vars");
    if (inst.polys.count(key) || inst.tables.count(key)) fail(at, "'" + key + "' defined twice");

    if (value.rfind("table", 0) == 0) {
      std::string body = trim(std::string_view(value).substr(5));
      while (body.find('}') == std::string::npos && std::getline(in, raw)) {
        ++lineno;
        body += ' ' + trim(raw);
      }
      if (body.empty() || body.front() != '{' || body.back() != '}') fail(at, "table: expected '{ ... }'");
      inst.tables.emplace(key, parse_table(body.substr(1, body.size() - 2), inst.ring, n, at));
      continue;
    }
    if (!std::isupper(static_cast<unsigned char>(key[0]))) fail(at, "unknown key '" + key + "'");
    try {
      inst.polys.emplace(key, parse_poly(value, inst.ring, n));
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }
  if (!have_ring) throw InputError("instance has no ring line");
  if (!have_vars) throw InputError("instance has no vars line");
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace polyrank::cli
