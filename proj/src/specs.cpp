#include "specs.hpp"

#include <cctype>
#include <regex>

namespace glattice {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& spec, std::size_t pos) {
  std::string near = pos < spec.size() ? "'" + spec.substr(pos, 8) + "'" : "end of input";
  throw Error(Error::Kind::parse, what + " at position " + std::to_string(pos) + " near " + near + " in \"" + spec + "\"");
}

class GroupParser {
 public:
  explicit GroupParser(const std::string& s) : s_(s) {}

  GroupPtr parse_all() {
    GroupPtr g = parse();
    if (pos_ != s_.size()) fail("unexpected trailing token", s_, pos_);
    return g;
  }

  GroupPtr parse() {
    if (take("X(")) {
      GroupPtr a = parse();
      expect(',');
      GroupPtr b = parse();
      expect(')');
      return direct_product(a, b);
    }
    if (take("SD:")) {
      int n = number();
      expect(',');
      int m = number();
      expect(',');
      int r = number();
      return semidirect(n, m, r);
    }
    if (take("C:")) return cyclic(number());
    if (take("D:")) return dihedral(number());
    if (take("S:")) return symmetric(number());
    fail("expected a group family C:, D:, SD:, S: or X(", s_, pos_);
  }

  std::size_t pos() const { return pos_; }

 private:
  bool take(const char* lit) {
    const std::string l(lit);
    if (s_.compare(pos_, l.size(), l) == 0) {
      pos_ += l.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'", s_, pos_);
    ++pos_;
  }
  int number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number", s_, start);
    if (pos_ - start > 6) fail("number too large", s_, start);
    return std::stoi(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::vector<std::pair<std::string, std::size_t>> split(const std::string& s, char sep) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  return out;
}

std::optional<int> power_token(const GroupPtr& g, const std::string& t) {
  static const std::regex re("^(?:s(\\d*))?(?:t(\\d*))?$");
  std::smatch m;
  if (t.empty() || !std::regex_match(t, m, re)) return std::nullopt;
  int x = g->identity();
  if (m[0].str().find('s') != std::string::npos) {
    if (!g->sigma()) return std::nullopt;
    const long k = m[1].str().empty() ? 1 : std::stol(m[1].str());
    x = g->power(*g->sigma(), k);
  }
  if (m[0].str().find('t') != std::string::npos) {
    if (!g->tau()) return std::nullopt;
    const long k = m[2].str().empty() ? 1 : std::stol(m[2].str());
    x = g->mul(x, g->power(*g->tau(), k));
  }
  return x;
}

// Finds the matching ')' for an opening '(' at open.
std::size_t find_group_end(const std::string& s, std::size_t from, const char* stops) {
  int depth = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') {
      if (depth == 0) return i;
      --depth;
    } else if (depth == 0 && std::string(stops).find(s[i]) != std::string::npos) return i;
  }
  return s.size();
}

}  // namespace

GroupPtr parse_group(const std::string& spec) { return GroupParser(spec).parse_all(); }

int parse_element(const GroupPtr& g, const std::string& token) {
  if (auto x = g->find(token)) return *x;
  if (token.size() <= 12)
    if (auto x = power_token(g, token)) return *x;
  throw Error(Error::Kind::parse, "unknown element '" + token + "' of " + g->label());
}

std::vector<int> parse_elements(const GroupPtr& g, const std::string& list) {
  std::vector<int> out;
  for (const auto& [tok, pos] : split(list, ',')) {
    if (tok.empty()) fail("empty element name", list, pos);
    try {
      out.push_back(parse_element(g, tok));
    } catch (const Error&) {
      fail("unknown element '" + tok + "' of " + g->label(), list, pos);
    }
  }
  return out;
}

Subgroup parse_subgroup(const GroupPtr& g, const std::string& spec) {
  if (spec == "whole") return whole_group(g);
  if (spec == "trivial") return trivial_subgroup(g);
  if (spec.rfind("sylow", 0) == 0) {
    const std::string p = spec.substr(5);
    if (p.empty() || p.size() > 3 || !std::all_of(p.begin(), p.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("expected a prime after 'sylow'", spec, 5);
    const int q = std::stoi(p);
    if (!is_prime(q)) fail("sylow index is not prime", spec, 5);
    return sylow(g, q);
  }
  return generated_subgroup(g, parse_elements(g, spec));
}

std::vector<int> default_connection_set(const GroupPtr& g) {
  std::vector<int> s;
  if (g->sigma()) s.push_back(*g->sigma());
  if (g->tau()) s.push_back(*g->tau());
  if (!s.empty() && closure(*g, s) == whole_group(g).mask()) return s;
  return g->generators();
}

GLattice parse_lattice(const GroupPtr& g, const std::string& spec) {
  auto arg_after = [&](const std::string& prefix) { return spec.substr(prefix.size()); };
  auto starts = [&](const std::string& prefix) { return spec.rfind(prefix, 0) == 0; };
  if (spec == "trivial") return trivial(g);
  if (spec == "regular") return regular(g);
  if (spec == "aug") return augmentation_lattice(regular_gset(g));
  if (spec == "aug-dual") return dual(augmentation_lattice(regular_gset(g)));
  if (starts("free:")) {
    const std::string k = arg_after("free:");
    if (k.empty() || k.size() > 2 || !std::all_of(k.begin(), k.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("expected a copy count", spec, 5);
    return free_lattice(g, std::stoi(k));
  }
  if (starts("sign:")) return sign_lattice(generated_subgroup(g, parse_elements(g, arg_after("sign:"))));
  if (starts("cosets:")) return coset_lattice(generated_subgroup(g, parse_elements(g, arg_after("cosets:"))));
  if (spec == "flows:cayley") return flow_lattice(cayley_graph(g, default_connection_set(g))).lattice;
  if (starts("flows:cayley:")) return flow_lattice(cayley_graph(g, parse_elements(g, arg_after("flows:cayley:")))).lattice;
  if (spec == "flows:complete") return flow_lattice(complete_edges(regular_gset(g), false)).lattice;
  if (spec == "flows:complete:loops") return flow_lattice(complete_edges(regular_gset(g), true)).lattice;
  if (starts("flows:cosets:"))
    return flow_lattice(complete_edges(coset_gset(generated_subgroup(g, parse_elements(g, arg_after("flows:cosets:")))), false))
        .lattice;
  fail("unknown lattice kind", spec, 0);
}

GGraph parse_graph(const std::string& spec) {
  auto group_part = [&](std::size_t start, const char* stops) {
    const std::size_t end = find_group_end(spec, start, stops);
    GroupParser p(spec.substr(start, end - start));
    try {
      GroupPtr g = p.parse_all();
      return std::make_pair(g, end);
    } catch (const Error& e) {
      if (e.kind() != Error::Kind::parse) throw;
      fail(std::string("bad group spec: ") + e.what(), spec, start);
    }
  };
  auto close = [&](std::size_t pos) {
    if (spec.empty() || spec.back() != ')' || pos >= spec.size()) fail("expected ')'", spec, spec.size());
  };
  if (spec.rfind("cayley(", 0) == 0) {
    auto [g, end] = group_part(7, ";");
    if (end >= spec.size() || spec[end] != ';') fail("expected ';'", spec, end);
    close(end);
    const std::string list = spec.substr(end + 1, spec.size() - end - 2);
    return cayley_graph(g, parse_elements(g, list));
  }
  if (spec.rfind("cosets(", 0) == 0) {
    auto [g, end] = group_part(7, ";");
    if (end >= spec.size() || spec[end] != ';') fail("expected ';'", spec, end);
    close(end);
    const std::string list = spec.substr(end + 1, spec.size() - end - 2);
    return complete_edges(coset_gset(generated_subgroup(g, parse_elements(g, list))), false);
  }
  if (spec.rfind("complete(", 0) == 0) {
    auto [g, end] = group_part(9, ";/");
    std::optional<GSet> x;
    std::size_t semi = end;
    if (end < spec.size() && spec[end] == '/') {
      semi = spec.find(';', end);
      if (semi == std::string::npos) fail("expected ';'", spec, spec.size());
      const std::string sub = spec.substr(end + 1, semi - end - 1);
      if (sub == "natural") x = natural_gset(g);
      else x = coset_gset(generated_subgroup(g, parse_elements(g, sub)));
    } else {
      x = regular_gset(g);
    }
    if (semi >= spec.size() || spec[semi] != ';') fail("expected ';'", spec, semi);
    close(semi);
    const std::string opt = spec.substr(semi + 1, spec.size() - semi - 2);
    if (opt != "loops=0" && opt != "loops=1") fail("expected loops=0 or loops=1", spec, semi + 1);
    return complete_edges(*x, opt == "loops=1");
  }
  fail("expected cayley(, complete( or cosets(", spec, 0);
}

}  // namespace glattice
