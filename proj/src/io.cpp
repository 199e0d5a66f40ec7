#include "pythag/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "pythag/errors.hpp"

namespace pythag {

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

std::int64_t parse_int(std::string_view text, std::size_t& pos, bool allow_sign) {
  std::size_t start = pos;
  bool negative = false;
  if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
    throw ParseError("expected integer", start);
  }
  std::int64_t value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    if (value > (INT64_MAX - 9) / 10) throw ParseError("integer too large", start);
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  return negative ? -value : value;
}

ThompsonElement parse_term(std::string_view text, std::size_t& pos) {
  if (text[pos] == 'x') {
    ++pos;
    auto n = parse_int(text, pos, false);
    ThompsonElement g = generator(static_cast<std::size_t>(n));
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      g = power(g, parse_int(text, pos, true));
    }
    return g;
  }
  if (text[pos] == '[') {
    ++pos;
    Tree range = parse_tree(text, pos);
    skip_space(text, pos);
    if (pos >= text.size() || text[pos] != ',') throw ParseError("expected ','", pos);
    ++pos;
    Tree domain = parse_tree(text, pos);
    skip_space(text, pos);
    if (pos >= text.size() || text[pos] != ']') throw ParseError("expected ']'", pos);
    std::size_t close = pos++;
    if (range.leaf_count() != domain.leaf_count()) {
      throw ParseError("tree pair leaf counts differ (" + std::to_string(range.leaf_count()) + " vs " +
                           std::to_string(domain.leaf_count()) + ")",
                       close);
    }
    return ThompsonElement::from_pair(range, domain);
  }
  throw ParseError("expected 'x' or '['", pos);
}

}  // namespace

ThompsonElement parse_element(std::string_view text) {
  std::size_t pos = 0;
  std::vector<ThompsonElement> terms;
  skip_space(text, pos);
  while (pos < text.size()) {
    terms.push_back(parse_term(text, pos));
    skip_space(text, pos);
  }
  if (terms.empty()) throw ParseError("empty element", 0);
  ThompsonElement result = terms.back();
  for (std::size_t k = terms.size() - 1; k-- > 0;) result = multiply(terms[k], result);
  return result;
}

std::complex<double> parse_complex(std::string_view raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw ParseError("empty complex number", 0);

  auto read_real = [&](std::size_t& pos) -> double {
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) {
      // A bare "i", "+i" or "-i" has unit coefficient.
      std::size_t p = pos;
      double sign = 1.0;
      if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
        sign = text[p] == '-' ? -1.0 : 1.0;
        ++p;
      }
      if (p < text.size() && text[p] == 'i') {
        pos = p;
        return sign;
      }
      throw ParseError("expected number", pos);
    }
    pos += static_cast<std::size_t>(end - begin);
    return v;
  };

  std::size_t pos = 0;
  double first = read_real(pos);
  if (pos == text.size()) return {first, 0.0};
  if (text[pos] == 'i') {
    if (pos + 1 != text.size()) throw ParseError("trailing characters after imaginary part", pos + 1);
    return {0.0, first};
  }
  if (text[pos] != '+' && text[pos] != '-') throw ParseError("expected '+' or '-'", pos);
  double second = read_real(pos);
  if (pos >= text.size() || text[pos] != 'i') throw ParseError("expected 'i'", pos);
  if (pos + 1 != text.size()) throw ParseError("trailing characters after imaginary part", pos + 1);
  return {first, second};
}

Vec parse_limit_vector(std::string_view text, std::shared_ptr<const Pair> pair) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected ':' after tree", text.size());
  Tree t;
  try {
    t = parse_tree(text.substr(0, colon));
  } catch (const ParseError& e) {
    throw ParseError("bad tree in vector literal", e.offset());
  }
  std::vector<std::string_view> parts;
  std::size_t start = colon + 1;
  for (;;) {
    auto semi = text.find(';', start);
    parts.push_back(text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (parts.size() != t.leaf_count()) {
    throw ParseError("vector literal has " + std::to_string(parts.size()) + " leaf values for a tree with " +
                         std::to_string(t.leaf_count()) + " leaves",
                     colon);
  }
  Matrix values(pair->dim(), static_cast<Eigen::Index>(parts.size()));
  for (std::size_t j = 0; j < parts.size(); ++j) {
    std::vector<std::string_view> entries;
    std::size_t s = 0;
    for (;;) {
      auto comma = parts[j].find(',', s);
      entries.push_back(parts[j].substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    if (static_cast<Eigen::Index>(entries.size()) != pair->dim()) {
      throw ParseError("leaf value " + std::to_string(j) + " has " + std::to_string(entries.size()) +
                           " entries, pair dimension is " + std::to_string(pair->dim()),
                       colon);
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(entries[i]);
    }
  }
  return Vec(std::move(pair), std::move(t), std::move(values));
}

namespace {

std::complex<double> json_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ContractError("complex entries must be [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix json_matrix(const nlohmann::json& j, Eigen::Index d, const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) {
    throw ContractError(std::string("pair matrix ") + name + " must have " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw ContractError(std::string("pair matrix ") + name + " must have " + std::to_string(d) + " columns");
    }
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = json_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

}  // namespace

Pair parse_pair_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    double tol = j.value("tol", 1e-12);
    if (j.contains("a") || j.contains("b")) {
      if (!j.contains("a") || !j.contains("b")) throw ContractError("scalar pair needs both \"a\" and \"b\"");
      return scalar_pair(json_complex(j["a"]), json_complex(j["b"]), tol);
    }
    if (!j.contains("dim") || !j.contains("A") || !j.contains("B")) {
      throw ContractError("pair file needs \"dim\", \"A\" and \"B\" (or the scalar \"a\"/\"b\" form)");
    }
    auto d = j["dim"].get<Eigen::Index>();
    if (d < 1) throw ContractError("pair dimension must be positive");
    return Pair(json_matrix(j["A"], d, "A"), json_matrix(j["B"], d, "B"), tol);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed pair file: ") + e.what());
  }
}

Pair load_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open pair file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_pair_json(buffer.str());
}

std::string pair_to_json(const Pair& pair) {
  auto matrix = [&](const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["dim"] = pair.dim();
  j["A"] = matrix(pair.A());
  j["B"] = matrix(pair.B());
  j["tol"] = pair.tol();
  return j.dump();
}

std::string format_complex(std::complex<double> z) {
  char buf[96];
  double im = z.imag();
  std::snprintf(buf, sizeof buf, "%.6f%c%.6fi", z.real(), std::signbit(im) ? '-' : '+', std::abs(im));
  return buf;
}

std::string format_short_sci(double x) {
  if (x == 0.0) return "0.0e0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  std::string s(buf);
  auto e = s.find('e');
  int exponent = std::atoi(s.c_str() + e + 1);
  return s.substr(0, e) + "e" + std::to_string(exponent);
}

}  // namespace pythag
