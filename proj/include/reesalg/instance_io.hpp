#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "reesalg/rees.hpp"

namespace reesalg {

// Line-oriented instance files:
//
//   # comment
//   version 1
//   label <name>
//   ring x1 x2 x3 x4
//   yvars y1 y2 y3            (default y1..yr, r = rows of phi)
//   quotient x1^2,x2^2
//   matrix phi <rows> <cols>
//   <cols polynomial tokens>  (repeated rows times)
inline constexpr int kInstanceFormatVersion = 1;

struct InstanceFile {
  std::string path;
  Instance instance;
  int version = kInstanceFormatVersion;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

struct PendingPoly {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::size_t parse_size(const Token& t, std::size_t line) {
  if (t.text.empty() || t.text.size() > 6) throw ParseError(line, t.column, "expected a small nonnegative integer");
  for (char c : t.text)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(line, t.column, "expected a nonnegative integer");
  return std::stoul(t.text);
}

}  // namespace detail

inline Instance parse_instance(std::string_view text, std::string default_label = {}) {
  std::optional<std::vector<std::string>> xs, ys;
  std::optional<int> version;
  std::optional<std::string> label;
  std::vector<detail::PendingPoly> rels;
  bool have_quotient = false;
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<std::vector<detail::PendingPoly>> rows;
  std::size_t line_no = 0;
  std::size_t last_line = 1;

  auto names_of = [&](const std::vector<detail::Token>& toks, const char* what) {
    if (toks.size() < 2) throw ParseError(line_no, toks[0].column + toks[0].text.size(), std::string(what) + " needs at least one variable");
    std::vector<std::string> out;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (!detail::is_identifier(toks[i].text)) throw ParseError(line_no, toks[i].column, "bad variable name '" + toks[i].text + "'");
      out.push_back(toks[i].text);
    }
    return out;
  };
  auto once = [&](bool seen, const detail::Token& kw) {
    if (seen) throw ParseError(line_no, kw.column, "duplicate '" + kw.text + "' line");
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    auto toks = detail::split_tokens(detail::strip_comment(raw));
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    last_line = line_no;

    if (shape && rows.size() < shape->first) {
      if (toks.size() != shape->second)
        throw ParseError(line_no, toks[0].column,
                         "matrix row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(shape->second));
      std::vector<detail::PendingPoly> row;
      for (const auto& t : toks) row.push_back({t.text, line_no, t.column - 1});
      rows.push_back(std::move(row));
      continue;
    }

    const auto& kw = toks[0];
    if (kw.text == "version") {
      once(version.has_value(), kw);
      if (toks.size() != 2) throw ParseError(line_no, kw.column, "version takes one integer");
      version = int(detail::parse_size(toks[1], line_no));
      if (*version != kInstanceFormatVersion)
        throw ParseError(line_no, toks[1].column, "unsupported format version " + toks[1].text);
    } else if (kw.text == "label") {
      once(label.has_value(), kw);
      if (toks.size() < 2) throw ParseError(line_no, kw.column, "label needs a name");
      auto rest = detail::strip_comment(raw).substr(toks[1].column - 1);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
      label = std::string(rest);
    } else if (kw.text == "ring") {
      once(xs.has_value(), kw);
      xs = names_of(toks, "ring");
    } else if (kw.text == "yvars") {
      once(ys.has_value(), kw);
      ys = names_of(toks, "yvars");
    } else if (kw.text == "quotient") {
      once(have_quotient, kw);
      have_quotient = true;
      if (toks.size() < 2) throw ParseError(line_no, kw.column, "quotient needs at least one polynomial");
      // Relations are comma-separated; spaces after commas are tolerated.
      std::string_view body = detail::strip_comment(raw);
      std::size_t pos = toks[1].column - 1;
      while (pos < body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string_view::npos) comma = body.size();
        std::size_t a = pos, b = comma;
        while (a < b && std::isspace(static_cast<unsigned char>(body[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(body[b - 1]))) --b;
        if (a == b) throw ParseError(line_no, a + 1, "empty quotient relation");
        rels.push_back({std::string(body.substr(a, b - a)), line_no, a});
        pos = comma + 1;
        if (comma == body.size()) break;
      }
    } else if (kw.text == "matrix") {
      if (shape) throw ParseError(line_no, kw.column, "duplicate 'matrix' line");
      if (toks.size() != 4) throw ParseError(line_no, kw.column, "expected 'matrix phi <rows> <cols>'");
      if (toks[1].text != "phi") throw ParseError(line_no, toks[1].column, "only the matrix 'phi' is recognized");
      shape = std::pair{detail::parse_size(toks[2], line_no), detail::parse_size(toks[3], line_no)};
      if (shape->second == 0) rows.assign(shape->first, {});
    } else {
      throw ParseError(line_no, kw.column, "unknown directive '" + kw.text + "'");
    }
    if (end == text.size()) break;
  }

  if (!xs) throw ParseError(last_line, 1, "missing 'ring' line");
  if (!shape) throw ParseError(last_line, 1, "missing 'matrix phi' block");
  if (rows.size() < shape->first)
    throw ParseError(last_line, 1, "matrix ended after " + std::to_string(rows.size()) + " of " + std::to_string(shape->first) + " rows");

  if (!ys) {
    ys.emplace();
    for (std::size_t i = 1; i <= shape->first; ++i) ys->push_back("y" + std::to_string(i));
  }
  RingPtr R = make_ring(*xs, *ys);
  PolyMatrix phi(R, shape->first, shape->second);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const auto& p = rows[i][j];
      phi(i, j) = parse_polynomial_at(R, p.text, p.line, p.column);
    }
  std::vector<Polynomial> quotient;
  for (const auto& p : rels) quotient.push_back(parse_polynomial_at(R, p.text, p.line, p.column));
  return make_instance(R, std::move(phi), std::move(quotient), label.value_or(std::move(default_label)));
}

inline std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << "version " << kInstanceFormatVersion << "\n";
  if (!inst.label.empty()) out << "label " << inst.label << "\n";
  out << "ring";
  for (const auto& n : inst.ring->x_names()) out << " " << n;
  out << "\nyvars";
  for (const auto& n : inst.ring->y_names()) out << " " << n;
  out << "\n";
  if (!inst.quotient_rels.empty()) {
    out << "quotient ";
    for (std::size_t i = 0; i < inst.quotient_rels.size(); ++i)
      out << (i ? "," : "") << inst.quotient_rels[i].to_string();
    out << "\n";
  }
  out << "matrix phi " << inst.phi.rows() << " " << inst.phi.cols() << "\n";
  for (std::size_t i = 0; i < inst.phi.rows(); ++i) {
    for (std::size_t j = 0; j < inst.phi.cols(); ++j) out << (j ? " " : "") << inst.phi(i, j).to_string();
    out << "\n";
  }
  return out.str();
}

inline InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return {path, parse_instance(buf.str(), stem), kInstanceFormatVersion};
}

}  // namespace reesalg
