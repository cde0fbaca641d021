#include "qrep/text_format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qrep/errors.hpp"

namespace qrep {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '=' || c == '#') return false;
  return true;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

struct Line {
  int number;
  std::string_view keyword;
  std::string_view rest;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty() || number == 0) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) {
      if (text.empty()) break;
      continue;
    }
    auto sp = raw.find_first_of(" \t");
    out.push_back({number, raw.substr(0, sp), sp == std::string_view::npos ? std::string_view{} : trim(raw.substr(sp))});
    if (text.empty()) break;
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

// "<lhs> = <rhs>"
std::pair<std::string_view, std::string_view> split_assign(const Line& l) {
  auto eq = l.rest.find('=');
  if (eq == std::string_view::npos) fail(l.number, "expected '<id> = <value>'");
  return {trim(l.rest.substr(0, eq)), trim(l.rest.substr(eq + 1))};
}

struct QuiverDecl {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
};

Quiver build_quiver(const std::vector<Line>& lines) {
  QuiverDecl d;
  bool named = false;
  for (const Line& l : lines) {
    if (l.keyword == "quiver") {
      if (named) fail(l.number, "second quiver line");
      if (!is_token(l.rest)) fail(l.number, "bad quiver name");
      d.name = l.rest;
      named = true;
    } else if (l.keyword == "vertex") {
      if (!is_token(l.rest)) fail(l.number, "bad vertex id '" + std::string(l.rest) + "'");
      d.vertices.emplace_back(l.rest);
    } else if (l.keyword == "arrow") {
      auto colon = l.rest.find(':');
      auto arrow = l.rest.find("->");
      if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon)
        fail(l.number, "expected 'arrow <id>: <src> -> <dst>'");
      std::string_view id = trim(l.rest.substr(0, colon));
      std::string_view src = trim(l.rest.substr(colon + 1, arrow - colon - 1));
      std::string_view dst = trim(l.rest.substr(arrow + 2));
      if (!is_token(id) || !is_token(src) || !is_token(dst)) fail(l.number, "bad arrow declaration");
      d.arrows.push_back({std::string(id), std::string(src), std::string(dst)});
    } else if (l.keyword != "dim" && l.keyword != "mat") {
      fail(l.number, "unknown keyword '" + std::string(l.keyword) + "'");
    }
  }
  try {
    return Quiver::create(d.name, d.vertices, d.arrows);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

cplx parse_complex(std::string_view lit) {
  const std::string s(trim(lit));
  auto bad = [&]() -> ParseError { return ParseError("bad complex literal '" + s + "'"); };
  if (s.empty()) throw bad();
  const char* p = s.c_str();
  const char* end = p + s.size();
  auto number = [&](const char*& at, double& out) {
    // a lone sign before 'j' means a unit coefficient
    if ((*at == '+' || *at == '-') && at + 1 < end && at[1] == 'j') {
      out = *at == '-' ? -1.0 : 1.0;
      ++at;
      return;
    }
    if (*at == 'j') {
      out = 1.0;
      return;
    }
    char* stop = nullptr;
    out = std::strtod(at, &stop);
    if (stop == at) throw bad();
    for (const char* c = at; c < stop; ++c)
      if (std::isalpha(static_cast<unsigned char>(*c)) && *c != 'e' && *c != 'E') throw bad();  // inf, nan, hex
    at = stop;
  };
  double first = 0;
  number(p, first);
  if (p == end) return {first, 0.0};
  if (*p == 'j') {
    if (p + 1 != end) throw bad();
    return {0.0, first};
  }
  if (*p != '+' && *p != '-') throw bad();
  double second = 0;
  number(p, second);
  if (p + 1 != end || *p != 'j') throw bad();
  return {first, second};
}

namespace {

std::vector<std::vector<cplx>> matrix_rows(std::string_view lit) {
  const std::string whole(trim(lit));
  std::string_view s = whole;
  auto bad = [&](const std::string& why) -> ParseError { return ParseError("matrix '" + whole + "': " + why); };
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw bad("expected [...]");
  s = trim(s.substr(1, s.size() - 2));
  std::vector<std::vector<cplx>> data;
  while (!s.empty()) {
    if (s.front() != '[') throw bad("expected a row [...]");
    auto close = s.find(']');
    if (close == std::string_view::npos) throw bad("unterminated row");
    std::string_view body = s.substr(1, close - 1);
    std::vector<cplx> row;
    while (!trim(body).empty()) {
      auto comma = body.find(',');
      row.push_back(parse_complex(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      if (trim(body).empty()) throw bad("trailing comma");
    }
    data.push_back(std::move(row));
    s = trim(s.substr(close + 1));
    if (!s.empty()) {
      if (s.front() != ';' && s.front() != ',') throw bad("rows are separated by ';'");
      s = trim(s.substr(1));
      if (s.empty()) throw bad("trailing separator");
    }
  }
  return data;
}

}  // namespace

Mat parse_matrix(std::string_view lit) {
  auto data = matrix_rows(lit);
  const Eigen::Index rows = static_cast<Eigen::Index>(data.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(data[0].size()) : 0;
  return parse_matrix(lit, rows, cols);
}

Mat parse_matrix(std::string_view lit, Eigen::Index rows, Eigen::Index cols) {
  const std::string whole(trim(lit));
  auto bad = [&](const std::string& why) -> ParseError { return ParseError("matrix '" + whole + "': " + why); };
  auto data = matrix_rows(lit);
  if (data.empty()) {
    if (rows != 0 && cols != 0) throw bad("empty, expected " + std::to_string(rows) + "x" + std::to_string(cols));
    return Mat(rows, cols);
  }
  if (static_cast<Eigen::Index>(data.size()) != rows) throw bad("expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(data[i].size()) != cols)
      throw bad("row " + std::to_string(i + 1) + " should have " + std::to_string(cols) + " entries");
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[i][j];
  }
  return m;
}

Quiver parse_quiver(std::string_view text) { return build_quiver(split_lines(text)); }

Rep parse_rep(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  Quiver q = build_quiver(lines);
  std::vector<int> dims(q.vertex_count(), 0);
  std::vector<bool> dim_seen(q.vertex_count(), false);
  std::map<std::size_t, std::pair<int, std::string_view>> mats;
  for (const Line& l : lines) {
    if (l.keyword == "dim") {
      auto [id, val] = split_assign(l);
      auto v = q.find_vertex(id);
      if (!v) fail(l.number, "unknown vertex '" + std::string(id) + "'");
      if (dim_seen[*v]) fail(l.number, "second dim for vertex '" + std::string(id) + "'");
      std::string sval(val);
      char* end = nullptr;
      long d = std::strtol(sval.c_str(), &end, 10);
      if (sval.empty() || *end != '\0' || d < 0 || d > 100000) fail(l.number, "bad dimension '" + sval + "'");
      dims[*v] = static_cast<int>(d);
      dim_seen[*v] = true;
    } else if (l.keyword == "mat") {
      auto [id, val] = split_assign(l);
      auto a = q.find_arrow(id);
      if (!a) fail(l.number, "unknown arrow '" + std::string(id) + "'");
      if (mats.count(*a)) fail(l.number, "second mat for arrow '" + std::string(id) + "'");
      mats[*a] = {l.number, val};
    }
  }
  std::vector<Mat> m;
  for (std::size_t e = 0; e < q.arrow_count(); ++e) {
    const Arrow& a = q.arrows()[e];
    auto it = mats.find(e);
    if (it == mats.end()) {
      m.push_back(Mat::Zero(dims[a.target], dims[a.source]));
      continue;
    }
    try {
      m.push_back(parse_matrix(it->second.second, dims[a.target], dims[a.source]));
    } catch (const ParseError& err) {
      fail(it->second.first, std::string("arrow '") + a.id + "': " + err.what());
    }
  }
  try {
    return Rep::create(q, dims, m);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

Rep read_rep_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rep(ss.str());
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return fmt17(z.real());
  std::string im = fmt17(z.imag());
  if (z.real() == 0.0) return im + "j";
  return fmt17(z.real()) + (im.front() == '-' ? "" : "+") + im + "j";
}

std::string format_matrix(const Mat& m) {
  if (m.size() == 0) return "[]";
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? "; [" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + format_complex(m(i, j));
    out += "]";
  }
  return out + "]";
}

std::string format_quiver(const Quiver& q) {
  std::string out;
  if (!q.name().empty()) out += "quiver " + q.name() + "\n";
  for (const auto& v : q.vertices()) out += "vertex " + v + "\n";
  for (const auto& a : q.arrows())
    out += "arrow " + a.id + ": " + q.vertices()[a.source] + " -> " + q.vertices()[a.target] + "\n";
  return out;
}

std::string format_rep(const Rep& r) {
  const Quiver& q = r.quiver();
  std::string out = format_quiver(q);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    out += "dim " + q.vertices()[v] + " = " + std::to_string(r.dim(v)) + "\n";
  for (std::size_t e = 0; e < q.arrow_count(); ++e) out += "mat " + q.arrows()[e].id + " = " + format_matrix(r.mat(e)) + "\n";
  return out;
}

std::string format_hom(const Quiver& q, const std::vector<Mat>& blocks) {
  std::string out;
  for (std::size_t v = 0; v < q.vertex_count() && v < blocks.size(); ++v)
    out += "map " + q.vertices()[v] + " = " + format_matrix(blocks[v]) + "\n";
  return out;
}

}  // namespace qrep
