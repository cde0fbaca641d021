#include "qrep/sequence.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qrep/errors.hpp"

namespace qrep {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError("bad number '" + s + "' in " + std::string(what));
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SequenceSpec parse_sequence(std::string_view lit) {
  const std::string whole(lit);
  if (lit.substr(0, 4) == "seq:") lit.remove_prefix(4);
  auto colon = lit.find(':');
  std::string_view head = lit.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : lit.substr(colon + 1);
  SequenceSpec s;
  if (head == "reciprocal" && rest.empty()) {
    s.family = SeqFamily::reciprocal;
  } else if (head == "hrr" && rest.empty()) {
    s.family = SeqFamily::hrr;
  } else if (head == "one-minus-pow") {
    s.family = SeqFamily::one_minus_pow;
    s.param = rest.empty() ? 2.0 : parse_number(rest, whole);
    if (s.param <= 0) throw ParseError("one-minus-pow needs a positive base: " + whole);
  } else if (head == "exp-neg-pow") {
    s.family = SeqFamily::exp_neg_pow;
    auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw ParseError("exp-neg-pow needs <lambda>:even|odd: " + whole);
    s.param = parse_number(rest.substr(0, c2), whole);
    std::string_view par = rest.substr(c2 + 1);
    if (par == "odd")
      s.odd = true;
    else if (par != "even")
      throw ParseError("exp-neg-pow parity must be even or odd: " + whole);
    if (s.param <= 0) throw ParseError("exp-neg-pow needs lambda > 0: " + whole);
  } else if (head == "const") {
    s.family = SeqFamily::constant;
    s.param = parse_number(rest, whole);
  } else if (head == "list") {
    s.family = SeqFamily::list;
    if (rest.empty() || rest.front() != '[') throw ParseError("list needs [v1,...]: " + whole);
    auto close = rest.find(']');
    if (close == std::string_view::npos) throw ParseError("unterminated list: " + whole);
    std::string_view body = rest.substr(1, close - 1);
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      s.values.push_back(parse_number(item, whole));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (s.values.empty()) throw ParseError("empty list: " + whole);
    std::string_view after = rest.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') throw ParseError("expected ':<tail>' after list: " + whole);
      s.tail = std::make_shared<SequenceSpec>(parse_sequence(after.substr(1)));
    }
  } else {
    throw ParseError("unknown sequence '" + whole + "'");
  }
  return s;
}

std::string to_string(const SequenceSpec& s) {
  switch (s.family) {
    case SeqFamily::reciprocal: return "seq:reciprocal";
    case SeqFamily::hrr: return "seq:hrr";
    case SeqFamily::one_minus_pow: return "seq:one-minus-pow:" + fmt(s.param);
    case SeqFamily::exp_neg_pow: return "seq:exp-neg-pow:" + fmt(s.param) + (s.odd ? ":odd" : ":even");
    case SeqFamily::constant: return "seq:const:" + fmt(s.param);
    case SeqFamily::list: {
      std::string out = "seq:list:[";
      for (std::size_t i = 0; i < s.values.size(); ++i) out += (i ? "," : "") + fmt(s.values[i]);
      out += "]";
      if (s.tail) out += ":" + to_string(*s.tail).substr(4);
      return out;
    }
  }
  return "?";
}

double log_abs(const SequenceSpec& s, long n) {
  switch (s.family) {
    case SeqFamily::reciprocal:
      if (n < 1) throw PreconditionError("seq:reciprocal is defined for n >= 1");
      return -std::log(static_cast<double>(n));
    case SeqFamily::one_minus_pow: {
      double v = -std::expm1(-static_cast<double>(n) * std::log(s.param));
      return std::log(std::abs(v));
    }
    case SeqFamily::exp_neg_pow:
      if (n >= 1 && (n % 2 == 1) == s.odd) return -std::pow(s.param, static_cast<double>(n));
      return 0;
    case SeqFamily::hrr:
      if (n <= 0) return 0;
      return (n % 2 ? -1.0 : 1.0) * std::tgamma(static_cast<double>(n) + 1.0);
    case SeqFamily::constant: return std::log(std::abs(s.param));
    case SeqFamily::list:
      if (n < 1) throw PreconditionError("explicit lists are indexed from 1");
      if (static_cast<std::size_t>(n) <= s.values.size()) return std::log(std::abs(s.values[n - 1]));
      if (!s.tail) throw PreconditionError("index " + std::to_string(n) + " is past the end of " + to_string(s));
      return log_abs(*s.tail, n);
  }
  return 0;
}

int sign(const SequenceSpec& s, long n) {
  double v = 0;
  switch (s.family) {
    case SeqFamily::one_minus_pow: v = -std::expm1(-static_cast<double>(n) * std::log(s.param)); break;
    case SeqFamily::constant: v = s.param; break;
    case SeqFamily::list:
      if (n >= 1 && static_cast<std::size_t>(n) <= s.values.size()) {
        v = s.values[n - 1];
        break;
      }
      if (s.tail && n >= 1) return sign(*s.tail, n);
      log_abs(s, n);  // throws
      return 0;
    default:
      log_abs(s, n);  // domain check
      return 1;
  }
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

double value(const SequenceSpec& s, long n) {
  const int sg = sign(s, n);
  if (sg == 0) return 0;
  return sg * std::exp(log_abs(s, n));
}

}  // namespace qrep
