#include "bcldil/io.hpp"

#include "json.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bcldil {

namespace {

using nlohmann::json;

Matrix matrixFromJson(const json& node, const std::string& name) {
  if (!node.is_array() || node.empty()) {
    fail(Errc::ParseError, name + " must be a nonempty list of rows");
  }
  const int rows = static_cast<int>(node.size());
  int cols = -1;
  Matrix out;
  for (int i = 0; i < rows; ++i) {
    const json& row = node[i];
    if (!row.is_array()) fail(Errc::ParseError, name + ": row " + std::to_string(i) + " is not a list");
    if (cols < 0) {
      cols = static_cast<int>(row.size());
      out = Matrix::Zero(rows, cols);
    } else if (static_cast<int>(row.size()) != cols) {
      fail(Errc::ParseError, name + ": ragged rows (row " + std::to_string(i) + ")");
    }
    for (int j = 0; j < cols; ++j) {
      const json& entry = row[j];
      if (entry.is_number()) {
        out(i, j) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                 entry[1].is_number()) {
        out(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        fail(Errc::ParseError, name + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") must be a number or [re, im]");
      }
    }
  }
  if (rows != cols) {
    fail(Errc::NonSquare,
         name + " is " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return out;
}

}  // namespace

MatrixPair parseMatrixText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("T1") || !doc.contains("T2")) {
    fail(Errc::ParseError, "pair file must be an object with keys T1 and T2");
  }
  MatrixPair pair;
  pair.t1 = matrixFromJson(doc["T1"], "T1");
  pair.t2 = matrixFromJson(doc["T2"], "T2");
  if (pair.t1.rows() != pair.t2.rows()) {
    std::ostringstream os;
    os << "T1 is " << pair.t1.rows() << "x" << pair.t1.cols() << " but T2 is " << pair.t2.rows()
       << "x" << pair.t2.cols();
    fail(Errc::SizeMismatch, os.str());
  }
  return pair;
}

MatrixPair parseMatrixFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseMatrixText(buffer.str());
}

// ------------------------------------------------------------------ polynomials

namespace {

struct PolyParser {
  const std::string& text;
  size_t pos = 0;
  int cap;

  explicit PolyParser(const std::string& t, int degreeCap) : text(t), cap(degreeCap) {}

  [[noreturn]] void error(const std::string& message) const {
    std::ostringstream os;
    os << message << " at position " << pos;
    fail(Errc::SyntaxError, os.str());
  }

  void skipSpace() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peekIs(char c) {
    skipSpace();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(char c) {
    if (peekIs(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  bool atNumberStart() {
    skipSpace();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double number() {
    skipSpace();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) error("expected a number");
    pos += static_cast<size_t>(end - begin);
    return v;
  }

  int exponent() {
    skipSpace();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("expected a nonnegative integer exponent");
    return std::atoi(text.substr(start, pos - start).c_str());
  }

  // one multiplicative factor: a coefficient, a parenthesized complex
  // coefficient, or a variable power
  struct Factor {
    Complex coef{1.0, 0.0};
    int d1 = 0;
    int d2 = 0;
  };

  bool tryVariable(Factor& f) {
    skipSpace();
    if (pos + 1 < text.size() && text[pos] == 'z' && (text[pos + 1] == '1' || text[pos + 1] == '2')) {
      int which = text[pos + 1] - '0';
      pos += 2;
      int e = 1;
      if (consume('^')) e = exponent();
      (which == 1 ? f.d1 : f.d2) += e;
      return true;
    }
    return false;
  }

  bool tryFactor(Factor& f) {
    skipSpace();
    if (pos >= text.size()) return false;
    if (tryVariable(f)) return true;
    if (text[pos] == '(') {
      ++pos;
      double re = signedNumber();
      if (!consume(',')) error("expected ',' in complex coefficient");
      double im = signedNumber();
      if (!consume(')')) error("expected ')' closing complex coefficient");
      f.coef *= Complex(re, im);
      return true;
    }
    if (atNumberStart()) {
      f.coef *= Complex(number(), 0.0);
      return true;
    }
    return false;
  }

  double signedNumber() {
    skipSpace();
    double sgn = 1.0;
    while (peekIs('+') || peekIs('-')) {
      if (consume('-')) sgn = -sgn;
      else consume('+');
    }
    return sgn * number();
  }

  Factor term() {
    Factor f;
    if (!tryFactor(f)) error("expected a coefficient or variable");
    for (;;) {
      size_t mark = pos;
      bool star = consume('*');
      Factor g;
      if (tryFactor(g)) {
        f.coef *= g.coef;
        f.d1 += g.d1;
        f.d2 += g.d2;
      } else {
        if (star) error("dangling '*'");
        pos = mark;
        break;
      }
    }
    if (f.d1 > cap || f.d2 > cap) {
      std::ostringstream os;
      os << "monomial degree (" << f.d1 << ", " << f.d2 << ") exceeds cap " << cap;
      fail(Errc::DegreeCapExceeded, os.str());
    }
    return f;
  }

  std::vector<Factor> parse() {
    std::vector<Factor> terms;
    skipSpace();
    if (pos >= text.size()) error("empty polynomial");
    for (;;) {
      double sgn = 1.0;
      skipSpace();
      while (peekIs('+') || peekIs('-')) {
        if (consume('-')) sgn = -sgn;
        else consume('+');
      }
      Factor f = term();
      f.coef *= sgn;
      terms.push_back(f);
      skipSpace();
      if (pos >= text.size()) break;
      if (!peekIs('+') && !peekIs('-')) error("expected '+' or '-' between terms");
    }
    return terms;
  }
};

}  // namespace

BivariatePolynomial parsePolynomial(const std::string& text, int degreeCap) {
  PolyParser parser(text, degreeCap);
  auto terms = parser.parse();
  int d1 = 0, d2 = 0;
  for (const auto& t : terms) {
    d1 = std::max(d1, t.d1);
    d2 = std::max(d2, t.d2);
  }
  BivariatePolynomial p = BivariatePolynomial::zero(d1, d2);
  for (const auto& t : terms) p.at(t.d1, t.d2) += t.coef;
  return p;
}

// ------------------------------------------------------------------ writer

std::string formatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void JsonWriter::indent() {
  out_.push_back('\n');
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::prepareValue() {
  if (stack_.empty()) return;
  auto& top = stack_.back();
  if (top.first == 'a') {
    if (top.second) out_.push_back(',');
    indent();
    top.second = true;
  } else {
    if (!pendingKey_) fail(Errc::UsageError, "object value emitted without a key");
    pendingKey_ = false;
  }
}

void JsonWriter::appendEscaped(const std::string& s) {
  out_.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out_.append("\\\""); break;
      case '\\': out_.append("\\\\"); break;
      case '\n': out_.append("\\n"); break;
      case '\t': out_.append("\\t"); break;
      case '\r': out_.append("\\r"); break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_.append(buf);
        } else {
          out_.push_back(c);
        }
    }
  }
  out_.push_back('"');
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (stack_.empty() || stack_.back().first != 'o') {
    fail(Errc::UsageError, "key emitted outside an object");
  }
  auto& top = stack_.back();
  if (top.second) out_.push_back(',');
  indent();
  top.second = true;
  appendEscaped(name);
  out_.append(": ");
  pendingKey_ = true;
  return *this;
}

JsonWriter& JsonWriter::beginObject() {
  prepareValue();
  out_.push_back('{');
  stack_.emplace_back('o', false);
  return *this;
}

JsonWriter& JsonWriter::endObject() {
  bool hadContent = stack_.back().second;
  stack_.pop_back();
  if (hadContent) indent();
  out_.push_back('}');
  return *this;
}

JsonWriter& JsonWriter::beginArray() {
  prepareValue();
  out_.push_back('[');
  stack_.emplace_back('a', false);
  return *this;
}

JsonWriter& JsonWriter::endArray() {
  bool hadContent = stack_.back().second;
  stack_.pop_back();
  if (hadContent) indent();
  out_.push_back(']');
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  prepareValue();
  out_.append(formatDouble(v));
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  prepareValue();
  out_.append(std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  prepareValue();
  out_.append(v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  prepareValue();
  appendEscaped(v);
  return *this;
}

JsonWriter& JsonWriter::value(Complex v) {
  prepareValue();
  out_.push_back('[');
  out_.append(formatDouble(v.real()));
  out_.append(", ");
  out_.append(formatDouble(v.imag()));
  out_.push_back(']');
  return *this;
}

JsonWriter& JsonWriter::value(const Matrix& m) {
  beginArray();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    beginArray();
    for (Eigen::Index j = 0; j < m.cols(); ++j) value(m(i, j));
    endArray();
  }
  endArray();
  return *this;
}

JsonWriter& JsonWriter::valueNull() {
  prepareValue();
  out_.append("null");
  return *this;
}

std::string JsonWriter::take() {
  out_.push_back('\n');
  return std::move(out_);
}

// ------------------------------------------------------------------ csv

std::string pointsToCsv(const VarietyPointSet& set) {
  std::string out =
      "re_lambda1,im_lambda1,re_lambda2,im_lambda2,re_z,im_z,residual1,residual2\n";
  for (const VarietyPoint& pt : set.points) {
    out += formatDouble(pt.lambda1.real()) + "," + formatDouble(pt.lambda1.imag()) + "," +
           formatDouble(pt.lambda2.real()) + "," + formatDouble(pt.lambda2.imag()) + "," +
           formatDouble(pt.sourceZ.real()) + "," + formatDouble(pt.sourceZ.imag()) + "," +
           formatDouble(pt.residual1) + "," + formatDouble(pt.residual2) + "\n";
  }
  return out;
}

std::vector<VarietyPoint> parsePointsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<VarietyPoint> points;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream row(line);
    double v[8];
    std::string cell;
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(row, cell, ',')) fail(Errc::ParseError, "csv row with fewer than 8 cells");
      v[i] = std::strtod(cell.c_str(), nullptr);
    }
    VarietyPoint pt;
    pt.lambda1 = Complex(v[0], v[1]);
    pt.lambda2 = Complex(v[2], v[3]);
    pt.sourceZ = Complex(v[4], v[5]);
    pt.residual1 = v[6];
    pt.residual2 = v[7];
    points.push_back(pt);
  }
  return points;
}

}  // namespace bcldil
