#pragma once

#include "bcldil/types.hpp"
#include "bcldil/variety.hpp"

#include <string>
#include <vector>

namespace bcldil {

struct MatrixPair {
  Matrix t1;
  Matrix t2;
};

// Pair files are JSON objects with keys "T1" and "T2"; a matrix is a list of
// rows, an entry is a real number or a two-element [re, im] list.
MatrixPair parseMatrixFile(const std::string& path);
MatrixPair parseMatrixText(const std::string& text);

// Grammar: terms `coef * z1^i * z2^j` joined by + or -, coef real or
// `(re, im)`, `*` and `^1`/`^0` optional, whitespace insignificant.
BivariatePolynomial parsePolynomial(const std::string& text,
                                    int degreeCap = defaults::polyDegreeCap);

std::string formatDouble(double value);  // %.17g, round-trip exact

// Incremental JSON emitter with insertion-ordered keys and fixed float
// formatting; reports must be byte-reproducible, which rules out library
// serializers with their own number formatting.
class JsonWriter {
 public:
  JsonWriter& beginObject();
  JsonWriter& endObject();
  JsonWriter& beginArray();
  JsonWriter& endArray();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(Complex v);   // [re, im]
  JsonWriter& value(const Matrix& m);
  JsonWriter& valueNull();

  std::string take();

 private:
  void prepareValue();
  void indent();
  void appendEscaped(const std::string& s);

  std::string out_;
  // one frame per open container: 'o'/'a' plus whether a value was emitted
  std::vector<std::pair<char, bool>> stack_;
  bool pendingKey_ = false;
};

std::string pointsToCsv(const VarietyPointSet& set);
std::vector<VarietyPoint> parsePointsCsv(const std::string& text);

}  // namespace bcldil
