#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gapmm/symmat.hpp"

namespace gapmm {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  bool next(Token& t) {
    while (true) {
      while (pos_ < cur_.size() && std::isspace(static_cast<unsigned char>(cur_[pos_]))) ++pos_;
      if (pos_ < cur_.size()) break;
      if (!std::getline(in_, cur_)) return false;
      ++line_;
      pos_ = 0;
    }
    std::size_t start = pos_;
    while (pos_ < cur_.size() && !std::isspace(static_cast<unsigned char>(cur_[pos_]))) ++pos_;
    t = {cur_.substr(start, pos_ - start), line_, static_cast<int>(start) + 1};
    return true;
  }
  int line() const { return line_; }

 private:
  std::istream& in_;
  std::string cur_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

template <class T>
T parse_number(const Token& t) {
  T v{};
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError("invalid number '" + t.text + "'", t.line, t.column);
  return v;
}

}  // namespace

SymMatrix read_matrix(std::istream& in) {
  Tokenizer tok(in);
  Token t;
  if (!tok.next(t)) throw ParseError("missing dimension", 1, 1);
  long n = parse_number<long>(t);
  if (n < 0) throw ParseError("negative dimension", t.line, t.column);
  Matrix m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (!tok.next(t)) throw ParseError("expected " + std::to_string(n * n) + " entries", tok.line() + 1, 1);
      m(i, j) = parse_number<double>(t);
    }
  if (tok.next(t)) throw ParseError("trailing data '" + t.text + "'", t.line, t.column);
  return SymMatrix(m);
}

SymMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const SymMatrix& m) {
  const int n = m.dim();
  out << n << '\n';
  char buf[32];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
      (void)ec;
      if (j) out << ' ';
      out.write(buf, p - buf);
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const SymMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_matrix(out, m);
}

}  // namespace gapmm
