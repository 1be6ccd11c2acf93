#pragma once

#include <stdexcept>
#include <string>

namespace gapmm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GAPMM_ERROR(Name)                  \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

GAPMM_ERROR(IterationLimit)
GAPMM_ERROR(DomainError)
GAPMM_ERROR(DimensionMismatch)
GAPMM_ERROR(GapTooClose)
GAPMM_ERROR(InsideSpectrum)
GAPMM_ERROR(NotOrthonormal)
GAPMM_ERROR(IndexOutOfRange)
GAPMM_ERROR(GraphUndefined)
GAPMM_ERROR(NotBijective)
GAPMM_ERROR(RankDeficient)
GAPMM_ERROR(NotPositiveDefinite)
GAPMM_ERROR(BudgetExceeded)
GAPMM_ERROR(IoError)

#undef GAPMM_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gapmm
