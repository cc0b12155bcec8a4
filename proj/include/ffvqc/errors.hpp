#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffvqc {

enum class ErrorKind {
  capacity,
  index,
  arity,
  dimension,
  argument,
  degenerate_spectrum,
  plan,
  io,
  parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::index: return "index";
    case ErrorKind::arity: return "arity";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::argument: return "argument";
    case ErrorKind::degenerate_spectrum: return "degenerate_spectrum";
    case ErrorKind::plan: return "plan";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

// All library failures derive from this; kind() is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define FFVQC_DEFINE_ERROR(Name, Kind)                                              \
  class Name : public Error {                                                      \
   public:                                                                         \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}       \
  };

FFVQC_DEFINE_ERROR(CapacityError, capacity)
FFVQC_DEFINE_ERROR(IndexError, index)
FFVQC_DEFINE_ERROR(ArityError, arity)
FFVQC_DEFINE_ERROR(DimensionError, dimension)
FFVQC_DEFINE_ERROR(ArgumentError, argument)
FFVQC_DEFINE_ERROR(DegenerateSpectrumError, degenerate_spectrum)
FFVQC_DEFINE_ERROR(PlanError, plan)
FFVQC_DEFINE_ERROR(IoError, io)
FFVQC_DEFINE_ERROR(ParseError, parse)

#undef FFVQC_DEFINE_ERROR

}  // namespace ffvqc
