#pragma once

#include <stdexcept>
#include <string>

namespace omsim {

// Error classes map one-to-one onto CLI exit codes.
enum class ErrorClass {
    usage = 2,
    parse = 3,
    validation = 4,
    numerical = 5,
    instability = 6,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, std::string message, std::string stage = {})
        : std::runtime_error(stage.empty() ? message : stage + ": " + message),
          cls_(cls),
          stage_(std::move(stage)) {}

    ErrorClass error_class() const { return cls_; }
    int exit_code() const { return static_cast<int>(cls_); }
    const std::string& stage() const { return stage_; }

  private:
    ErrorClass cls_;
    std::string stage_;
};

struct UsageError : Error {
    explicit UsageError(std::string msg, std::string stage = {})
        : Error(ErrorClass::usage, std::move(msg), std::move(stage)) {}
};

struct ParseError : Error {
    explicit ParseError(std::string msg, std::string stage = {})
        : Error(ErrorClass::parse, std::move(msg), std::move(stage)) {}
};

struct ValidationError : Error {
    explicit ValidationError(std::string msg, std::string stage = {})
        : Error(ErrorClass::validation, std::move(msg), std::move(stage)) {}
};

struct NumericalError : Error {
    explicit NumericalError(std::string msg, std::string stage = {})
        : Error(ErrorClass::numerical, std::move(msg), std::move(stage)) {}
};

struct InstabilityError : Error {
    explicit InstabilityError(std::string msg, std::string stage = {})
        : Error(ErrorClass::instability, std::move(msg), std::move(stage)) {}
};

}  // namespace omsim
