#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace culdiv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input at a known position (1-based line number).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// No recipes for the requested (dish, country, source) community.
class EmptyCommunityError : public Error {
 public:
  EmptyCommunityError(std::string dish_id, std::string country)
      : Error("empty community for dish '" + dish_id + "' country '" + country + "'"),
        dish_id_(std::move(dish_id)),
        country_(std::move(country)) {}

  const std::string& dish_id() const { return dish_id_; }
  const std::string& country() const { return country_; }

 private:
  std::string dish_id_;
  std::string country_;
};

class EmptyDistributionError : public Error {
 public:
  EmptyDistributionError() : Error("cannot estimate a distribution from an empty token stream") {}
};

class UndefinedDivergenceError : public Error {
 public:
  UndefinedDivergenceError() : Error("divergence between two empty distributions is undefined") {}
};

}  // namespace culdiv
