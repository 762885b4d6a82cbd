#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pho {

// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

// A lexical form slot admits no segment.
class EmptySlot : public Error {
 public:
  explicit EmptySlot(std::size_t slot)
      : Error("slot " + std::to_string(slot) + " has no compatible segment"), slot_(slot) {}
  std::size_t slot() const { return slot_; }

 private:
  std::size_t slot_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(double product, std::size_t cap)
      : Error("candidate set of size " + format(product) + " exceeds cap " + std::to_string(cap)),
        product_(product) {}
  double product() const { return product_; }

 private:
  static std::string format(double v) {
    if (v < 1e18) return std::to_string(static_cast<unsigned long long>(v));
    return std::to_string(v);
  }
  double product_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
      : Error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& found) {
    std::string s = "syntax error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) s += " or ";
      s += expected[i];
    }
    s += ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'");
    return s;
  }
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class TypeError : public Error {
 public:
  TypeError(const std::string& subterm, const std::string& why, std::string definition = {})
      : Error((definition.empty() ? std::string() : "in definition of " + definition + ": ") + "type error in '" +
              subterm + "': " + why),
        subterm_(subterm),
        why_(why),
        definition_(std::move(definition)) {}
  const std::string& subterm() const { return subterm_; }
  const std::string& why() const { return why_; }
  // Name of the definition the subterm occurs in, when known.
  const std::string& definition() const { return definition_; }

 private:
  std::string subterm_;
  std::string why_;
  std::string definition_;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error(describe(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string describe(const std::vector<std::string>& cycle) {
    std::string s = "recursion through negation:";
    for (const auto& n : cycle) s += " " + n;
    return s;
  }
  std::vector<std::string> cycle_;
};

class NameError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class StrictContradiction : public Error {
 public:
  explicit StrictContradiction(std::vector<std::string> constraints)
      : Error(describe(constraints)), constraints_(std::move(constraints)) {}
  const std::vector<std::string>& constraints() const { return constraints_; }

 private:
  static std::string describe(const std::vector<std::string>& cs) {
    std::string s = "strict constraints admit no candidate:";
    for (const auto& c : cs) s += " " + c;
    return s;
  }
  std::vector<std::string> constraints_;
};

class TheoryError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DisjointnessFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pho
