#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace feplast {

// Common base so callers can catch everything thrown by this library at once.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// --- material ---

// Flow direction requested at a (numerically) hydrostatic stress.
class ZeroDeviator : public Error {
public:
  using Error::Error;
};

// --- meshing ---

class DegenerateBox : public Error {
public:
  using Error::Error;
};

class InvalidGeometry : public Error {
public:
  using Error::Error;
};

class TooManySubdomains : public Error {
public:
  using Error::Error;
};

// Malformed mesh/config text. Carries the 1-based line where parsing stopped.
class ParseError : public Error {
public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const { return line_; }

private:
  long line_ = 0;
};

// A structural mesh invariant failed (indices, volumes, duplicate nodes, ...).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

// --- assembly ---

class DegenerateElement : public Error {
public:
  using Error::Error;
};

// --- linear solvers ---

class RankDeficiency : public Error {
public:
  using Error::Error;
};

class FactorizationFailure : public Error {
public:
  using Error::Error;
};

// Coarse matrix N N^T is singular: constraints do not control the kernels.
class CoarseSingular : public Error {
public:
  using Error::Error;
};

class MaxIterations : public Error {
public:
  MaxIterations(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

private:
  int iterations_ = 0;
};

// Indefinite operator detected inside conjugate gradients (p^T F p <= 0).
class BreakdownError : public Error {
public:
  using Error::Error;
};

class LinearSolveFailure : public Error {
public:
  using Error::Error;
};

// --- driver ---

// Newton stagnation; carries the stopping-criterion history of the failed step.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, int time_step, std::vector<double> history)
      : Error(what), time_step_(time_step), history_(std::move(history)) {}
  int time_step() const { return time_step_; }
  const std::vector<double>& criterion_history() const { return history_; }

private:
  int time_step_ = 0;
  std::vector<double> history_;
};

// --- cli ---

class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace feplast
