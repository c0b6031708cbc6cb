#pragma once

#include <stdexcept>
#include <string>

namespace folia {

// Operand shapes disagree (variable lists, charts, dimensions).
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The operation's precondition on the mathematical object does not hold
// (regular point handed to a blow-up, non-homogeneous field to the Euler test, ...).
class NotApplicableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidCenterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularPathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace folia
