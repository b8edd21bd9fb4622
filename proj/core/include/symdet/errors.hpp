#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symdet {

// Base for everything symdet throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Domain misuse on in-memory values: mismatched variable sets, unknown
// variables outside of parsing, non-square grids handed to matrix ops.
class instance_error : public error {
public:
    using error::error;
};

// Expression text rejected by the grammar; carries source position.
class parse_error : public error {
public:
    struct located_tag {};

    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    // Message already carries its position.
    parse_error(located_tag, const std::string& what, std::size_t line, std::size_t column)
        : error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class unknown_variable_error : public parse_error {
public:
    unknown_variable_error(const std::string& name, std::size_t line, std::size_t column)
        : parse_error("unknown variable '" + name + "'", line, column), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// File content does not match the instance/result schema.
class schema_error : public error {
public:
    using error::error;
};

class io_error : public error {
public:
    using error::error;
};

// Exact polynomial division asked for a quotient that does not exist.
class divisibility_error : public error {
public:
    using error::error;
};

// Interpolation nodes collided.
class singularity_error : public error {
public:
    using error::error;
};

class config_error : public error {
public:
    using error::error;
};

} // namespace symdet
