#ifndef EYEKIT_ERRORS_HPP
#define EYEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eyekit {

/// Malformed bytes or text: PGM headers, annotation files, store documents.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that violates a dataset, configuration, or store contract.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values encountered during optimization or evaluation.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eyekit

#endif
