#ifndef IMIN_ERRORS_HPP
#define IMIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace imin {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// geometry
class CoincidentAnchor : public Error {
public:
    using Error::Error;
};
class EmptyGrid : public Error {
public:
    using Error::Error;
};
class NoConvergence : public Error {
public:
    using Error::Error;
};

// topology / forwarding
class UnknownNode : public Error {
public:
    using Error::Error;
};
class EmptyNetwork : public Error {
public:
    using Error::Error;
};
class SchemeArityMismatch : public Error {
public:
    using Error::Error;
};

// energy
class NegativeDistance : public Error {
public:
    using Error::Error;
};

// experiment
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, std::string key)
        : Error("line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") + ": " + what),
          line_(line), key_(std::move(key)) {}

    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Precondition violations that do not have a named domain error.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace imin

#endif // IMIN_ERRORS_HPP
