#ifndef WDCOLOR_ERRORS_HPP
#define WDCOLOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wdcolor {

// Malformed or out-of-range input (bad vertex ids, violated preconditions).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric parameters outside the admissible range of a bound or construction.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller-supplied procedure (local colorer, torso oracle) broke its declared guarantee.
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check of the extension engine failed.
class EngineInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed document while reading JSON inputs.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wdcolor

#endif
