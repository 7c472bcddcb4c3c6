#pragma once

#include <stdexcept>
#include <string>

namespace hisd
{
    /// Malformed input file or pattern string.
    class ParseError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// A tree decomposition that violates one of the decomposition axioms.
    class InvalidDecomposition : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// A size cap was exceeded (pattern size, bag size, oracle guard).
    class CapExceeded : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Arguments outside the domain of an operation.
    class InvalidArgument : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };
}
