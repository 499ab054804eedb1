#pragma once

#include <stdexcept>
#include <string>

namespace posram
{
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Two operands live on different ground sets.
    class HostMismatch : public Error
    {
        public:
            using Error::Error;
    };

    class PreconditionError : public Error
    {
        public:
            using Error::Error;
    };

    /// A size cap (ground set, pattern, enumeration) was exceeded.
    class CapExceeded : public Error
    {
        public:
            using Error::Error;
    };

    class FormatError : public Error
    {
        public:
            using Error::Error;
    };

    /// The coloring contains a blue copy of Lambda where the caller needs it not to.
    class BlueLambdaPresent : public Error
    {
        public:
            using Error::Error;
    };

    /// A constructed object failed its own validation. Always a bug.
    class InternalError : public Error
    {
        public:
            using Error::Error;
    };

    class BudgetExhausted : public Error
    {
        public:
            using Error::Error;
    };
}
