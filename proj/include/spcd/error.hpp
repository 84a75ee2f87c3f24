#pragma once

#include <stdexcept>
#include <string>

namespace spcd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A SequenceSpec with non-finite or out-of-range parameters.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

class NegativeFactor : public Error {
public:
    using Error::Error;
};

/// The cell volumes do not have a finite ordinary product.
class InvalidRectangle : public Error {
public:
    using Error::Error;
};

class LayoutMismatch : public Error {
public:
    using Error::Error;
};

class InvalidSchedule : public Error {
public:
    using Error::Error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

}  // namespace spcd
