#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

// Series evaluation gave up before the tail bound was satisfied.
class series_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature exhausted its refinement levels above tolerance.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tridiagonal elimination hit a vanishing pivot.
class singular_system_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed run configuration; message carries file/line context.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fraclab
