#ifndef POPALIGN_ERRORS_HPP
#define POPALIGN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popalign {

/// Malformed input data; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")" : message),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The leading singular value is multiple (or the principal vector has
/// genuinely mixed signs), so the Perron orientation is not unique.
class DegenerateSpectrumError : public std::runtime_error {
public:
    DegenerateSpectrumError(const std::string& message, int multiplicity)
        : std::runtime_error(message), multiplicity_(multiplicity) {}
    int multiplicity() const noexcept { return multiplicity_; }

private:
    int multiplicity_;
};

/// Inputs violate a feasibility requirement (e.g. mu outside [s_n, s_1],
/// or distribution volumes that do not dominate the graph volumes).
class InfeasibleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative numerical routine did not converge.
class ConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace popalign

#endif
