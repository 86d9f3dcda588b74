#pragma once

#include <stdexcept>
#include <string>

namespace scorecmp {

// Raised for malformed input files (CoNLL, CSV, config). Messages carry
// line numbers where available.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scorecmp
