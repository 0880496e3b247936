#pragma once

#include <stdexcept>
#include <string>

namespace cla {

// Error taxonomy shared by the library and the CLI.  The CLI maps these to
// exit codes: input_error -> 1, axiom_error -> 2, resource_error -> 3.
// internal_error indicates a bug (a guard that should be unreachable fired).

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct axiom_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace cla
