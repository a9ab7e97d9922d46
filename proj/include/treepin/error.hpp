#pragma once

#include <stdexcept>
#include <string>

namespace treepin {

/// Malformed or inconsistent user input (config files, protocol parameters).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds one of the enumeration caps (subset, partition or
/// joint-state counts). Recoverable by shrinking the instance.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace treepin
