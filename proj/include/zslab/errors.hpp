#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zslab {

/// Raised when an input exceeds a configured size cap. The computation is
/// refused outright; no approximate answer is produced.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an enumeration exhausts its node budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::uint64_t nodes)
        : std::runtime_error(what), nodes_spent(nodes) {}

    std::uint64_t nodes_spent;
};

}  // namespace zslab
