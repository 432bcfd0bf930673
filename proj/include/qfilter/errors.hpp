#pragma once

#include <stdexcept>
#include <string>

namespace qfilter {

// Raised when a caller violates a documented precondition (bad dimension,
// out-of-range parameter, non-Hermitian input, ...).
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Filter outcome with (numerically) zero probability.
class filter_annihilates_state : public std::domain_error {
public:
    explicit filter_annihilates_state(const std::string& what) : std::domain_error(what) {}
};

// ESD search: the selected pair has zero concurrence before any noise.
class never_entangled : public std::domain_error {
public:
    explicit never_entangled(const std::string& what) : std::domain_error(what) {}
};

// ESD search: concurrence still positive at the search horizon.
class no_death_found : public std::domain_error {
public:
    explicit no_death_found(const std::string& what) : std::domain_error(what) {}
};

} // namespace qfilter
