#pragma once

#include <stdexcept>
#include <string>

namespace tiling {

// Error taxonomy shared by the whole library. Result-shaped outcomes
// (UNDECIDED oracles, sampled verdicts) are modelled as values, not
// exceptions; these codes cover genuine failures.
enum class errc {
    parse,
    precondition,
    capped,
    uncoverable,
    cover_failed,
    partition_failed,
    allocation_failed,
    insufficient_reservoir,
    construction_failed,
    budget,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::parse: return "PARSE";
        case errc::precondition: return "PRECONDITION";
        case errc::capped: return "CAPPED";
        case errc::uncoverable: return "UNCOVERABLE";
        case errc::cover_failed: return "COVER_FAILED";
        case errc::partition_failed: return "PARTITION_FAILED";
        case errc::allocation_failed: return "ALLOCATION_FAILED";
        case errc::insufficient_reservoir: return "INSUFFICIENT_RESERVOIR";
        case errc::construction_failed: return "CONSTRUCTION_FAILED";
        case errc::budget: return "BUDGET";
    }
    return "UNKNOWN";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace tiling
