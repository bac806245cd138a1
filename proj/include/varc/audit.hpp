#ifndef VARC_AUDIT_HPP
#define VARC_AUDIT_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace varc {

// Structure audits (antisymmetry, Jacobi, d^2 = 0, nilpotency, ...) throw
// AuditError carrying the first offending location. Constructors run their
// audits before the object is handed out.
class AuditError : public std::runtime_error {
public:
    explicit AuditError(const std::string& what) : std::runtime_error(what) {}
};

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

template <class... Args>
[[noreturn]] inline void audit_fail(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    throw AuditError(os.str());
}

template <class... Args>
inline void audit_check(bool ok, Args&&... args) {
    if (!ok) audit_fail(std::forward<Args>(args)...);
}

} // namespace varc

#endif
